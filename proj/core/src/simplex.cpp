#include "netelastic/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "netelastic/errors.hpp"

namespace netelastic::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  // The objective row lives after the constraint rows.
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = cols_ + 1;
    double* pivot_row = &data_[r * width];
    const double inv = 1.0 / pivot_row[c];
    for (std::size_t k = 0; k < width; ++k) pivot_row[k] *= inv;
    pivot_row[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * width];
      const double factor = row[c];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < width; ++k) {
        if (pivot_row[k] != 0.0) row[k] -= factor * pivot_row[k];
      }
      row[c] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct Runner {
  Tableau& t;
  std::vector<std::size_t>& basis;
  const std::vector<std::uint8_t>& allowed;
  const Options& opt;
  std::size_t iterations = 0;

  // Returns optimal / unbounded / iteration_limit.
  Status run() {
    std::size_t degenerate_streak = 0;
    while (true) {
      if (++iterations > opt.max_iterations) return Status::iteration_limit;
      const bool bland = degenerate_streak > 50;
      std::size_t enter = t.cols();
      double best = -opt.pivot_tolerance;
      for (std::size_t c = 0; c < t.cols(); ++c) {
        if (!allowed[c]) continue;
        const double rc = t.cost(c);
        if (rc < -opt.pivot_tolerance) {
          if (bland) {
            enter = c;
            break;
          }
          if (rc < best) {
            best = rc;
            enter = c;
          }
        }
      }
      if (enter == t.cols()) return Status::optimal;

      std::size_t leave = t.rows();
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (std::size_t r = 0; r < t.rows(); ++r) {
        const double a = t.at(r, enter);
        if (a <= opt.pivot_tolerance) continue;
        const double ratio = std::max(t.rhs(r), 0.0) / a;
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = r;
          best_pivot = a;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool take = bland ? basis[r] < basis[leave] : a > best_pivot;
          if (take) {
            leave = r;
            best_pivot = a;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == t.rows()) return Status::unbounded;
      degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
      t.pivot(leave, enter);
      basis[leave] = enter;
    }
  }
};

}  // namespace

std::size_t tableau_size(const Problem& problem) {
  const std::size_t m = problem.constraints.size();
  return (m + 1) * (problem.num_vars + m + 1);
}

Solution solve(const Problem& problem, const Options& options) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  if (problem.objective.size() != n) {
    throw ParameterError("lp: objective size does not match variable count");
  }

  // Column layout: structural | one slack or artificial per row.
  const std::size_t cols = n + m;
  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<std::uint8_t> artificial(cols, 0);
  bool any_artificial = false;

  for (std::size_t r = 0; r < m; ++r) {
    const Constraint& row = problem.constraints[r];
    if (!(row.rhs >= 0.0)) throw ParameterError("lp: negative right-hand side");
    for (const Term& term : row.terms) {
      if (term.var >= n) throw ParameterError("lp: variable index out of range");
      t.at(r, term.var) += term.coeff;
    }
    t.at(r, n + r) = 1.0;
    t.rhs(r) = row.rhs;
    basis[r] = n + r;
    if (row.sense == Sense::equal) {
      artificial[n + r] = 1;
      any_artificial = true;
    }
  }

  std::vector<std::uint8_t> allowed(cols, 1);
  Solution solution;

  if (any_artificial) {
    // Phase 1: maximize -sum(artificials).
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!artificial[basis[r]]) continue;
      for (std::size_t c = 0; c <= cols; ++c) {
        if (c == cols || !artificial[c]) t.at(m, c) -= t.at(r, c);
      }
    }
    Runner phase1{t, basis, allowed, options};
    const Status s = phase1.run();
    if (s == Status::iteration_limit) {
      solution.status = s;
      return solution;
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (artificial[basis[r]]) infeasibility += std::abs(t.rhs(r));
    }
    if (infeasibility > options.feasibility_tolerance * std::max(1.0, double(m))) {
      solution.status = Status::infeasible;
      return solution;
    }
    // Drive remaining artificials out of the basis; rows that cannot be
    // pivoted are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (!artificial[basis[r]]) continue;
      std::size_t pick = cols;
      double best = options.pivot_tolerance;
      for (std::size_t c = 0; c < cols; ++c) {
        if (artificial[c]) continue;
        if (std::abs(t.at(r, c)) > best) {
          best = std::abs(t.at(r, c));
          pick = c;
        }
      }
      if (pick != cols) {
        t.pivot(r, pick);
        basis[r] = pick;
      } else {
        for (std::size_t c = 0; c <= cols; ++c) t.at(r, c) = 0.0;
        t.at(r, basis[r]) = 1.0;
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (artificial[c]) allowed[c] = 0;
    }
  }

  // Phase 2.
  const double sign = problem.maximize ? 1.0 : -1.0;
  for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (std::size_t c = 0; c < n; ++c) t.at(m, c) = -sign * problem.objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = basis[r];
    const double cb = t.at(m, b);
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(r, c);
  }
  Runner phase2{t, basis, allowed, options};
  solution.status = phase2.run();
  if (solution.status != Status::optimal) return solution;

  solution.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) solution.x[basis[r]] = std::max(t.rhs(r), 0.0);
  }
  double obj = 0.0;
  for (std::size_t c = 0; c < n; ++c) obj += problem.objective[c] * solution.x[c];
  solution.objective = obj;
  return solution;
}

}  // namespace netelastic::lp
