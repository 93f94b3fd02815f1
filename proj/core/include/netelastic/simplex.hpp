#pragma once

#include <cstddef>
#include <vector>

namespace netelastic::lp {

enum class Sense { less_equal, equal };

struct Term {
  std::size_t var = 0;
  double coeff = 0.0;
};

/// One row `sum(coeff * x[var]) (<= | ==) rhs`. The rhs must be nonnegative.
struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::less_equal;
  double rhs = 0.0;
};

/// Linear program over nonnegative variables x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  bool maximize = true;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

struct Options {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  std::size_t max_iterations = 200000;
};

/// Dense two-phase primal simplex. Uses Dantzig pricing and falls back to
/// Bland's rule during long runs of degenerate pivots.
Solution solve(const Problem& problem, const Options& options = {});

/// Number of tableau entries `solve` would allocate for `problem`.
std::size_t tableau_size(const Problem& problem);

}  // namespace netelastic::lp
