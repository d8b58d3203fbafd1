#pragma once
// Gradient-free minimizers. Both are deterministic given their options
// (SPSA draws perturbations from the pinned PRNG).

#include <cstdint>
#include <functional>
#include <vector>

namespace qaho {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;  // terminated by tolerance, not by budget
};

struct NelderMeadOptions {
  int max_evals = 6000;
  double xatol = 1e-12;       // max vertex distance from the best, inf-norm
  double fatol = 1e-14;       // max value spread across the simplex
  double initial_edge = 0.25; // vertex k = x0 + initial_edge * e_k
};

// Standard simplex method (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2); stops when the x- and f-spreads are both within tolerance.
OptimResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt);

struct SpsaOptions {
  int iterations = 300;       // two evaluations each, plus one final
  double a = 0.25;            // step gain: a_k = a / (A + k + 1)^0.602
  double c = 0.1;             // perturbation: c_k = c / (k + 1)^0.101
  double stability = 30.0;    // the A offset
  double tolerance = 1e-8;    // convergence = late-run improvement below this
  std::uint64_t seed = 0;
};

// Simultaneous-perturbation stochastic approximation with Rademacher
// directions; returns the best point ever evaluated.
OptimResult spsa(const Objective& f, const std::vector<double>& x0,
                 const SpsaOptions& opt);

}  // namespace qaho
