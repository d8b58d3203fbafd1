#pragma once
// Variational eigensolver stack: TwoLocal-style ansatz, Pauli-sum
// expectations, ground-state search, and VQD deflation for excited states.
//
// Optimization protocol (shared by optimize_ground and each VQD level):
// `restarts` Nelder-Mead runs from uniform(-pi, pi] starts drawn from the
// seeded PRNG, keeping the best, then three polish re-runs from the
// incumbent with initial simplex edges 1e-2, 1e-4, 1e-6. `converged` means
// the polish cascade improved the incumbent by at most the tolerance;
// budgets exhausted while still improving report false.

#include <cstdint>
#include <string>
#include <vector>

#include "qaho/circuit.hpp"
#include "qaho/linalg.hpp"
#include "qaho/model.hpp"

namespace qaho {

enum class Entangler { CZ_LINEAR, CZ_FULL };

struct AnsatzSpec {
  int n_qubits = 3;
  std::vector<GateKind> rotations = {GateKind::RY, GateKind::RZ};
  Entangler entangler = Entangler::CZ_FULL;
  int reps = 3;

  // n_qubits * rotations.size() * (reps + 1)
  std::size_t param_count() const;
  void validate() const;  // n_qubits >= 1, reps >= 0, rotations RY/RZ only
};

// Per repetition: one rotation layer (each rotation kind across all qubits,
// qubit 0 first), then the entangler; a final rotation layer closes.
Circuit ansatz_circuit(const AnsatzSpec& spec,
                       const std::vector<double>& params);
StateVector ansatz_state(const AnsatzSpec& spec,
                         const std::vector<double>& params);

// sum_P c_P <state|P|state>
double expectation(const std::vector<PauliTerm>& terms,
                   const StateVector& state);

// Shot-based estimate: each non-identity term is basis-rotated (H for X,
// S^dagger then H for Y) and estimated from sample_counts parities; term k
// samples with seed ^ k.
double expectation_sampled(const std::vector<PauliTerm>& terms,
                           const StateVector& state, std::uint64_t shots,
                           std::uint64_t seed);

enum class OptimizerMethod { NELDER_MEAD, SPSA };

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::NELDER_MEAD;
  int max_evals = 6000;      // budget per optimizer run (restart or polish)
  double tolerance = 1e-14;
  std::uint64_t seed = 0;

  void validate() const;
};

struct VQEResult {
  double energy = 0.0;
  std::vector<double> parameters;
  int iterations = 0;        // objective evaluations across all stages
  double fidelity_vs_exact = 0.0;
  bool converged = false;
};

VQEResult optimize_ground(const std::vector<PauliTerm>& h_terms,
                          const AnsatzSpec& ansatz, const OptimizerConfig& opt,
                          int restarts = 5);

struct VQDConfig {
  int levels = 8;
  std::vector<double> betas;  // empty -> every beta = 2 * gershgorin_spread
  OptimizerConfig optimizer;
  int restarts = 5;
};

// Level k minimizes expectation + sum_{j<k} beta_j * overlap with level j,
// the overlap evaluated compute-uncompute. Results sorted ascending by
// energy; fidelities are against the matching exact eigenvectors.
std::vector<VQEResult> vqd_spectrum(const std::vector<PauliTerm>& h_terms,
                                    const AnsatzSpec& ansatz,
                                    const VQDConfig& cfg);

// |<a|b>|^2, clamped to [0,1]. Rejects dimension mismatch and unnormalized
// input.
double fidelity(const StateVector& a, const StateVector& b);

// |<0|A(theta_b)^dagger A(theta_a)|0>|^2 via the concatenated circuit.
double compute_uncompute_overlap(const AnsatzSpec& spec,
                                 const std::vector<double>& theta_a,
                                 const std::vector<double>& theta_b);

// max_i (h_ii + r_i) - min_i (h_ii - r_i), r_i the off-diagonal row sum:
// an eigenvalue-range bound used for the default deflation weights.
double gershgorin_spread(const ComplexMatrix& h);

// Array of {n, energy, fidelity, iterations, converged, params}.
std::string vqd_results_to_json(const std::vector<VQEResult>& results);

// Header `n,fidelity`.
std::string fidelity_csv(const std::vector<VQEResult>& results);

}  // namespace qaho
