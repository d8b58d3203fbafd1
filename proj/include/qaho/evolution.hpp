#pragma once
// Time evolution: exact exponential, the first-order split product
//   U(t) = [F^dagger e^{-i t x^2/2} F] . [e^{-i t (x^2/2 + lambda x^4)}]
// (kinetic factor conjugated through the QFT, potential factor diagonal),
// its gate-level circuit form, trajectories, and the separable 2D composite.

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qaho/circuit.hpp"
#include "qaho/linalg.hpp"
#include "qaho/model.hpp"

namespace qaho {

enum class EvolutionMethod { EXACT_EXPONENTIAL, SPLIT_PRODUCT, CIRCUIT };

struct EvolutionConfig {
  HamiltonianSpec spec;
  double t_max = 6.0 * std::numbers::pi;
  int steps = 28;                // records at t_j = j*t_max/steps, j=0..steps
  std::size_t initial_basis_index = 0;
  std::optional<StateVector> initial_state;  // overrides the basis index
  EvolutionMethod method = EvolutionMethod::SPLIT_PRODUCT;
  std::uint64_t shots = 8192;    // per-step samples; 0 disables sampling
  std::uint64_t seed = 0;        // step j samples with seed ^ j

  void validate() const;         // throws Error on violation
};

struct TrajectoryRecord {
  double time = 0.0;
  std::vector<double> probabilities;
  std::optional<ShotHistogram> sampled_counts;
  double autocorrelation = 0.0;  // |<psi(0)|psi(t)>|^2
};

// theta_k = -t*(x_k^2/2 + lambda*x_k^4) over the position grid; the kinetic
// diagonal is the lambda=0 case. N must be even.
std::vector<double> potential_phase_diagonal(std::size_t n, double lambda,
                                             double t);

// The split product above as an N x N matrix. POSITION representation only.
ComplexMatrix split_evolution_operator(const HamiltonianSpec& spec, double t);

// e^{-iHt} for either representation, via diagonalization.
ComplexMatrix exact_evolution_operator(const HamiltonianSpec& spec, double t);

// Gate realization of the split product on n data + (n-1) ancilla qubits:
// potential filters, QFT, kinetic filters, IQFT. The factored-out phases of
// both diagonals accumulate in Circuit::global_phase.
Circuit evolution_circuit(const HamiltonianSpec& spec, double t);

// steps+1 records. EXACT_EXPONENTIAL diagonalizes once and evaluates each
// t_j directly; SPLIT_PRODUCT applies U_split(t_max/steps) stepwise; CIRCUIT
// runs a fresh evolution_circuit(t_j) per record (ancillas checked back to
// |0> within 1e-9). SPLIT_PRODUCT/CIRCUIT require POSITION representation.
std::vector<TrajectoryRecord> evolve_trajectory(const EvolutionConfig& cfg);

// (K (x) I)(I (x) K)(V (x) I)(I (x) V) on the N^2 grid: both axes evolve by
// the same 1D split factors. POSITION representation only.
ComplexMatrix evolution_operator_2d(const HamiltonianSpec& spec, double t);

struct PotentialGrid {
  std::vector<double> coordinates;          // grid points, both axes
  std::vector<std::vector<double>> values;  // values[i][j] = V(x_i, x_j)
};

// V(x,y) = (x^2+y^2)/2 + lambda*(x^4+y^4) over the N x N grid.
PotentialGrid potential_grid(std::size_t n, double lambda);

// Header `t,p<ket>...,autocorr[,c<ket>...]`; count columns appear when every
// record carries sampled counts.
std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records);

// Header `x,y,V`, row-major over (x_i, y_j).
std::string grid_to_csv(const PotentialGrid& grid);

}  // namespace qaho
