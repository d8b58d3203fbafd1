#pragma once
// Gate-level circuits and a deterministic statevector executor.
//
// Qubit order: basis index k has binary expansion q_{n-1}...q_1 q_0 with
// qubit 0 least significant, so |000>..|111> map to indices 0..7. Pattern
// strings and histogram keys read MSB-first, like ket labels.
//
// Global phase: circuits that factor a phase out (diagonal_phase_circuit)
// record it in Circuit::global_phase; the executor never applies it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaho/linalg.hpp"

namespace qaho {

enum class GateKind { H, X, RY, RZ, PHASE, CPHASE, CZ, SWAP, TOFFOLI };

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;   // one qubit (two for SWAP)
  std::vector<int> controls;
  std::vector<bool> anti;     // aligned with controls; true fires on |0>
  double theta = 0.0;         // radians; RY/RZ/PHASE/CPHASE only
};

struct Circuit {
  int n_data = 0;
  int n_ancilla = 0;
  double global_phase = 0.0;  // metadata, radians
  std::vector<Gate> gates;

  int width() const { return n_data + n_ancilla; }

  // Validates indices (distinct, in range) and theta finiteness.
  void push(Gate g);

  // Appends other's gates (indices unchanged) and adds its global phase.
  // other must not be wider than this circuit.
  void append(const Circuit& other);
};

// Gate-wise adjoint in reverse order; global phase negated.
Circuit adjoint_circuit(const Circuit& c);

// Applies gates in order. input.dim must be 2^width.
StateVector run_circuit(const Circuit& c, const StateVector& input);

// Full-register unitary, built column-by-column. Width capped at 8 qubits.
ComplexMatrix circuit_to_unitary(const Circuit& c);

// Unitary restricted to the data register: runs every data basis state with
// ancillas |0> and requires them to return there (leakage <= 1e-9).
// Excludes global_phase, like the executor.
ComplexMatrix circuit_data_unitary(const Circuit& c);

// Probability of any ancilla ending outside |0>, for a full-register state.
double ancilla_leakage(const Circuit& c, const StateVector& full);

// Standard H + CPHASE(2pi/2^k) ladder with final SWAP reversal; equals the
// DFT matrix [F]_{jk} = e^{2 pi i jk/N}/sqrt(N) under the qubit order above.
Circuit qft_circuit(int n);
Circuit iqft_circuit(int n);

// Multiplies the amplitude of exactly the basis state `pattern` (ket label,
// length n) by e^{i phase}: anti-controls via X conjugation, a Toffoli
// cascade into n-1 ancillas, PHASE on the last ancilla, mirrored uncompute.
Circuit filter_circuit(const std::string& pattern, double phase, int n);

// Realizes diag(e^{i phases[k]}) up to the recorded global phase phases[0]:
// one filter per basis state with a nonzero relative phase (<= 2^n - 1).
Circuit diagonal_phase_circuit(const std::vector<double>& phases, int n);

// MSB-first ket label of a basis index, e.g. ket_label(6, 3) == "110".
std::string ket_label(std::size_t index, std::size_t n_qubits);

struct ShotHistogram {
  std::map<std::string, std::uint64_t> counts;  // only observed bitstrings
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// i.i.d. samples from |amplitude|^2 by CDF inversion over the pinned PRNG.
ShotHistogram sample_counts(const StateVector& state, std::uint64_t shots,
                            std::uint64_t seed);

// {width, n_data, n_ancilla, global_phase, gates:[{kind, targets, controls,
//  polarity, theta}, ...]}; polarity[i]=1 fires on |1>, 0 on |0>.
std::string circuit_to_json(const Circuit& c);

}  // namespace qaho
