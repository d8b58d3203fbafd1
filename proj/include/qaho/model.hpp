#pragma once
// Oscillator operators and Hamiltonians in both representations, plus
// Pauli-sum decomposition. Units: hbar = m = omega = 1 throughout.

#include <string>
#include <vector>

#include "qaho/linalg.hpp"

namespace qaho {

enum class Representation { FOCK, POSITION };

struct HamiltonianSpec {
  std::size_t dim = 8;       // truncation dimension, power of two
  double lambda = 0.05;      // anharmonicity
  Representation representation = Representation::FOCK;

  void validate() const;     // throws Error on violation
  std::size_t n_qubits() const;
};

// Pauli string over n qubits; string[0] acts on the most significant qubit
// (qubit n-1), so the text reads like a ket label.
struct PauliTerm {
  std::string paulis;
  double coefficient = 0.0;
};

// a[n][n+1] = sqrt(n+1). Rejects dim < 2.
ComplexMatrix annihilation_op(std::size_t dim);

// a^dagger a + 1/2 + (lambda/4)(a+a^dagger)^4, every product taken inside the
// truncated space (the convention that reproduces the published dim-8 matrix
// including its truncation-affected corner 8.6375).
ComplexMatrix fock_hamiltonian(const HamiltonianSpec& spec);

// sqrt(pi/(2N)) * diag(-N/2 ... N/2-1). Rejects odd N.
ComplexMatrix position_op(std::size_t n);

// [F]_{jk} = exp(+2*pi*i*j*k/N) / sqrt(N)
ComplexMatrix qft_matrix(std::size_t n);

// p = F^dagger x F (grid-diagonal position conjugated into momentum space).
ComplexMatrix momentum_op(std::size_t n);

// (1/2) p^2 + (1/2) x^2 + lambda x^4 on the grid.
ComplexMatrix position_hamiltonian(const HamiltonianSpec& spec);

// Dispatch on spec.representation.
ComplexMatrix hamiltonian(const HamiltonianSpec& spec);

// c_P = Tr(P H) / 2^n over all 4^n strings; drops |c| <= 1e-12.
// Rejects non-power-of-two dimensions and non-Hermitian input.
std::vector<PauliTerm> pauli_decompose(const ComplexMatrix& h,
                                       std::size_t n_qubits);

// (P psi) without materializing P (P is a signed permutation).
StateVector pauli_apply(const std::string& paulis, const StateVector& psi);

ComplexMatrix pauli_term_matrix(const std::string& paulis);
ComplexMatrix pauli_sum_matrix(const std::vector<PauliTerm>& terms,
                               std::size_t n_qubits);

// {dim, lambda, representation, entries:[[re,im],...]} (row-major entries).
std::string hamiltonian_to_json(const HamiltonianSpec& spec,
                                const ComplexMatrix& h);

}  // namespace qaho
