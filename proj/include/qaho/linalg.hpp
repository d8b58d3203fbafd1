#pragma once
// Dense complex linear algebra sized for this project (dims <= 256):
// row-major matrices, statevectors, a cyclic Jacobi Hermitian eigensolver,
// and unitary matrix exponentials through the eigendecomposition.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaho/kernels.hpp"

namespace qaho {

using cplx = std::complex<double>;

// Raised for contract violations (bad dimensions, non-Hermitian input, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> data;  // row-major

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, cplx{0.0, 0.0}) {}

  cplx& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);
};

struct StateVector {
  std::size_t dim = 0;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(std::size_t d) : dim(d), amps(d, cplx{0.0, 0.0}) {}

  // |index> in a dim-dimensional space.
  static StateVector basis(std::size_t dim, std::size_t index);

  double norm() const;
  void normalize();
};

// eigenvalues ascending; eigenvectors are the matching unitary columns.
struct EigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector matvec(const ComplexMatrix& a, const StateVector& x);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx s);

// sum_i conj(a_i) b_i
cplx inner(const StateVector& a, const StateVector& b);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_ij |(A - A^dagger)_ij|
double hermiticity_defect(const ComplexMatrix& a);
// max_ij |(A^dagger A - I)_ij|
double unitarity_defect(const ComplexMatrix& a);

// Cyclic Jacobi diagonalization. Rejects non-square input and Hermiticity
// defects above `tol` with a diagnostic carrying the measured asymmetry.
EigenSystem eig_hermitian(const ComplexMatrix& h, double tol = 1e-10);

// exp(-i H t) for Hermitian H, via eig_hermitian. Result unitary to 1e-10.
ComplexMatrix matexp_unitary(const ComplexMatrix& h, double t);

}  // namespace qaho
