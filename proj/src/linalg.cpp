#include "qaho/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qaho {

namespace {
const kernels::Kernels& K() { return kernels::active(); }
}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error("basis index out of range");
  StateVector s(dim);
  s.amps[index] = cplx{1.0, 0.0};
  return s;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  K().cscal(dim, cplx{1.0 / n, 0.0}, amps.data());
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) throw Error("mul: inner dimensions differ");
  ComplexMatrix c(a.rows, b.cols);
  K().cgemm(a.rows, a.cols, b.cols, a.data.data(), b.data.data(),
            c.data.data());
  return c;
}

StateVector matvec(const ComplexMatrix& a, const StateVector& x) {
  if (a.cols != x.dim) throw Error("matvec: dimension mismatch");
  StateVector y(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    y.amps[i] = K().cdotu(a.cols, a.data.data() + i * a.cols, x.amps.data());
  return y;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      t.at(j, i) = std::conj(a.at(i, j));
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      const cplx aij = a.at(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t p = 0; p < b.rows; ++p) {
        cplx* dst = &c.at(i * b.rows + p, j * b.cols);
        K().caxpy(b.cols, aij, b.data.data() + p * b.cols, dst);
      }
    }
  return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error("add: shape mismatch");
  ComplexMatrix c = a;
  K().caxpy(c.data.size(), cplx{1.0, 0.0}, b.data.data(), c.data.data());
  return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx s) {
  ComplexMatrix c = a;
  K().cscal(c.data.size(), s, c.data.data());
  return c;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim != b.dim) throw Error("inner: dimension mismatch");
  return K().cdotc(a.dim, a.amps.data(), b.amps.data());
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& v : a.data) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

double unitarity_defect(const ComplexMatrix& a) {
  return max_abs_diff(mul(adjoint(a), a), ComplexMatrix::identity(a.cols));
}

EigenSystem eig_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows != h.cols) throw Error("eig_hermitian: matrix not square");
  const double defect = hermiticity_defect(h);
  if (defect > tol)
    throw Error("eig_hermitian: input not Hermitian, max asymmetry " +
                std::to_string(defect));

  const std::size_t n = h.rows;
  // Work on the exactly-Hermitian average so roundoff asymmetry cannot leak
  // into the rotations.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale_ref = std::max(1.0, max_abs(a));
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(a.at(p, q)));
    if (off <= 1e-15 * scale_ref) break;

    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300) continue;
        const cplx phase = apq / g;  // e^{i arg(apq)}
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary J: J[p][p]=c, J[p][q]=s*phase, J[q][p]=-s*conj(phase),
        // J[q][q]=c. Update A <- J^dagger A J and V <- V J; this zeroes
        // A[p][q] and moves the diagonal by -t*g / +t*g.
        const cplx spq = s * phase;
        for (std::size_t k = 0; k < n; ++k) {  // columns: A <- A J
          const cplx akp = a.at(k, p);
          const cplx akq = a.at(k, q);
          a.at(k, p) = c * akp - std::conj(spq) * akq;
          a.at(k, q) = spq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // rows: A <- J^dagger A
          const cplx apk = a.at(p, k);
          const cplx aqk = a.at(q, k);
          a.at(p, k) = c * apk - spq * aqk;
          a.at(q, k) = std::conj(spq) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cplx vkp = v.at(k, p);
          const cplx vkq = v.at(k, q);
          v.at(k, p) = c * vkp - std::conj(spq) * vkq;
          v.at(k, q) = spq * vkp + c * vkq;
        }
        a.at(p, q) = cplx{0.0, 0.0};
        a.at(q, p) = cplx{0.0, 0.0};
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.at(x, x).real() < a.at(y, y).real();
  });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    es.eigenvalues[j] = a.at(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i)
      es.eigenvectors.at(i, j) = v.at(i, order[j]);
  }
  return es;
}

ComplexMatrix matexp_unitary(const ComplexMatrix& h, double t) {
  const EigenSystem es = eig_hermitian(h);  // rejects non-Hermitian input
  const std::size_t n = h.rows;
  std::vector<cplx> ph(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = -es.eigenvalues[i] * t;
    ph[i] = cplx{std::cos(a), std::sin(a)};
  }
  // U = V diag(e^{-iEt}) V^dagger
  ComplexMatrix vd = es.eigenvectors;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) vd.at(i, j) *= ph[j];
  return mul(vd, adjoint(es.eigenvectors));
}

}  // namespace qaho
