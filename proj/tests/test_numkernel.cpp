#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qaho/linalg.hpp"
#include "qaho/model.hpp"
#include "qaho/rng.hpp"
#include "reference_data.hpp"

using namespace qaho;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  ComplexMatrix m(r, c);
  for (auto& v : m.data)
    v = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix m = random_matrix(n, n, rng);
  return scale(add(m, adjoint(m)), cplx{0.5, 0.0});
}

double residual(const ComplexMatrix& h, const EigenSystem& es) {
  // max over pairs of ||H v - E v||_inf
  double worst = 0.0;
  for (std::size_t j = 0; j < h.cols; ++j) {
    StateVector v(h.cols);
    for (std::size_t i = 0; i < h.rows; ++i) v.amps[i] = es.eigenvectors.at(i, j);
    const StateVector hv = matvec(h, v);
    for (std::size_t i = 0; i < h.rows; ++i)
      worst = std::max(worst,
                       std::abs(hv.amps[i] - es.eigenvalues[j] * v.amps[i]));
  }
  return worst;
}

// 20-term truncated power series for exp(-iHt); independent oracle for the
// eigendecomposition route at small ||Ht||.
ComplexMatrix matexp_series(const ComplexMatrix& h, double t, int terms) {
  ComplexMatrix acc = ComplexMatrix::identity(h.rows);
  ComplexMatrix pow = ComplexMatrix::identity(h.rows);
  cplx coef{1.0, 0.0};
  for (int k = 1; k <= terms; ++k) {
    pow = mul(pow, h);
    coef *= cplx{0.0, -t} / static_cast<double>(k);
    acc = add(acc, scale(pow, coef));
  }
  return acc;
}

}  // namespace

TEST_CASE("eig_hermitian: identity and Pauli-X") {
  const EigenSystem id = eig_hermitian(ComplexMatrix::identity(4));
  for (double e : id.eigenvalues) CHECK(e == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix x(2, 2);
  x.at(0, 1) = x.at(1, 0) = cplx{1.0, 0.0};
  const EigenSystem ex = eig_hermitian(x);
  CHECK(ex.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ex.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian: dim-8 oscillator matrix against frozen oracle") {
  const HamiltonianSpec spec;
  const ComplexMatrix h = fock_hamiltonian(spec);
  const EigenSystem es = eig_hermitian(h);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(std::abs(es.eigenvalues[i] - refdata::kOracleFockSpectrum8[i]) <=
          1e-9);
  CHECK(residual(h, es) <= 1e-9 * max_abs(h) * 8);
  CHECK(unitarity_defect(es.eigenvectors) <= 1e-10);
}

TEST_CASE("eig_hermitian: residual and unitarity on random input") {
  Rng rng(99);
  for (std::size_t n : {std::size_t{2}, std::size_t{5}, std::size_t{16},
                        std::size_t{64}}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const EigenSystem es = eig_hermitian(h);
    CHECK(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));
    CHECK(residual(h, es) <= 1e-9 * std::max(1.0, max_abs(h)));
    CHECK(unitarity_defect(es.eigenvectors) <= 1e-10);
  }
}

TEST_CASE("eig_hermitian: similarity invariance under a unitary") {
  Rng rng(3);
  const ComplexMatrix m = random_hermitian(8, rng);
  const ComplexMatrix f = qft_matrix(8);  // unitary
  const ComplexMatrix m2 = mul(adjoint(f), mul(m, f));
  const auto e1 = eig_hermitian(m).eigenvalues;
  const auto e2 = eig_hermitian(m2).eigenvalues;
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(e1[i] - e2[i]) <= 1e-9);
}

TEST_CASE("eig_hermitian: rejections carry the measured asymmetry") {
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), Error);
  ComplexMatrix bad(2, 2);
  bad.at(0, 1) = cplx{1.0, 0.0};
  bad.at(1, 0) = cplx{0.0, 0.0};
  CHECK_THROWS_WITH_AS(eig_hermitian(bad),
                       doctest::Contains("max asymmetry"), Error);
}

TEST_CASE("matexp_unitary: trivial generators") {
  const ComplexMatrix u0 = matexp_unitary(ComplexMatrix(3, 3), 1.7);
  CHECK(max_abs_diff(u0, ComplexMatrix::identity(3)) <= 1e-12);

  const std::vector<cplx> d{cplx{0.3, 0}, cplx{-1.2, 0}, cplx{4.0, 0}};
  const ComplexMatrix ud = matexp_unitary(ComplexMatrix::diagonal(d), 0.7);
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = -d[i].real() * 0.7;
    CHECK(std::abs(ud.at(i, i) - cplx{std::cos(a), std::sin(a)}) <= 1e-12);
  }
}

TEST_CASE("matexp_unitary: series oracle, unitarity, spectral consistency") {
  Rng rng(17);
  const ComplexMatrix h = random_hermitian(4, rng);
  const double t = 0.01;
  const ComplexMatrix u = matexp_unitary(h, t);
  CHECK(max_abs_diff(u, matexp_series(h, t, 20)) <= 1e-10);
  CHECK(unitarity_defect(u) <= 1e-10);

  // U v_n = e^{-i E_n t} v_n for every eigenpair
  const EigenSystem es = eig_hermitian(h);
  const ComplexMatrix uv = mul(u, es.eigenvectors);
  for (std::size_t j = 0; j < 4; ++j) {
    const double a = -es.eigenvalues[j] * t;
    const cplx ph{std::cos(a), std::sin(a)};
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(uv.at(i, j) - ph * es.eigenvectors.at(i, j)) <= 1e-9);
  }
}

TEST_CASE("matexp_unitary rejects non-Hermitian input") {
  ComplexMatrix bad(2, 2);
  bad.at(0, 1) = cplx{1.0, 0.0};
  CHECK_THROWS_AS(matexp_unitary(bad, 0.1), Error);
}

TEST_CASE("kron: identities, dimension law, mixed-product property") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

  Rng rng(5);
  const ComplexMatrix a = random_matrix(2, 2, rng);
  const ComplexMatrix b = random_matrix(4, 4, rng);
  const ComplexMatrix ab = kron(a, b);
  CHECK(ab.rows == 8);
  CHECK(ab.cols == 8);

  StateVector u(2), v(4);
  for (auto& x : u.amps) x = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  for (auto& x : v.amps) x = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  StateVector uv(8);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      uv.amps[i * 4 + j] = u.amps[i] * v.amps[j];
  const StateVector lhs = matvec(ab, uv);
  const StateVector au = matvec(a, u);
  const StateVector bv = matvec(b, v);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(lhs.amps[i * 4 + j] - au.amps[i] * bv.amps[j]) <= 1e-12);
}
