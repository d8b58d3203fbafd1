#include "qaho/model.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

namespace qaho {

namespace {
bool power_of_two(std::size_t v) { return v >= 1 && (v & (v - 1)) == 0; }
}  // namespace

void HamiltonianSpec::validate() const {
  if (dim < 2 || !power_of_two(dim))
    throw Error("HamiltonianSpec: dim must be a power of two >= 2");
  if (lambda < 0.0) throw Error("HamiltonianSpec: lambda must be >= 0");
}

std::size_t HamiltonianSpec::n_qubits() const {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

ComplexMatrix annihilation_op(std::size_t dim) {
  if (dim < 2) throw Error("annihilation_op: dim must be >= 2");
  ComplexMatrix a(dim, dim);
  for (std::size_t n = 0; n + 1 < dim; ++n)
    a.at(n, n + 1) = cplx{std::sqrt(static_cast<double>(n + 1)), 0.0};
  return a;
}

ComplexMatrix fock_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  if (spec.representation != Representation::FOCK)
    throw Error("fock_hamiltonian: spec.representation must be FOCK");
  const ComplexMatrix a = annihilation_op(spec.dim);
  const ComplexMatrix ad = adjoint(a);
  const ComplexMatrix q = add(a, ad);
  const ComplexMatrix q2 = mul(q, q);
  const ComplexMatrix q4 = mul(q2, q2);
  ComplexMatrix h = mul(ad, a);
  for (std::size_t i = 0; i < spec.dim; ++i) h.at(i, i) += 0.5;
  return add(h, scale(q4, cplx{spec.lambda / 4.0, 0.0}));
}

ComplexMatrix position_op(std::size_t n) {
  if (n % 2 != 0) throw Error("position_op: N must be even");
  const double s = std::sqrt(std::numbers::pi / (2.0 * static_cast<double>(n)));
  ComplexMatrix x(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double grid =
        static_cast<double>(k) - static_cast<double>(n) / 2.0;
    x.at(k, k) = cplx{s * grid, 0.0};
  }
  return x;
}

ComplexMatrix qft_matrix(std::size_t n) {
  if (n < 1) throw Error("qft_matrix: N must be >= 1");
  const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix f(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      // reduce j*k mod N before multiplying to keep the angle small
      const double a = w * static_cast<double>((j * k) % n);
      f.at(j, k) = cplx{std::cos(a) * inv_sqrt, std::sin(a) * inv_sqrt};
    }
  return f;
}

ComplexMatrix momentum_op(std::size_t n) {
  const ComplexMatrix f = qft_matrix(n);
  return mul(adjoint(f), mul(position_op(n), f));
}

ComplexMatrix position_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  if (spec.representation != Representation::POSITION)
    throw Error("position_hamiltonian: spec.representation must be POSITION");
  const ComplexMatrix x = position_op(spec.dim);
  const ComplexMatrix p = momentum_op(spec.dim);
  ComplexMatrix h = scale(mul(p, p), cplx{0.5, 0.0});
  for (std::size_t k = 0; k < spec.dim; ++k) {
    const double xk = x.at(k, k).real();
    h.at(k, k) += 0.5 * xk * xk + spec.lambda * xk * xk * xk * xk;
  }
  return h;
}

ComplexMatrix hamiltonian(const HamiltonianSpec& spec) {
  return spec.representation == Representation::FOCK
             ? fock_hamiltonian(spec)
             : position_hamiltonian(spec);
}

namespace {

// P[i][sigma(i)] for the qubit-q factor; sigma flips the bits under X/Y.
struct PauliAction {
  std::size_t flip_mask = 0;
  // phase(i) = prod over Y qubits: bit==0 ? -i : +i; times Z sign.
  cplx phase(std::size_t i) const {
    cplx ph{1.0, 0.0};
    for (std::size_t q : y_bits) ph *= ((i >> q) & 1) ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    int zpar = 0;
    for (std::size_t q : z_bits) zpar ^= static_cast<int>((i >> q) & 1);
    return zpar ? -ph : ph;
  }
  std::vector<std::size_t> y_bits;
  std::vector<std::size_t> z_bits;
};

PauliAction decode(const std::string& paulis) {
  PauliAction act;
  const std::size_t n = paulis.size();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t q = n - 1 - pos;  // string reads MSB-first
    switch (paulis[pos]) {
      case 'I': break;
      case 'X': act.flip_mask |= std::size_t{1} << q; break;
      case 'Y':
        act.flip_mask |= std::size_t{1} << q;
        act.y_bits.push_back(q);
        break;
      case 'Z': act.z_bits.push_back(q); break;
      default: throw Error("pauli string: invalid character");
    }
  }
  return act;
}

}  // namespace

std::vector<PauliTerm> pauli_decompose(const ComplexMatrix& h,
                                       std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (h.rows != h.cols || h.rows != dim || !power_of_two(h.rows))
    throw Error("pauli_decompose: dimension is not 2^n_qubits");
  if (hermiticity_defect(h) > 1e-10)
    throw Error("pauli_decompose: input not Hermitian");

  static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> terms;
  const std::size_t total = std::size_t{1} << (2 * n_qubits);
  std::string s(n_qubits, 'I');
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t pos = n_qubits; pos-- > 0;) {
      s[pos] = kChars[c & 3];
      c >>= 2;
    }
    const PauliAction act = decode(s);
    // Tr(P H) = sum_i P[i][sigma(i)] H[sigma(i)][i]
    cplx tr{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i)
      tr += act.phase(i) * h.at(i ^ act.flip_mask, i);
    const cplx coeff = tr / static_cast<double>(dim);
    if (std::abs(coeff.imag()) > 1e-12)
      throw Error("pauli_decompose: complex coefficient from Hermitian input");
    if (std::abs(coeff.real()) > 1e-12)
      terms.push_back({s, coeff.real()});
  }
  return terms;
}

StateVector pauli_apply(const std::string& paulis, const StateVector& psi) {
  const std::size_t n = paulis.size();
  if (psi.dim != (std::size_t{1} << n))
    throw Error("pauli_apply: dimension mismatch");
  const PauliAction act = decode(paulis);
  StateVector out(psi.dim);
  for (std::size_t i = 0; i < psi.dim; ++i)
    out.amps[i] = act.phase(i) * psi.amps[i ^ act.flip_mask];
  return out;
}

ComplexMatrix pauli_term_matrix(const std::string& paulis) {
  static const ComplexMatrix kI = ComplexMatrix::identity(2);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x.at(0, 1) = x.at(1, 0) = cplx{1.0, 0.0};
  y.at(0, 1) = cplx{0.0, -1.0};
  y.at(1, 0) = cplx{0.0, 1.0};
  z.at(0, 0) = cplx{1.0, 0.0};
  z.at(1, 1) = cplx{-1.0, 0.0};

  ComplexMatrix m = ComplexMatrix::identity(1);
  for (char ch : paulis) {
    const ComplexMatrix* f = nullptr;
    switch (ch) {
      case 'I': f = &kI; break;
      case 'X': f = &x; break;
      case 'Y': f = &y; break;
      case 'Z': f = &z; break;
      default: throw Error("pauli string: invalid character");
    }
    m = kron(m, *f);
  }
  return m;
}

ComplexMatrix pauli_sum_matrix(const std::vector<PauliTerm>& terms,
                               std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix h(dim, dim);
  for (const PauliTerm& t : terms) {
    if (t.paulis.size() != n_qubits)
      throw Error("pauli_sum_matrix: string width mismatch");
    h = add(h, scale(pauli_term_matrix(t.paulis), cplx{t.coefficient, 0.0}));
  }
  return h;
}

std::string hamiltonian_to_json(const HamiltonianSpec& spec,
                                const ComplexMatrix& h) {
  nlohmann::json j;
  j["dim"] = spec.dim;
  j["lambda"] = spec.lambda;
  j["representation"] =
      spec.representation == Representation::FOCK ? "FOCK" : "POSITION";
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& v : h.data)
    entries.push_back(nlohmann::json::array({v.real(), v.imag()}));
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

}  // namespace qaho
