#include "qaho/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "qaho/kernels.hpp"
#include "qaho/rng.hpp"

namespace qaho {

namespace {

bool needs_theta(GateKind k) {
  return k == GateKind::RY || k == GateKind::RZ || k == GateKind::PHASE ||
         k == GateKind::CPHASE;
}

std::size_t expected_targets(GateKind k) {
  return k == GateKind::SWAP ? 2 : 1;
}

// Controls demanded by the gate kind itself (CPHASE/CZ/TOFFOLI carry their
// controls in Gate::controls like any other controlled gate).
std::size_t expected_controls(GateKind k) {
  switch (k) {
    case GateKind::CPHASE:
    case GateKind::CZ: return 1;
    case GateKind::TOFFOLI: return 2;
    default: return 0;
  }
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::PHASE: return "PHASE";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::TOFFOLI: return "TOFFOLI";
  }
  return "?";
}

// 2x2 action on the target qubit; SWAP is handled separately.
std::array<cplx, 4> gate_matrix(const Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      return {cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
    case GateKind::X:
    case GateKind::TOFFOLI:
      return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    case GateKind::RY: {
      const double c = std::cos(g.theta / 2.0), s = std::sin(g.theta / 2.0);
      return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
    }
    case GateKind::RZ: {
      const double h = g.theta / 2.0;
      return {cplx{std::cos(h), -std::sin(h)}, cplx{0, 0}, cplx{0, 0},
              cplx{std::cos(h), std::sin(h)}};
    }
    case GateKind::PHASE:
    case GateKind::CPHASE:
      return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0},
              cplx{std::cos(g.theta), std::sin(g.theta)}};
    case GateKind::CZ:
      return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    case GateKind::SWAP: break;
  }
  throw Error("gate_matrix: SWAP has no single-qubit action");
}

}  // namespace

void Circuit::push(Gate g) {
  if (g.targets.size() != expected_targets(g.kind))
    throw Error(std::string("gate ") + kind_name(g.kind) +
                ": wrong target count");
  if (g.controls.size() < expected_controls(g.kind))
    throw Error(std::string("gate ") + kind_name(g.kind) +
                ": missing controls");
  if (g.anti.empty()) g.anti.assign(g.controls.size(), false);
  if (g.anti.size() != g.controls.size())
    throw Error("gate: anti flags must align with controls");
  if (!std::isfinite(g.theta)) throw Error("gate: theta not finite");
  if (needs_theta(g.kind) == false) g.theta = 0.0;

  std::vector<int> seen;
  auto check = [&](int q) {
    if (q < 0 || q >= width())
      throw Error(std::string("gate ") + kind_name(g.kind) +
                  ": qubit index out of range");
    if (std::find(seen.begin(), seen.end(), q) != seen.end())
      throw Error(std::string("gate ") + kind_name(g.kind) +
                  ": duplicate qubit index");
    seen.push_back(q);
  };
  for (int q : g.targets) check(q);
  for (int q : g.controls) check(q);
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.width() > width())
    throw Error("Circuit::append: sub-circuit wider than host");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  global_phase += other.global_phase;
}

Circuit adjoint_circuit(const Circuit& c) {
  Circuit out;
  out.n_data = c.n_data;
  out.n_ancilla = c.n_ancilla;
  out.global_phase = -c.global_phase;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (needs_theta(g.kind)) g.theta = -g.theta;  // H/X/CZ/SWAP/TOFFOLI are involutions
    out.gates.push_back(std::move(g));
  }
  return out;
}

StateVector run_circuit(const Circuit& c, const StateVector& input) {
  const std::size_t dim = std::size_t{1} << c.width();
  if (input.dim != dim)
    throw Error("run_circuit: state dimension is not 2^width");
  if (std::abs(input.norm() - 1.0) > 1e-9)
    throw Error("run_circuit: input state not normalized");

  StateVector state = input;
  cplx* amps = state.amps.data();
  for (const Gate& g : c.gates) {
    std::size_t cmask = 0, cwant = 0;
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      const std::size_t bit = std::size_t{1} << g.controls[i];
      cmask |= bit;
      if (!g.anti[i]) cwant |= bit;
    }

    if (g.kind == GateKind::SWAP) {
      const std::size_t m0 = std::size_t{1} << g.targets[0];
      const std::size_t m1 = std::size_t{1} << g.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != cwant) continue;
        if ((i & m0) != 0 || (i & m1) == 0) continue;  // visit |01> of the pair once
        std::swap(amps[i ^ m0 ^ m1], amps[i]);  // exchange |01> <-> |10>
      }
      continue;
    }

    const auto u = gate_matrix(g);
    const std::size_t tmask = std::size_t{1} << g.targets[0];
    if (cmask == 0) {
      kernels::active().apply_pairs(amps, dim, tmask, u.data());
    } else {
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tmask) != 0) continue;
        if ((i & cmask) != cwant) continue;
        const std::size_t j = i | tmask;
        // the pair must agree on the controls; target is not a control
        const cplx a = amps[i];
        const cplx b = amps[j];
        amps[i] = u[0] * a + u[1] * b;
        amps[j] = u[2] * a + u[3] * b;
      }
    }
  }
  return state;
}

ComplexMatrix circuit_to_unitary(const Circuit& c) {
  if (c.width() > 8) throw Error("circuit_to_unitary: width > 8");
  const std::size_t dim = std::size_t{1} << c.width();
  ComplexMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const StateVector out = run_circuit(c, StateVector::basis(dim, col));
    for (std::size_t row = 0; row < dim; ++row) u.at(row, col) = out.amps[row];
  }
  return u;
}

ComplexMatrix circuit_data_unitary(const Circuit& c) {
  if (c.width() > 8) throw Error("circuit_data_unitary: width > 8");
  const std::size_t full_dim = std::size_t{1} << c.width();
  const std::size_t data_dim = std::size_t{1} << c.n_data;
  ComplexMatrix u(data_dim, data_dim);
  for (std::size_t col = 0; col < data_dim; ++col) {
    const StateVector out = run_circuit(c, StateVector::basis(full_dim, col));
    if (ancilla_leakage(c, out) > 1e-9)
      throw Error("circuit_data_unitary: ancillas not restored to |0>");
    for (std::size_t row = 0; row < data_dim; ++row) u.at(row, col) = out.amps[row];
  }
  return u;
}

double ancilla_leakage(const Circuit& c, const StateVector& full) {
  const std::size_t data_dim = std::size_t{1} << c.n_data;
  double leak = 0.0;
  for (std::size_t i = data_dim; i < full.dim; ++i) leak += std::norm(full.amps[i]);
  return leak;
}

Circuit qft_circuit(int n) {
  if (n < 1) throw Error("qft_circuit: n must be >= 1");
  Circuit c;
  c.n_data = n;
  for (int q = n - 1; q >= 0; --q) {
    c.push({GateKind::H, {q}, {}, {}, 0.0});
    for (int m = q - 1; m >= 0; --m) {
      const double theta = 2.0 * std::numbers::pi /
                           std::pow(2.0, static_cast<double>(q - m + 1));
      c.push({GateKind::CPHASE, {q}, {m}, {}, theta});
    }
  }
  for (int i = 0; i < n / 2; ++i)
    c.push({GateKind::SWAP, {i, n - 1 - i}, {}, {}, 0.0});
  return c;
}

Circuit iqft_circuit(int n) { return adjoint_circuit(qft_circuit(n)); }

Circuit filter_circuit(const std::string& pattern, double phase, int n) {
  if (static_cast<int>(pattern.size()) != n)
    throw Error("filter_circuit: pattern length != n");
  for (char ch : pattern)
    if (ch != '0' && ch != '1') throw Error("filter_circuit: bad pattern");
  if (!std::isfinite(phase)) throw Error("filter_circuit: phase not finite");

  Circuit c;
  c.n_data = n;
  c.n_ancilla = std::max(0, n - 1);

  // pattern reads MSB-first: pattern[pos] belongs to qubit n-1-pos
  std::vector<int> zero_qubits;
  for (int pos = 0; pos < n; ++pos)
    if (pattern[pos] == '0') zero_qubits.push_back(n - 1 - pos);

  auto x_conjugation = [&] {
    for (int q : zero_qubits) c.push({GateKind::X, {q}, {}, {}, 0.0});
  };

  x_conjugation();
  if (n == 1) {
    c.push({GateKind::PHASE, {0}, {}, {}, phase});
  } else {
    // cascade the match predicate into ancillas n .. n+(n-2)
    c.push({GateKind::TOFFOLI, {n}, {0, 1}, {}, 0.0});
    for (int k = 2; k < n; ++k)
      c.push({GateKind::TOFFOLI, {n + k - 1}, {n + k - 2, k}, {}, 0.0});
    c.push({GateKind::PHASE, {n + n - 2}, {}, {}, phase});
    for (int k = n - 1; k >= 2; --k)
      c.push({GateKind::TOFFOLI, {n + k - 1}, {n + k - 2, k}, {}, 0.0});
    c.push({GateKind::TOFFOLI, {n}, {0, 1}, {}, 0.0});
  }
  x_conjugation();
  return c;
}

Circuit diagonal_phase_circuit(const std::vector<double>& phases, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (phases.size() != dim)
    throw Error("diagonal_phase_circuit: need 2^n phases");

  Circuit c;
  c.n_data = n;
  c.n_ancilla = std::max(0, n - 1);
  c.global_phase = phases[0];
  for (std::size_t k = 1; k < dim; ++k) {
    const double rel = phases[k] - phases[0];
    if (rel == 0.0) continue;
    std::string pattern(n, '0');
    for (int pos = 0; pos < n; ++pos)
      if (k & (std::size_t{1} << (n - 1 - pos))) pattern[pos] = '1';
    c.append(filter_circuit(pattern, rel, n));
  }
  return c;
}

std::string ket_label(std::size_t index, std::size_t n_qubits) {
  std::string key(n_qubits, '0');
  for (std::size_t pos = 0; pos < n_qubits; ++pos)
    if (index & (std::size_t{1} << (n_qubits - 1 - pos))) key[pos] = '1';
  return key;
}

ShotHistogram sample_counts(const StateVector& state, std::uint64_t shots,
                            std::uint64_t seed) {
  if (shots == 0) throw Error("sample_counts: shots must be >= 1");
  if (std::abs(state.norm() - 1.0) > 1e-9)
    throw Error("sample_counts: state not normalized");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < state.dim) ++n;
  if ((std::size_t{1} << n) != state.dim)
    throw Error("sample_counts: dimension not a power of two");

  std::vector<double> cdf(state.dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dim; ++i) {
    acc += std::norm(state.amps[i]);
    cdf[i] = acc;
  }
  cdf.back() = 1.0;  // guard roundoff at the top

  ShotHistogram h;
  h.shots = shots;
  h.seed = seed;
  Rng rng(seed);
  std::vector<std::uint64_t> tally(state.dim, 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++tally[static_cast<std::size_t>(it - cdf.begin())];
  }
  for (std::size_t i = 0; i < state.dim; ++i)
    if (tally[i] != 0) h.counts[ket_label(i, n)] = tally[i];
  return h;
}

std::string circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["width"] = c.width();
  j["n_data"] = c.n_data;
  j["n_ancilla"] = c.n_ancilla;
  j["global_phase"] = c.global_phase;
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    nlohmann::json e;
    e["kind"] = kind_name(g.kind);
    e["targets"] = g.targets;
    e["controls"] = g.controls;
    std::vector<int> polarity;
    for (bool a : g.anti) polarity.push_back(a ? 0 : 1);
    e["polarity"] = polarity;
    e["theta"] = g.theta;
    gates.push_back(e);
  }
  j["gates"] = gates;
  return j.dump(2) + "\n";
}

}  // namespace qaho
