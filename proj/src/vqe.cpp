#include "qaho/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "qaho/io.hpp"
#include "qaho/optim.hpp"
#include "qaho/rng.hpp"

namespace qaho {

namespace {

constexpr double kPolishEdges[] = {1e-2, 1e-4, 1e-6};

StateVector eigenvector_column(const EigenSystem& es, std::size_t k) {
  StateVector v(es.eigenvectors.rows);
  for (std::size_t i = 0; i < v.dim; ++i) v.amps[i] = es.eigenvectors.at(i, k);
  return v;
}

// restarts from seeded uniform starts, then the polish cascade; the PRNG is
// shared across calls so VQD levels draw disjoint start points.
OptimResult minimize_protocol(const Objective& f, std::size_t dim,
                              const OptimizerConfig& opt, int restarts,
                              Rng& rng) {
  if (restarts < 1) throw Error("optimizer: restarts must be >= 1");
  OptimResult best;
  int total_evals = 0;

  if (opt.method == OptimizerMethod::SPSA) {
    SpsaOptions sopt;
    sopt.iterations = std::max(1, (opt.max_evals - 1) / 2);
    sopt.tolerance = std::max(opt.tolerance, 1e-12);
    for (int r = 0; r < restarts; ++r) {
      std::vector<double> x0(dim);
      for (double& x : x0)
        x = rng.uniform(-std::numbers::pi, std::numbers::pi);
      sopt.seed = rng.next();
      OptimResult res = spsa(f, x0, sopt);
      total_evals += res.evaluations;
      if (r == 0 || res.value < best.value) best = std::move(res);
    }
    best.evaluations = total_evals;
    return best;
  }

  NelderMeadOptions nm;
  nm.max_evals = opt.max_evals;
  nm.fatol = opt.tolerance;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x0(dim);
    for (double& x : x0) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    OptimResult res = nelder_mead(f, x0, nm);
    total_evals += res.evaluations;
    if (r == 0 || res.value < best.value) best = std::move(res);
  }

  const double before_polish = best.value;
  NelderMeadOptions polish = nm;
  polish.fatol = std::min(opt.tolerance, 1e-16);
  for (double edge : kPolishEdges) {
    polish.initial_edge = edge;
    OptimResult res = nelder_mead(f, best.x, polish);
    total_evals += res.evaluations;
    if (res.value < best.value) best = std::move(res);
  }

  best.converged =
      (before_polish - best.value) <= std::max(opt.tolerance, 1e-12);
  best.evaluations = total_evals;
  return best;
}

}  // namespace

std::size_t AnsatzSpec::param_count() const {
  return static_cast<std::size_t>(n_qubits) * rotations.size() *
         static_cast<std::size_t>(reps + 1);
}

void AnsatzSpec::validate() const {
  if (n_qubits < 1) throw Error("AnsatzSpec: n_qubits must be >= 1");
  if (reps < 0) throw Error("AnsatzSpec: reps must be >= 0");
  if (rotations.empty()) throw Error("AnsatzSpec: no rotation layers");
  for (GateKind k : rotations)
    if (k != GateKind::RY && k != GateKind::RZ)
      throw Error("AnsatzSpec: rotations must be RY or RZ");
}

void OptimizerConfig::validate() const {
  if (max_evals < 1) throw Error("OptimizerConfig: max_evals must be >= 1");
  if (!(tolerance > 0.0)) throw Error("OptimizerConfig: tolerance must be > 0");
}

Circuit ansatz_circuit(const AnsatzSpec& spec,
                       const std::vector<double>& params) {
  spec.validate();
  if (params.size() != spec.param_count())
    throw Error("ansatz_circuit: wrong parameter count");

  Circuit c;
  c.n_data = spec.n_qubits;
  std::size_t p = 0;
  for (int rep = 0; rep <= spec.reps; ++rep) {
    for (GateKind kind : spec.rotations)
      for (int q = 0; q < spec.n_qubits; ++q)
        c.push({kind, {q}, {}, {}, params[p++]});
    if (rep == spec.reps) break;
    if (spec.entangler == Entangler::CZ_FULL) {
      for (int i = 0; i < spec.n_qubits; ++i)
        for (int j = i + 1; j < spec.n_qubits; ++j)
          c.push({GateKind::CZ, {j}, {i}, {}, 0.0});
    } else {
      for (int i = 0; i + 1 < spec.n_qubits; ++i)
        c.push({GateKind::CZ, {i + 1}, {i}, {}, 0.0});
    }
  }
  return c;
}

StateVector ansatz_state(const AnsatzSpec& spec,
                         const std::vector<double>& params) {
  const Circuit c = ansatz_circuit(spec, params);
  return run_circuit(c, StateVector::basis(std::size_t{1} << spec.n_qubits, 0));
}

double expectation(const std::vector<PauliTerm>& terms,
                   const StateVector& state) {
  double e = 0.0;
  for (const PauliTerm& term : terms)
    e += term.coefficient * inner(state, pauli_apply(term.paulis, state)).real();
  return e;
}

double expectation_sampled(const std::vector<PauliTerm>& terms,
                           const StateVector& state, std::uint64_t shots,
                           std::uint64_t seed) {
  if (shots == 0) throw Error("expectation_sampled: shots must be >= 1");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < state.dim) ++n;

  double e = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const PauliTerm& term = terms[k];
    if (term.paulis.size() != n)
      throw Error("expectation_sampled: term length mismatch");

    std::size_t support = 0;
    Circuit rot;
    rot.n_data = static_cast<int>(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const int q = static_cast<int>(n - 1 - pos);
      switch (term.paulis[pos]) {
        case 'I': break;
        case 'Z': support |= std::size_t{1} << q; break;
        case 'X':
          support |= std::size_t{1} << q;
          rot.push({GateKind::H, {q}, {}, {}, 0.0});
          break;
        case 'Y':
          support |= std::size_t{1} << q;
          rot.push({GateKind::PHASE, {q}, {}, {}, -std::numbers::pi / 2.0});
          rot.push({GateKind::H, {q}, {}, {}, 0.0});
          break;
        default:
          throw Error("expectation_sampled: bad Pauli letter");
      }
    }
    if (support == 0) {  // identity term needs no measurement
      e += term.coefficient;
      continue;
    }

    const ShotHistogram h = sample_counts(run_circuit(rot, state), shots,
                                          seed ^ static_cast<std::uint64_t>(k));
    double est = 0.0;
    for (const auto& [key, count] : h.counts) {
      std::size_t index = 0;
      for (std::size_t pos = 0; pos < n; ++pos)
        if (key[pos] == '1') index |= std::size_t{1} << (n - 1 - pos);
      const int parity = __builtin_popcountll(index & support) & 1;
      est += (parity ? -1.0 : 1.0) * static_cast<double>(count);
    }
    e += term.coefficient * est / static_cast<double>(shots);
  }
  return e;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim != b.dim) throw Error("fidelity: dimension mismatch");
  if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9)
    throw Error("fidelity: states must be normalized");
  return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

double compute_uncompute_overlap(const AnsatzSpec& spec,
                                 const std::vector<double>& theta_a,
                                 const std::vector<double>& theta_b) {
  Circuit c = ansatz_circuit(spec, theta_a);
  c.append(adjoint_circuit(ansatz_circuit(spec, theta_b)));
  const StateVector out =
      run_circuit(c, StateVector::basis(std::size_t{1} << spec.n_qubits, 0));
  return std::clamp(std::norm(out.amps[0]), 0.0, 1.0);
}

double gershgorin_spread(const ComplexMatrix& h) {
  if (h.rows != h.cols) throw Error("gershgorin_spread: square matrix required");
  double hi = 0.0, lo = 0.0;
  for (std::size_t i = 0; i < h.rows; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < h.cols; ++j)
      if (j != i) radius += std::abs(h.at(i, j));
    const double d = h.at(i, i).real();
    if (i == 0 || d + radius > hi) hi = d + radius;
    if (i == 0 || d - radius < lo) lo = d - radius;
  }
  return hi - lo;
}

VQEResult optimize_ground(const std::vector<PauliTerm>& h_terms,
                          const AnsatzSpec& ansatz, const OptimizerConfig& opt,
                          int restarts) {
  ansatz.validate();
  opt.validate();
  const Objective objective = [&](const std::vector<double>& theta) {
    return expectation(h_terms, ansatz_state(ansatz, theta));
  };

  Rng rng(opt.seed);
  const OptimResult res =
      minimize_protocol(objective, ansatz.param_count(), opt, restarts, rng);

  const EigenSystem es = eig_hermitian(
      pauli_sum_matrix(h_terms, static_cast<std::size_t>(ansatz.n_qubits)));

  VQEResult out;
  out.energy = res.value;
  out.parameters = res.x;
  out.iterations = res.evaluations;
  out.converged = res.converged;
  out.fidelity_vs_exact =
      fidelity(eigenvector_column(es, 0), ansatz_state(ansatz, res.x));
  return out;
}

std::vector<VQEResult> vqd_spectrum(const std::vector<PauliTerm>& h_terms,
                                    const AnsatzSpec& ansatz,
                                    const VQDConfig& cfg) {
  ansatz.validate();
  cfg.optimizer.validate();
  const std::size_t dim = std::size_t{1} << ansatz.n_qubits;
  if (cfg.levels < 1 || static_cast<std::size_t>(cfg.levels) > dim)
    throw Error("vqd_spectrum: levels must be in [1, 2^n]");

  const ComplexMatrix h =
      pauli_sum_matrix(h_terms, static_cast<std::size_t>(ansatz.n_qubits));
  std::vector<double> betas = cfg.betas;
  if (betas.empty())
    betas.assign(std::max(0, cfg.levels - 1), 2.0 * gershgorin_spread(h));
  if (betas.size() + 1 < static_cast<std::size_t>(cfg.levels))
    throw Error("vqd_spectrum: need a beta per prior level");
  for (double b : betas)
    if (!(b > 0.0)) throw Error("vqd_spectrum: betas must be positive");

  Rng rng(cfg.optimizer.seed);
  // compute-uncompute, factored: run A(theta) once, then each accepted
  // level's A(theta_j)^dagger; the |0...0> amplitude gives the overlap.
  std::vector<Circuit> uncompute;
  std::vector<VQEResult> results;

  for (int level = 0; level < cfg.levels; ++level) {
    const Objective objective = [&](const std::vector<double>& theta) {
      const StateVector st = ansatz_state(ansatz, theta);
      double value = expectation(h_terms, st);
      for (std::size_t j = 0; j < uncompute.size(); ++j)
        value += betas[j] * std::norm(run_circuit(uncompute[j], st).amps[0]);
      return value;
    };

    const OptimResult res = minimize_protocol(
        objective, ansatz.param_count(), cfg.optimizer, cfg.restarts, rng);

    VQEResult rec;
    rec.energy = expectation(h_terms, ansatz_state(ansatz, res.x));
    rec.parameters = res.x;
    rec.iterations = res.evaluations;
    rec.converged = res.converged;
    results.push_back(std::move(rec));
    uncompute.push_back(adjoint_circuit(ansatz_circuit(ansatz, res.x)));
  }

  std::stable_sort(results.begin(), results.end(),
                   [](const VQEResult& a, const VQEResult& b) {
                     return a.energy < b.energy;
                   });

  const EigenSystem es = eig_hermitian(h);
  for (std::size_t k = 0; k < results.size(); ++k)
    results[k].fidelity_vs_exact =
        fidelity(eigenvector_column(es, k),
                 ansatz_state(ansatz, results[k].parameters));
  return results;
}

std::string vqd_results_to_json(const std::vector<VQEResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < results.size(); ++k) {
    nlohmann::json e;
    e["n"] = k;
    e["energy"] = results[k].energy;
    e["fidelity"] = results[k].fidelity_vs_exact;
    e["iterations"] = results[k].iterations;
    e["converged"] = results[k].converged;
    e["params"] = results[k].parameters;
    arr.push_back(e);
  }
  return arr.dump(2) + "\n";
}

std::string fidelity_csv(const std::vector<VQEResult>& results) {
  std::string out = "n,fidelity\n";
  for (std::size_t k = 0; k < results.size(); ++k)
    out += std::to_string(k) + "," +
           io::format_double(results[k].fidelity_vs_exact) + "\n";
  return out;
}

}  // namespace qaho
