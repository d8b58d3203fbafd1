#include "qaho/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qaho/io.hpp"

namespace qaho {

namespace {

ComplexMatrix phase_diagonal_matrix(const std::vector<double>& phases) {
  ComplexMatrix d(phases.size(), phases.size());
  for (std::size_t k = 0; k < phases.size(); ++k)
    d.at(k, k) = cplx{std::cos(phases[k]), std::sin(phases[k])};
  return d;
}

void require_position(const HamiltonianSpec& spec, const char* who) {
  if (spec.representation != Representation::POSITION)
    throw Error(std::string(who) + ": POSITION representation required");
}

std::vector<double> probabilities_of(const StateVector& psi) {
  std::vector<double> p(psi.dim);
  for (std::size_t i = 0; i < psi.dim; ++i) p[i] = std::norm(psi.amps[i]);
  return p;
}

StateVector run_circuit_on_data(const Circuit& c, const StateVector& data) {
  const std::size_t full_dim = std::size_t{1} << c.width();
  StateVector full(full_dim);
  std::copy(data.amps.begin(), data.amps.end(), full.amps.begin());
  const StateVector out = run_circuit(c, full);
  if (ancilla_leakage(c, out) > 1e-9)
    throw Error("evolve_trajectory: ancillas not restored to |0>");
  StateVector result(data.dim);
  const cplx phase{std::cos(c.global_phase), std::sin(c.global_phase)};
  for (std::size_t i = 0; i < data.dim; ++i)
    result.amps[i] = phase * out.amps[i];
  return result;
}

}  // namespace

void EvolutionConfig::validate() const {
  spec.validate();
  if (method != EvolutionMethod::EXACT_EXPONENTIAL &&
      spec.representation != Representation::POSITION)
    throw Error(
        "EvolutionConfig: split/circuit methods require the POSITION "
        "representation");
  if (steps < 1) throw Error("EvolutionConfig: steps must be >= 1");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error("EvolutionConfig: t_max must be positive and finite");
  if (initial_state.has_value()) {
    if (initial_state->dim != spec.dim)
      throw Error("EvolutionConfig: initial state dimension mismatch");
    if (std::abs(initial_state->norm() - 1.0) > 1e-9)
      throw Error("EvolutionConfig: initial state not normalized");
  } else if (initial_basis_index >= spec.dim) {
    throw Error("EvolutionConfig: initial basis index out of range");
  }
}

std::vector<double> potential_phase_diagonal(std::size_t n, double lambda,
                                             double t) {
  const ComplexMatrix x = position_op(n);  // rejects odd n
  std::vector<double> theta(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = x.at(k, k).real();
    const double x2 = xk * xk;
    theta[k] = -t * (0.5 * x2 + lambda * x2 * x2);
  }
  return theta;
}

ComplexMatrix split_evolution_operator(const HamiltonianSpec& spec, double t) {
  spec.validate();
  require_position(spec, "split_evolution_operator");
  const ComplexMatrix d_pot =
      phase_diagonal_matrix(potential_phase_diagonal(spec.dim, spec.lambda, t));
  const ComplexMatrix d_kin =
      phase_diagonal_matrix(potential_phase_diagonal(spec.dim, 0.0, t));
  const ComplexMatrix f = qft_matrix(spec.dim);
  return mul(mul(adjoint(f), mul(d_kin, f)), d_pot);
}

ComplexMatrix exact_evolution_operator(const HamiltonianSpec& spec, double t) {
  spec.validate();
  return matexp_unitary(hamiltonian(spec), t);
}

Circuit evolution_circuit(const HamiltonianSpec& spec, double t) {
  spec.validate();
  require_position(spec, "evolution_circuit");
  const int n = static_cast<int>(spec.n_qubits());
  Circuit c;
  c.n_data = n;
  c.n_ancilla = std::max(0, n - 1);
  c.append(diagonal_phase_circuit(
      potential_phase_diagonal(spec.dim, spec.lambda, t), n));
  c.append(qft_circuit(n));
  c.append(
      diagonal_phase_circuit(potential_phase_diagonal(spec.dim, 0.0, t), n));
  c.append(iqft_circuit(n));
  return c;
}

std::vector<TrajectoryRecord> evolve_trajectory(const EvolutionConfig& cfg) {
  cfg.validate();
  const std::size_t dim = cfg.spec.dim;
  const StateVector psi0 = cfg.initial_state.has_value()
                               ? *cfg.initial_state
                               : StateVector::basis(dim, cfg.initial_basis_index);
  const double dt = cfg.t_max / cfg.steps;

  std::vector<StateVector> states;
  states.reserve(cfg.steps + 1);

  switch (cfg.method) {
    case EvolutionMethod::EXACT_EXPONENTIAL: {
      const EigenSystem es = eig_hermitian(hamiltonian(cfg.spec));
      const StateVector coeffs = matvec(adjoint(es.eigenvectors), psi0);
      for (int j = 0; j <= cfg.steps; ++j) {
        const double t = dt * j;
        StateVector rotated(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          const double ph = -es.eigenvalues[k] * t;
          rotated.amps[k] = coeffs.amps[k] * cplx{std::cos(ph), std::sin(ph)};
        }
        states.push_back(matvec(es.eigenvectors, rotated));
      }
      break;
    }
    case EvolutionMethod::SPLIT_PRODUCT: {
      require_position(cfg.spec, "evolve_trajectory(SPLIT_PRODUCT)");
      const ComplexMatrix u = split_evolution_operator(cfg.spec, dt);
      states.push_back(psi0);
      for (int j = 1; j <= cfg.steps; ++j)
        states.push_back(matvec(u, states.back()));
      break;
    }
    case EvolutionMethod::CIRCUIT: {
      require_position(cfg.spec, "evolve_trajectory(CIRCUIT)");
      for (int j = 0; j <= cfg.steps; ++j)
        states.push_back(
            run_circuit_on_data(evolution_circuit(cfg.spec, dt * j), psi0));
      break;
    }
  }

  std::vector<TrajectoryRecord> records;
  records.reserve(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    TrajectoryRecord rec;
    rec.time = dt * static_cast<double>(j);
    rec.probabilities = probabilities_of(states[j]);
    rec.autocorrelation =
        std::clamp(std::norm(inner(psi0, states[j])), 0.0, 1.0);
    if (cfg.shots > 0)
      rec.sampled_counts =
          sample_counts(states[j], cfg.shots, cfg.seed ^ static_cast<std::uint64_t>(j));
    records.push_back(std::move(rec));
  }
  return records;
}

ComplexMatrix evolution_operator_2d(const HamiltonianSpec& spec, double t) {
  spec.validate();
  require_position(spec, "evolution_operator_2d");
  const ComplexMatrix d_pot =
      phase_diagonal_matrix(potential_phase_diagonal(spec.dim, spec.lambda, t));
  const ComplexMatrix d_kin =
      phase_diagonal_matrix(potential_phase_diagonal(spec.dim, 0.0, t));
  const ComplexMatrix f = qft_matrix(spec.dim);
  const ComplexMatrix k = mul(adjoint(f), mul(d_kin, f));
  const ComplexMatrix eye = ComplexMatrix::identity(spec.dim);
  return mul(mul(kron(k, eye), kron(eye, k)),
             mul(kron(d_pot, eye), kron(eye, d_pot)));
}

PotentialGrid potential_grid(std::size_t n, double lambda) {
  const ComplexMatrix x = position_op(n);
  PotentialGrid grid;
  grid.coordinates.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.coordinates[i] = x.at(i, i).real();
  grid.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double xi = grid.coordinates[i], yj = grid.coordinates[j];
      grid.values[i][j] = 0.5 * (xi * xi + yj * yj) +
                          lambda * (xi * xi * xi * xi + yj * yj * yj * yj);
    }
  }
  return grid;
}

std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw Error("trajectory_to_csv: no records");
  const std::size_t dim = records[0].probabilities.size();
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  const bool with_counts =
      std::all_of(records.begin(), records.end(),
                  [](const TrajectoryRecord& r) {
                    return r.sampled_counts.has_value();
                  });

  std::ostringstream out;
  out << "t";
  for (std::size_t i = 0; i < dim; ++i) out << ",p" << ket_label(i, n);
  out << ",autocorr";
  if (with_counts)
    for (std::size_t i = 0; i < dim; ++i) out << ",c" << ket_label(i, n);
  out << "\n";

  for (const TrajectoryRecord& rec : records) {
    if (rec.probabilities.size() != dim)
      throw Error("trajectory_to_csv: ragged probability rows");
    out << io::format_double(rec.time);
    for (double p : rec.probabilities) out << "," << io::format_double(p);
    out << "," << io::format_double(rec.autocorrelation);
    if (with_counts) {
      for (std::size_t i = 0; i < dim; ++i) {
        const auto& counts = rec.sampled_counts->counts;
        const auto it = counts.find(ket_label(i, n));
        out << "," << (it == counts.end() ? 0 : it->second);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string grid_to_csv(const PotentialGrid& grid) {
  std::ostringstream out;
  out << "x,y,V\n";
  for (std::size_t i = 0; i < grid.coordinates.size(); ++i)
    for (std::size_t j = 0; j < grid.coordinates.size(); ++j)
      out << io::format_double(grid.coordinates[i]) << ","
          << io::format_double(grid.coordinates[j]) << ","
          << io::format_double(grid.values[i][j]) << "\n";
  return out.str();
}

}  // namespace qaho
