// Acceptance gate: one line per criterion, measured values included.
// Exit code 0 only if every criterion passes.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qaho/analysis.hpp"
#include "qaho/circuit.hpp"
#include "qaho/evolution.hpp"
#include "qaho/linalg.hpp"
#include "qaho/model.hpp"
#include "qaho/rng.hpp"
#include "qaho/vqe.hpp"
#include "reference_data.hpp"

namespace fs = std::filesystem;
using namespace qaho;
using refdata::kOracleFockSpectrum8;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  int id;
  bool pass;
  std::string summary;
};

std::vector<Criterion> g_results;

void record(int id, bool pass, const std::string& summary) {
  g_results.push_back({id, pass, summary});
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id,
              summary.c_str());
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  return worst;
}

double frobenius_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      acc += std::norm(a.at(i, j) - b.at(i, j));
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------

void criterion_1_hamiltonian() {
  HamiltonianSpec spec;
  const auto start = std::chrono::steady_clock::now();
  const ComplexMatrix h = fock_hamiltonian(spec);
  const double elapsed = ms_since(start);

  double worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      worst = std::max(worst,
                       std::abs(h.at(i, j).real() -
                                refdata::kPublishedFockH8[i][j]));
  const bool pass = worst <= 1e-4 && elapsed < 1.0;
  record(1, pass,
         fmt("Hamiltonian matrix matches every displayed entry to 4 decimals "
             "(max |dH| = %.2e, tol 1e-4; built in %.3f ms, budget 1 ms)",
             worst, elapsed));
}

void criterion_2_phase_table() {
  const auto theta = potential_phase_diagonal(8, 0.05, 1.0);
  const std::array<double, 8> published = {2.0643, 1.0398, 0.4235, 0.1001,
                                           0.0,    0.1001, 0.4235, 1.0398};
  double worst = 0.0;
  for (std::size_t k = 0; k < 8; ++k)
    worst = std::max(worst, std::abs(-theta[k] - published[k]));
  record(2, worst <= 1e-4,
         fmt("phase table coefficients match to 4 decimals (max diff = %.2e, "
             "tol 1e-4)",
             worst));
}

void criterion_3_exact_spectrum() {
  HamiltonianSpec spec;
  const ComplexMatrix h = fock_hamiltonian(spec);
  const auto start = std::chrono::steady_clock::now();
  const auto levels = eig_hermitian(h).eigenvalues;
  const double elapsed = ms_since(start);

  double worst = 0.0;
  std::size_t worst_level = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double diff = std::abs(levels[k] - refdata::kPublishedExact[k]);
    if (diff > worst) {
      worst = diff;
      worst_level = k;
    }
  }
  const bool pass = worst <= 1e-6 && elapsed < 10.0;
  record(3, pass,
         fmt("eigenvalues match the published Exact column within 1e-6 "
             "(max |dE| = %.2e at level %zu; e.g. computed %.8f vs published "
             "%.8f; solved in %.3f ms, budget 10 ms)",
             worst, worst_level, levels[worst_level],
             refdata::kPublishedExact[worst_level], elapsed));
}

void criterion_4_perturbation_column() {
  double worst = 0.0;
  for (std::size_t n = 0; n < 8; ++n)
    worst = std::max(worst, std::abs(perturbation_energy(n, 0.05) -
                                     refdata::kPublishedPerturbation[n]));
  record(4, worst <= 1e-12,
         fmt("perturbation energies equal the published column at printed "
             "precision (max diff = %.2e, tol 1e-12)",
             worst));
}

void criterion_5_wkb_formula() {
  double formula_worst = 0.0;
  double table_worst = 0.0;
  for (std::size_t n = 0; n < 8; ++n) {
    const double half = static_cast<double>(n) + 0.5;
    formula_worst = std::max(
        formula_worst,
        std::abs(wkb_energy(n, 0.05) - (half + 0.075 * half * half)));
    table_worst = std::max(table_worst, std::abs(wkb_energy(n, 0.05) -
                                                 refdata::kPublishedWKB[n]));
  }
  record(5, formula_worst <= 1e-12,
         fmt("WKB energies equal the closed-form evaluation (max diff = %.2e, "
             "tol 1e-12); published WKB column differs from the formula by up "
             "to %.3f — documented, not matched",
             formula_worst, table_worst));
}

void criterion_6_metric_reproduction() {
  const std::vector<double> vqe(refdata::kPublishedVQE.begin(),
                                refdata::kPublishedVQE.end());
  const std::vector<double> exact(refdata::kPublishedExact.begin(),
                                  refdata::kPublishedExact.end());
  const std::vector<double> pert(refdata::kPublishedPerturbation.begin(),
                                 refdata::kPublishedPerturbation.end());
  const std::vector<double> wkb(refdata::kPublishedWKB.begin(),
                                refdata::kPublishedWKB.end());
  const ErrorMetrics ve = error_metrics(vqe, exact);
  const ErrorMetrics vp = error_metrics(vqe, pert);
  const ErrorMetrics vw = error_metrics(vqe, wkb);

  struct Sub {
    const char* name;
    double got;
    double want;
    double tol;  // absolute
  };
  const std::vector<Sub> subs = {
      {"VQE-vs-Exact MSE", ve.mse, 5.7374e-3, 0.01 * 5.7374e-3},
      {"VQE-vs-Exact RMSE", ve.rmse, 7.5747e-2, 0.01 * 7.5747e-2},
      {"VQE-vs-Exact MAPE", ve.mape, 1.1063, 0.2},
      {"VQE-vs-Perturbation MAPE", vp.mape, 6.71, 0.02 * 6.71},
      {"VQE-vs-Perturbation MSE", vp.mse, 0.6486, 0.02 * 0.6486},
      {"VQE-vs-Perturbation RMSE", vp.rmse, 0.8053, 0.02 * 0.8053},
      {"VQE-vs-WKB MAPE", vw.mape, 5.36, 0.02 * 5.36},
      {"VQE-vs-WKB R2", vw.r2, 0.9517, 0.02 * 0.9517},
  };
  int passing = 0;
  std::string gaps;
  for (const Sub& s : subs) {
    const bool ok = std::abs(s.got - s.want) <= s.tol;
    passing += ok ? 1 : 0;
    std::printf("       - %-26s recomputed %.6g vs published %.6g "
                "(tol %.2g) %s\n",
                s.name, s.got, s.want, s.tol, ok ? "ok" : "GAP");
    if (!ok) gaps += fmt("; %s recomputes to %.4f", s.name, s.got);
  }
  record(6, passing == static_cast<int>(subs.size()),
         fmt("published metric values reproduce (%d/%zu sub-checks)%s",
             passing, subs.size(), gaps.c_str()));
}

void criterion_7_variational_run() {
  const auto start = std::chrono::steady_clock::now();
  HamiltonianSpec spec;
  const auto terms = pauli_decompose(fock_hamiltonian(spec), 3);
  const auto levels = vqd_spectrum(terms, AnsatzSpec{}, VQDConfig{});
  const double elapsed = ms_since(start);

  double worst_floor = 0.0;   // most negative (energy - exact)
  double worst_gap = 0.0;     // max |energy - exact|
  double worst_fidelity = 1.0;
  for (std::size_t k = 0; k < 8; ++k) {
    worst_floor = std::min(worst_floor,
                           levels[k].energy - kOracleFockSpectrum8[k]);
    worst_gap = std::max(worst_gap,
                         std::abs(levels[k].energy - kOracleFockSpectrum8[k]));
    worst_fidelity = std::min(worst_fidelity, levels[k].fidelity_vs_exact);
  }
  const double ground_err = std::abs(levels[0].energy - 0.53215009);
  const bool pass = worst_floor >= -1e-9 && ground_err <= 1e-3 &&
                    worst_gap <= 5e-2 && worst_fidelity >= 0.999 &&
                    elapsed < 120000.0;
  record(7, pass,
         fmt("VQD spectrum: floor dip %.1e (tol -1e-9), ground |dE| = %.2e "
             "(tol 1e-3 vs 0.53215009), max |dE| = %.2e (tol 5e-2), min "
             "fidelity %.6f (tol 0.999), %.1f s (budget 120 s)",
             worst_floor, ground_err, worst_gap, worst_fidelity,
             elapsed / 1000.0));
}

void criterion_8_circuit_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  HamiltonianSpec spec;
  spec.representation = Representation::POSITION;
  const double t = kPi / 6.0;
  const Circuit c = evolution_circuit(spec, t);
  const ComplexMatrix from_circuit =
      scale(circuit_data_unitary(c), std::exp(cplx{0.0, c.global_phase}));
  const double evo_diff =
      max_entry_diff(from_circuit, split_evolution_operator(spec, t));

  double qft_diff = 0.0;
  for (std::size_t n = 1; n <= 4; ++n)
    qft_diff = std::max(
        qft_diff, max_entry_diff(circuit_data_unitary(qft_circuit(n)),
                                 qft_matrix(std::size_t{1} << n)));
  const double elapsed = ms_since(start);
  const bool pass = evo_diff <= 1e-8 && qft_diff <= 1e-10 && elapsed < 1000.0;
  record(8, pass,
         fmt("evolution circuit equals the split operator up to recorded "
             "global phase (max diff = %.2e, tol 1e-8); QFT circuits match "
             "the matrix for n=1..4 (max diff = %.2e, tol 1e-10); %.0f ms "
             "(budget 1 s)",
             evo_diff, qft_diff, elapsed));
}

void criterion_9_trajectory_properties() {
  const auto start = std::chrono::steady_clock::now();

  // 29-point anharmonic run on the position grid, exact propagator
  EvolutionConfig cfg;
  cfg.spec.representation = Representation::POSITION;
  cfg.method = EvolutionMethod::EXACT_EXPONENTIAL;
  cfg.shots = 0;
  const auto records = evolve_trajectory(cfg);

  double norm_err = 0.0;
  for (const TrajectoryRecord& rec : records) {
    double sum = 0.0;
    for (double p : rec.probabilities) sum += p;
    norm_err = std::max(norm_err, std::abs(sum - 1.0));
  }

  // energy drift, reproducing the states spectrally
  const ComplexMatrix h = hamiltonian(cfg.spec);
  const ComplexMatrix u_step =
      exact_evolution_operator(cfg.spec, cfg.t_max / cfg.steps);
  StateVector psi = StateVector::basis(8, 0);
  const double e0 = inner(psi, matvec(h, psi)).real();
  double energy_err = 0.0;
  for (int j = 0; j < cfg.steps; ++j) {
    psi = matvec(u_step, psi);
    energy_err =
        std::max(energy_err, std::abs(inner(psi, matvec(h, psi)).real() - e0));
  }

  // lambda=0 control in the ladder basis: 27 steps put a record at t = 2*pi
  EvolutionConfig control;
  control.spec.lambda = 0.0;
  control.spec.representation = Representation::FOCK;
  control.method = EvolutionMethod::EXACT_EXPONENTIAL;
  control.steps = 27;
  control.shots = 0;
  StateVector coherent(8);
  double fact = 1.0;
  for (std::size_t n = 0; n < 8; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    coherent.amps[n] = 1.0 / std::sqrt(fact);
  }
  coherent.normalize();
  control.initial_state = coherent;
  const auto ctrl = evolve_trajectory(control);
  const double revival = ctrl[9].autocorrelation;  // t_9 = 2*pi exactly

  // partial revival: max on (2*pi, 6*pi] beats the average; never full
  double late_max = 0.0;
  double mean = 0.0;
  double full = 0.0;
  for (int j = 1; j <= 28; ++j) {
    mean += records[j].autocorrelation;
    if (records[j].time > 2.0 * kPi)
      late_max = std::max(late_max, records[j].autocorrelation);
    if (j < 28)  // open interval (0, 6*pi)
      full = std::max(full, records[j].autocorrelation);
  }
  mean /= 28.0;

  const double elapsed = ms_since(start);
  const bool pass = norm_err <= 1e-9 && energy_err <= 1e-8 &&
                    revival >= 0.999 && late_max > mean && full < 0.999 &&
                    elapsed < 5000.0;
  record(9, pass,
         fmt("trajectory: norm drift %.1e (tol 1e-9), energy drift %.1e (tol "
             "1e-8), harmonic revival %.6f at t=2pi (tol 0.999), partial "
             "revival %.3f > mean %.3f, max autocorrelation before 6pi %.3f "
             "< 0.999; %.0f ms (budget 5 s)",
             norm_err, energy_err, revival, late_max, mean, full, elapsed));
}

void criterion_10_sampling() {
  double worst_tv = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    EvolutionConfig cfg;
    cfg.spec.representation = Representation::POSITION;
    cfg.shots = 8192;
    cfg.seed = seed;
    for (const TrajectoryRecord& rec : evolve_trajectory(cfg)) {
      double tv = 0.0;
      for (std::size_t i = 0; i < 8; ++i) {
        const std::string label = ket_label(i, 3);
        const auto& counts = rec.sampled_counts->counts;
        const auto it = counts.find(label);
        const double emp =
            it == counts.end()
                ? 0.0
                : static_cast<double>(it->second) / 8192.0;
        tv += std::abs(emp - rec.probabilities[i]);
      }
      worst_tv = std::max(worst_tv, 0.5 * tv);
    }
  }
  record(10, worst_tv <= 0.05,
         fmt("8192-shot sampling: worst total-variation distance %.4f over "
             "29 steps x 3 seeds (tol 0.05)",
             worst_tv));
}

// criterion 11 helpers ------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(QAHO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int ret = std::system(cmd.c_str());
  return WIFEXITED(ret) ? WEXITSTATUS(ret) : -1;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    files[entry.path().filename().string()] = body.str();
  }
  return files;
}

bool cli_deterministic(const std::string& args, const fs::path& dir) {
  fs::remove_all(dir);
  if (run_cli(args + " --out " + dir.string()) != 0) return false;
  const auto first = dir_contents(dir);
  if (run_cli(args + " --out " + dir.string()) != 0) return false;
  return first == dir_contents(dir) && !first.empty();
}

void criterion_11_property_suites() {
  // Pauli round trip
  HamiltonianSpec spec;
  const ComplexMatrix h = fock_hamiltonian(spec);
  double pauli_diff =
      max_entry_diff(h, pauli_sum_matrix(pauli_decompose(h, 3), 3));
  Rng rng(99);
  ComplexMatrix randh(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    randh.at(i, i) = rng.uniform(-1, 1);
    for (std::size_t j = i + 1; j < 8; ++j) {
      randh.at(i, j) = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      randh.at(j, i) = std::conj(randh.at(i, j));
    }
  }
  pauli_diff = std::max(
      pauli_diff,
      max_entry_diff(randh, pauli_sum_matrix(pauli_decompose(randh, 3), 3)));

  // filter ancilla restoration on a generic input state
  StateVector input(8);
  for (auto& a : input.amps) a = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  input.normalize();
  double leakage = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const Circuit f = filter_circuit(ket_label(i, 3), 0.37, 3);
    StateVector full(std::size_t{1} << f.width());
    for (std::size_t k = 0; k < 8; ++k) full.amps[k] = input.amps[k];
    leakage = std::max(leakage, ancilla_leakage(f, full));
  }

  // split-operator error ratio under step halving
  HamiltonianSpec pos = spec;
  pos.representation = Representation::POSITION;
  const auto split_err = [&pos](double t) {
    return frobenius_diff(split_evolution_operator(pos, t),
                          exact_evolution_operator(pos, t));
  };
  const double ratio = split_err(0.02) / split_err(0.01);

  // composition law of the exact propagator
  const double comp_diff =
      max_entry_diff(mul(exact_evolution_operator(pos, 0.3),
                         exact_evolution_operator(pos, 0.7)),
                     exact_evolution_operator(pos, 1.0));

  // seeded byte-determinism of every CLI artifact set
  const fs::path root = fs::temp_directory_path() / "qaho_acceptance";
  const bool grid_ok = cli_deterministic("grid", root / "grid");
  const bool evolve_ok = cli_deterministic(
      "evolve --steps 6 --shots 8192 --seed 3", root / "evolve");
  const bool vqe_ok = cli_deterministic(
      "vqe --levels 2 --reps 1 --max-evals 800 --restarts 2 --seed 1",
      root / "vqe");
  const bool spectrum_ok =
      cli_deterministic("spectrum --seed 2", root / "spectrum");

  const bool pass = pauli_diff <= 1e-10 && leakage <= 1e-12 && ratio >= 3.5 &&
                    ratio <= 4.5 && comp_diff <= 1e-9 && grid_ok &&
                    evolve_ok && vqe_ok && spectrum_ok;
  record(11, pass,
         fmt("properties: Pauli round trip %.1e (tol 1e-10), filter leakage "
             "%.1e (tol 1e-12), split error ratio %.2f (tol [3.5, 4.5]), "
             "composition law %.1e (tol 1e-9), CLI artifacts byte-identical "
             "on reruns [grid %s, evolve %s, vqe %s, spectrum %s]",
             pauli_diff, leakage, ratio, comp_diff, grid_ok ? "yes" : "NO",
             evolve_ok ? "yes" : "NO", vqe_ok ? "yes" : "NO",
             spectrum_ok ? "yes" : "NO"));
}

}  // namespace

int main() {
  using CriterionFn = void (*)();
  const std::array<std::pair<int, CriterionFn>, 11> criteria = {{
      {1, criterion_1_hamiltonian},
      {2, criterion_2_phase_table},
      {3, criterion_3_exact_spectrum},
      {4, criterion_4_perturbation_column},
      {5, criterion_5_wkb_formula},
      {6, criterion_6_metric_reproduction},
      {7, criterion_7_variational_run},
      {8, criterion_8_circuit_equivalence},
      {9, criterion_9_trajectory_properties},
      {10, criterion_10_sampling},
      {11, criterion_11_property_suites},
  }};
  for (const auto& [id, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      record(id, false, fmt("threw: %s", e.what()));
    }
  }

  int passed = 0;
  for (const Criterion& c : g_results) passed += c.pass ? 1 : 0;
  std::printf("%d of %zu criteria pass\n", passed, g_results.size());
  return passed == static_cast<int>(g_results.size()) ? 0 : 1;
}
