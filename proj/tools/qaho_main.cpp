// Command-line front end: spectrum, evolve, vqe, grid.
//
// Configuration precedence is flags > --config file > built-in defaults.
// Every run emits run_config.json holding the fully resolved configuration;
// feeding that file back through --config re-executes the run identically.
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaho/analysis.hpp"
#include "qaho/evolution.hpp"
#include "qaho/io.hpp"
#include "qaho/linalg.hpp"
#include "qaho/model.hpp"
#include "qaho/vqe.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qaho;

namespace {

// ---------------------------------------------------------------------------
// enum <-> string

Representation parse_representation(const std::string& s) {
  if (s == "fock") return Representation::FOCK;
  if (s == "position") return Representation::POSITION;
  throw Error("unknown representation '" + s + "' (fock | position)");
}

std::string representation_name(Representation r) {
  return r == Representation::FOCK ? "fock" : "position";
}

EvolutionMethod parse_method(const std::string& s) {
  if (s == "exact") return EvolutionMethod::EXACT_EXPONENTIAL;
  if (s == "split") return EvolutionMethod::SPLIT_PRODUCT;
  if (s == "circuit") return EvolutionMethod::CIRCUIT;
  throw Error("unknown method '" + s + "' (exact | split | circuit)");
}

std::string method_name(EvolutionMethod m) {
  switch (m) {
    case EvolutionMethod::EXACT_EXPONENTIAL: return "exact";
    case EvolutionMethod::SPLIT_PRODUCT: return "split";
    default: return "circuit";
  }
}

OptimizerMethod parse_optimizer(const std::string& s) {
  if (s == "nelder_mead") return OptimizerMethod::NELDER_MEAD;
  if (s == "spsa") return OptimizerMethod::SPSA;
  throw Error("unknown optimizer '" + s + "' (nelder_mead | spsa)");
}

std::string optimizer_name(OptimizerMethod m) {
  return m == OptimizerMethod::NELDER_MEAD ? "nelder_mead" : "spsa";
}

Entangler parse_entangler(const std::string& s) {
  if (s == "cz_full") return Entangler::CZ_FULL;
  if (s == "cz_linear") return Entangler::CZ_LINEAR;
  throw Error("unknown entangler '" + s + "' (cz_full | cz_linear)");
}

std::string entangler_name(Entangler e) {
  return e == Entangler::CZ_FULL ? "cz_full" : "cz_linear";
}

GateKind parse_rotation(const std::string& s) {
  if (s == "ry") return GateKind::RY;
  if (s == "rz") return GateKind::RZ;
  throw Error("unknown rotation '" + s + "' (ry | rz)");
}

std::string rotation_name(GateKind k) {
  return k == GateKind::RY ? "ry" : "rz";
}

// ---------------------------------------------------------------------------
// config file plumbing

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw Error(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error("unknown key '" + key + "' in " + where);
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("config file " + path + " is not valid JSON: " + e.what());
  }
  require_keys(doc, "config", {"command", "seed", "out", "format",
                               "hamiltonian", "spectrum", "evolve", "vqe",
                               "grid"});
  return doc;
}

const json* section(const json& doc, const char* name) {
  if (doc.contains(name)) return &doc.at(name);
  return nullptr;
}

template <typename T>
T pick(const std::optional<T>& flag, const json* sec, const char* key,
       T fallback) {
  if (flag) return *flag;
  if (sec && sec->contains(key)) {
    try {
      return sec->at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(std::string("bad value for '") + key + "': " + e.what());
    }
  }
  return fallback;
}

// ---------------------------------------------------------------------------
// flag bundles

struct ModelFlags {
  std::optional<std::size_t> dim;
  std::optional<double> lambda;
  std::optional<std::string> representation;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dim", dim, "Hamiltonian truncation dimension");
    cmd->add_option("--lambda", lambda, "anharmonicity strength");
    cmd->add_option("--representation", representation, "fock | position");
  }

  HamiltonianSpec resolve(const json* sec, Representation fallback) const {
    HamiltonianSpec spec;
    spec.dim = pick(dim, sec, "dim", std::size_t{8});
    spec.lambda = pick(lambda, sec, "lambda", 0.05);
    spec.representation = parse_representation(pick(
        representation, sec, "representation", representation_name(fallback)));
    spec.validate();
    return spec;
  }
};

struct VqdFlags {
  ModelFlags model;
  std::optional<int> levels;
  std::optional<int> restarts;
  std::optional<int> reps;
  std::optional<std::string> entangler;
  std::optional<std::string> optimizer;
  std::optional<int> max_evals;
  std::optional<double> tolerance;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--levels", levels, "energy levels to resolve");
    cmd->add_option("--restarts", restarts, "optimizer restarts per level");
    cmd->add_option("--reps", reps, "ansatz entangling repetitions");
    cmd->add_option("--entangler", entangler, "cz_full | cz_linear");
    cmd->add_option("--optimizer", optimizer, "nelder_mead | spsa");
    cmd->add_option("--max-evals", max_evals, "objective budget per run");
    cmd->add_option("--tolerance", tolerance, "optimizer tolerance");
  }
};

struct EvolveFlags {
  ModelFlags model;
  std::optional<double> t_max;
  std::optional<int> steps;
  std::optional<std::string> method;
  std::optional<std::uint64_t> shots;
  std::optional<std::size_t> initial;

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--t-max", t_max, "final evolution time");
    cmd->add_option("--steps", steps, "number of time steps");
    cmd->add_option("--method", method, "exact | split | circuit");
    cmd->add_option("--shots", shots, "samples per step (0 disables)");
    cmd->add_option("--initial", initial, "initial basis-state index");
  }
};

struct GridFlags {
  std::optional<std::size_t> n;
  std::optional<double> lambda;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "mesh points per axis");
    cmd->add_option("--lambda", lambda, "anharmonicity strength");
  }
};

// ---------------------------------------------------------------------------
// resolved commands

struct ArtifactFile {
  std::string name;
  std::string text;
};

struct SpectrumPlan {
  HamiltonianSpec spec;
  AnsatzSpec ansatz;
  VQDConfig vqd;
  bool full_table = false;  // spectrum command: levels pinned to dim

  json describe() const {
    json sec;
    sec["levels"] = vqd.levels;
    sec["restarts"] = vqd.restarts;
    sec["betas"] = vqd.betas;
    sec["reps"] = ansatz.reps;
    json rot = json::array();
    for (GateKind k : ansatz.rotations) rot.push_back(rotation_name(k));
    sec["rotations"] = rot;
    sec["entangler"] = entangler_name(ansatz.entangler);
    sec["optimizer"] = {{"method", optimizer_name(vqd.optimizer.method)},
                        {"max_evals", vqd.optimizer.max_evals},
                        {"tolerance", vqd.optimizer.tolerance}};
    return sec;
  }
};

SpectrumPlan resolve_vqd(const VqdFlags& flags, const json& doc,
                         const char* section_name, std::uint64_t seed,
                         bool full_table) {
  const json* ham = section(doc, "hamiltonian");
  const json* sec = section(doc, section_name);
  if (ham)
    require_keys(*ham, "hamiltonian", {"dim", "lambda", "representation"});
  if (sec)
    require_keys(*sec, section_name,
                 {"levels", "restarts", "betas", "reps", "rotations",
                  "entangler", "optimizer"});

  SpectrumPlan plan;
  plan.full_table = full_table;
  plan.spec = flags.model.resolve(ham, Representation::FOCK);

  plan.ansatz.n_qubits = static_cast<int>(plan.spec.n_qubits());
  plan.ansatz.reps = pick(flags.reps, sec, "reps", 3);
  plan.ansatz.entangler =
      parse_entangler(pick(flags.entangler, sec, "entangler",
                           std::string("cz_full")));
  if (sec && sec->contains("rotations")) {
    plan.ansatz.rotations.clear();
    for (const auto& r : sec->at("rotations"))
      plan.ansatz.rotations.push_back(parse_rotation(r.get<std::string>()));
  }
  plan.ansatz.validate();

  plan.vqd.levels =
      pick(flags.levels, sec, "levels", static_cast<int>(plan.spec.dim));
  plan.vqd.restarts = pick(flags.restarts, sec, "restarts", 5);
  if (sec && sec->contains("betas"))
    plan.vqd.betas = sec->at("betas").get<std::vector<double>>();
  plan.vqd.optimizer.method = parse_optimizer(
      pick(flags.optimizer, sec ? section(*sec, "optimizer") : nullptr,
           "method", std::string("nelder_mead")));
  plan.vqd.optimizer.max_evals = pick(
      flags.max_evals, sec ? section(*sec, "optimizer") : nullptr, "max_evals",
      6000);
  plan.vqd.optimizer.tolerance = pick(
      flags.tolerance, sec ? section(*sec, "optimizer") : nullptr, "tolerance",
      1e-14);
  plan.vqd.optimizer.seed = seed;
  plan.vqd.optimizer.validate();
  if (sec && sec->contains("optimizer"))
    require_keys(sec->at("optimizer"), "optimizer",
                 {"method", "max_evals", "tolerance"});

  if (plan.vqd.levels < 1 ||
      plan.vqd.levels > static_cast<int>(plan.spec.dim))
    throw Error("levels must lie in [1, dim]");
  if (full_table && plan.vqd.levels != static_cast<int>(plan.spec.dim))
    throw Error("spectrum compares against the full table; levels must equal "
                "dim (use the vqe command for partial spectra)");
  if (plan.vqd.restarts < 1) throw Error("restarts must be >= 1");
  return plan;
}

std::vector<VQEResult> run_vqd(const SpectrumPlan& plan) {
  const auto terms =
      pauli_decompose(hamiltonian(plan.spec), plan.spec.n_qubits());
  return vqd_spectrum(terms, plan.ansatz, plan.vqd);
}

std::vector<ArtifactFile> run_spectrum(const SpectrumPlan& plan) {
  const auto levels = run_vqd(plan);
  std::vector<double> energies;
  for (const VQEResult& r : levels) energies.push_back(r.energy);
  const SpectrumReport rep = make_spectrum_report(plan.spec, energies);
  return {{"spectrum.csv", spectrum_to_csv(rep)},
          {"metrics.json", metrics_to_json(rep)}};
}

std::vector<ArtifactFile> run_vqe_cmd(const SpectrumPlan& plan) {
  const auto levels = run_vqd(plan);
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (!levels[k].converged)
      std::cerr << "warning: level " << k
                << " optimizer did not converge; result recorded as-is\n";
  return {{"vqd.json", vqd_results_to_json(levels)},
          {"fidelity.csv", fidelity_csv(levels)}};
}

std::string counts_csv(const std::vector<TrajectoryRecord>& records,
                       std::size_t n_qubits) {
  std::string csv = "t";
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t i = 0; i < dim; ++i) csv += ",c" + ket_label(i, n_qubits);
  csv += '\n';
  for (const TrajectoryRecord& rec : records) {
    csv += io::format_double(rec.time);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string label = ket_label(i, n_qubits);
      const auto& counts = rec.sampled_counts->counts;
      const auto it = counts.find(label);
      csv += ',';
      csv += std::to_string(it == counts.end() ? 0 : it->second);
    }
    csv += '\n';
  }
  return csv;
}

std::vector<ArtifactFile> run_evolve(const EvolutionConfig& cfg) {
  const auto records = evolve_trajectory(cfg);
  std::vector<ArtifactFile> files = {
      {"trajectory.csv", trajectory_to_csv(records)}};
  if (cfg.shots > 0)
    files.push_back(
        {"counts.csv", counts_csv(records, cfg.spec.n_qubits())});
  return files;
}

// ---------------------------------------------------------------------------
// output

// Generic row-object mirror of a CSV artifact, emitted under --format json.
json csv_as_json(const std::string& csv) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : csv) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    return cells;
  };
  const std::vector<std::string> header = split(lines.at(0));
  json rows = json::array();
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::vector<std::string> cells = split(lines[r]);
    json row;
    for (std::size_t c = 0; c < header.size(); ++c)
      row[header[c]] = std::stod(cells.at(c));
    rows.push_back(row);
  }
  return rows;
}

void write_artifacts(const fs::path& out_dir,
                     std::vector<ArtifactFile> files, bool json_twins,
                     const json& run_config) {
  if (json_twins) {
    std::vector<ArtifactFile> twins;
    for (const ArtifactFile& f : files) {
      if (f.name.size() < 4 || f.name.substr(f.name.size() - 4) != ".csv")
        continue;
      twins.push_back({f.name.substr(0, f.name.size() - 4) + ".json",
                       csv_as_json(f.text).dump(2) + "\n"});
    }
    files.insert(files.end(), twins.begin(), twins.end());
  }
  fs::create_directories(out_dir);
  for (const ArtifactFile& f : files) io::atomic_write(out_dir / f.name, f.text);
  io::atomic_write(out_dir / "run_config.json", run_config.dump(2) + "\n");
}

json model_json(const HamiltonianSpec& spec) {
  return {{"dim", spec.dim},
          {"lambda", spec.lambda},
          {"representation", representation_name(spec.representation)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discretized quartic anharmonic oscillator: spectra, gate-level time "
      "evolution, and variational eigensolvers"};
  app.require_subcommand(1);

  std::optional<std::string> config_flag;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> out_flag;
  std::optional<std::string> format_flag;
  app.add_option("--config", config_flag,
                 "JSON config file; explicit flags override its values");
  app.add_option("--seed", seed_flag, "seed for sampling and optimization");
  app.add_option("--out", out_flag, "output directory");
  app.add_option("--format", format_flag,
                 "csv | json (json adds row-object twins of CSV artifacts)")
      ->check(CLI::IsMember({"csv", "json"}));

  VqdFlags spectrum_flags;
  VqdFlags vqe_flags;
  EvolveFlags evolve_flags;
  GridFlags grid_flags;

  CLI::App* cmd_spectrum = app.add_subcommand(
      "spectrum", "VQD energies against perturbation/WKB/exact baselines");
  spectrum_flags.attach(cmd_spectrum);
  CLI::App* cmd_evolve =
      app.add_subcommand("evolve", "time-evolve a state on the position grid");
  evolve_flags.attach(cmd_evolve);
  CLI::App* cmd_vqe = app.add_subcommand(
      "vqe", "variational spectrum with per-level fidelity records");
  vqe_flags.attach(cmd_vqe);
  CLI::App* cmd_grid =
      app.add_subcommand("grid", "tabulate the 2D quartic potential surface");
  grid_flags.attach(cmd_grid);
  for (CLI::App* sub : {cmd_spectrum, cmd_evolve, cmd_vqe, cmd_grid})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  // Phase 1: resolve and validate the full configuration.
  json run_config;
  fs::path out_dir;
  bool json_twins = false;
  std::optional<SpectrumPlan> plan;
  std::optional<EvolutionConfig> evolution;
  std::size_t grid_n = 8;
  double grid_lambda = 0.05;
  std::string command;
  try {
    json doc = json::object();
    if (config_flag) doc = load_config(*config_flag);

    const std::uint64_t seed =
        pick(seed_flag, &doc, "seed", std::uint64_t{0});
    const std::string out =
        pick(out_flag, &doc, "out", std::string("."));
    const std::string format =
        pick(format_flag, &doc, "format", std::string("csv"));
    if (format != "csv" && format != "json")
      throw Error("unknown format '" + format + "' (csv | json)");
    out_dir = out;
    json_twins = format == "json";

    run_config["seed"] = seed;
    run_config["out"] = out;
    run_config["format"] = format;

    if (cmd_spectrum->parsed() || cmd_vqe->parsed()) {
      const bool full = cmd_spectrum->parsed();
      command = full ? "spectrum" : "vqe";
      plan = resolve_vqd(full ? spectrum_flags : vqe_flags, doc,
                         command.c_str(), seed, full);
      run_config["hamiltonian"] = model_json(plan->spec);
      run_config[command] = plan->describe();
    } else if (cmd_evolve->parsed()) {
      command = "evolve";
      const json* ham = section(doc, "hamiltonian");
      const json* sec = section(doc, "evolve");
      if (ham)
        require_keys(*ham, "hamiltonian", {"dim", "lambda", "representation"});
      if (sec)
        require_keys(*sec, "evolve",
                     {"t_max", "steps", "method", "shots",
                      "initial_basis_index"});
      EvolutionConfig cfg;
      cfg.spec = evolve_flags.model.resolve(ham, Representation::POSITION);
      cfg.t_max = pick(evolve_flags.t_max, sec, "t_max", cfg.t_max);
      cfg.steps = pick(evolve_flags.steps, sec, "steps", 28);
      cfg.method = parse_method(
          pick(evolve_flags.method, sec, "method", std::string("split")));
      cfg.shots = pick(evolve_flags.shots, sec, "shots", std::uint64_t{8192});
      cfg.initial_basis_index =
          pick(evolve_flags.initial, sec, "initial_basis_index",
               std::size_t{0});
      cfg.seed = seed;
      cfg.validate();
      evolution = cfg;
      run_config["hamiltonian"] = model_json(cfg.spec);
      run_config["evolve"] = {{"t_max", cfg.t_max},
                              {"steps", cfg.steps},
                              {"method", method_name(cfg.method)},
                              {"shots", cfg.shots},
                              {"initial_basis_index", cfg.initial_basis_index}};
    } else {
      command = "grid";
      const json* sec = section(doc, "grid");
      if (sec) require_keys(*sec, "grid", {"n", "lambda"});
      const json* ham = section(doc, "hamiltonian");
      std::optional<std::size_t> ham_n;
      std::optional<double> ham_lambda;
      if (ham) {
        require_keys(*ham, "hamiltonian", {"dim", "lambda", "representation"});
        if (ham->contains("dim")) ham_n = ham->at("dim").get<std::size_t>();
        if (ham->contains("lambda"))
          ham_lambda = ham->at("lambda").get<double>();
      }
      grid_n = pick(grid_flags.n, sec, "n", ham_n.value_or(8));
      grid_lambda =
          pick(grid_flags.lambda, sec, "lambda", ham_lambda.value_or(0.05));
      if (grid_n == 0 || grid_n % 2 != 0)
        throw Error("grid size must be a positive even number");
      if (!std::isfinite(grid_lambda) || grid_lambda < 0.0)
        throw Error("lambda must be finite and non-negative");
      run_config["grid"] = {{"n", grid_n}, {"lambda", grid_lambda}};
    }
    run_config["command"] = command;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  // Phase 2: compute, then write everything at once.
  try {
    std::vector<ArtifactFile> files;
    if (plan && plan->full_table) {
      files = run_spectrum(*plan);
    } else if (plan) {
      files = run_vqe_cmd(*plan);
    } else if (evolution) {
      files = run_evolve(*evolution);
    } else {
      files = {{"potential.csv", grid_to_csv(potential_grid(grid_n,
                                                            grid_lambda))}};
    }
    write_artifacts(out_dir, std::move(files), json_twins, run_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
