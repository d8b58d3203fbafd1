#include "qaho/analysis.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "qaho/io.hpp"
#include "qaho/linalg.hpp"

namespace qaho {

double perturbation_energy(std::size_t n, double lambda) {
  const double nd = static_cast<double>(n);
  return nd + 0.5 + lambda * 0.75 * (2.0 * nd * nd + 2.0 * nd + 1.0);
}

double perturbation_energy_2d(std::size_t nx, std::size_t ny, double lambda) {
  const double x = static_cast<double>(nx);
  const double y = static_cast<double>(ny);
  return x + y + 1.0 + 1.5 * lambda * (x * x + y * y + x + y + 1.0);
}

double wkb_energy(std::size_t n, double lambda) {
  const double half = static_cast<double>(n) + 0.5;
  return half + 1.5 * lambda * half * half;
}

std::vector<double> exact_spectrum(const HamiltonianSpec& spec) {
  return eig_hermitian(hamiltonian(spec)).eigenvalues;
}

ErrorMetrics error_metrics(const std::vector<double>& predicted,
                           const std::vector<double>& reference) {
  if (predicted.empty() || predicted.size() != reference.size())
    throw Error("error_metrics: vectors must be non-empty and equal length");
  const std::size_t n = predicted.size();

  ErrorMetrics m;
  double abs_rel_sum = 0.0;
  double sq_sum = 0.0;
  double res_sum = 0.0;
  double ref_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = predicted[i] - reference[i];
    sq_sum += d * d;
    res_sum += d;
    ref_sum += reference[i];
    if (reference[i] == 0.0) {
      m.mape_defined = false;
      m.diagnostic = "MAPE undefined: reference entry " + std::to_string(i) +
                     " is zero";
    } else {
      abs_rel_sum += std::abs(d) / std::abs(reference[i]);
    }
  }
  m.mape = m.mape_defined ? abs_rel_sum / static_cast<double>(n) * 100.0
                          : std::numeric_limits<double>::quiet_NaN();
  m.mse = sq_sum / static_cast<double>(n);
  m.rmse = std::sqrt(m.mse);

  const double ref_mean = ref_sum / static_cast<double>(n);
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = reference[i] - ref_mean;
    ss_tot += c * c;
  }
  if (ss_tot == 0.0)
    m.r2 = sq_sum == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
  else
    m.r2 = 1.0 - sq_sum / ss_tot;

  const double res_mean = res_sum / static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = predicted[i] - reference[i] - res_mean;
    var += c * c;
  }
  m.residual_sigma = std::sqrt(var / static_cast<double>(n));
  return m;
}

SpectrumReport make_spectrum_report(const HamiltonianSpec& spec,
                                    const std::vector<double>& vqe_energies) {
  spec.validate();
  if (vqe_energies.size() != spec.dim)
    throw Error("make_spectrum_report: VQE column must have dim entries");

  SpectrumReport rep;
  rep.lambda = spec.lambda;
  rep.levels = spec.dim;
  rep.vqe = vqe_energies;
  rep.perturbation.resize(spec.dim);
  rep.wkb.resize(spec.dim);
  for (std::size_t k = 0; k < spec.dim; ++k) {
    rep.perturbation[k] = perturbation_energy(k, spec.lambda);
    rep.wkb[k] = wkb_energy(k, spec.lambda);
  }
  rep.exact = exact_spectrum(spec);
  rep.vqe_vs_exact = error_metrics(rep.vqe, rep.exact);
  rep.vqe_vs_perturbation = error_metrics(rep.vqe, rep.perturbation);
  rep.vqe_vs_wkb = error_metrics(rep.vqe, rep.wkb);
  return rep;
}

std::string spectrum_to_csv(const SpectrumReport& report) {
  std::string csv = "n,vqe,perturbation,wkb,exact\n";
  for (std::size_t k = 0; k < report.levels; ++k) {
    csv += std::to_string(k);
    csv += ',';
    csv += io::format_double(report.vqe[k]);
    csv += ',';
    csv += io::format_double(report.perturbation[k]);
    csv += ',';
    csv += io::format_double(report.wkb[k]);
    csv += ',';
    csv += io::format_double(report.exact[k]);
    csv += '\n';
  }
  return csv;
}

namespace {

nlohmann::json metrics_block(const ErrorMetrics& m) {
  nlohmann::json block;
  if (m.mape_defined) {
    block["mape"] = m.mape;
  } else {
    block["mape"] = nullptr;
    block["mape_diagnostic"] = m.diagnostic;
  }
  block["mse"] = m.mse;
  block["rmse"] = m.rmse;
  block["r2"] = m.r2;
  block["residual_sigma"] = m.residual_sigma;
  return block;
}

}  // namespace

std::string metrics_to_json(const SpectrumReport& report) {
  nlohmann::json doc;
  doc["vqe_vs_exact"] = metrics_block(report.vqe_vs_exact);
  doc["vqe_vs_perturbation"] = metrics_block(report.vqe_vs_perturbation);
  doc["vqe_vs_wkb"] = metrics_block(report.vqe_vs_wkb);
  return doc.dump(2) + "\n";
}

}  // namespace qaho
