#pragma once
// Classical baselines for the oscillator spectrum (perturbation theory, WKB,
// exact diagonalization) and the error metrics used to compare methods.

#include <cstddef>
#include <string>
#include <vector>

#include "qaho/model.hpp"

namespace qaho {

// First-order perturbative energy E_n = (n + 1/2) + lambda*(3/4)(2n^2+2n+1).
double perturbation_energy(std::size_t n, double lambda);

// 2D first-order energy (nx+ny+1) + 6*lambda*(1/4)(nx^2+ny^2+nx+ny+1).
double perturbation_energy_2d(std::size_t nx, std::size_t ny, double lambda);

// Semiclassical estimate E_n = (n + 1/2) + (3*lambda/2)(n + 1/2)^2.
double wkb_energy(std::size_t n, double lambda);

// Ascending eigenvalues of hamiltonian(spec).
std::vector<double> exact_spectrum(const HamiltonianSpec& spec);

struct ErrorMetrics {
  double mape = 0.0;  // percent; meaningful only when mape_defined
  bool mape_defined = true;
  std::string diagnostic;  // reason when MAPE is undefined
  double mse = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  double residual_sigma = 0.0;  // population standard deviation of residuals
};

// MAPE uses the reference entries as denominators; a zero reference entry
// leaves MAPE undefined (diagnostic set) while the other metrics are computed.
ErrorMetrics error_metrics(const std::vector<double>& predicted,
                           const std::vector<double>& reference);

struct SpectrumReport {
  double lambda = 0.0;
  std::size_t levels = 0;
  std::vector<double> vqe;
  std::vector<double> perturbation;
  std::vector<double> wkb;
  std::vector<double> exact;
  ErrorMetrics vqe_vs_exact;
  ErrorMetrics vqe_vs_perturbation;
  ErrorMetrics vqe_vs_wkb;
};

// Assembles the comparison table: baseline columns from the closed forms and
// eigensolver, metrics with VQE as the predicted column in every pair.
SpectrumReport make_spectrum_report(const HamiltonianSpec& spec,
                                    const std::vector<double>& vqe_energies);

std::string spectrum_to_csv(const SpectrumReport& report);
std::string metrics_to_json(const SpectrumReport& report);

}  // namespace qaho
