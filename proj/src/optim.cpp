#include "qaho/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qaho/linalg.hpp"
#include "qaho/rng.hpp"

namespace qaho {

OptimResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opt) {
  if (x0.empty()) throw Error("nelder_mead: empty start point");
  if (opt.max_evals < 1) throw Error("nelder_mead: max_evals must be >= 1");
  const std::size_t n = x0.size();

  std::vector<std::vector<double>> sim(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) sim[k + 1][k] += opt.initial_edge;

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<double> fsim(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fsim[i] = eval(sim[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return fsim[a] < fsim[b];
                     });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = std::move(sim[order[i]]);
      f2[i] = fsim[order[i]];
    }
    sim = std::move(s2);
    fsim = std::move(f2);
  };
  sort_simplex();

  bool converged = false;
  while (evals < opt.max_evals) {
    double xspread = 0.0, fspread = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      fspread = std::max(fspread, std::abs(fsim[i] - fsim[0]));
      for (std::size_t k = 0; k < n; ++k)
        xspread = std::max(xspread, std::abs(sim[i][k] - sim[0][k]));
    }
    if (xspread <= opt.xatol && fspread <= opt.fatol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += sim[i][k] / double(n);

    auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + coeff * (centroid[k] - sim[n][k]);
      return x;
    };

    const std::vector<double> xr = blend(1.0);
    const double fr = eval(xr);
    bool shrink = false;
    if (fr < fsim[0]) {
      const std::vector<double> xe = blend(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        sim[n] = xe;
        fsim[n] = fe;
      } else {
        sim[n] = xr;
        fsim[n] = fr;
      }
    } else if (fr < fsim[n - 1]) {
      sim[n] = xr;
      fsim[n] = fr;
    } else if (fr < fsim[n]) {
      const std::vector<double> xc = blend(0.5);  // outside contraction
      const double fc = eval(xc);
      if (fc <= fr) {
        sim[n] = xc;
        fsim[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      const std::vector<double> xc = blend(-0.5);  // inside contraction
      const double fc = eval(xc);
      if (fc < fsim[n]) {
        sim[n] = xc;
        fsim[n] = fc;
      } else {
        shrink = true;
      }
    }

    if (shrink) {
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k)
          sim[i][k] = sim[0][k] + 0.5 * (sim[i][k] - sim[0][k]);
        fsim[i] = eval(sim[i]);
        if (evals >= opt.max_evals) break;
      }
    }
    sort_simplex();
  }

  OptimResult res;
  res.x = sim[0];
  res.value = fsim[0];
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

OptimResult spsa(const Objective& f, const std::vector<double>& x0,
                 const SpsaOptions& opt) {
  if (x0.empty()) throw Error("spsa: empty start point");
  if (opt.iterations < 1) throw Error("spsa: iterations must be >= 1");
  const std::size_t n = x0.size();
  Rng rng(opt.seed);

  std::vector<double> x = x0;
  std::vector<double> best_x = x0;
  double best_f = f(x0);
  int evals = 1;
  double best_at_midpoint = best_f;

  std::vector<double> delta(n), xp(n), xm(n);
  for (int k = 0; k < opt.iterations; ++k) {
    const double ck = opt.c / std::pow(double(k + 1), 0.101);
    const double ak =
        opt.a / std::pow(opt.stability + double(k + 1), 0.602);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double fp = f(xp), fm = f(xm);
    evals += 2;
    if (fp < best_f) {
      best_f = fp;
      best_x = xp;
    }
    if (fm < best_f) {
      best_f = fm;
      best_x = xm;
    }
    for (std::size_t i = 0; i < n; ++i)
      x[i] -= ak * (fp - fm) / (2.0 * ck * delta[i]);
    if (k + 1 == opt.iterations / 2) best_at_midpoint = best_f;
  }

  const double ff = f(x);
  ++evals;
  if (ff < best_f) {
    best_f = ff;
    best_x = x;
  }

  OptimResult res;
  res.x = std::move(best_x);
  res.value = best_f;
  res.evaluations = evals;
  res.converged = (best_at_midpoint - best_f) <= opt.tolerance;
  return res;
}

}  // namespace qaho
