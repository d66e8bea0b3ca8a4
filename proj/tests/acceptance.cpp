// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jacobilab/experiments.hpp"
#include "jacobilab/multiplier.hpp"

using namespace jacobilab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& label, double budget_seconds,
                   const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > budget_seconds) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime ") +
                  std::to_string(secs) + " s exceeds budget " + std::to_string(budget_seconds) +
                  " s";
  }
  std::printf("%s criterion %2d: %s (%.1f s)%s%s\n", out.pass ? "PASS" : "FAIL", id,
              label.c_str(), secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const JacobiParams& default_params() {
  static const JacobiParams p(1.4, 0.25);
  return p;
}

GridFunction gauss_bump(std::shared_ptr<const RadialGrid> g, double t0, double s) {
  return sample(std::move(g), [t0, s](double t) {
    const double u = (t - t0) / s;
    return std::exp(-u * u);
  });
}

// ------------------------------------------------------------------ 1
Outcome criterion_cross_route() {
  const JacobiParams& p = default_params();
  std::mt19937_64 rng(20260807);
  std::uniform_real_distribution<double> lam_d(0.5, 50.0);
  std::uniform_real_distribution<double> t_d(0.01, 8.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double lam = lam_d(rng), t = t_d(rng);
    const double ref = phi_real(p, lam, t);
    const double alt = (t <= p.r0()) ? phi_bessel(p, lam, t, 3) : phi_hc(p, lam, t);
    worst = std::max(worst,
                     std::abs(ref - alt) / (1.0 + std::max(std::abs(ref), std::abs(alt))));
  }
  Outcome out;
  out.pass = worst < 1e-6;
  out.detail = "max disagreement " + fmt(worst) + " (tol 1e-6)";
  return out;
}

// ------------------------------------------------------------------ 2
Outcome criterion_h3_oracle() {
  const JacobiParams h3(0.5, -0.5);
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 3.0, 10.0})
    for (double t : {0.5, 1.0, 2.0, 5.0})
      worst = std::max(worst, std::abs(phi_real(h3, lam, t) -
                                       std::sin(lam * t) / (lam * std::sinh(t))));
  Outcome out;
  out.pass = worst < 1e-9;
  out.detail = "max |phi - closed form| " + fmt(worst) + " (tol 1e-9)";
  return out;
}

// ------------------------------------------------------------------ 3
Outcome criterion_c_asymptotics() {
  const JacobiParams& p = default_params();
  const auto grid = default_fit_grid();
  std::vector<double> lx(grid.size()), ly(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lx[i] = std::log(grid[i]);
    ly[i] = std::log(c_inv_sq(p, grid[i]));
  }
  const double slope = fit_line(lx, ly).slope;
  const auto fit1 = c_asymptotic_fit(p, 1, grid);
  const auto fit3 = c_asymptotic_fit(p, 3, grid);
  const double improvement = fit3.residual_decay_exponent - fit1.residual_decay_exponent;
  Outcome out;
  const double want = 2.0 * p.alpha() + 1.0;
  out.pass = std::abs(slope - want) < 0.02 && std::abs(improvement - 2.0) <= 0.3;
  out.detail = "growth exponent " + fmt(slope) + " (want " + fmt(want) +
               " +- 0.02), residual exponent improvement " + fmt(improvement) + " (want 2 +- 0.3)";
  return out;
}

// ------------------------------------------------------------------ 4
Outcome criterion_log_derivatives() {
  const JacobiParams& p = default_params();
  double mn1 = 1e300, mx1 = 0.0, mn2 = 1e300, mx2 = 0.0;
  for (double lam = 1.0; lam <= 1e4; lam *= 1.25) {
    const double v1 = lam * std::abs(c_log_derivative(p, lam, 1));
    const double v2 = lam * lam * std::abs(c_log_derivative(p, lam, 2));
    mn1 = std::min(mn1, v1);
    mx1 = std::max(mx1, v1);
    mn2 = std::min(mn2, v2);
    mx2 = std::max(mx2, v2);
  }
  double fd_worst = 0.0;
  const double h = 1e-4;
  for (double lam : {1.0, 10.0, 100.0}) {
    const Complex fd = (std::log(c_function(p, Complex(lam + h, 0))) -
                        std::log(c_function(p, Complex(lam - h, 0)))) /
                       (2.0 * h);
    fd_worst = std::max(fd_worst, std::abs(c_log_derivative(p, lam, 1) - fd));
  }
  Outcome out;
  out.pass = (mx1 / mn1 < 10.0) && (mx2 / mn2 < 10.0) && fd_worst < 1e-6;
  out.detail = "variation ratios " + fmt(mx1 / mn1) + ", " + fmt(mx2 / mn2) +
               " (tol 10), finite-difference gap " + fmt(fd_worst) + " (tol 1e-6)";
  return out;
}

// ------------------------------------------------------------------ 5
Outcome criterion_hc_consistency() {
  const JacobiParams& p = default_params();
  std::mt19937_64 rng(20260807);
  std::uniform_real_distribution<double> lam_d(0.3, 80.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex lam(lam_d(rng), (i % 5 == 0) ? 0.5 : 0.0);
    const auto d = hc_coeffs(p, lam, 100);
    const auto a = hc_coeffs_alt(p, lam, 100);
    for (int k = 0; k <= 100; ++k)
      worst = std::max(worst, std::abs(d.values[static_cast<std::size_t>(k)] -
                                       a.values[static_cast<std::size_t>(k)]) /
                                  std::max(1.0, std::abs(d.values[static_cast<std::size_t>(k)])));
  }
  const std::vector<double> grid{0.7, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0};
  const GangolliFit fit = gangolli_fit(p, grid, 200);

  const JacobiParams ph(p.alpha(), -0.5, p.r0());
  const auto direct = hc_coeffs(ph, Complex(3, 0), 60);
  Complex prod{1.0, 0.0};
  double prod_dev = 0.0;
  for (int k = 0; k < 60; ++k) {
    prod *= hc_alt_a(ph, Complex(3, 0), k);
    prod_dev = std::max(prod_dev,
                        std::abs(prod - direct.values[static_cast<std::size_t>(k + 1)]) /
                            std::max(1.0, std::abs(prod)));
  }
  Outcome out;
  out.pass = worst < 1e-10 && fit.max_positive_curvature < 0.1 && prod_dev < 1e-12;
  out.detail = "recursion gap " + fmt(worst) + " (tol 1e-10), curvature " +
               fmt(fit.max_positive_curvature) + " (tol 0.1), product shortcut gap " +
               fmt(prod_dev);
  return out;
}

// ------------------------------------------------------------------ 6
Outcome criterion_plancherel() {
  const JacobiParams& p = default_params();
  const auto rgrid = make_radial_grid(p, 12.0, 8, 12);
  const auto sgrid = make_spectral_grid(p, 60.0, 6, 12);
  double worst_kappa = 0.0, worst_ratio = 0.0;
  double kappa_first = 0.0;
  const std::vector<std::pair<double, double>> bumps{{2.0, 0.5}, {3.0, 1.0}, {5.0, 0.8}};
  for (const auto& [t0, s] : bumps) {
    const GridFunction f = gauss_bump(rgrid, t0, s);
    const Spectrum fh = forward(p, f, sgrid);
    const double ratio = lp_norm(fh.values, sgrid->weights, 2.0) / lp_norm(f, 2.0);
    const GridFunction g = inverse(p, fh, rgrid);
    const double kappa = inner_product(g, f) / inner_product(f, f);
    if (t0 == 2.0) kappa_first = kappa;
    worst_kappa = std::max(worst_kappa, std::abs(kappa - 1.0));
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 1.0));
  }
  // grid doubling stability on the first bump
  const auto rgrid2 = make_radial_grid(p, 12.0, 16, 12);
  const auto sgrid2 = make_spectral_grid(p, 60.0, 12, 12);
  const GridFunction f2 = gauss_bump(rgrid2, 2.0, 0.5);
  const Spectrum fh2 = forward(p, f2, sgrid2);
  const GridFunction g2 = inverse(p, fh2, rgrid2);
  const double kappa2 = inner_product(g2, f2) / inner_product(f2, f2);
  const double drift = std::abs(kappa2 - kappa_first);

  Outcome out;
  out.pass = worst_kappa < 1e-3 && worst_ratio < 1e-3 && drift < 1e-8;
  out.detail = "|kappa-1| " + fmt(worst_kappa) + ", ratio defect " + fmt(worst_ratio) +
               " (tol 1e-3), doubling drift " + fmt(drift) + " (tol 1e-8)";
  return out;
}

// ------------------------------------------------------------------ 7
Outcome criterion_convergence() {
  const JacobiParams& p = default_params();
  const std::vector<double> sched{5.0, 10.0, 20.0, 40.0};
  Outcome out;

  // smooth bump at p0 + 0.05 and 2
  const auto rgrid = make_radial_grid(p, 12.0, 8, 12);
  const auto sgrid = make_spectral_grid(p, 60.0, 6, 12, sched);
  const GridFunction f = gauss_bump(rgrid, 3.0, 1.0);
  const Spectrum fh = forward(p, f, sgrid);
  const GridFunction rec = inverse(p, fh, rgrid);
  const double kappa = inner_product(rec, f) / inner_product(f, f);
  std::string detail;
  bool ok = true;
  for (double pp : {p.p0() + 0.05, 2.0}) {
    const auto rep = convergence_experiment(p, f, pp, sched, sgrid, kappa, {}, 4.0);
    const double drop = rep.rows.front()[1] / rep.rows.back()[1];
    ok = ok && drop >= 10.0;
    detail += "bump p=" + fmt(pp) + " L^p drop " + fmt(drop) + "x; ";
  }

  // indicator of [1, 2]
  const auto rgrid_i = make_radial_grid(p, 12.0, 16, 12, std::vector<double>{1.0, 2.0});
  const auto sgrid_i = make_spectral_grid(p, 60.0, 6, 12, sched);
  const GridFunction ind =
      sample(rgrid_i, [](double t) { return (t >= 1.0 && t <= 2.0) ? 1.0 : 0.0; });
  const GridFunction bump_i = gauss_bump(rgrid_i, 3.0, 1.0);
  const Spectrum bh = forward(p, bump_i, sgrid_i);
  const GridFunction brec = inverse(p, bh, rgrid_i);
  const double kappa_i = inner_product(brec, bump_i) / inner_product(bump_i, bump_i);
  const auto rep =
      convergence_experiment(p, ind, 2.0, sched, sgrid_i, kappa_i,
                             std::vector<double>{1.0, 2.0}, 4.0);
  const double far_drop = rep.rows.front()[2] / rep.rows.back()[2];
  const double near_drop = rep.rows.front()[3] / rep.rows.back()[3];
  ok = ok && far_drop >= 5.0 && near_drop < 2.5;
  detail += "indicator far drop " + fmt(far_drop) + "x (want >= 5), jump-adjacent drop " +
            fmt(near_drop) + "x (stagnation: < 2.5)";
  out.pass = ok;
  out.detail = detail;
  return out;
}

// ------------------------------------------------------------------ 8
Outcome criterion_kernel_bounds() {
  const JacobiParams& p = default_params();
  const std::vector<double> r_set{2.0, 5.0, 10.0, 20.0};
  auto linspace = [](double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1.0);
    return v;
  };
  const auto small = linspace(0.05, p.r0() / 2.0, 5);
  const auto large = linspace(3.0, 8.0, 6);
  const auto unit = linspace(0.1, p.r0(), 6);
  bool ok = true;
  std::string detail;
  struct RegionGrid {
    Region region;
    std::vector<double> t, r;
  };
  for (const auto& s : {RegionGrid{Region::A3, large, small}, RegionGrid{Region::A4, small, large},
                        RegionGrid{Region::A1, unit, unit}}) {
    const auto rep = kernel_bound_check(p, s.region, s.t, s.r, r_set, 6, 12);
    for (double R : r_set)
      if (!std::isfinite(rep.meta_number("max_ratio_R" + format_double(R)))) ok = false;
    // the doublings within {2, 5, 10, 20} are 5 -> 10 and 10 -> 20
    const double m5 = rep.meta_number("max_ratio_R5");
    const double m10 = rep.meta_number("max_ratio_R10");
    const double m20 = rep.meta_number("max_ratio_R20");
    const double worst_step =
        std::max(std::max(m10 / m5, m5 / m10), std::max(m20 / m10, m10 / m20));
    ok = ok && worst_step < 2.0;
    detail += region_name(s.region) + " doubling step " + fmt(worst_step) + "x; ";
  }
  Outcome out;
  out.pass = ok;
  out.detail = detail + "(tol 2x per R doubling)";
  return out;
}

// ------------------------------------------------------------------ 9
Outcome criterion_endpoint_growth() {
  const JacobiParams& p = default_params();
  const auto unit = make_radial_grid(p, 1.0, 16, 12);
  bool increasing = true;
  double prev = 0.0;
  for (double R : {4.0, 16.0, 64.0, 256.0}) {
    const double v = endpoint_functional(p, R, *unit);
    if (!(v > prev)) increasing = false;
    prev = v;
  }
  std::vector<double> xs, ys;
  for (double R = 4.0; R <= 512.0; R *= 2.0) {
    xs.push_back(std::pow(std::log(R), 1.0 / p.p1()));
    ys.push_back(endpoint_functional(p, R, *unit));
  }
  const LineFit fit = fit_line(xs, ys);
  Outcome out;
  out.pass = increasing && fit.slope > 0.0 && fit.correlation > 0.9;
  out.detail = std::string("strictly increasing: ") + (increasing ? "yes" : "NO") +
               ", slope " + fmt(fit.slope) + ", correlation " + fmt(fit.correlation) +
               " (want > 0.9)";
  return out;
}

// ------------------------------------------------------------------ 10
Outcome criterion_determinism() {
  namespace fs = std::filesystem;
  const std::string base = "/tmp/jacobilab_acceptance";
  fs::remove_all(base);
  std::string cfg_text = R"(
[params]
alpha = 1.4
beta = 0.25

[grids]
t_max = 8
lambda_max = 24
radial_panels_per_unit = 5
radial_nodes_per_panel = 8
spectral_panels_per_unit = 5
spectral_nodes_per_panel = 8

[experiment]
r_schedule = 4,8,16,24
)";
  Outcome out;
  for (const auto& info : experiment_registry()) {
    ExperimentConfig cfg = parse_config_text(cfg_text);
    cfg.name = info.name;
    cfg.out_dir = base + "/a/" + info.name;
    const auto first = run_experiment(cfg);
    cfg.out_dir = base + "/b/" + info.name;
    const auto second = run_experiment(cfg);
    for (std::size_t i = 0; i < first.size(); ++i) {
      std::ifstream fa(first[i], std::ios::binary), fb(second[i], std::ios::binary);
      std::ostringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      if (sa.str() != sb.str() || sa.str().empty()) {
        out.pass = false;
        out.detail += info.name + " differs; ";
      }
    }
  }
  if (out.pass) out.detail = "all 8 experiments byte-identical across reruns";
  return out;
}

}  // namespace

int main() {
  std::printf("jacobilab acceptance suite\n");
  run_criterion(1, "cross-route phi agreement (500 samples, tol 1e-6)", 30.0,
                criterion_cross_route);
  run_criterion(2, "H^3 closed-form oracle (tol 1e-9)", 1.0, criterion_h3_oracle);
  run_criterion(3, "|c|^-2 growth exponent and expansion residuals", 5.0,
                criterion_c_asymptotics);
  run_criterion(4, "c-function log-derivative bounds", 5.0, criterion_log_derivatives);
  run_criterion(5, "Harish-Chandra recursion consistency and growth fit", 10.0,
                criterion_hc_consistency);
  run_criterion(6, "Plancherel round trip and grid-doubling stability", 120.0,
                criterion_plancherel);
  run_criterion(7, "convergence sweep: bump L^p decay, indicator localization", 300.0,
                criterion_convergence);
  run_criterion(8, "kernel region bounds stable under R doubling", 300.0,
                criterion_kernel_bounds);
  run_criterion(9, "endpoint functional growth ~ (log R)^(1/p')", 600.0,
                criterion_endpoint_growth);
  run_criterion(10, "byte-identical experiment reruns", 600.0, criterion_determinism);
  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures;
}
