#include "jacobilab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jacobilab/specfun.hpp"

namespace jacobilab {

namespace {

constexpr double kBesselRouteThreshold = 12.0;  // switch at |lambda| tanh t
constexpr double kHcMinLambda = 0.25;
constexpr int kHcMaxOrder = 200;
constexpr int kHcTableOrder = 48;

// Production expansion order for the Bessel route. At small t the higher
// collocation columns t^{2m} ScriptJ_{m+a}(lambda_j t) become numerically
// collinear, and the truncation error t^{2(M+1)} max(1, (lambda t)^-(a+M+1))
// is far below roundoff anyway, so the order is reduced with t.
int production_bessel_order(double t) {
  if (t >= 0.35) return 6;
  if (t >= 0.15) return 4;
  return 3;
}

// Prefactor N(t) of the Bessel expansion; the weight here is the 2-free
// sinh^(2a+1) cosh^(2b+1) (the version that makes phi(0) = 1 exactly).
double bessel_prefactor(const JacobiParams& p, double t) {
  const double lead = 2.0 * std::tgamma(p.alpha() + 1.0) /
                      (std::tgamma(p.alpha() + 0.5) * std::tgamma(0.5));
  const double logw = (2.0 * p.alpha() + 1.0) * std::log(std::sinh(t)) +
                      (2.0 * p.beta() + 1.0) * std::log(std::cosh(t));
  return lead * std::exp((p.alpha() + 0.5) * std::log(t) - 0.5 * logw);
}

void fill_bessel_caches(const JacobiParams& p, BesselExpansionCoeffs& c) {
  c.prefactor = bessel_prefactor(p, c.t);
  c.order_scale.resize(c.a_values.size());
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double tpow = 1.0;
  for (std::size_t m = 0; m < c.a_values.size(); ++m) {
    const double mu = static_cast<double>(m) + p.alpha();
    c.order_scale[m] =
        c.a_values[m] * tpow * std::pow(2.0, mu - 1.0) * sqrt_pi * std::tgamma(mu + 0.5);
    tpow *= c.t * c.t;
  }
}

}  // namespace

BesselExpansionCoeffs bessel_coeffs(const JacobiParams& p, double t, int order) {
  if (!(t > 0.0 && t <= p.r0()))
    throw Error("bessel_coeffs: t must lie in (0, R0]");
  if (order < 0 || order > 6) throw Error("bessel_coeffs: order must be in [0, 6]");

  BesselExpansionCoeffs out;
  out.t = t;
  out.a_values.assign(static_cast<std::size_t>(order) + 1, 0.0);
  out.a_values[0] = 1.0;

  const double invn = 1.0 / bessel_prefactor(p, t);
  // At tiny t the correction terms a_m t^{2m} are below the residual gate and
  // the collocation columns are numerically collinear; pin them to zero.
  if (order == 0 || t <= 3e-3) {
    const double lambda0 = 1.0;
    out.residual = std::abs(phi_real(p, lambda0, t) * invn -
                            specfun::script_j(p.alpha(), lambda0 * t));
    fill_bessel_caches(p, out);
    return out;
  }

  // Collocation points lambda_j = 1 + 19 j / M, j = 0..M: M+1 equations for
  // the M unknowns a_1..a_M, a_0 pinned.
  const std::size_t rows = static_cast<std::size_t>(order) + 1;
  const std::size_t cols = static_cast<std::size_t>(order);
  std::vector<Complex> a(rows * cols);
  std::vector<Complex> rhs(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    const double lam = 1.0 + 19.0 * static_cast<double>(j) / static_cast<double>(order);
    const double x = lam * t;
    rhs[j] = phi_real(p, lam, t) * invn - specfun::script_j(p.alpha(), x);
    double tpow = 1.0;
    for (std::size_t m = 1; m <= cols; ++m) {
      tpow *= t * t;
      a[j * cols + (m - 1)] = tpow * specfun::script_j(static_cast<double>(m) + p.alpha(), x);
    }
  }
  LstsqResult ls;
  try {
    ls = solve_lstsq(std::move(a), rows, cols, std::move(rhs));
  } catch (const IllConditionedError& e) {
    throw IllConditionedError(std::string("bessel_coeffs: collocation system ill-conditioned (") +
                              e.what() + ")");
  }
  for (std::size_t m = 1; m <= cols; ++m) out.a_values[m] = ls.coeffs[m - 1].real();
  out.residual = ls.residual_norm;
  if (!(out.residual <= 1e-6))
    throw NoConvergenceError("bessel_coeffs: collocation residual " +
                             std::to_string(out.residual) + " exceeds 1e-6");
  fill_bessel_caches(p, out);
  return out;
}

double phi_bessel(const JacobiParams& p, const BesselExpansionCoeffs& coeffs, double lambda) {
  const double t = coeffs.t;
  const double x = std::abs(lambda) * t;
  const std::size_t n = coeffs.a_values.size();
  if (x <= 1.0) {
    // ScriptJ through its power series; only reached for small lambda t.
    double sum = 0.0;
    double tpow = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      sum += coeffs.a_values[m] * tpow * specfun::script_j(static_cast<double>(m) + p.alpha(), x);
      tpow *= t * t;
    }
    return coeffs.prefactor * sum;
  }
  double jvals[16];
  specfun::bessel_j_sequence(p.alpha(), static_cast<int>(n), x, jvals);
  double xp = std::pow(x, -p.alpha());
  double sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    sum += coeffs.order_scale[m] * xp * jvals[m];
    xp /= x;
  }
  return coeffs.prefactor * sum;
}

double phi_bessel(const JacobiParams& p, double lambda, double t, int order) {
  return phi_bessel(p, bessel_coeffs(p, t, order), lambda);
}

HCCoefficients hc_coeffs(const JacobiParams& p, Complex lambda, int order) {
  if (order < 0) throw Error("hc_coeffs: order must be >= 0");
  const Complex il(-lambda.imag(), lambda.real());
  const double ab = p.alpha() - p.beta();
  const double b2 = 2.0 * p.beta() + 1.0;

  HCCoefficients out;
  out.lambda = lambda;
  out.values.assign(static_cast<std::size_t>(order) + 1, Complex{});
  out.values[0] = Complex{1.0, 0.0};

  for (int k = 0; k < order; ++k) {
    const Complex resonance = static_cast<double>(k + 1) - il;
    if (std::abs(resonance) < 1e-10)
      throw PoleError("hc_coeffs: resonance k+1 = i*lambda at k = " + std::to_string(k));
    Complex sum{};
    for (int j = 0; j <= k; ++j)
      sum += (p.rho() + 2.0 * j - il) * out.values[static_cast<std::size_t>(j)];
    sum *= ab;
    if (b2 != 0.0) {
      Complex sum2{};
      for (int j = 1; 2 * j <= k + 1; ++j)
        sum2 += (p.rho() + 2.0 * (k + 1 - 2 * j) - il) *
                out.values[static_cast<std::size_t>(k + 1 - 2 * j)];
      sum += b2 * sum2;
    }
    out.values[static_cast<std::size_t>(k + 1)] = sum / (static_cast<double>(k + 1) * resonance);
  }
  return out;
}

Complex hc_alt_a(const JacobiParams& p, Complex lambda, int k) {
  const Complex il(-lambda.imag(), lambda.real());
  const double ab1 = p.alpha() - p.beta() - 1.0;
  const double kk = static_cast<double>(k + 1);
  const double quad = p.alpha() * (p.alpha() - 1.0) - p.beta() * (p.beta() - 1.0) + 1.0;
  return 1.0 + ab1 / kk + (ab1 + quad / kk) / (kk - il);
}

// Second, independent route: a three-term recursion that follows from the
// Frobenius relation because the weight's Fourier coefficients c_m satisfy
// c_{m+2} = c_m, so the full-history sums telescope:
//   (k+1)(k+1-il) G_{k+1} = (a-b)(rho+2k-il) G_k
//                         + [rho(rho+2k-2-il) + (k-1)(k-1-il)] G_{k-1}.
// Reduces to the pure a_k product when beta = -1/2 and to G_k = 1 on H^3.
HCCoefficients hc_coeffs_alt(const JacobiParams& p, Complex lambda, int order) {
  if (order < 0) throw Error("hc_coeffs_alt: order must be >= 0");
  const Complex il(-lambda.imag(), lambda.real());
  const double ab = p.alpha() - p.beta();

  HCCoefficients out;
  out.lambda = lambda;
  out.values.assign(static_cast<std::size_t>(order) + 1, Complex{});
  out.values[0] = Complex{1.0, 0.0};

  Complex prev{};  // G_{-1} = 0
  for (int k = 0; k < order; ++k) {
    const double kk = static_cast<double>(k);
    const Complex resonance = kk + 1.0 - il;
    if (std::abs(resonance) < 1e-10)
      throw PoleError("hc_coeffs_alt: resonance k+1 = i*lambda at k = " + std::to_string(k));
    const Complex cur = out.values[static_cast<std::size_t>(k)];
    Complex sum = ab * (p.rho() + 2.0 * kk - il) * cur;
    sum += (p.rho() * (p.rho() + 2.0 * kk - 2.0 - il) + (kk - 1.0) * (kk - 1.0 - il)) * prev;
    out.values[static_cast<std::size_t>(k + 1)] = sum / ((kk + 1.0) * resonance);
    prev = cur;
  }
  return out;
}

Complex hc_series_value(const HCCoefficients& coeffs, double t) {
  // Horner-free direct sum; terms decay like e^(-2kt).
  std::vector<Complex> terms(coeffs.values.size());
  const double q = std::exp(-2.0 * t);
  double qk = 1.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    terms[k] = coeffs.values[k] * qk;
    qk *= q;
  }
  return pairwise_sum(terms);
}

double phi_hc(const JacobiParams& p, const HCCoefficients& coeffs, double lambda, double t) {
  const Complex c = c_function(p, Complex(lambda, 0.0));
  const Complex phase = std::exp(Complex(-p.rho() * t, lambda * t));
  const Complex phi_plus = hc_series_value(coeffs, t);
  return 2.0 * (c * phase * phi_plus).real();
}

double phi_hc(const JacobiParams& p, double lambda, double t) {
  if (!(t >= 1.0)) throw Error("phi_hc: t must be >= 1");
  if (!(std::abs(lambda) > 0.0)) throw Error("phi_hc: lambda must be nonzero");
  if (lambda < 0.0) lambda = -lambda;  // phi is even in lambda

  // Grow K until the tail estimate drops below 1e-14 of the partial sum.
  int order = 12;
  const double q = std::exp(-2.0 * t);
  while (true) {
    HCCoefficients coeffs = hc_coeffs(p, Complex(lambda, 0.0), order);
    const Complex partial = hc_series_value(coeffs, t);
    double head = 0.0;  // recent coefficient envelope guards against growth
    for (std::size_t k = coeffs.values.size() >= 3 ? coeffs.values.size() - 3 : 0;
         k < coeffs.values.size(); ++k)
      head = std::max(head, std::abs(coeffs.values[k]));
    const double tail = 4.0 * head * std::pow(q, order) / (1.0 - q);
    if (tail <= 1e-14 * std::max(1.0, std::abs(partial)))
      return phi_hc(p, coeffs, lambda, t);
    if (order >= kHcMaxOrder)
      throw NoConvergenceError("phi_hc: series tail above tolerance at K = " +
                               std::to_string(order));
    order = std::min(kHcMaxOrder, order * 2);
  }
}

GangolliFit gangolli_fit(const JacobiParams& p, std::span<const double> lambda_grid, int order) {
  if (lambda_grid.empty()) throw Error("gangolli_fit: empty lambda grid");
  if (order < 8) throw Error("gangolli_fit: order must be >= 8");
  std::vector<double> envelope(static_cast<std::size_t>(order) + 1, 0.0);
  for (double lam : lambda_grid) {
    if (lam == 0.0) throw Error("gangolli_fit: grid must avoid lambda = 0");
    const HCCoefficients coeffs = hc_coeffs(p, Complex(lam, 0.0), order);
    for (std::size_t k = 0; k < envelope.size(); ++k)
      envelope[k] = std::max(envelope[k], std::abs(coeffs.values[k]));
  }
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < envelope.size(); ++k) {
    if (envelope[k] <= 0.0) continue;
    lx.push_back(std::log(1.0 + static_cast<double>(k)));
    ly.push_back(std::log(envelope[k]));
  }
  if (lx.size() < 8) throw Error("gangolli_fit: too few usable coefficients");
  const LineFit line = fit_line(lx, ly);
  const auto quad = fit_quadratic(lx, ly);
  GangolliFit out;
  out.d_fit = line.slope;
  out.k_fit = std::exp(line.intercept);
  out.max_positive_curvature = std::max(0.0, quad[2]);
  return out;
}

std::vector<Complex> hc_inverse_power_extract(const JacobiParams& p, int k, int order) {
  if (k < 0 || k > 20) throw Error("hc_inverse_power_extract: k must be in [0, 20]");
  if (order < 0 || order > 4) throw Error("hc_inverse_power_extract: order must be in [0, 4]");
  const std::size_t rows = static_cast<std::size_t>(order) + 3;
  const std::size_t cols = static_cast<std::size_t>(order) + 1;
  std::vector<Complex> a(rows * cols);
  std::vector<Complex> rhs(rows);
  double lam = 800.0;
  for (std::size_t i = 0; i < rows; ++i, lam *= 1.5) {
    const HCCoefficients coeffs = hc_coeffs(p, Complex(lam, 0.0), k);
    rhs[i] = coeffs.values[static_cast<std::size_t>(k)];
    double basis = 1.0;
    for (std::size_t m = 0; m < cols; ++m) {
      a[i * cols + m] = basis;
      basis /= lam;
    }
  }
  return solve_lstsq(std::move(a), rows, cols, std::move(rhs)).coeffs;
}

double phi_auto(const JacobiParams& p, double lambda, double t) {
  if (!(t >= 0.0)) throw Error("phi_auto: t must be >= 0");
  const double al = std::abs(lambda);
  if (t >= std::max(p.r0(), 1.0) && al > kHcMinLambda) return phi_hc(p, al, t);
  if (t > 0.0 && t <= p.r0() && al * std::tanh(t) > kBesselRouteThreshold)
    return phi_bessel(p, al, t, production_bessel_order(t));
  return phi_real(p, al, t);
}

std::vector<double> phi_table(const JacobiParams& p, std::span<const double> lambdas,
                              std::span<const double> ts, int threads) {
  const std::size_t nl = lambdas.size();
  const std::size_t nt = ts.size();
  const double t_switch = std::max(p.r0(), 1.0);

  bool need_hc = false, need_bessel = false;
  for (double t : ts) {
    if (t >= t_switch) need_hc = true;
    if (t > 0.0 && t <= p.r0()) need_bessel = true;
  }

  // Phase 1: Harish-Chandra coefficients and c(lambda) per lambda.
  std::vector<HCCoefficients> hc(need_hc ? nl : 0);
  std::vector<Complex> cval(need_hc ? nl : 0);
  std::vector<double> hc_env(need_hc ? nl : 0, 0.0);
  if (need_hc) {
    parallel_for(nl, threads, [&](std::size_t i) {
      if (std::abs(lambdas[i]) > kHcMinLambda) {
        hc[i] = hc_coeffs(p, Complex(std::abs(lambdas[i]), 0.0), kHcTableOrder);
        cval[i] = c_function(p, Complex(std::abs(lambdas[i]), 0.0));
        for (const Complex& g : hc[i].values)
          hc_env[i] = std::max(hc_env[i], std::abs(g));
      }
    });
  }

  // Phase 2: Bessel coefficients per t where some lambda needs that route.
  double max_al = 0.0;
  for (double l : lambdas) max_al = std::max(max_al, std::abs(l));
  std::vector<BesselExpansionCoeffs> bc(need_bessel ? nt : 0);
  if (need_bessel) {
    parallel_for(nt, threads, [&](std::size_t j) {
      const double t = ts[j];
      if (t > 0.0 && t <= p.r0() && max_al * std::tanh(t) > kBesselRouteThreshold)
        bc[j] = bessel_coeffs(p, t, production_bessel_order(t));
    });
  }

  // Per-t constants shared across every lambda row.
  std::vector<double> exp2t(nt), exprt(nt), tanh_t(nt), sinh2(nt), log1mz(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    exp2t[j] = std::exp(-2.0 * ts[j]);
    exprt[j] = std::exp(-p.rho() * ts[j]);
    tanh_t[j] = std::tanh(ts[j]);
    const double sh = std::sinh(ts[j]);
    sinh2[j] = sh * sh;
    log1mz[j] = std::log1p(sinh2[j]);
  }

  std::vector<double> out(nl * nt);
  parallel_for(nl, threads, [&](std::size_t i) {
    const double al = std::abs(lambdas[i]);

    // Gauss-series coefficients (a+k)(b+k)/((c+k)(k+1)) for the direct
    // hypergeometric cells of this row, built lazily on first use.
    const Complex a(0.5 * p.rho(), -0.5 * al);
    std::vector<Complex> gauss_coef;
    auto ensure_gauss = [&](std::size_t upto) {
      const Complex b = Complex(0.5 * (p.alpha() - p.beta() + 1.0), -0.5 * al);  // c - b
      const Complex c(p.alpha() + 1.0, 0.0);
      while (gauss_coef.size() < upto) {
        const double k = static_cast<double>(gauss_coef.size());
        gauss_coef.push_back((a + k) * (b + k) / ((c + k) * (k + 1.0)));
      }
    };

    for (std::size_t j = 0; j < nt; ++j) {
      const double t = ts[j];
      double v;
      if (t >= t_switch && al > kHcMinLambda) {
        const double q = exp2t[j];
        Complex series{};
        double qk = 1.0;
        const double floor = 1e-17 / std::max(1.0, hc_env[i]);
        for (const Complex& g : hc[i].values) {
          series += g * qk;
          qk *= q;
          if (qk < floor) break;
        }
        v = 2.0 * (cval[i] * std::polar(exprt[j], al * t) * series).real();
      } else if (t > 0.0 && t <= p.r0() && al * tanh_t[j] > kBesselRouteThreshold) {
        v = phi_bessel(p, bc[j], al);
      } else if (t > 0.0 && t <= p.r0() && al > kHcMinLambda) {
        // Raw Pfaff series with the cached coefficient products; identical
        // route as hyp2f1 takes for these cells (w <= 0.9, small
        // oscillation), with the same convergence rule.
        const double w = sinh2[j] / (1.0 + sinh2[j]);
        ensure_gauss(64);
        Complex term{1.0, 0.0}, sum{1.0, 0.0};
        int quiet = 0;
        bool converged = false;
        for (std::size_t k = 0; k < static_cast<std::size_t>(specfun::kMaxSeriesTerms); ++k) {
          if (k >= gauss_coef.size()) ensure_gauss(gauss_coef.size() * 2);
          term *= gauss_coef[k] * w;
          sum += term;
          if (std::abs(term) <= 1.1e-16 * std::abs(sum)) {
            if (++quiet >= 2) {
              converged = true;
              break;
            }
          } else {
            quiet = 0;
          }
        }
        if (!converged) throw NoConvergenceError("phi_table: series cap exceeded");
        const Complex pref = std::exp(-a * log1mz[j]);
        v = (pref * sum).real();
      } else {
        v = phi_real(p, al, t);
      }
      out[i * nt + j] = v;
    }
  });
  return out;
}

}  // namespace jacobilab
