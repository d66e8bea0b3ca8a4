#include "jacobilab/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jacobilab/specfun.hpp"

namespace jacobilab {

namespace {
constexpr double kPi = std::numbers::pi;
const double kR0Max = std::sqrt(kPi / 2.0);
}  // namespace

JacobiParams::JacobiParams(double alpha, double beta, double r0)
    : alpha_(alpha), beta_(beta), r0_(r0) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(r0))
    throw Error("JacobiParams: non-finite parameter");
  if (!(alpha > beta))
    throw Error("JacobiParams: requires alpha > beta (alpha = " + std::to_string(alpha) +
                ", beta = " + std::to_string(beta) + ")");
  if (!(beta >= -0.5))
    throw Error("JacobiParams: requires beta >= -1/2 (beta = " + std::to_string(beta) + ")");
  if (!(std::abs(beta) < alpha + 1.0))
    throw Error("JacobiParams: requires |beta| < alpha + 1");
  if (!(r0 > 1.0 && r0 < kR0Max))
    throw Error("JacobiParams: requires R0 in (1, sqrt(pi/2)); got " + std::to_string(r0));
  rho_ = alpha_ + beta_ + 1.0;
  p0_ = (4.0 * alpha_ + 4.0) / (2.0 * alpha_ + 3.0);
  p1_ = (4.0 * alpha_ + 4.0) / (2.0 * alpha_ + 1.0);
}

double weight_delta(const JacobiParams& p, double t) {
  if (!(t >= 0.0)) throw Error("weight_delta: t must be >= 0");
  if (t == 0.0) return 0.0;
  // log-space evaluation; 2 sinh t and 2 cosh t both overflow near t ~ 710.
  const double ls = std::log(2.0 * std::sinh(t));
  const double lc = std::log(2.0 * std::cosh(t));
  return std::exp((2.0 * p.alpha() + 1.0) * ls + (2.0 * p.beta() + 1.0) * lc);
}

Complex phi(const JacobiParams& p, Complex lambda, double t) {
  if (!(t >= 0.0)) throw Error("phi: t must be >= 0");
  // phi is exactly even in lambda (the hypergeometric parameters a, b swap);
  // canonicalize the sign so both orientations take the identical code path.
  if (lambda.real() < 0.0 || (lambda.real() == 0.0 && lambda.imag() < 0.0)) lambda = -lambda;
  const Complex il(-lambda.imag(), lambda.real());
  const Complex a = 0.5 * (p.rho() - il);
  const Complex b = 0.5 * (p.rho() + il);
  const Complex c(p.alpha() + 1.0, 0.0);
  const double sh = std::sinh(t);
  return specfun::hyp2f1(a, b, c, -sh * sh);
}

double phi_real(const JacobiParams& p, double lambda, double t) {
  const Complex v = phi(p, Complex(lambda, 0.0), t);
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
    throw Error("phi_real: unexpectedly large imaginary part");
  return v.real();
}

namespace {

// log c(lambda); the four Gamma arguments shared with c_log_derivative.
Complex log_c(const JacobiParams& p, Complex lambda) {
  const Complex il(-lambda.imag(), lambda.real());
  const Complex z1 = il;
  const Complex z4 = 0.5 * (p.rho() + il);
  const Complex z2 = 0.5 * (p.alpha() - p.beta() + 1.0 + il);
  return (p.rho() - il) * std::log(2.0) + specfun::log_gamma(Complex(p.alpha() + 1.0, 0.0)) +
         specfun::log_gamma(z1) - specfun::log_gamma(z4) - specfun::log_gamma(z2);
}

}  // namespace

Complex c_function(const JacobiParams& p, Complex lambda) {
  return std::exp(log_c(p, lambda));
}

double c_inv_sq(const JacobiParams& p, double lambda) {
  if (!(lambda > 0.0)) throw Error("c_inv_sq: lambda must be > 0");
  return std::exp(-2.0 * log_c(p, Complex(lambda, 0.0)).real());
}

double plancherel_density(const JacobiParams& p, double lambda) {
  return c_inv_sq(p, lambda) / (2.0 * kPi);
}

std::vector<double> default_fit_grid() {
  std::vector<double> grid(64);
  const double l0 = std::log(1e2), l1 = std::log(1e5);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / (grid.size() - 1.0));
  return grid;
}

AsymptoticExpansion c_asymptotic_fit(const JacobiParams& p, int order,
                                     std::span<const double> lambda_grid) {
  if (order < 1) throw Error("c_asymptotic_fit: order must be >= 1");
  if (lambda_grid.size() < static_cast<std::size_t>(order) + 6)
    throw Error("c_asymptotic_fit: grid too small for requested order");

  const double expo = 2.0 * p.alpha() + 1.0;
  const std::size_t m = lambda_grid.size();

  // |c|^-2 is even in lambda (c(-l) = conj c(l) for real l), so the
  // expansion runs in even inverse powers; fitting in mu = l^-2 keeps the
  // basis well separated on the log-spaced grid, and the reported c_j
  // estimate the asymptotic (limit) coefficients: c_0 for M = 1 is the limit
  // of |c|^-2 l^-(2a+1), not the grid average. Odd c_j are exactly zero.
  const std::size_t n_even = static_cast<std::size_t>(order - 1) / 2 + 3;

  // Fit y(l) = |c|^-2 / l^(2a+1) against {1, mu, mu^2, ...} with weights 1/y
  // (relative, i.e. log-space, weighting).
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i)
    y[i] = c_inv_sq(p, lambda_grid[i]) / std::pow(lambda_grid[i], expo);

  std::vector<Complex> a(m * n_even);
  std::vector<Complex> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double wgt = 1.0 / y[i];
    const double mu = 1.0 / (lambda_grid[i] * lambda_grid[i]);
    double basis = 1.0;
    for (std::size_t j = 0; j < n_even; ++j) {
      a[i * n_even + j] = wgt * basis;
      basis *= mu;
    }
    rhs[i] = wgt * y[i];
  }
  const LstsqResult ls = solve_lstsq(std::move(a), m, n_even, std::move(rhs));

  AsymptoticExpansion out;
  out.order = order;
  out.fit_lambda_min = lambda_grid.front();
  out.fit_lambda_max = lambda_grid.back();
  out.fit_condition = ls.condition;
  out.leading_constant = ls.coeffs[0].real();
  if (!(out.leading_constant > 0.0))
    throw Error("c_asymptotic_fit: leading constant must be positive");
  out.correction_coeffs.assign(static_cast<std::size_t>(order) - 1, 0.0);
  for (std::size_t j = 2; j < static_cast<std::size_t>(order); j += 2)
    out.correction_coeffs[j - 1] = ls.coeffs[j / 2].real() / out.leading_constant;

  // Relative residual decay rate: fit |y/model - 1| ~ l^-e, model with the
  // coefficients just found. |c|^-2 itself carries roundoff ~ eps l log l
  // (the Re part of (z - 1/2) log z at z = i l), a floor that RISES with
  // lambda; points under it would flatten the regression.
  std::vector<double> lx, ly;
  lx.reserve(m);
  ly.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double model = out.leading_constant;
    double basis = 1.0;
    for (std::size_t j = 0; j < out.correction_coeffs.size(); ++j) {
      basis /= lambda_grid[i];
      model += out.leading_constant * out.correction_coeffs[j] * basis;
    }
    const double rel = std::abs(y[i] / model - 1.0);
    const double floor = 2e-14 * lambda_grid[i];
    if (rel > floor) {
      lx.push_back(std::log(lambda_grid[i]));
      ly.push_back(std::log(rel));
    }
  }
  if (lx.size() >= 8) {
    out.residual_decay_exponent = -fit_line(lx, ly).slope;
  }
  return out;
}

Complex c_log_derivative(const JacobiParams& p, double lambda, int order) {
  if (!(lambda > 0.0)) throw Error("c_log_derivative: lambda must be > 0");
  if (order != 1 && order != 2) throw Error("c_log_derivative: order must be 1 or 2");
  const Complex il(0.0, lambda);
  const Complex z1 = il;
  const Complex z2 = 0.5 * (p.alpha() - p.beta() + il);
  const Complex z3 = p.alpha() - p.beta() + il;
  const Complex z4 = 0.5 * (p.rho() + il);
  const Complex i(0.0, 1.0);
  const Complex first =
      i * (specfun::digamma(z1) - specfun::digamma(z3) + 0.5 * specfun::digamma(z2) -
           0.5 * specfun::digamma(z4));
  if (order == 1) return first;
  const Complex second = -(specfun::trigamma(z1) - specfun::trigamma(z3) +
                           0.25 * specfun::trigamma(z2) - 0.25 * specfun::trigamma(z4));
  return first * first + second;
}

}  // namespace jacobilab
