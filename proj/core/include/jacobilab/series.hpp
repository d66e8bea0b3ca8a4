#ifndef JACOBILAB_SERIES_HPP
#define JACOBILAB_SERIES_HPP

#include <span>
#include <vector>

#include "jacobilab/jacobi.hpp"
#include "jacobilab/numeric.hpp"

namespace jacobilab {

// Harish-Chandra coefficients Gamma_0..Gamma_K of the expansion
// Phi_lambda(t) = sum_k Gamma_k(lambda) e^(-2kt); Gamma_0 = 1.
struct HCCoefficients {
  Complex lambda;
  std::vector<Complex> values;  // size K+1
  int order() const { return static_cast<int>(values.size()) - 1; }
};

// Coefficients a_0..a_M of the small-t Bessel expansion at a fixed t,
// phi_lambda(t) ~ N(t) sum_m a_m(t) t^(2m) ScriptJ_(m+alpha)(lambda t),
// N(t) = [2 Gamma(a+1)/(Gamma(a+1/2) Gamma(1/2))] t^(a+1/2) / sqrt(delta(t))
// with the 2-free weight delta = sinh^(2a+1) cosh^(2b+1).
// a_0 is pinned to 1; a_1..a_M come from least-squares collocation against
// the hypergeometric route at M+1 points lambda_j in [1, 20].
struct BesselExpansionCoeffs {
  double t = 0.0;
  std::vector<double> a_values;  // size M+1, a_values[0] == 1
  int order() const { return static_cast<int>(a_values.size()) - 1; }
  double residual = 0.0;         // collocation residual (max over points)

  // Evaluation caches filled by bessel_coeffs: prefactor N(t) and the
  // combined per-order factors a_m t^{2m} 2^{m+alpha-1} sqrt(pi) Gamma(m+alpha+1/2),
  // so phi_bessel(lambda) reduces to one Bessel-sequence evaluation.
  double prefactor = 0.0;
  std::vector<double> order_scale;
};

BesselExpansionCoeffs bessel_coeffs(const JacobiParams& p, double t, int order);

// Truncated Bessel-expansion evaluation (computes the coefficients for this
// t, or reuses precomputed ones).
double phi_bessel(const JacobiParams& p, double lambda, double t, int order);
double phi_bessel(const JacobiParams& p, const BesselExpansionCoeffs& coeffs, double lambda);

// Gamma_k by the direct recursion
// (k+1)(k+1-i l) G_{k+1} = (a-b) sum_{j<=k} (rho+2j-i l) G_j
//                        + (b+1/2) sum_{j=1}^{[(k+1)/2]} (rho+2(k+1-2j)-i l) G_{k+1-2j}.
// Throws PoleError at the resonances k+1 = i lambda.
HCCoefficients hc_coeffs(const JacobiParams& p, Complex lambda, int order);

// Same coefficients through the a_k / b_j^k form; independent cross-check.
HCCoefficients hc_coeffs_alt(const JacobiParams& p, Complex lambda, int order);

// The a_k factor of the alternative recursion (Gamma_{k+1} = a_k Gamma_k when
// beta = -1/2).
Complex hc_alt_a(const JacobiParams& p, Complex lambda, int k);

// phi via the c-function connection, phi = 2 Re[c(l) e^{(il-rho)t} Phi_l(t)]
// for real lambda != 0 and t >= 1. K grows adaptively until the tail is below
// 1e-14 of the partial sum, erroring out at K = 200.
double phi_hc(const JacobiParams& p, double lambda, double t);
double phi_hc(const JacobiParams& p, const HCCoefficients& coeffs, double lambda, double t);

// Pointwise evaluation of Phi_lambda(t) = sum Gamma_k e^{-2kt} from
// precomputed coefficients, with a tail check.
Complex hc_series_value(const HCCoefficients& coeffs, double t);

// Least-squares fit of log|Gamma_k| ~ log K + d log(1+k), pooled over the
// upper envelope across a lambda grid.
struct GangolliFit {
  double k_fit = 0.0;                  // multiplicative constant K
  double d_fit = 0.0;                  // polynomial degree d
  double max_positive_curvature = 0.0; // quadratic coefficient in log-log
};
GangolliFit gangolli_fit(const JacobiParams& p, std::span<const double> lambda_grid, int order);

// Numeric extraction of the large-lambda inverse-power coefficients of
// Gamma_k: Gamma_k(l) ~ sum_m gamma_m l^-m, m = 0..M, by sampling at M+3
// large real lambdas and solving the overdetermined system.
std::vector<Complex> hc_inverse_power_extract(const JacobiParams& p, int k, int order);

// Unified production evaluation of phi for real lambda:
//   t >= max(R0, 1), |lambda| > 1/4            -> Harish-Chandra route
//   t <= R0, |lambda| tanh t > 12              -> Bessel route (order 6)
//   otherwise                                  -> hypergeometric route
double phi_auto(const JacobiParams& p, double lambda, double t);

// Dense |lambdas| x |ts| table of phi values, row-major, with per-lambda
// Harish-Chandra and per-t Bessel coefficient reuse. Output is identical for
// any thread count.
std::vector<double> phi_table(const JacobiParams& p, std::span<const double> lambdas,
                              std::span<const double> ts, int threads = 1);

}  // namespace jacobilab

#endif
