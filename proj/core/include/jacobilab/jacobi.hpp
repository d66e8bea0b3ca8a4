#ifndef JACOBILAB_JACOBI_HPP
#define JACOBILAB_JACOBI_HPP

#include <vector>

#include "jacobilab/numeric.hpp"

namespace jacobilab {

// Jacobi parameter pair (alpha, beta) with the derived constants used
// throughout: rho = alpha + beta + 1, the conjugate exponent pair
// p0 = (4a+4)/(2a+3), p1 = (4a+4)/(2a+1), and the region-splitting radius R0.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta, double r0 = 1.05);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double rho() const { return rho_; }
  double p0() const { return p0_; }
  double p1() const { return p1_; }
  double r0() const { return r0_; }

 private:
  double alpha_;
  double beta_;
  double rho_;
  double p0_;
  double p1_;
  double r0_;
};

// Weight (2 sinh t)^(2a+1) (2 cosh t)^(2b+1), t >= 0.
double weight_delta(const JacobiParams& p, double t);

// Jacobi function phi_lambda(t) = 2F1((rho - i l)/2, (rho + i l)/2; a+1; -sinh^2 t).
Complex phi(const JacobiParams& p, Complex lambda, double t);

// Real-lambda convenience wrapper; checks the imaginary part is roundoff.
double phi_real(const JacobiParams& p, double lambda, double t);

// Harish-Chandra c-function,
// c(l) = 2^(rho - i l) Gamma(a+1) Gamma(i l) / (Gamma((rho+i l)/2) Gamma((a-b+1+i l)/2)).
Complex c_function(const JacobiParams& p, Complex lambda);

// |c(lambda)|^-2 for real lambda > 0, evaluated in log space so it stays
// finite up to lambda ~ 1e5 and beyond.
double c_inv_sq(const JacobiParams& p, double lambda);

// Spectral density: the weight of d nu = (2 pi)^-1 |c|^-2 d lambda.
double plancherel_density(const JacobiParams& p, double lambda);

// Large-lambda expansion |c|^-2 ~ c0 l^(2a+1) (1 + sum_j c_j l^-j) fitted by
// weighted least squares on a log-spaced grid.
struct AsymptoticExpansion {
  double leading_constant = 0.0;            // c0
  std::vector<double> correction_coeffs;    // c_1 .. c_{M-1}
  int order = 1;                            // M
  double fit_lambda_min = 0.0;
  double fit_lambda_max = 0.0;
  double residual_decay_exponent = 0.0;     // decay rate of the relative residual
  double fit_condition = 0.0;
};
AsymptoticExpansion c_asymptotic_fit(const JacobiParams& p, int order,
                                     std::span<const double> lambda_grid);
std::vector<double> default_fit_grid();  // 64 log-spaced points in [1e2, 1e5]

// c'(l)/c(l) (order 1) or c''(l)/c(l) (order 2) from digamma/trigamma at the
// four points i*l, (a-b+i*l)/2, a-b+i*l, (rho+i*l)/2.
Complex c_log_derivative(const JacobiParams& p, double lambda, int order);

}  // namespace jacobilab

#endif
