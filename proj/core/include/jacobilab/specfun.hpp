#ifndef JACOBILAB_SPECFUN_HPP
#define JACOBILAB_SPECFUN_HPP

#include <complex>

#include "jacobilab/numeric.hpp"

namespace jacobilab::specfun {

// Principal-branch log Gamma for complex z. Stirling with an error-controlled
// Bernoulli tail, upward recurrence for small |z|, reflection for Re z < 1/2.
// Conjugate-symmetric: log_gamma(conj z) = conj(log_gamma(z)).
// Throws PoleError within 1e-12 of a non-positive integer.
Complex log_gamma(Complex z);

// psi(z) = Gamma'(z)/Gamma(z) and psi'(z), same domain rules as log_gamma.
Complex digamma(Complex z);
Complex trigamma(Complex z);

// 1/Gamma(z); entire, returns 0 at the poles of Gamma.
Complex rgamma(Complex z);

// Gauss hypergeometric 2F1(a, b; c; z) on the ray z <= 0, analytically
// continued past the unit disc. Pfaff transformation onto [0,1), with a
// linear z -> 1-z connection formula when the transformed argument is close
// to 1 or when the direct series would lose too much significance; the
// degenerate (near-integer c-a-b) case uses the logarithmic limit form.
// Throws PoleError when c is within 1e-12 of a non-positive integer and
// NoConvergenceError when no route reaches tolerance within the term cap.
Complex hyp2f1(Complex a, Complex b, Complex c, double z);

// Bessel J_mu(x) for real order mu >= -1/2 and x >= 0.
// Power series for small x, a Miller-style downward recurrence with the
// (x/2)^nu normalization sum in the middle range, Hankel asymptotics for
// large x.
double bessel_j(double mu, double x);

// Normalized Bessel function: 2^(mu-1) Gamma(1/2) Gamma(mu+1/2) x^-mu J_mu(x),
// extended by its finite limit sqrt(pi) Gamma(mu+1/2) / (2 Gamma(mu+1)) at 0.
double script_j(double mu, double x);

// J_(mu0+m)(x) for m = 0..count-1 in one pass; the middle-range downward
// recurrence is shared across the orders.
void bessel_j_sequence(double mu0, int count, double x, double* out);

// Series/transformation iteration cap shared by the routines above.
inline constexpr int kMaxSeriesTerms = 100000;

}  // namespace jacobilab::specfun

#endif
