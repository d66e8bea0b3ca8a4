#ifndef JACOBILAB_TRANSFORM_HPP
#define JACOBILAB_TRANSFORM_HPP

#include "jacobilab/grids.hpp"
#include "jacobilab/series.hpp"

namespace jacobilab {

// Jacobi transform pair in the unitary normalization
//   f^(lambda) = int_0^inf f(t) phi_lambda(t) d mu(t),
//   f(t)       = int_0^inf f^(lambda) phi_lambda(t) d nu(lambda),
// with d nu = (2 pi)^-1 |c|^-2 d lambda carried by the spectral grid weights.
Spectrum forward(const JacobiParams& p, const GridFunction& f,
                 std::shared_ptr<const SpectralGrid> sgrid, int threads = 1);

GridFunction inverse(const JacobiParams& p, const Spectrum& fhat,
                     std::shared_ptr<const RadialGrid> rgrid, int threads = 1);

// L2 norms on both sides of the transform; their ratio is the unitarity
// defect of the discretization.
struct PlancherelCheck {
  double norm_mu = 0.0;  // ||f||_{L^2(d mu)}
  double norm_nu = 0.0;  // ||f^||_{L^2(d nu)}
};
PlancherelCheck plancherel_check(const JacobiParams& p, const GridFunction& f,
                                 std::shared_ptr<const SpectralGrid> sgrid, int threads = 1);

// Round-trip constant: the least-squares kappa with
// inverse(forward(f)) ~ kappa f, plus the relative residual of that fit.
struct RoundTrip {
  double kappa = 0.0;
  double relative_residual = 0.0;
};
RoundTrip measure_round_trip(const JacobiParams& p, const GridFunction& f,
                             std::shared_ptr<const SpectralGrid> sgrid, int threads = 1);

// || f ||_{L^p(d mu)} on the grid.
double lp_norm(const GridFunction& f, double p);
double lp_norm(std::span<const double> values, std::span<const double> weights, double p);

// Lorentz norm || f ||_{L^{p,q}(d mu)} through the exact distribution
// function of the grid atoms (node i carries mass w_i).
double lorentz_norm(const GridFunction& f, double p, double q);
double lorentz_norm(std::span<const double> values, std::span<const double> weights, double p,
                    double q);

// Weighted inner product sum_i w_i f_i g_i (pairwise reduction).
double inner_product(const GridFunction& f, const GridFunction& g);

}  // namespace jacobilab

#endif
