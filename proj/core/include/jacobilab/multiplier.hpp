#ifndef JACOBILAB_MULTIPLIER_HPP
#define JACOBILAB_MULTIPLIER_HPP

#include <string>

#include "jacobilab/report.hpp"
#include "jacobilab/transform.hpp"

namespace jacobilab {

// Region decomposition of the (t, r) quadrant with the cut at R0:
// A1 both small, A2 both large, A3 t large / r small, A4 t small / r large.
enum class Region { A1, A2, A3, A4 };
Region region_classify(const JacobiParams& p, double t, double r);
std::string region_name(Region r);

// Truncated spectral kernel K_R(t, r) = int_0^R phi(t) phi(r) d nu.
// The spectral grid must resolve the oscillation: at least 10 nodes per
// period 2 pi / (t + r), and must carry a panel edge at R.
double kernel_value(const JacobiParams& p, double t, double r, double R,
                    const SpectralGrid& sgrid);

// K_R over a (t, r) product grid with region labels; symmetric in (t, r).
struct KernelTable {
  std::vector<double> t_nodes;
  std::vector<double> r_nodes;
  double truncation = 0.0;  // R
  std::vector<double> values;  // row-major |t| x |r|
  std::vector<Region> labels;
  double at(std::size_t i, std::size_t j) const { return values[i * r_nodes.size() + j]; }
};
KernelTable kernel_table(const JacobiParams& p, std::vector<double> t_nodes,
                         std::vector<double> r_nodes, double R, const SpectralGrid& sgrid,
                         int threads = 1);

// CSV with one (t, r, K_R, region) row per cell, full precision.
std::string kernel_table_to_csv(const KernelTable& table);

// Partial spectral sum S_R f(t) = int_0^R f^(lambda) phi_lambda(t) d nu.
// R must coincide with a panel boundary of the spectrum's grid (grids are
// built with splits at every truncation radius of interest).
GridFunction partial_sum(const JacobiParams& p, const Spectrum& fhat, double R,
                         std::shared_ptr<const RadialGrid> rgrid, int threads = 1);

// Pointwise max of |S_R f| over a finite increasing schedule; a certified
// lower bound for the maximal function S_* f.
GridFunction maximal_function(const JacobiParams& p, const Spectrum& fhat,
                              std::span<const double> r_schedule,
                              std::shared_ptr<const RadialGrid> rgrid, int threads = 1);

// All partial sums over a schedule in one pass (one row per R).
std::vector<GridFunction> partial_sum_sweep(const JacobiParams& p, const Spectrum& fhat,
                                            std::span<const double> r_schedule,
                                            std::shared_ptr<const RadialGrid> rgrid,
                                            int threads = 1);

// Ratio tabulation |K_R| / bound over region grids, for R in r_set.
// Bounds: A3: e^{-rho r} t^{-(a+1/2)} / r;  A4: the (t <-> r) swap;
// A1: t^{-(a+1/2)} r^{-(a+1/2)} off the diagonal (|t-r| > 0.1).
ExperimentReport kernel_bound_check(const JacobiParams& p, Region region,
                                    std::span<const double> t_grid,
                                    std::span<const double> r_grid,
                                    std::span<const double> r_set, int spectral_panels_per_unit,
                                    int spectral_nodes_per_panel, int threads = 1);

// L^{p0'}([0,1], Delta dt) norm of t -> int_R^{R+1} phi_lambda(t) |c(lambda)|^-1 dlambda.
// weight_scale multiplies |c|^-1 (0 gives exactly 0).
double endpoint_functional(const JacobiParams& p, double R, const RadialGrid& unit_grid,
                           double weight_scale = 1.0, int threads = 1);

// Convergence experiment rows: for each R in the schedule,
//   (R, ||S_R f - kappa f||_{L^p(d mu)}, max |S_R f - kappa f| within the
//    observation window at distance > far from any listed jump,
//    max near the jumps, ||maximal||_{L^p} lower bound so far).
ExperimentReport convergence_experiment(const JacobiParams& p, const GridFunction& f,
                                        double lp_exponent, std::span<const double> r_schedule,
                                        std::shared_ptr<const SpectralGrid> sgrid, double kappa,
                                        std::span<const double> jumps, double obs_t_max,
                                        int threads = 1);

}  // namespace jacobilab

#endif
