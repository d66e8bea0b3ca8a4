#ifndef JACOBILAB_GRIDS_HPP
#define JACOBILAB_GRIDS_HPP

#include <memory>
#include <span>
#include <vector>

#include "jacobilab/jacobi.hpp"

namespace jacobilab {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Composite Gauss-Legendre grid on (0, t_max] against d mu = Delta(t) dt.
// Panel density is doubled on (0, R0] to resolve the t^(2a+1) vanishing of
// the weight. Quadrature weights returned already include Delta(t_i).
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> edges;  // panel boundaries, first = 0, last = t_max
  double t_max = 0.0;

  double measure() const;  // sum of weights ~ mu((0, t_max])
};

std::shared_ptr<const RadialGrid> make_radial_grid(const JacobiParams& p, double t_max,
                                                   int panels_per_unit, int nodes_per_panel,
                                                   std::span<const double> extra_splits = {});

// Composite Gauss-Legendre grid on (0, lambda_max] against
// d nu = (2 pi)^-1 |c|^-2 d lambda; weights include the Plancherel density.
// Panels are additionally split at every requested truncation radius so S_R
// always lands on a panel boundary.
struct SpectralGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> edges;
  double lambda_max = 0.0;
  double nodes_per_unit = 0.0;  // sampling density, for oscillation checks

  double measure() const;
  bool has_edge(double r) const;  // is r a panel boundary (within 1e-9 rel)?
};

std::shared_ptr<const SpectralGrid> make_spectral_grid(const JacobiParams& p, double lambda_max,
                                                       int panels_per_unit, int nodes_per_panel,
                                                       std::span<const double> extra_splits = {});

// A sampled function on a radial grid. Values are real (all production
// integrands are); no NaN may enter.
struct GridFunction {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(std::shared_ptr<const RadialGrid> g, std::vector<double> v);
};

// A sampled function on a spectral grid.
struct Spectrum {
  std::shared_ptr<const SpectralGrid> grid;
  std::vector<double> values;

  Spectrum() = default;
  Spectrum(std::shared_ptr<const SpectralGrid> g, std::vector<double> v);
};

// Sample a scalar function on the grid.
template <typename F>
GridFunction sample(std::shared_ptr<const RadialGrid> g, F&& f) {
  std::vector<double> v(g->nodes.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g->nodes[i]);
  return GridFunction(std::move(g), std::move(v));
}

}  // namespace jacobilab

#endif
