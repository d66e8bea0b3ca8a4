#include "jacobilab/grids.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jacobilab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1 || n > 64) throw Error("gauss_legendre: order must be in [1, 64]");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

namespace {

std::vector<double> build_edges(double x_max, double fine_until, int panels_per_unit,
                                std::span<const double> extra_splits) {
  if (!(x_max > 0.0)) throw GridError("grid: empty range (max must be > 0)");
  if (panels_per_unit < 1) throw GridError("grid: panels_per_unit must be >= 1");
  std::vector<double> edges{0.0};
  const double fine_h = 1.0 / (2.0 * panels_per_unit);
  const double coarse_h = 1.0 / panels_per_unit;
  double x = 0.0;
  while (x < x_max - 1e-12) {
    const double h = (fine_until > 0.0 && x < fine_until - 1e-12) ? fine_h : coarse_h;
    x = std::min(x + h, x_max);
    edges.push_back(x);
  }
  for (double s : extra_splits) {
    if (s > 1e-12 && s < x_max - 1e-12) edges.push_back(s);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<double> dedup;
  for (double e : edges) {
    if (dedup.empty() || e - dedup.back() > 1e-12) dedup.push_back(e);
  }
  if (std::abs(dedup.back() - x_max) < 1e-12) dedup.back() = x_max;
  return dedup;
}

}  // namespace

double RadialGrid::measure() const { return pairwise_sum(weights); }

std::shared_ptr<const RadialGrid> make_radial_grid(const JacobiParams& p, double t_max,
                                                   int panels_per_unit, int nodes_per_panel,
                                                   std::span<const double> extra_splits) {
  auto g = std::make_shared<RadialGrid>();
  g->t_max = t_max;
  g->edges = build_edges(t_max, std::min(p.r0(), t_max), panels_per_unit, extra_splits);
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  for (std::size_t k = 0; k + 1 < g->edges.size(); ++k) {
    const double a = g->edges[k], b = g->edges[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < gx.size(); ++j) {
      const double t = mid + half * gx[j];
      g->nodes.push_back(t);
      g->weights.push_back(half * gw[j] * weight_delta(p, t));
    }
  }
  return g;
}

double SpectralGrid::measure() const { return pairwise_sum(weights); }

bool SpectralGrid::has_edge(double r) const {
  for (double e : edges)
    if (std::abs(e - r) <= 1e-9 * std::max(1.0, std::abs(r))) return true;
  return false;
}

std::shared_ptr<const SpectralGrid> make_spectral_grid(const JacobiParams& p, double lambda_max,
                                                       int panels_per_unit, int nodes_per_panel,
                                                       std::span<const double> extra_splits) {
  auto g = std::make_shared<SpectralGrid>();
  g->lambda_max = lambda_max;
  g->edges = build_edges(lambda_max, 0.0, panels_per_unit, extra_splits);
  g->nodes_per_unit = static_cast<double>(panels_per_unit) * nodes_per_panel;
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  for (std::size_t k = 0; k + 1 < g->edges.size(); ++k) {
    const double a = g->edges[k], b = g->edges[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < gx.size(); ++j) {
      const double lam = mid + half * gx[j];
      g->nodes.push_back(lam);
      g->weights.push_back(half * gw[j] * plancherel_density(p, lam));
    }
  }
  return g;
}

GridFunction::GridFunction(std::shared_ptr<const RadialGrid> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw Error("GridFunction: null grid");
  if (values.size() != grid->nodes.size())
    throw Error("GridFunction: value count " + std::to_string(values.size()) +
                " does not match node count " + std::to_string(grid->nodes.size()));
  for (double x : values)
    if (!std::isfinite(x)) throw Error("GridFunction: non-finite value");
}

Spectrum::Spectrum(std::shared_ptr<const SpectralGrid> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw Error("Spectrum: null grid");
  if (values.size() != grid->nodes.size())
    throw Error("Spectrum: value count does not match node count");
  for (double x : values)
    if (!std::isfinite(x)) throw Error("Spectrum: non-finite value");
}

}  // namespace jacobilab
