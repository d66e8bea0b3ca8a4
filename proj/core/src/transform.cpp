#include "jacobilab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jacobilab {

Spectrum forward(const JacobiParams& p, const GridFunction& f,
                 std::shared_ptr<const SpectralGrid> sgrid, int threads) {
  const auto& rg = *f.grid;
  const auto table = phi_table(p, sgrid->nodes, rg.nodes, threads);
  const std::size_t nl = sgrid->nodes.size();
  const std::size_t nt = rg.nodes.size();
  std::vector<double> out(nl);
  std::vector<double> scratch;
  parallel_for(nl, threads, [&, nt](std::size_t i) {
    std::vector<double> prod(nt);
    for (std::size_t j = 0; j < nt; ++j)
      prod[j] = rg.weights[j] * f.values[j] * table[i * nt + j];
    out[i] = pairwise_sum(prod);
  });
  return Spectrum(std::move(sgrid), std::move(out));
}

GridFunction inverse(const JacobiParams& p, const Spectrum& fhat,
                     std::shared_ptr<const RadialGrid> rgrid, int threads) {
  const auto& sg = *fhat.grid;
  const auto table = phi_table(p, sg.nodes, rgrid->nodes, threads);
  const std::size_t nl = sg.nodes.size();
  const std::size_t nt = rgrid->nodes.size();
  std::vector<double> out(nt);
  parallel_for(nt, threads, [&, nt, nl](std::size_t j) {
    std::vector<double> prod(nl);
    for (std::size_t i = 0; i < nl; ++i)
      prod[i] = sg.weights[i] * fhat.values[i] * table[i * nt + j];
    out[j] = pairwise_sum(prod);
  });
  return GridFunction(std::move(rgrid), std::move(out));
}

PlancherelCheck plancherel_check(const JacobiParams& p, const GridFunction& f,
                                 std::shared_ptr<const SpectralGrid> sgrid, int threads) {
  PlancherelCheck out;
  out.norm_mu = lp_norm(f, 2.0);
  const Spectrum fh = forward(p, f, std::move(sgrid), threads);
  out.norm_nu = lp_norm(fh.values, fh.grid->weights, 2.0);
  return out;
}

RoundTrip measure_round_trip(const JacobiParams& p, const GridFunction& f,
                             std::shared_ptr<const SpectralGrid> sgrid, int threads) {
  const Spectrum fh = forward(p, f, std::move(sgrid), threads);
  const GridFunction g = inverse(p, fh, f.grid, threads);
  const double ff = inner_product(f, f);
  if (!(ff > 0.0)) throw Error("measure_round_trip: zero input function");
  RoundTrip out;
  out.kappa = inner_product(g, f) / ff;
  std::vector<double> diff(f.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = g.values[i] - out.kappa * f.values[i];
  out.relative_residual =
      lp_norm(diff, f.grid->weights, 2.0) / std::sqrt(ff);
  return out;
}

double lp_norm(std::span<const double> values, std::span<const double> weights, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error("lp_norm: p must be finite and > 0");
  if (values.size() != weights.size()) throw Error("lp_norm: size mismatch");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p) {
  return lp_norm(f.values, f.grid->weights, p);
}

double lorentz_norm(std::span<const double> values, std::span<const double> weights, double p,
                    double q) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error("lorentz_norm: p must be finite and > 0");
  if (!(q > 0.0)) throw Error("lorentz_norm: q must be > 0");
  if (values.size() != weights.size()) throw Error("lorentz_norm: size mismatch");

  // Sort atoms by |value| descending; build distinct levels s_1 < ... < s_K
  // with D_k = mu{|f| > s_k} (mass strictly above each level).
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > 0.0) atoms.emplace_back(a, weights[i]);
  }
  if (atoms.empty()) return 0.0;
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });

  std::vector<double> levels;      // ascending after reversal
  std::vector<double> mass_above;  // D_k for each level
  double cum = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double s = atoms[i].first;
    // cum = mass strictly above s
    levels.push_back(s);
    mass_above.push_back(cum);
    while (i < atoms.size() && atoms[i].first == s) {
      cum += atoms[i].second;
      ++i;
    }
  }
  std::reverse(levels.begin(), levels.end());
  std::reverse(mass_above.begin(), mass_above.end());
  // Now levels are ascending s_1 < ... < s_K; d(s) = mass_above[k] on
  // [s_k, s_{k+1}) ... more precisely d(s) for s in [s_{k-1}, s_k) equals the
  // mass of atoms >= s_k, which is mass_above[k] + (mass at s_k and above).
  // Simplest correct assembly: d(s) is constant between consecutive levels;
  // on [s_k, s_{k+1}) it equals mass_above[k] (mass strictly above s_k).
  if (std::isinf(q)) {
    // sup over s of s d(s)^(1/p): on [s_k, s_{k+1}) the sup is at s -> s_{k+1};
    // on [0, s_1) the distribution is the full mass, sup at s -> s_1.
    double total = cum;
    double best = levels.front() * std::pow(total, 1.0 / p);
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
      best = std::max(best, levels[k + 1] * std::pow(mass_above[k], 1.0 / p));
    return best;
  }
  // q int_0^inf [s d(s)^(1/p)]^q ds/s = sum over constancy intervals.
  double total = cum;
  std::vector<double> terms;
  terms.reserve(levels.size());
  terms.push_back(std::pow(total, q / p) * std::pow(levels.front(), q));  // [0, s_1)
  for (std::size_t k = 0; k + 1 < levels.size(); ++k)
    terms.push_back(std::pow(mass_above[k], q / p) *
                    (std::pow(levels[k + 1], q) - std::pow(levels[k], q)));
  return std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / q);
}

double lorentz_norm(const GridFunction& f, double p, double q) {
  return lorentz_norm(f.values, f.grid->weights, p, q);
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.grid != g.grid && f.grid->nodes != g.grid->nodes)
    throw Error("inner_product: functions live on different grids");
  std::vector<double> terms(f.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = f.grid->weights[i] * f.values[i] * g.values[i];
  return pairwise_sum(terms);
}

}  // namespace jacobilab
