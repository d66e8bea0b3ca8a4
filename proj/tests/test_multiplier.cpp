#include <doctest.h>

#include <cmath>

#include "jacobilab/multiplier.hpp"

using namespace jacobilab;

namespace {

GridFunction bump(std::shared_ptr<const RadialGrid> g, double t0 = 3.0, double s = 1.0) {
  return sample(std::move(g), [t0, s](double t) {
    const double u = (t - t0) / s;
    return std::exp(-u * u);
  });
}

}  // namespace

TEST_CASE("region_classify") {
  const JacobiParams p(1.25, 0.25);  // R0 = 1.05
  CHECK(region_classify(p, 0.5, 0.5) == Region::A1);
  CHECK(region_classify(p, 5.0, 5.0) == Region::A2);
  CHECK(region_classify(p, 5.0, 0.5) == Region::A3);
  CHECK(region_classify(p, 0.5, 5.0) == Region::A4);
  CHECK_THROWS_AS((void)region_classify(p, -1.0, 0.5), Error);
}

TEST_CASE("kernel: symmetry and diagonal positivity") {
  const JacobiParams p(1.25, 0.25);
  const auto sg = make_spectral_grid(p, 8.0, 6, 12, std::vector<double>{5.0});
  for (auto [t, r] : {std::pair{0.4, 2.0}, {1.5, 3.0}, {0.2, 0.8}}) {
    const double a = kernel_value(p, t, r, 5.0, *sg);
    const double b = kernel_value(p, r, t, 5.0, *sg);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
  for (double t : {0.3, 1.0, 2.5}) CHECK(kernel_value(p, t, t, 5.0, *sg) > 0.0);
}

TEST_CASE("kernel: resolution and truncation preconditions") {
  const JacobiParams p(1.25, 0.25);
  const auto sparse = make_spectral_grid(p, 8.0, 1, 4, std::vector<double>{5.0});
  CHECK_THROWS_AS((void)kernel_value(p, 4.0, 4.0, 5.0, *sparse), GridError);
  const auto sg = make_spectral_grid(p, 8.0, 6, 12, std::vector<double>{5.0});
  CHECK_THROWS_AS((void)kernel_value(p, 0.5, 0.5, 9.0, *sg), GridError);   // beyond lambda_max
  CHECK_THROWS_AS((void)kernel_value(p, 0.5, 0.5, 4.99, *sg), GridError);  // not a panel edge
}

TEST_CASE("kernel_table: labels and values against kernel_value") {
  const JacobiParams p(1.25, 0.25);
  const auto sg = make_spectral_grid(p, 6.0, 6, 12, std::vector<double>{6.0});
  const KernelTable table =
      kernel_table(p, {0.5, 4.0}, {0.7, 3.0}, 6.0, *sg);
  CHECK(table.labels[0 * 2 + 0] == Region::A1);
  CHECK(table.labels[1 * 2 + 1] == Region::A2);
  CHECK(table.labels[1 * 2 + 0] == Region::A3);
  CHECK(table.labels[0 * 2 + 1] == Region::A4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(table.at(i, j) ==
            doctest::Approx(kernel_value(p, table.t_nodes[i], table.r_nodes[j], 6.0, *sg))
                .epsilon(1e-12));
}

TEST_CASE("partial_sum: equals inverse at full truncation, band-limit stability") {
  const JacobiParams p(1.25, 0.25);
  const auto rg = make_radial_grid(p, 8.0, 6, 10);
  const auto sg = make_spectral_grid(p, 30.0, 5, 12, std::vector<double>{10.0, 30.0});
  const Spectrum fh = forward(p, bump(rg, 2.0, 0.7), sg);
  const GridFunction full = inverse(p, fh, rg);
  const GridFunction s_full = partial_sum(p, fh, 30.0, rg);
  for (std::size_t i = 0; i < full.values.size(); ++i)
    CHECK(s_full.values[i] == doctest::Approx(full.values[i]).epsilon(1e-12));

  // band-limited: chopping the spectrum above 10 makes S_30 = S_10
  std::vector<double> chopped(fh.values);
  for (std::size_t j = 0; j < chopped.size(); ++j)
    if (sg->nodes[j] > 10.0) chopped[j] = 0.0;
  const Spectrum band(sg, chopped);
  const GridFunction s10 = partial_sum(p, band, 10.0, rg);
  const GridFunction s30 = partial_sum(p, band, 30.0, rg);
  for (std::size_t i = 0; i < s10.values.size(); ++i)
    CHECK(std::abs(s10.values[i] - s30.values[i]) < 1e-12);

  CHECK_THROWS_AS((void)partial_sum(p, fh, 31.0, rg), GridError);
  CHECK_THROWS_AS((void)partial_sum(p, fh, 9.7, rg), GridError);
}

TEST_CASE("partial_sum: monotone refinement toward the reconstruction") {
  const JacobiParams p(1.25, 0.25);
  const auto rg = make_radial_grid(p, 12.0, 8, 12);
  const std::vector<double> sched{10.0, 20.0, 40.0};
  const auto sg = make_spectral_grid(p, 60.0, 6, 12, sched);
  const GridFunction f = bump(rg);
  const Spectrum fh = forward(p, f, sg);
  const auto sums = partial_sum_sweep(p, fh, sched, rg);
  double prev = 1e300;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    std::vector<double> diff(f.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sums[k].values[i] - f.values[i];
    const double err = lp_norm(diff, rg->weights, 2.0);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("maximal_function: domination, homogeneity, schedule monotonicity") {
  const JacobiParams p(1.25, 0.25);
  const auto rg = make_radial_grid(p, 8.0, 6, 10);
  const std::vector<double> sched{5.0, 10.0, 20.0};
  const auto sg = make_spectral_grid(p, 30.0, 5, 12, sched);
  const Spectrum fh = forward(p, bump(rg, 2.0, 0.7), sg);

  const GridFunction star = maximal_function(p, fh, sched, rg);
  for (double R : sched) {
    const GridFunction s = partial_sum(p, fh, R, rg);
    for (std::size_t i = 0; i < s.values.size(); ++i)
      CHECK(star.values[i] >= std::abs(s.values[i]) - 1e-15);
  }

  // |c| f^ scales the maximal function by |c| exactly
  std::vector<double> scaled(fh.values);
  for (double& v : scaled) v *= -3.0;
  const GridFunction star3 = maximal_function(p, Spectrum(sg, scaled), sched, rg);
  for (std::size_t i = 0; i < star.values.size(); ++i)
    CHECK(star3.values[i] == doctest::Approx(3.0 * star.values[i]).epsilon(1e-13));

  // enlarging the schedule never decreases the output
  const GridFunction star2 = maximal_function(p, fh, std::vector<double>{5.0, 10.0}, rg);
  for (std::size_t i = 0; i < star.values.size(); ++i)
    CHECK(star.values[i] >= star2.values[i] - 1e-15);
}

TEST_CASE("Fubini consistency: spectral route equals kernel route") {
  const JacobiParams p(1.25, 0.25);
  const auto rg = make_radial_grid(p, 4.0, 5, 4);  // coarse 20x-style check grid
  const auto sg = make_spectral_grid(p, 10.0, 6, 12, std::vector<double>{10.0});
  const GridFunction f = bump(rg, 1.5, 0.5);
  const Spectrum fh = forward(p, f, sg);
  const GridFunction via_spectrum = partial_sum(p, fh, 10.0, rg);

  const KernelTable table = kernel_table(p, rg->nodes, rg->nodes, 10.0, *sg);
  for (std::size_t i = 0; i < rg->nodes.size(); i += 7) {
    std::vector<double> terms(rg->nodes.size());
    for (std::size_t j = 0; j < terms.size(); ++j)
      terms[j] = table.at(i, j) * f.values[j] * rg->weights[j];
    const double via_kernel = pairwise_sum(terms);
    CHECK(std::abs(via_kernel - via_spectrum.values[i]) <
          1e-6 * std::max(1.0, std::abs(via_kernel)));
  }
}

TEST_CASE("kernel_bound_check: stable normalized ratios in A3/A4/A1") {
  const JacobiParams p(1.25, 0.25);
  const std::vector<double> small{0.05, 0.2, 0.4, 0.52};
  const std::vector<double> large{3.0, 4.5, 6.0, 8.0};
  const std::vector<double> unit{0.1, 0.3, 0.55, 0.8, 1.0};
  const std::vector<double> r_set{2.0, 5.0, 10.0, 20.0};

  struct Want {
    Region region;
    const std::vector<double>*t, *r;
  };
  for (const Want& w : {Want{Region::A3, &large, &small}, Want{Region::A4, &small, &large},
                        Want{Region::A1, &unit, &unit}}) {
    const ExperimentReport rep = kernel_bound_check(p, w.region, *w.t, *w.r, r_set, 6, 12);
    for (double R : r_set) {
      const double m = rep.meta_number("max_ratio_R" + format_double(R));
      CHECK(std::isfinite(m));
      CHECK(m > 0.0);
    }
    // stability under the doubling pairs within the set (5 -> 10 -> 20);
    // R = 2 sits below the oscillatory onset for the small-(t+r) cells and
    // only its finiteness is asserted
    const double m5 = rep.meta_number("max_ratio_R5");
    const double m10 = rep.meta_number("max_ratio_R10");
    const double m20 = rep.meta_number("max_ratio_R20");
    CHECK(std::max(m10 / m5, m5 / m10) < 2.0);
    CHECK(std::max(m20 / m10, m10 / m20) < 2.0);
  }
  // grid points outside the named region are rejected
  CHECK_THROWS_AS(
      (void)kernel_bound_check(p, Region::A3, small, large, r_set, 6, 12), Error);
}

TEST_CASE("endpoint_functional: growth, regression, and trivial scaling") {
  const JacobiParams p(1.25, 0.25);
  const auto unit = make_radial_grid(p, 1.0, 16, 12);
  std::vector<double> xs, ys;
  double prev = 0.0;
  for (double R : {4.0, 16.0, 64.0, 256.0}) {
    const double v = endpoint_functional(p, R, *unit);
    CHECK(v > prev);  // strictly increasing
    prev = v;
  }
  for (double R = 4.0; R <= 512.0; R *= 2.0) {
    xs.push_back(std::pow(std::log(R), 1.0 / p.p1()));
    ys.push_back(endpoint_functional(p, R, *unit));
  }
  const LineFit fit = fit_line(xs, ys);
  CHECK(fit.slope > 0.0);
  CHECK(fit.correlation > 0.9);

  CHECK(endpoint_functional(p, 8.0, *unit, 0.0) == 0.0);
  CHECK(endpoint_functional(p, 8.0, *unit, 2.0) ==
        doctest::Approx(2.0 * endpoint_functional(p, 8.0, *unit)).epsilon(1e-13));
  CHECK_THROWS_AS((void)endpoint_functional(p, 1.0, *unit), Error);
}

TEST_CASE("convergence_experiment: smooth bump decays, maximal norm grows") {
  const JacobiParams p(1.25, 0.25);
  const auto rg = make_radial_grid(p, 12.0, 8, 12);
  const std::vector<double> sched{5.0, 10.0, 20.0, 40.0};
  const auto sg = make_spectral_grid(p, 60.0, 6, 12, sched);
  const GridFunction f = bump(rg);
  const RoundTrip rt = measure_round_trip(p, f, sg);
  const ExperimentReport rep =
      convergence_experiment(p, f, 2.0, sched, sg, rt.kappa, {}, 4.0);
  REQUIRE(rep.rows.size() == sched.size());
  CHECK(rep.rows.front()[1] / rep.rows.back()[1] > 10.0);  // lp error collapses
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    CHECK(rep.rows[k].back() >= rep.rows[k - 1].back());  // maximal L^p monotone
  CHECK_THROWS_AS(
      (void)convergence_experiment(p, f, 3.0, sched, sg, rt.kappa, {}, 4.0), Error);
}

TEST_CASE("kernel_table_to_csv carries every cell with its region") {
  const JacobiParams p(1.4, 0.25);
  const auto sg = make_spectral_grid(p, 4.0, 6, 12, std::vector<double>{4.0});
  const KernelTable table = kernel_table(p, {0.5, 3.0}, {0.4}, 4.0, *sg);
  const std::string csv = kernel_table_to_csv(table);
  CHECK(csv.find("t,r,kernel,region") != std::string::npos);
  CHECK(csv.find("A1") != std::string::npos);
  CHECK(csv.find("A3") != std::string::npos);
  CHECK(csv.find(format_double(table.at(1, 0))) != std::string::npos);
}

TEST_CASE("maximal_function: band-limited schedule dominates the reconstruction") {
  const JacobiParams p(1.4, 0.25);
  const auto rg = make_radial_grid(p, 8.0, 6, 10);
  const std::vector<double> sched{6.0, 12.0, 24.0};
  const auto sg = make_spectral_grid(p, 30.0, 5, 12, sched);
  // spectrum supported below 12: any schedule containing R > 12 reaches the
  // full reconstruction, so S_* >= |kappa f| pointwise
  const Spectrum fh = forward(p, bump(rg, 2.0, 0.7), sg);
  std::vector<double> chopped(fh.values);
  for (std::size_t j = 0; j < chopped.size(); ++j)
    if (sg->nodes[j] > 12.0) chopped[j] = 0.0;
  const Spectrum band(sg, chopped);
  const GridFunction rec = inverse(p, band, rg);
  const GridFunction star = maximal_function(p, band, sched, rg);
  for (std::size_t i = 0; i < star.values.size(); ++i)
    CHECK(star.values[i] >= std::abs(rec.values[i]) - 1e-14);
}
