#include <doctest.h>

#include <cmath>

#include "polyfock/bargmann.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/nyquist.hpp"

using namespace polyfock;

TEST_SUITE("nyquist") {
  TEST_CASE("weighted evaluation matrix matches transform values on grid nodes") {
    // Grid step 0.125 puts every point of the 0.5-lattice on a node.
    const PhaseGrid p(6.0, 6.0, 96, 96);
    const auto pts = enumerate_points(square_lattice(0.5), 3.0);
    const int band = 4;
    const Eigen::MatrixXcd a = weighted_evaluation_matrix(2, pts, band);
    REQUIRE(a.cols() == 2 * (band + 1));
    for (int k = 0; k < 2; ++k) {
      for (int m = 0; m <= band; ++m) {
        const FockField w = basis_ekm(k, m, p).as(NormTag::bargmann_weighted);
        for (std::size_t q = 0; q < pts.size(); ++q) {
          const auto i = static_cast<Eigen::Index>(std::lround((pts.points[q].x + 6.0) / 0.125));
          const auto j = static_cast<Eigen::Index>(std::lround((pts.points[q].omega + 6.0) / 0.125));
          CHECK(std::abs(a(Eigen::Index(q), k * (band + 1) + m) - w.values()(i, j)) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("sampling band") {
    CHECK(sampling_band(4.0) == 8);
    CHECK(sampling_band(10.0) == static_cast<int>(std::floor(std::numbers::pi * 49.0)));
  }

  TEST_CASE("sampling ratios separate at n = 1") {
    const auto radii = default_radii();
    CHECK(sampling_bounds(1, lattice_with_density(1.5), radii, 16, 1).verdict == Verdict::stable_positive);
    CHECK(sampling_bounds(1, lattice_with_density(0.5), radii, 16, 1).verdict == Verdict::decaying);
  }

  TEST_CASE("random ratios never fall below the band minimum") {
    const SamplingStats s = sampling_ratio_stats(2, lattice_with_density(2.5), 32, 8.0, 3);
    CHECK(s.trial_count + s.skipped == 32);
    CHECK(s.min_ratio >= s.band_min - 1e-12);
    CHECK(s.max_ratio <= s.band_max + 1e-12);
    CHECK(s.span_min >= s.band_min - 1e-12);
  }

  TEST_CASE("interpolation separates at n = 1") {
    CHECK(interpolation_trials(1, lattice_with_density(0.5), kDefaultInterpolationRadius, 8, 1).verdict ==
          Verdict::stable_positive);
    CHECK(interpolation_trials(1, lattice_with_density(1.5), kDefaultInterpolationRadius, 8, 1).verdict ==
          Verdict::decaying);
  }

  TEST_CASE("interpolant reproduces the data it was fitted to") {
    const auto r = interpolation_solve(2, lattice_with_density(1.5), 6.0,
                                       Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(
                                           enumerate_points(lattice_with_density(1.5), 6.0).size())));
    CHECK(r.residual_norm < 1e-8);
    CHECK_THROWS_AS(interpolation_solve(2, lattice_with_density(1.5), 6.0, Eigen::VectorXcd::Ones(3)), ShapeError);
  }

  TEST_CASE("duplicate densities are dropped in order") {
    std::vector<double> d{1.5, 2.5, 1.5, 3.0, 2.5};
    CHECK(dedupe_densities(d) == 2);
    CHECK(d == std::vector<double>{1.5, 2.5, 3.0});
  }

  TEST_CASE("sweep rows and exploratory scan") {
    SweepConfig c;
    c.seed = 9;
    c.trials = 8;
    const auto rows = density_sweep(1, {0.5, 1.5}, SweepMode::sampling, c);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].verdict == "decaying");
    CHECK(rows[1].verdict == "stable_positive");
    CHECK(rows[0].seed == 9);
    const std::string csv = sweep_rows_to_csv(rows);
    CHECK(csv.rfind("n,density,mode,diagnostic,verdict,seed\n", 0) == 0);
    c.probe_count = 4;
    const auto scan = true_space_scan(1, {2.0}, c);
    REQUIRE(scan.size() == 1);
    CHECK(scan[0].mode == "exploratory");
    CHECK_THROWS_AS(parse_sweep_mode("dual"), ConfigError);
  }
}
