#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/grid.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"
#include "support.hpp"

using namespace polyfock;

TEST_SUITE("grid-core") {
  TEST_CASE("time grid nodes and step") {
    const TimeGrid g(2.0, 8);
    CHECK(g.step() == doctest::Approx(0.5));
    CHECK(g.node(0) == -2.0);
    CHECK(g.node(7) == doctest::Approx(1.5));
    CHECK_THROWS_AS(TimeGrid(0.0, 8), ParameterError);
    CHECK_THROWS_AS(TimeGrid(1.0, 0), ParameterError);
  }

  TEST_CASE("signals on different grids do not mix") {
    const Signal a = Signal::zeros(TimeGrid(2.0, 8));
    const Signal b = Signal::zeros(TimeGrid(2.0, 16));
    CHECK_THROWS_AS(inner_product(a, b), ShapeError);
    CHECK_THROWS_AS(a + b, ShapeError);
  }

  TEST_CASE("gaussian has unit norm") {
    CHECK(gaussian_window(default_time_grid()).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("phase quadrature of the gaussian envelope") {
    const PhaseGrid p = default_phase_grid();
    GridField f = GridField::zeros(p);
    for (std::size_t i = 0; i < p.nx(); ++i) {
      for (std::size_t k = 0; k < p.nomega(); ++k) {
        f.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::exp(-std::numbers::pi * std::norm(p.z(i, k)) / 2);
      }
    }
    CHECK(phase_quadrature(f, PhaseWeight::none) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("signal csv round trip and header check") {
    const auto dir = testing::scratch_dir("csv");
    const TimeGrid g(4.0, 64);
    auto rng = stream(3, "csv");
    const Signal s = random_hermite_signal(g, 4, rng);
    write_file_atomic(dir / "s.csv", signal_to_csv(s));
    const Signal back = read_signal_csv(dir / "s.csv");
    CHECK(back.grid() == g);
    CHECK((back.values() - s.values()).cwiseAbs().maxCoeff() == 0.0);
    testing::write_text(dir / "bad.csv", "time,re,im\n0,1,0\n");
    CHECK_THROWS_AS(read_signal_csv(dir / "bad.csv"), ConfigError);
  }
}

TEST_SUITE("hermite") {
  TEST_CASE("recurrence matches symbolic Rodrigues values") {
    const auto rows = testing::read_rows("hermite_rodrigues.csv");
    REQUIRE(rows.size() == 54);
    for (const auto& r : rows) {
      INFO("n=" << r[0] << " t=" << r[1]);
      CHECK(std::abs(hermite_value(static_cast<int>(r[0]), r[1]) - r[2]) < 1e-12);
    }
  }

  TEST_CASE("orthonormal up to order 8 at default resolution") {
    const TimeGrid g = default_time_grid();
    const Eigen::VectorXd t = g.nodes();
    const Eigen::MatrixXd h = hermite_table(8, std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
    const Eigen::MatrixXd gram = h * h.transpose() * g.step();
    CHECK((gram - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("table rows agree with single evaluations") {
    const std::vector<double> t{-3.0, -0.1, 0.0, 0.7, 5.5};
    const Eigen::MatrixXd h = hermite_table(10, t);
    for (int n = 0; n <= 10; ++n) {
      for (std::size_t j = 0; j < t.size(); ++j) CHECK(h(n, static_cast<Eigen::Index>(j)) == doctest::Approx(hermite_value(n, t[j])).epsilon(1e-14));
    }
  }

  TEST_CASE("parity and leading sign") {
    for (int n = 0; n <= 8; ++n) {
      for (double t : {0.3, 1.1, 2.4}) CHECK(hermite_value(n, -t) == doctest::Approx((n % 2 ? -1 : 1) * hermite_value(n, t)));
      CHECK(hermite_value(n, 4.0) > 0.0);
    }
  }

  TEST_CASE("order outside the cap is rejected") {
    CHECK_THROWS_AS(hermite_function(-1, default_time_grid()), ParameterError);
    CHECK_THROWS_AS(hermite_function(kDefaultMaxHermiteOrder + 1, default_time_grid()), ParameterError);
  }

  TEST_CASE("S0 closed form against high precision values") {
    const auto rows = testing::read_rows("s0_formula.csv");
    for (const auto& r : rows) CHECK(s0_norm_formula(static_cast<int>(r[0])) == doctest::Approx(r[1]).epsilon(1e-14));
    CHECK(s0_norm_formula(0) == 2.0);
  }

  TEST_CASE("S0 quadrature within 1 percent for n <= 4") {
    for (int n = 0; n <= 4; ++n) {
      CHECK(s0_norm_numeric(n, default_phase_grid(), default_time_grid()) ==
            doctest::Approx(s0_norm_formula(n)).epsilon(0.01));
    }
  }
}
