#include <doctest.h>

#include <cmath>

#include "polyfock/errors.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/lattice.hpp"
#include "polyfock/random.hpp"

using namespace polyfock;

TEST_SUITE("lattice") {
  TEST_CASE("density and adjoint of a rectangular lattice") {
    const Lattice2D l = rect_lattice(0.5, 0.25);
    CHECK(density(l) == doctest::Approx(8.0));
    CHECK(density(adjoint_lattice(l)) == doctest::Approx(0.125));
    CHECK(point_set_coordinates(enumerate_points(adjoint_lattice(l), 9.0)) ==
          point_set_coordinates(enumerate_points(rect_lattice(4.0, 2.0), 9.0)));
  }

  TEST_CASE("density product is one on random lattices") {
    auto rng = stream(31, "lattice");
    for (int trial = 0; trial < 32; ++trial) {
      Eigen::Matrix2d a;
      for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = 4.0 * uniform01(rng) - 2.0;
      if (std::abs(a.determinant()) < 0.05) continue;
      const Lattice2D l = lattice_from_matrix(a);
      CHECK(std::abs(density(l) * density(adjoint_lattice(l)) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("singular generators are rejected") {
    Eigen::Matrix2d a;
    a << 1.0, 2.0, 0.5, 1.0;
    CHECK_THROWS_AS(lattice_from_matrix(a), ParameterError);
    CHECK_THROWS_AS(lattice_with_density(0.0), ParameterError);
  }

  TEST_CASE("lattice specs") {
    CHECK(density(parse_lattice("square:0.5")) == doctest::Approx(4.0));
    CHECK(density(parse_lattice("rect:0.5,2")) == doctest::Approx(1.0));
    CHECK(density(parse_lattice("matrix:1,0.5,0,2")) == doctest::Approx(0.5));
    CHECK(density(parse_lattice("density:2.5")) == doctest::Approx(2.5));
    CHECK_THROWS_AS(parse_lattice("hex:1"), ConfigError);
    CHECK_THROWS_AS(parse_lattice("rect:1"), ConfigError);
    CHECK_THROWS_AS(parse_lattice("square:abc"), ConfigError);
    CHECK_THROWS_AS(parse_lattice("matrix:1,1,1,1"), ConfigError);
  }

  TEST_CASE("enumeration is complete and lexicographic") {
    const auto set = enumerate_points(square_lattice(1.0), 2.0);
    CHECK(set.size() == 13);
    for (std::size_t p = 1; p < set.size(); ++p) {
      const auto& a = set.points[p - 1];
      const auto& b = set.points[p];
      CHECK((a.i < b.i || (a.i == b.i && a.j < b.j)));
    }
    for (const auto& p : set.points) CHECK(std::hypot(p.x, p.omega) <= 2.0 + 1e-12);
    const auto skew = enumerate_points(parse_lattice("matrix:1,0.9,0,0.3"), 3.0);
    std::size_t brute = 0;
    for (long i = -40; i <= 40; ++i) {
      for (long j = -40; j <= 40; ++j) brute += std::hypot(i + 0.9 * j, 0.3 * j) <= 3.0;
    }
    CHECK(skew.size() == brute);
  }

  TEST_CASE("point cap raises a capacity error") {
    CHECK_THROWS_AS(enumerate_points(lattice_with_density(50.0), 20.0), CapacityError);
    CHECK_NOTHROW(enumerate_points(lattice_with_density(50.0), 20.0, 100000));
  }

  TEST_CASE("adjoint shifts commute with lattice shifts") {
    const TimeGrid g(8.0, 2048);
    const Signal w = hermite_function(1, g);
    const Lattice2D l = rect_lattice(0.8, 1.25);
    for (const auto& mu : enumerate_points(adjoint_lattice(l), 2.0).points) {
      CHECK(commutation_residual(l, mu.x, mu.omega, w) < 1e-9);
    }
    CHECK(commutation_residual(l, 0.3, 0.0, w) > 0.1);
  }
}
