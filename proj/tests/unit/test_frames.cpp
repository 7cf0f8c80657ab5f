#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "polyfock/errors.hpp"
#include "polyfock/frames.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"

using namespace polyfock;

TEST_SUITE("frames") {
  TEST_CASE("fast Gram matches the serial reference") {
    const TimeGrid g = working_grid({4.0});
    for (const auto kind : {SystemKind::scalar, SystemKind::super, SystemKind::multi_union}) {
      GaborSystemSpec spec{kind, kind == SystemKind::scalar ? hermite_windows(1) : hermite_windows(2),
                           parse_lattice("matrix:0.9,0.2,0,0.8")};
      CAPTURE(system_kind_name(kind));
      const Eigen::MatrixXcd a = gram_matrix(spec, 3.0, g);
      const Eigen::MatrixXcd b = gram_matrix_reference(spec, 3.0, g);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("sampled windows take the direct path") {
    const TimeGrid g = working_grid({4.0});
    auto rng = stream(41, "sampled");
    GaborSystemSpec spec{SystemKind::scalar, {Window::sampled(random_hermite_signal(g, 3, rng), "random")},
                         square_lattice(1.0)};
    const Eigen::MatrixXcd a = gram_matrix(spec, 3.0, g);
    CHECK((a - gram_matrix_reference(spec, 3.0, g)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("gaussian Gram entries decay like the ambiguity function") {
    const TimeGrid g = working_grid({4.0});
    const GaborSystemSpec spec{SystemKind::scalar, {Window::gaussian()}, square_lattice(0.7)};
    const auto pts = enumerate_points(spec.lattice, 3.0);
    const Eigen::MatrixXcd gram = gram_matrix(spec, 3.0, g);
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = 0; b < pts.size(); ++b) {
        const double d2 = std::pow(pts.points[a].x - pts.points[b].x, 2) + std::pow(pts.points[a].omega - pts.points[b].omega, 2);
        CHECK(std::abs(gram(Eigen::Index(a), Eigen::Index(b))) <= std::exp(-std::numbers::pi * d2 / 4) + 1e-12);
      }
    }
  }

  TEST_CASE("frame operator quadratic form equals the coefficient sum") {
    const TimeGrid g = working_grid({4.0});
    const GaborSystemSpec spec{SystemKind::super, hermite_windows(2), square_lattice(0.8)};
    auto rng = stream(42, "quadratic");
    const VectorSignal f({random_hermite_signal(g, 6, rng), random_hermite_signal(g, 6, rng)});
    const double q = vector_inner_product(frame_operator_apply(spec, 3.0, f), f).real();
    CHECK(q == doctest::Approx(frame_sum(spec, 3.0, f)).epsilon(1e-10));
  }

  TEST_CASE("trend rule") {
    CHECK(trend_verdict({0.5, 0.52, 0.51, 0.5}, {2, 2, 2, 2}) == Verdict::stable_positive);
    CHECK(trend_verdict({0.4, 0.2, 0.1}, {2, 2, 2}) == Verdict::decaying);
    CHECK(trend_verdict({0.5, 0.5, 1e-7}, {1, 1, 1}) == Verdict::decaying);
    CHECK(trend_verdict({0.5, 0.45, 0.4}, {1, 1, 1}) == Verdict::inconclusive);
    CHECK(trend_verdict({0.005, 0.005, 0.005}, {1, 1, 1}) == Verdict::inconclusive);
    CHECK_THROWS_AS(trend_verdict({0.5, 0.5}, {1, 1}), ParameterError);
  }

  TEST_CASE("schedules shorter than three radii are rejected") {
    const GaborSystemSpec spec{SystemKind::scalar, {Window::gaussian()}, square_lattice(0.7)};
    CHECK_THROWS_AS(estimate_frame_bounds(spec, {4.0, 6.0}, working_grid({6.0}), 8, 1), ParameterError);
    CHECK_THROWS_AS(estimate_frame_bounds(spec, {4.0, 8.0, 6.0}, working_grid({8.0}), 8, 1), ParameterError);
  }

  TEST_CASE("gaussian frame verdicts on both sides of density 1") {
    const auto radii = default_radii();
    const TimeGrid g = working_grid(radii);
    const GaborSystemSpec dense{SystemKind::scalar, {Window::gaussian()}, lattice_with_density(2.0)};
    const GaborSystemSpec critical{SystemKind::scalar, {Window::gaussian()}, lattice_with_density(1.0)};
    const BoundsReport a = estimate_frame_bounds(dense, radii, g, 16, 1);
    const BoundsReport b = estimate_frame_bounds(critical, radii, g, 16, 1);
    CHECK(a.verdict == Verdict::stable_positive);
    CHECK(b.verdict == Verdict::decaying);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      CHECK(a.lower[i] <= a.probe_lower[i] + 1e-12);
      CHECK(a.probe_upper[i] <= a.upper[i] + 1e-12);
    }
  }

  TEST_CASE("gaussian Riesz sequence below density 1") {
    const auto radii = default_radii();
    const GaborSystemSpec sparse{SystemKind::scalar, {Window::gaussian()}, lattice_with_density(0.5)};
    CHECK(estimate_riesz_bounds(sparse, radii, working_grid(radii)).verdict == Verdict::stable_positive);
  }

  TEST_CASE("bounds report serializations") {
    const auto radii = std::vector<double>{3.0, 4.0, 5.0};
    const GaborSystemSpec spec{SystemKind::scalar, {Window::gaussian()}, lattice_with_density(2.0)};
    const BoundsReport r = estimate_frame_bounds(spec, radii, working_grid(radii), 4, 7);
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["verdict"].get<std::string>() == verdict_name(r.verdict));
    CHECK(j["seed"].get<std::uint64_t>() == 7);
    CHECK(j["radii"].size() == 3);
    CHECK(r.to_csv().rfind("radius,lower,upper", 0) == 0);
    CHECK(r.to_json() == estimate_frame_bounds(spec, radii, working_grid(radii), 4, 7).to_json());
  }

  TEST_CASE("dense and Lanczos extremal eigenvalues agree") {
    auto rng = stream(43, "lanczos");
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::NullaryExpr(300, 120, [&] { return complex_gaussian(rng, 1)(0); });
    const Eigen::MatrixXcd h = a * a.adjoint();
    const auto dense = extremal_eigenvalues(h);
    const auto lz = lanczos_extremal(h, 300, 5);
    CHECK(dense.first == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(lz.second == doctest::Approx(dense.second).epsilon(1e-10));
  }

  TEST_CASE("system kind names") {
    CHECK(parse_system_kind("super") == SystemKind::super);
    CHECK(parse_system_kind("union") == SystemKind::multi_union);
    CHECK_THROWS_AS(parse_system_kind("other"), ConfigError);
  }
}
