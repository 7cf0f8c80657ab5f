#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyfock/bargmann.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"
#include "support.hpp"

using namespace polyfock;

namespace {
const double kPi = std::numbers::pi;

FockField tabulated(const PhaseGrid& p, cplx (*fn)(cplx)) {
  GridField g = GridField::zeros(p);
  for (std::size_t i = 0; i < p.nx(); ++i) {
    for (std::size_t k = 0; k < p.nomega(); ++k) g.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = fn(p.z(i, k));
  }
  return FockField(g, NormTag::raw_F);
}
}  // namespace

TEST_SUITE("bargmann") {
  TEST_CASE("hermite functions map to normalized monomials") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    for (int n = 0; n <= 6; ++n) {
      const FockField b = bargmann_transform(hermite_function(n, g), p);
      CHECK(max_abs_diff_on_disk(b, monomial_basis(n, p), 2.0) < 1e-10);
      CHECK(fock_norm(b) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("gaussian maps to the constant 1") {
    const PhaseGrid p = default_phase_grid();
    const FockField b = bargmann_transform(gaussian_window(default_time_grid()), p);
    // exp(pi |z|^2 / 2) amplifies round-off, so compare on the inner disk.
    CHECK(max_abs_diff_on_disk(b, monomial_basis(0, p), 2.0) < 1e-10);
  }

  TEST_CASE("quadrature route agrees with the STFT route") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p(4.0, 4.0, 64, 64);
    auto rng = stream(21, "routes");
    const Signal f = random_hermite_signal(g, 6, rng);
    const FockField a = bargmann_transform(f, p, BargmannRoute::stft);
    const FockField b = bargmann_transform(f, p, BargmannRoute::quadrature);
    CHECK(max_abs_diff_on_disk(a, b, 3.0) < 1e-9);
  }

  TEST_CASE("true polyanalytic transforms of hermite functions give the basis") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    for (int k = 0; k <= 3; ++k) {
      for (int m = 0; m <= 3; ++m) {
        CHECK(max_abs_diff_on_disk(true_poly_bargmann(hermite_function(m, g), k, p), basis_ekm(k, m, p), 2.0) < 1e-10);
      }
    }
  }

  TEST_CASE("first true polyanalytic transform of the gaussian is -sqrt(pi) conj z") {
    const PhaseGrid p = default_phase_grid();
    const FockField f = true_poly_bargmann(gaussian_window(default_time_grid()), 1, p);
    const FockField expected = tabulated(p, [](cplx z) { return -std::sqrt(std::numbers::pi) * std::conj(z); });
    CHECK(max_abs_diff_on_disk(f, expected, 3.0) < 1e-10);
  }

  TEST_CASE("closed-form weighted basis matches high precision values") {
    for (const auto& r : testing::read_rows("ekm_weighted.csv")) {
      const int k = static_cast<int>(r[0]);
      const int m = static_cast<int>(r[1]);
      const cplx expected(r[4], r[5]);
      const cplx got = ekm_weighted(k, m, {r[2], r[3]});
      INFO("k=" << k << " m=" << m << " z=" << r[2] << "," << r[3]);
      CHECK(std::abs(got - expected) <= 1e-11 * std::max(1.0, std::abs(expected)) + 1e-300);
      if (std::abs(expected) > 1e-250) CHECK(std::abs(got - expected) / std::abs(expected) < 1e-9);
    }
  }

  TEST_CASE("closed form agrees with the coefficient table") {
    const EkmTable& t = default_ekm_table();
    for (int k = 0; k <= t.max_k(); ++k) {
      for (int m = 0; m <= t.max_m(); ++m) {
        for (cplx z : {cplx(0.4, -0.3), cplx(-1.2, 0.9), cplx(2.0, 1.0)}) {
          const cplx w = t.evaluate(k, m, z) * std::exp(-kPi * std::norm(z) / 2);
          CHECK(std::abs(ekm_weighted(k, m, z) - w) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("basis Gram is the identity") {
    const PhaseGrid p = default_phase_grid();
    std::vector<FockField> b;
    for (int k = 0; k <= 2; ++k) {
      for (int m = 0; m <= 3; ++m) b.push_back(basis_ekm(k, m, p));
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) CHECK(std::abs(fock_inner_product(b[i], b[j]) - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
  }

  TEST_CASE("table loader reports malformed lines") {
    const auto dir = testing::scratch_dir("ekm");
    testing::write_text(dir / "header.csv", "k,m,i,j,re\n0,0,0,0,1\n");
    CHECK_THROWS_AS(EkmTable::load(dir / "header.csv"), ConfigError);
    testing::write_text(dir / "row.csv", "k,m,i,j,re,im\n0,0,0,0,1,0\n0,1,1,x,1,0\n");
    try {
      EkmTable::load(dir / "row.csv");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    CHECK_THROWS_AS(EkmTable::load(dir / "missing.csv"), ConfigError);
    CHECK_THROWS_AS(default_ekm_table().terms(9, 0), CapabilityError);
  }

  TEST_CASE("normalization tags convert both ways") {
    const PhaseGrid p(3.0, 3.0, 32, 32);
    const FockField f = basis_ekm(1, 2, p);
    const FockField w = f.as(NormTag::bargmann_weighted);
    CHECK(w.tag() == NormTag::bargmann_weighted);
    CHECK((w.as(NormTag::raw_F).values() - f.values()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(fock_inner_product(f, f) - fock_inner_product(w, f)) < 1e-13);
  }

  TEST_CASE("polyanalytic ladder") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    auto rng = stream(22, "ladder");
    const Signal f = random_hermite_signal(g, 8, rng);
    for (int n = 0; n <= 3; ++n) {
      const FockField F = true_poly_bargmann(f, n, p);
      const auto hi = dbar_power(F, n + 1);
      const auto lo = dbar_power(F, n);
      CHECK(fock_norm_on(hi.field, hi.valid, 4.0) < 1e-3 * fock_norm_on(lo.field, lo.valid, 4.0));
    }
    const FockField ex = tabulated(p, [](cplx z) { return std::conj(z) * z - 1.0; });
    const auto d2 = dbar_power(ex, 2);
    const auto d1 = dbar_power(ex, 1);
    double r2 = 0.0;
    double r1 = 0.0;
    for (Eigen::Index k = 0; k < d2.valid.cols(); ++k) {
      for (Eigen::Index i = 0; i < d2.valid.rows(); ++i) {
        if (d2.valid(i, k)) r2 = std::max(r2, std::abs(d2.field.values()(i, k)));
        if (d1.valid(i, k)) r1 = std::max(r1, std::abs(d1.field.values()(i, k) - p.z(std::size_t(i), std::size_t(k))));
      }
    }
    CHECK(r2 < 1e-6);
    CHECK(r1 < 1e-6);
    CHECK_THROWS_AS(dbar_power(ex, 5), CapabilityError);
  }

  TEST_CASE("derivative route reproduces the transform") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    auto rng = stream(23, "derivative");
    const Signal f = random_hermite_signal(g, 6, rng);
    for (int n = 0; n <= 3; ++n) {
      const FockField a = true_poly_bargmann(f, n, p);
      const auto b = true_poly_bargmann_derivative_route(f, n, p);
      double scale = 0.0;
      for (std::size_t i = 0; i < p.nx(); ++i) {
        for (std::size_t k = 0; k < p.nomega(); ++k) {
          if (std::abs(p.z(i, k)) <= 3.0) scale = std::max(scale, std::abs(a.values()(Eigen::Index(i), Eigen::Index(k))));
        }
      }
      CHECK(max_abs_diff_on_disk(a, b.field, 3.0) < 1e-6 * scale);
    }
    CHECK_THROWS_AS(true_poly_bargmann_derivative_route(f, 5, p), CapabilityError);
  }

  TEST_CASE("isometries of the polyanalytic transforms") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    auto rng = stream(24, "iso");
    std::vector<Signal> ch;
    for (int k = 0; k < 3; ++k) {
      ch.push_back(random_hermite_signal(g, 8, rng));
      CHECK(fock_norm(true_poly_bargmann(ch.back(), k, p)) == doctest::Approx(1.0).epsilon(1e-6));
    }
    const VectorSignal f(ch);
    CHECK(fock_norm(poly_bargmann(f, p)) == doctest::Approx(f.norm()).epsilon(1e-6));
  }

  TEST_CASE("polyanalytic transform equals the super-STFT with reflected frequency") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p(4.0, 4.0, 64, 64);
    auto rng = stream(25, "super");
    const VectorSignal f({random_hermite_signal(g, 6, rng), random_hermite_signal(g, 6, rng)});
    const FockField w = poly_bargmann(f, p).as(NormTag::bargmann_weighted);
    const GridField s = super_stft(f, VectorSignal({hermite_function(0, g), hermite_function(1, g)}), p);
    // omega_k and omega_{n-k} are reflections of each other on this grid.
    double worst = 0.0;
    for (std::size_t i = 0; i < p.nx(); ++i) {
      for (std::size_t k = 1; k < p.nomega(); ++k) {
        const auto ii = static_cast<Eigen::Index>(i);
        worst = std::max(worst, std::abs(w.values()(ii, static_cast<Eigen::Index>(k)) -
                                         s.values()(ii, static_cast<Eigen::Index>(p.nomega() - k))));
      }
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("intertwining with time-frequency shifts") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    const TFShift s{0.5, -0.75};
    const Signal h = hermite_function(1, g);
    const FockField lhs = bargmann_transform(tf_shift(h, s), p);
    const auto rhs = intertwining_shift(bargmann_transform(h, p), s);
    CHECK(max_abs_diff_on_disk(lhs, rhs.field, 2.0) < 1e-6);
  }

  TEST_CASE("reproducing kernel evaluation") {
    const PhaseGrid p = default_phase_grid();
    const FockField e1 = monomial_basis(1, p);
    const cplx z(0.3, -0.4);
    const auto v = reproducing_eval(e1, z, 0);
    CHECK(std::abs(v.value - std::sqrt(kPi) * z) < 1e-8);
    CHECK(!v.warning);
    const auto d = reproducing_eval(e1, z, 1);
    // the kernel integral carries a factor pi^{-j}
    CHECK(std::abs(d.value - 1.0 / std::sqrt(kPi)) < 1e-6);
    CHECK(reproducing_eval(e1, cplx(5.5, 0.0), 0).warning);
  }

  TEST_CASE("projection splits into true components") {
    const PhaseGrid p = default_phase_grid();
    GridField sum = GridField::zeros(p);
    sum.values() = basis_ekm(0, 2, p).values() + cplx(0.0, 2.0) * basis_ekm(1, 3, p).values();
    const FockField F(sum, NormTag::raw_F);
    CHECK(max_abs_diff_on_disk(project_true_component(F, 0, 8), basis_ekm(0, 2, p), 3.0) < 1e-6);
    const FockField second = project_true_component(F, 1, 8);
    CHECK(fock_norm(second) == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("field files carry the convention and tag") {
    const std::string csv = fock_field_to_csv(monomial_basis(0, PhaseGrid(1.0, 1.0, 4, 4)));
    CHECK(csv.find("# ") == 0);
    CHECK(csv.find("norm_tag") != std::string::npos);
    CHECK(csv.find("x,omega,re,im") != std::string::npos);
  }
}
