#include <doctest.h>

#include <cmath>
#include <numbers>

#include <omp.h>

#include "polyfock/errors.hpp"
#include "polyfock/gabor.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"

using namespace polyfock;

namespace {
const double kPi = std::numbers::pi;
}

TEST_SUITE("gabor") {
  TEST_CASE("snapping rounds half to even") {
    const TimeGrid g(1.0, 8);  // step 0.25
    CHECK(snap_shift(g, 0.125).steps == 0);
    CHECK(snap_shift(g, 0.375).steps == 2);
    CHECK(snap_shift(g, -0.375).steps == -2);
    CHECK(snap_shift(g, 0.3).residual == doctest::Approx(0.05));
  }

  TEST_CASE("whole-step shift fills with zeros") {
    const TimeGrid g(1.0, 8);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(8);
    const Signal s = tf_shift(Signal(g, v), {0.5, 0.0});
    CHECK(std::abs(s[0]) == 0.0);
    CHECK(std::abs(s[1]) == 0.0);
    CHECK(std::abs(s[2] - 1.0) == 0.0);
  }

  TEST_CASE("band-limited shifts compose with the expected phase") {
    const TimeGrid g(8.0, 1024);
    const Signal h = hermite_function(2, g);
    const TFShift a{0.37, -0.8};
    const TFShift b{-1.21, 0.45};
    const Signal ab = tf_shift_bandlimited(tf_shift_bandlimited(h, b), a);
    const Signal direct = tf_shift_bandlimited(h, {a.x + b.x, a.omega + b.omega});
    // pi_a pi_b = e^{-2 pi i x_a w_b} pi_{a+b}
    const cplx phase = std::polar(1.0, -2.0 * kPi * a.x * b.omega);
    CHECK((ab.values() - phase * direct.values()).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("gaussian ambiguity function") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p(4.0, 4.0, 64, 64);
    const Signal phi = gaussian_window(g);
    const GridField v = stft(phi, phi, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.nx(); ++i) {
      for (std::size_t k = 0; k < p.nomega(); ++k) {
        const cplx z = p.z(i, k);
        const cplx expected = std::polar(std::exp(-kPi * std::norm(z) / 2), -kPi * z.real() * z.imag());
        worst = std::max(worst, std::abs(v.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - expected));
      }
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("reference, direct and chirp-z paths agree") {
    const TimeGrid g(6.0, 768);
    const PhaseGrid p(5.0, 5.0, 40, 48);
    auto rng = stream(11, "paths");
    for (int trial = 0; trial < 3; ++trial) {
      const Signal f = random_hermite_signal(g, 8, rng);
      const Signal w = random_hermite_signal(g, 8, rng);
      const GridField ref = stft(f, w, p, StftMethod::reference);
      CHECK((stft(f, w, p, StftMethod::fft).values() - ref.values()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((stft(f, w, p, StftMethod::direct).values() - ref.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("thread count does not change results") {
    const TimeGrid g(6.0, 768);
    const PhaseGrid p(5.0, 5.0, 32, 32);
    auto rng = stream(12, "threads");
    const Signal f = random_hermite_signal(g, 6, rng);
    const Signal w = random_hermite_signal(g, 6, rng);
    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const GridField one = stft(f, w, p);
    omp_set_num_threads(4);
    const GridField four = stft(f, w, p);
    omp_set_num_threads(before);
    CHECK((one.values() - four.values()).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("negative frequency step reflects the rows") {
    const TimeGrid g = default_time_grid();
    auto rng = stream(13, "reflect");
    const Signal f = random_hermite_signal(g, 5, rng);
    const Signal w = hermite_function(1, g);
    const std::vector<double> xs{-1.0, 0.5};
    const Eigen::MatrixXcd up = stft_rows(f, w, xs, -2.0, 0.25, 17);
    const Eigen::MatrixXcd down = stft_rows(f, w, xs, 2.0, -0.25, 17);
    CHECK((up.rowwise().reverse() - down).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("isometry and orthogonality on random pairs") {
    const TimeGrid g = default_time_grid();
    const PhaseGrid p = default_phase_grid();
    auto rng = stream(14, "iso");
    for (int trial = 0; trial < 4; ++trial) {
      const Signal f1 = random_hermite_signal(g, 8, rng);
      const Signal f2 = random_hermite_signal(g, 8, rng);
      const Signal g1 = random_hermite_signal(g, 8, rng);
      const Signal g2 = random_hermite_signal(g, 8, rng);
      CHECK(std::sqrt(phase_quadrature(stft(f1, g1, p), PhaseWeight::none)) ==
            doctest::Approx(f1.norm() * g1.norm()).epsilon(1e-8));
      const auto o = verify_orthogonality_relations(f1, f2, g1, g2, p);
      CHECK(std::abs(o.lhs - o.rhs) < 1e-8);
    }
  }

  TEST_CASE("super-STFT is an isometry for orthonormal window vectors") {
    const TimeGrid g = default_time_grid();
    auto rng = stream(15, "super");
    const VectorSignal f({random_hermite_signal(g, 8, rng), random_hermite_signal(g, 8, rng)});
    const VectorSignal w({hermite_function(0, g), hermite_function(1, g)});
    const double n = std::sqrt(phase_quadrature(super_stft(f, w, default_phase_grid()), PhaseWeight::none));
    CHECK(n == doctest::Approx(f.norm()).epsilon(1e-8));
    CHECK_THROWS_AS(super_stft(f, VectorSignal({hermite_function(0, g)}), default_phase_grid()), ShapeError);
  }

  TEST_CASE("snap residual is zero when the phase grid sits on the time grid") {
    CHECK(stft_snap_residual(default_time_grid(), default_phase_grid()) == 0.0);
  }
}
