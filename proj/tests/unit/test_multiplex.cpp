#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "polyfock/errors.hpp"
#include "polyfock/frames.hpp"
#include "polyfock/multiplex.hpp"

using namespace polyfock;

TEST_SUITE("multiplex") {
  TEST_CASE("single channel round trip above density 1") {
    const TimeGrid g = working_grid({8.0});
    const VectorSignal f = demo_channels(1, g, 6, 1);
    const Lattice2D l = lattice_with_density(1.5);
    const auto d = mux_decode(mux_encode(f, l, 8.0), l, 8.0);
    CHECK(!d.ill_conditioned);
    CHECK((d.signals.channel(0) + f.channel(0) * cplx(-1.0)).norm() < 1e-6);
  }

  TEST_CASE("stream coefficients are the analysis coefficients") {
    const TimeGrid g = working_grid({6.0});
    const VectorSignal f = demo_channels(2, g, 4, 2);
    const Lattice2D l = lattice_with_density(2.5);
    const MuxStream s = mux_encode(f, l, 6.0);
    const GaborSystemSpec spec{SystemKind::super, hermite_windows(2), l};
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) sum += std::norm(s.coefficients(i));
    CHECK(sum == doctest::Approx(frame_sum(spec, 6.0, f)).epsilon(1e-10));
  }

  TEST_CASE("errors") {
    const TimeGrid g = working_grid({6.0});
    CHECK_THROWS_AS(demo_channels(0, g, 4, 1), ParameterError);
    const VectorSignal f = demo_channels(2, g, 4, 1);
    const MuxStream s = mux_encode(f, lattice_with_density(2.5), 6.0);
    CHECK_THROWS_AS(mux_decode(s, lattice_with_density(3.5), 6.0), ShapeError);
    CHECK_THROWS_AS(mux_decode(s, lattice_with_density(2.5), 6.0, -1.0), ParameterError);
  }

  TEST_CASE("demo channels are unit norm and seed dependent") {
    const TimeGrid g = working_grid({6.0});
    const VectorSignal a = demo_channels(2, g, 8, 1);
    const VectorSignal b = demo_channels(2, g, 8, 2);
    CHECK(a.channel(0).norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((a.channel(0).values() - b.channel(0).values()).norm() > 0.1);
    CHECK((a.channel(0).values() - demo_channels(2, g, 8, 1).channel(0).values()).norm() == 0.0);
  }

  TEST_CASE("report at n = 2 above and below the threshold") {
    const TimeGrid g = working_grid({kDefaultMuxRadius});
    const VectorSignal f = demo_channels(2, g, 8, 1);
    const MuxReport good = mux_report(f, lattice_with_density(2.5), kDefaultMuxRadius, {0.0, 1e-3, 1e-2}, 1);
    CHECK(good.snr_db[0][0] > 60.0);
    CHECK(good.snr_db[0][1] > 60.0);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(good.snr_db[1][k] < good.snr_db[0][k]);
      CHECK(good.snr_db[2][k] < good.snr_db[1][k]);
    }
    CHECK(!good.ill_conditioned);
    CHECK(good.snr_csv(1).rfind("channel,sigma,snr_db,relative_error", 0) == 0);
    const auto j = nlohmann::json::parse(good.to_json());
    CHECK(j["seed"].get<std::uint64_t>() == 1);
    const MuxReport bad = mux_report(f, lattice_with_density(1.5), kDefaultMuxRadius, {0.0}, 1);
    CHECK((bad.ill_conditioned || bad.relative_error[0][0] > 0.1));
  }
}
