#include "polyfock/multiplex.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"

namespace polyfock {

namespace {

using Idx = Eigen::Index;

GaborSystemSpec mux_spec(std::size_t n, const Lattice2D& lattice) {
  if (n == 0) throw ParameterError("multiplexing needs at least one channel");
  return GaborSystemSpec{SystemKind::super, hermite_windows(static_cast<int>(n)), lattice};
}

// Reported SNR ceiling when the reconstruction is exact to the last bit.
constexpr double kSnrCeiling = 400.0;

}  // namespace

MuxStream mux_encode(const VectorSignal& channels, const Lattice2D& lattice, double radius) {
  const GaborSystemSpec spec = mux_spec(channels.channel_count(), lattice);
  MuxStream s{enumerate_points(lattice, radius), {}, channels.channel_count(), channels.grid()};
  const auto elements = system_elements(spec, s.points);
  const Eigen::MatrixXcd e = synthesis_matrix(spec, elements, channels.grid());
  const auto n = static_cast<Idx>(channels.grid().size());
  Eigen::VectorXcd f(e.rows());
  for (std::size_t k = 0; k < channels.channel_count(); ++k) {
    f.segment(static_cast<Idx>(k) * n, n) = channels.channel(k).values();
  }
  s.coefficients = e.adjoint() * f * channels.grid().step();
  return s;
}

MuxDecodeResult mux_decode(const MuxStream& stream, const Lattice2D& lattice, double radius, double regularization) {
  const GaborSystemSpec spec = mux_spec(stream.channels, lattice);
  if (enumerate_points(lattice, radius).size() != static_cast<std::size_t>(stream.coefficients.size())) {
    throw ShapeError("stream coefficient count does not match the decoder's point set");
  }
  if (!(regularization >= 0.0)) throw ParameterError("regularization must be non-negative");
  // Least squares over the localized probe space P: coefficients of p = Q x are C^H x,
  // so x = (C C^H + reg I)^{-1} C c and f = Q x.
  const Eigen::MatrixXcd c = probe_analysis_matrix(spec, radius, stream.grid);
  const Eigen::MatrixXcd k = c * c.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k);
  if (solver.info() != Eigen::Success) throw Error("decoder eigensolver did not converge");
  const Eigen::VectorXd ev = solver.eigenvalues().array().max(0.0);
  Eigen::VectorXcd x = solver.eigenvectors().adjoint() * (c * stream.coefficients);
  x = x.cwiseQuotient((ev.array() + regularization).matrix().cast<cplx>());
  x = solver.eigenvectors() * x;
  const int band = static_cast<int>(c.rows() / static_cast<Idx>(stream.channels)) - 1;
  const Eigen::VectorXcd f = probe_synthesis_matrix(stream.channels, stream.grid, band) * x;

  const auto n = static_cast<Idx>(stream.grid.size());
  std::vector<Signal> out;
  for (std::size_t q = 0; q < stream.channels; ++q) out.emplace_back(stream.grid, f.segment(static_cast<Idx>(q) * n, n));
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  const double condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return {VectorSignal(std::move(out)), condition, !(condition <= kIllConditioned)};
}

VectorSignal demo_channels(std::size_t n, const TimeGrid& grid, int max_order, std::uint64_t seed) {
  if (n == 0) throw ParameterError("multiplexing needs at least one channel");
  const Eigen::VectorXd t = grid.nodes();
  const Eigen::MatrixXd h = hermite_table(max_order, std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
  std::vector<Signal> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto rng = stream(seed, "mux-channel", k);
    const Eigen::VectorXcd c = complex_gaussian(rng, max_order + 1).normalized();
    out.emplace_back(grid, h.transpose().cast<cplx>() * c);
  }
  return VectorSignal(std::move(out));
}

MuxReport mux_report(const VectorSignal& channels, const Lattice2D& lattice, double radius,
                     const std::vector<double>& noise_sigmas, std::uint64_t seed, double regularization) {
  const MuxStream clean = mux_encode(channels, lattice, radius);
  auto rng = stream(seed, "mux-noise");
  const Eigen::VectorXcd noise = complex_gaussian(rng, clean.coefficients.size());
  MuxReport r;
  r.sigmas = noise_sigmas;
  r.points = clean.points.size();
  r.seed = seed;
  for (double sigma : noise_sigmas) {
    if (!(sigma >= 0.0)) throw ParameterError("noise sigma must be non-negative");
    MuxStream noisy = clean;
    noisy.coefficients += sigma * noise;
    const MuxDecodeResult d = mux_decode(noisy, lattice, radius, regularization);
    r.condition = d.condition;
    r.ill_conditioned = d.ill_conditioned;
    std::vector<double> snr;
    std::vector<double> rel;
    for (std::size_t k = 0; k < channels.channel_count(); ++k) {
      const double ref = channels.channel(k).norm();
      const double err = (d.signals.channel(k) + channels.channel(k) * cplx(-1.0)).norm();
      rel.push_back(ref > 0.0 ? err / ref : err);
      snr.push_back(err > 0.0 ? std::min(kSnrCeiling, 20.0 * std::log10(ref / err)) : kSnrCeiling);
    }
    r.snr_db.push_back(std::move(snr));
    r.relative_error.push_back(std::move(rel));
  }
  return r;
}

std::string MuxReport::snr_csv(std::size_t sigma_index) const {
  std::string out = "channel,sigma,snr_db,relative_error\n";
  const auto& row = snr_db.at(sigma_index);
  for (std::size_t k = 0; k < row.size(); ++k) {
    out += std::to_string(k) + "," + format_double(sigmas[sigma_index]) + "," + format_double(row[k]) + "," +
           format_double(relative_error[sigma_index][k]) + "\n";
  }
  return out;
}

std::string MuxReport::to_json() const {
  nlohmann::ordered_json j;
  j["points"] = points;
  j["seed"] = seed;
  j["condition"] = std::isfinite(condition) ? nlohmann::ordered_json(condition) : nlohmann::ordered_json("inf");
  j["ill_conditioned"] = ill_conditioned;
  j["sigmas"] = sigmas;
  j["snr_db"] = snr_db;
  j["relative_error"] = relative_error;
  return j.dump(2) + "\n";
}

std::string mux_stream_to_csv(const MuxStream& stream) {
  std::string out = "ix,iy,x,omega,re,im\n";
  for (std::size_t p = 0; p < stream.points.size(); ++p) {
    const auto& pt = stream.points.points[p];
    const cplx c = stream.coefficients[static_cast<Idx>(p)];
    out += std::to_string(pt.i) + "," + std::to_string(pt.j) + "," + format_double(pt.x) + "," +
           format_double(pt.omega) + "," + format_double(c.real()) + "," + format_double(c.imag()) + "\n";
  }
  return out;
}

}  // namespace polyfock
