#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/frames.hpp"
#include "polyfock/grid.hpp"
#include "polyfock/lattice.hpp"

namespace polyfock {

inline constexpr double kDefaultMuxRadius = 10.0;
inline constexpr double kDefaultMuxRegularization = 1e-10;
inline constexpr double kIllConditioned = 1e12;

/// Lattice coefficients <f, pi_lambda (h_0, ..., h_{n-1})>_H of an n-channel signal.
struct MuxStream {
  LatticePointSet points;
  Eigen::VectorXcd coefficients;
  std::size_t channels = 0;
  TimeGrid grid = default_time_grid();
};

MuxStream mux_encode(const VectorSignal& channels, const Lattice2D& lattice, double radius = kDefaultMuxRadius);

struct MuxDecodeResult {
  VectorSignal signals;
  double condition = 0.0;  ///< B / A of the frame operator compressed to the localized probe space
  bool ill_conditioned = false;
};

/// Least-squares reconstruction in the localized probe space (Hermite orders <= probe_band per
/// channel): with C the probe analysis matrix, x = (C C^H + regularization I)^{-1} C c.
MuxDecodeResult mux_decode(const MuxStream& stream, const Lattice2D& lattice, double radius = kDefaultMuxRadius,
                           double regularization = kDefaultMuxRegularization);

/// Random channels with complex Gaussian Hermite coefficients on orders <= max_order, unit norm.
VectorSignal demo_channels(std::size_t n, const TimeGrid& grid, int max_order, std::uint64_t seed);

struct MuxReport {
  std::vector<double> sigmas;
  std::vector<std::vector<double>> snr_db;          ///< [sigma][channel]
  std::vector<std::vector<double>> relative_error;  ///< [sigma][channel]
  double condition = 0.0;
  bool ill_conditioned = false;
  std::size_t points = 0;
  std::uint64_t seed = 0;

  std::string snr_csv(std::size_t sigma_index) const;
  std::string to_json() const;
};

/// Encode, add complex Gaussian noise (E|n|^2 = sigma^2, one realization scaled per sigma),
/// decode, and tabulate per-channel SNR = 20 log10(|f_k| / |f_k - g_k|).
MuxReport mux_report(const VectorSignal& channels, const Lattice2D& lattice, double radius,
                     const std::vector<double>& noise_sigmas, std::uint64_t seed,
                     double regularization = kDefaultMuxRegularization);

std::string mux_stream_to_csv(const MuxStream& stream);

}  // namespace polyfock
