#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/frames.hpp"
#include "polyfock/lattice.hpp"

namespace polyfock {

/// Weighted evaluation matrix of the polyanalytic basis on the truncated point set:
/// row p, column k * (band + 1) + m holds exp(i pi x omega - pi |z|^2 / 2) e_{k,m}(z_p).
Eigen::MatrixXcd weighted_evaluation_matrix(int n, const LatticePointSet& points, int band);

/// Basis band used by sampling experiments at a given radius: max(8, floor(pi (R - 3)^2)).
int sampling_band(double radius);

struct SamplingStats {
  std::vector<double> ratios;  ///< per non-degenerate random trial
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t trial_count = 0;
  std::size_t skipped = 0;
  double span_min = 0.0;  ///< minimum over the span of the first 16 trials
  double band_min = 0.0;  ///< minimum over the whole basis band (adversarial)
  double band_max = 0.0;
  int band = 0;
  std::size_t points = 0;
  std::uint64_t seed = 0;
};

/// Ratios sum_{z in Gamma, |z| <= R} |F(z)|^2 e^{-pi|z|^2} / |F|^2 for random F in the
/// span of e_{k,m}, k < n, m <= band (band < 0 selects sampling_band(R)).
SamplingStats sampling_ratio_stats(int n, const Lattice2D& lattice, std::size_t trials, double radius,
                                   std::uint64_t seed, int band = -1);

/// Sampling lower/upper bounds (band_min / band_max) over a radius schedule with the trend verdict.
BoundsReport sampling_bounds(int n, const Lattice2D& lattice, const std::vector<double>& radii,
                             std::size_t trials, std::uint64_t seed);

struct InterpolationReport {
  double residual_norm = 0.0;     ///< |A c - data| / |data|
  double coefficient_norm = 0.0;  ///< |c| / |data|
  double condition_estimate = 0.0;  ///< sigma_max / sigma_min, +inf on rank collapse
  std::size_t rank = 0;
  double radius = 0.0;
  int max_m = 0;
  std::size_t points = 0;
};

/// Default basis cutoff: max(points / n + 8, floor(pi (R + 2.5)^2)).
int default_max_m(int n, std::size_t points, double radius);

/// Minimum-norm least-squares interpolation of weighted data on Gamma within the disk.
class InterpolationSystem {
 public:
  InterpolationSystem(int n, const Lattice2D& lattice, double radius, int max_m = -1);

  std::size_t points() const { return points_; }
  InterpolationReport solve(const Eigen::VectorXcd& data) const;
  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& data) const;
  const Eigen::MatrixXcd& matrix() const { return a_; }

 private:
  Eigen::MatrixXcd a_;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd_;
  std::size_t points_ = 0;
  double radius_ = 0.0;
  int max_m_ = 0;
  double condition_ = 0.0;
  std::size_t rank_ = 0;
};

InterpolationReport interpolation_solve(int n, const Lattice2D& lattice, double radius,
                                        const Eigen::VectorXcd& data, int max_m = -1);

inline constexpr double kDefaultInterpolationRadius = 10.0;

struct InterpolationTrials {
  double median_residual = 0.0;
  double max_residual = 0.0;
  double max_coefficient_norm = 0.0;
  double condition_estimate = 0.0;
  std::size_t draws = 0;
  Verdict verdict = Verdict::inconclusive;
};

/// Frozen interpolation rule over unit-norm random data draws:
///   decaying (failure) if median residual > 0.05 or max coefficient norm > 1e6;
///   stable_positive (success) if max residual < 1e-6 and max coefficient norm <= 1e3.
InterpolationTrials interpolation_trials(int n, const Lattice2D& lattice, double radius, std::size_t draws,
                                         std::uint64_t seed, int max_m = -1);

enum class SweepMode { sampling, interpolation, superframe, riesz };
const char* sweep_mode_name(SweepMode m);
SweepMode parse_sweep_mode(const std::string& s);

struct SweepConfig {
  std::vector<double> radii = default_radii();
  std::size_t trials = 64;
  std::size_t probe_count = 32;
  std::size_t interpolation_draws = 32;
  double interpolation_radius = kDefaultInterpolationRadius;
  std::uint64_t seed = 0;
};

struct SweepRow {
  int n = 0;
  double density = 0.0;
  std::string mode;
  double diagnostic = 0.0;
  std::string verdict;
  std::uint64_t seed = 0;
};

/// Drops repeated densities (keeping first occurrences, order preserved); returns the
/// number removed.
std::size_t dedupe_densities(std::vector<double>& densities);

/// One row per density with the mode's diagnostic (lower bound at the largest radius for
/// sampling/superframe/riesz, median residual for interpolation) and its verdict.
std::vector<SweepRow> density_sweep(int n, const std::vector<double>& densities, SweepMode mode,
                                    const SweepConfig& config);

/// Frame verdicts of G(h_n, Lambda); rows carry mode "exploratory" (no expectation asserted).
std::vector<SweepRow> true_space_scan(int n, const std::vector<double>& densities, const SweepConfig& config);

enum class MultipleMode { multiframe, union_riesz };

/// Frame or Riesz bounds of the union of G(h_k, Lambda), k < n.
BoundsReport multiple_system_bounds(int n, const Lattice2D& lattice, MultipleMode mode,
                                    const std::vector<double>& radii, std::size_t probe_count,
                                    std::uint64_t seed);

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);

}  // namespace polyfock
