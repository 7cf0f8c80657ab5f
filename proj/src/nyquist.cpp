#include "polyfock/nyquist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "polyfock/bargmann.hpp"
#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/random.hpp"

namespace polyfock {

namespace {

using Idx = Eigen::Index;

void check_order(int n) {
  if (n < 1) throw ParameterError("polyanalytic order n must be >= 1");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Smallest generalized eigenvalue of (Q^H K Q, Q^H Q) over the column span of Q.
double span_minimum(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& q) {
  // Orthonormalize Q first; the pencil then reduces to a standard problem.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q);
  const Eigen::MatrixXcd basis = qr.householderQ() * Eigen::MatrixXcd::Identity(q.rows(), q.cols());
  const Eigen::MatrixXcd small = basis.adjoint() * k * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(small, Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues()(0));
}

}  // namespace

Eigen::MatrixXcd weighted_evaluation_matrix(int n, const LatticePointSet& points, int band) {
  check_order(n);
  const auto rows = static_cast<Idx>(points.size());
  const Idx per = band + 1;
  Eigen::MatrixXcd a(rows, n * per);
#pragma omp parallel for schedule(static)
  for (Idx p = 0; p < rows; ++p) {
    const auto& pt = points.points[static_cast<std::size_t>(p)];
    const cplx z(pt.x, pt.omega);
    const cplx phase = std::polar(1.0, std::numbers::pi * pt.x * pt.omega);
    for (int k = 0; k < n; ++k) {
      for (int m = 0; m <= band; ++m) a(p, k * per + m) = phase * ekm_weighted(k, m, z);
    }
  }
  return a;
}

int sampling_band(double radius) { return std::max(8, probe_band(radius, 3.0)); }

SamplingStats sampling_ratio_stats(int n, const Lattice2D& lattice, std::size_t trials, double radius,
                                   std::uint64_t seed, int band) {
  check_order(n);
  SamplingStats s;
  s.seed = seed;
  s.band = band < 0 ? sampling_band(radius) : band;
  const LatticePointSet points = enumerate_points(lattice, radius);
  s.points = points.size();
  const Eigen::MatrixXcd a = weighted_evaluation_matrix(n, points, s.band);
  const Eigen::MatrixXcd k = a.adjoint() * a;
  std::tie(s.band_min, s.band_max) = extremal_eigenvalues(k);
  s.band_min = std::max(0.0, s.band_min);

  // Random trials draw coefficients on the lower half of the band so every F is well
  // inside the disk; zero-order F (all coefficients zero) never occurs but is guarded.
  const Idx per = s.band + 1;
  const int trial_band = std::min(s.band, std::max(8, s.band / 2));
  auto rng = stream(seed, "sampling-trials", static_cast<std::uint64_t>(n));
  std::vector<Eigen::VectorXcd> kept;
  s.min_ratio = std::numeric_limits<double>::infinity();
  s.max_ratio = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(k.rows());
    const Eigen::VectorXcd draw = complex_gaussian(rng, static_cast<Idx>(n) * (trial_band + 1));
    for (int q = 0; q < n; ++q) c.segment(q * per, trial_band + 1) = draw.segment(q * (trial_band + 1), trial_band + 1);
    ++s.trial_count;
    const double norm2 = c.squaredNorm();
    if (!(norm2 > 1e-24)) {
      ++s.skipped;
      continue;
    }
    const double r = (a * c).squaredNorm() / norm2;
    s.ratios.push_back(r);
    s.min_ratio = std::min(s.min_ratio, r);
    s.max_ratio = std::max(s.max_ratio, r);
    if (kept.size() < 16) kept.push_back(std::move(c));
  }
  if (s.ratios.empty()) s.min_ratio = 0.0;
  if (!kept.empty()) {
    Eigen::MatrixXcd q(k.rows(), static_cast<Idx>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) q.col(static_cast<Idx>(i)) = kept[i];
    s.span_min = span_minimum(k, q);
  }
  return s;
}

BoundsReport sampling_bounds(int n, const Lattice2D& lattice, const std::vector<double>& radii,
                             std::size_t trials, std::uint64_t seed) {
  if (radii.size() < 3) throw ParameterError("bounds estimation needs at least 3 truncation radii");
  BoundsReport r;
  r.quantity = "sampling";
  std::ostringstream spec;
  spec.precision(17);
  const auto& g = lattice.generator();
  spec << "polyanalytic n=" << n << " lattice=matrix:" << g(0, 0) << "," << g(0, 1) << "," << g(1, 0) << ","
       << g(1, 1);
  r.spec = spec.str();
  r.radii = radii;
  r.seed = seed;
  for (double radius : radii) {
    const SamplingStats s = sampling_ratio_stats(n, lattice, trials, radius, seed);
    r.lower.push_back(s.band_min);
    r.upper.push_back(s.band_max);
    r.probe_lower.push_back(s.min_ratio);
    r.probe_upper.push_back(s.max_ratio);
    r.sizes.push_back(s.points);
  }
  r.verdict = trend_verdict(r.lower, r.upper);
  return r;
}

int default_max_m(int n, std::size_t points, double radius) {
  const double r = radius + 2.5;
  return std::max(static_cast<int>(points) / n + 8, static_cast<int>(std::floor(std::numbers::pi * r * r)));
}

InterpolationSystem::InterpolationSystem(int n, const Lattice2D& lattice, double radius, int max_m) {
  check_order(n);
  const LatticePointSet points = enumerate_points(lattice, radius);
  points_ = points.size();
  radius_ = radius;
  max_m_ = max_m < 0 ? default_max_m(n, points_, radius) : max_m;
  a_ = weighted_evaluation_matrix(n, points, max_m_);
  svd_.setThreshold(1e-12);
  svd_.compute(a_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd_.singularValues();
  rank_ = static_cast<std::size_t>(svd_.rank());
  const double smax = sv.size() ? sv(0) : 0.0;
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  condition_ = (rank_ < static_cast<std::size_t>(std::min(a_.rows(), a_.cols())) || smin == 0.0)
                   ? std::numeric_limits<double>::infinity()
                   : smax / smin;
}

Eigen::VectorXcd InterpolationSystem::coefficients(const Eigen::VectorXcd& data) const {
  if (static_cast<std::size_t>(data.size()) != points_) {
    throw ShapeError("interpolation data length must equal the truncated point count");
  }
  return svd_.solve(data);
}

InterpolationReport InterpolationSystem::solve(const Eigen::VectorXcd& data) const {
  const Eigen::VectorXcd c = coefficients(data);
  InterpolationReport r;
  const double dn = data.norm();
  const double scale = dn > 0.0 ? dn : 1.0;
  r.residual_norm = (a_ * c - data).norm() / scale;
  r.coefficient_norm = c.norm() / scale;
  r.condition_estimate = condition_;
  r.rank = rank_;
  r.radius = radius_;
  r.max_m = max_m_;
  r.points = points_;
  return r;
}

InterpolationReport interpolation_solve(int n, const Lattice2D& lattice, double radius,
                                        const Eigen::VectorXcd& data, int max_m) {
  return InterpolationSystem(n, lattice, radius, max_m).solve(data);
}

InterpolationTrials interpolation_trials(int n, const Lattice2D& lattice, double radius, std::size_t draws,
                                         std::uint64_t seed, int max_m) {
  const InterpolationSystem system(n, lattice, radius, max_m);
  auto rng = stream(seed, "interpolation-data", static_cast<std::uint64_t>(n));
  InterpolationTrials t;
  std::vector<double> residuals;
  for (std::size_t d = 0; d < draws; ++d) {
    Eigen::VectorXcd data = complex_gaussian(rng, static_cast<Idx>(system.points()));
    data.normalize();
    const InterpolationReport r = system.solve(data);
    residuals.push_back(r.residual_norm);
    t.max_residual = std::max(t.max_residual, r.residual_norm);
    t.max_coefficient_norm = std::max(t.max_coefficient_norm, r.coefficient_norm);
    t.condition_estimate = r.condition_estimate;
  }
  t.draws = draws;
  t.median_residual = median(residuals);
  if (t.median_residual > 0.05 || t.max_coefficient_norm > 1e6) {
    t.verdict = Verdict::decaying;
  } else if (t.max_residual < 1e-6 && t.max_coefficient_norm <= 1e3) {
    t.verdict = Verdict::stable_positive;
  }
  return t;
}

const char* sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::sampling:
      return "sampling";
    case SweepMode::interpolation:
      return "interpolation";
    case SweepMode::superframe:
      return "superframe";
    case SweepMode::riesz:
      return "riesz";
  }
  return "?";
}

SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "sampling") return SweepMode::sampling;
  if (s == "interpolation") return SweepMode::interpolation;
  if (s == "superframe") return SweepMode::superframe;
  if (s == "riesz") return SweepMode::riesz;
  throw ConfigError("unknown sweep mode '" + s + "' (expected sampling, interpolation, superframe, riesz)");
}

std::size_t dedupe_densities(std::vector<double>& densities) {
  std::vector<double> out;
  for (double d : densities) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  const std::size_t removed = densities.size() - out.size();
  densities = std::move(out);
  return removed;
}

std::vector<SweepRow> density_sweep(int n, const std::vector<double>& densities, SweepMode mode,
                                    const SweepConfig& config) {
  check_order(n);
  std::vector<SweepRow> rows;
  const TimeGrid grid = working_grid(config.radii);
  for (double d : densities) {
    const Lattice2D lattice = lattice_with_density(d);
    SweepRow row{n, d, sweep_mode_name(mode), 0.0, "", config.seed};
    switch (mode) {
      case SweepMode::sampling: {
        const BoundsReport r = sampling_bounds(n, lattice, config.radii, config.trials, config.seed);
        row.diagnostic = r.lower.back();
        row.verdict = verdict_name(r.verdict);
        break;
      }
      case SweepMode::interpolation: {
        const InterpolationTrials t = interpolation_trials(n, lattice, config.interpolation_radius,
                                                           config.interpolation_draws, config.seed);
        row.diagnostic = t.median_residual;
        row.verdict = verdict_name(t.verdict);
        break;
      }
      case SweepMode::superframe:
      case SweepMode::riesz: {
        const GaborSystemSpec spec{SystemKind::super, hermite_windows(n), lattice};
        const BoundsReport r = mode == SweepMode::superframe
                                   ? estimate_frame_bounds(spec, config.radii, grid, config.probe_count, config.seed)
                                   : estimate_riesz_bounds(spec, config.radii, grid);
        row.diagnostic = r.lower.back();
        row.verdict = verdict_name(r.verdict);
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> true_space_scan(int n, const std::vector<double>& densities, const SweepConfig& config) {
  if (n < 0) throw ParameterError("Hermite order must be non-negative");
  std::vector<SweepRow> rows;
  const TimeGrid grid = working_grid(config.radii);
  for (double d : densities) {
    const GaborSystemSpec spec{SystemKind::scalar, {Window::hermite(n)}, lattice_with_density(d)};
    const BoundsReport r = estimate_frame_bounds(spec, config.radii, grid, config.probe_count, config.seed);
    rows.push_back({n, d, "exploratory", r.lower.back(), verdict_name(r.verdict), config.seed});
  }
  return rows;
}

BoundsReport multiple_system_bounds(int n, const Lattice2D& lattice, MultipleMode mode,
                                    const std::vector<double>& radii, std::size_t probe_count,
                                    std::uint64_t seed) {
  const GaborSystemSpec spec{n == 1 ? SystemKind::scalar : SystemKind::multi_union, hermite_windows(n), lattice};
  const TimeGrid grid = working_grid(radii);
  return mode == MultipleMode::multiframe ? estimate_frame_bounds(spec, radii, grid, probe_count, seed)
                                          : estimate_riesz_bounds(spec, radii, grid);
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,density,mode,diagnostic,verdict,seed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + format_double(r.density) + "," + r.mode + "," + format_double(r.diagnostic) +
           "," + r.verdict + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

}  // namespace polyfock
