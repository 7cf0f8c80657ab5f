#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/grid.hpp"
#include "polyfock/lattice.hpp"
#include "polyfock/window.hpp"

namespace polyfock {

enum class SystemKind { scalar, super, multi_union };

const char* system_kind_name(SystemKind kind);
SystemKind parse_system_kind(const std::string& s);

/// G(g, Lambda), G(g_vec, Lambda) or the union of G(g_k, Lambda).
struct GaborSystemSpec {
  SystemKind kind = SystemKind::scalar;
  std::vector<Window> windows;
  Lattice2D lattice = square_lattice(1.0);

  /// Channels of one element: n for super systems, 1 otherwise.
  std::size_t channels() const;
  std::string describe() const;
};

/// Windows h_0 .. h_{n-1}.
std::vector<Window> hermite_windows(int n);

/// One system element: a lattice point paired with a window (window = -1 for super
/// elements, which carry every window).
struct SystemElement {
  LatticePoint point;
  int window = -1;
};

/// Elements over the truncated point set; union systems are window-major.
std::vector<SystemElement> system_elements(const GaborSystemSpec& spec, const LatticePointSet& points);

/// Element samples stacked channel after channel: (channels * N) x elements.
Eigen::MatrixXcd synthesis_matrix(const GaborSystemSpec& spec, const std::vector<SystemElement>& elements,
                                  const TimeGrid& grid);

/// Gram matrix over the truncated system. Analytic windows use the difference-lattice
/// identity <pi_a g, pi_b h> = exp(-2 pi i (w_b - w_a) x_a) <g, pi_{b-a} h> with the
/// table filled in parallel; sampled windows fall back to direct parallel products.
Eigen::MatrixXcd gram_matrix(const GaborSystemSpec& spec, double radius, const TimeGrid& grid);

/// Serial direct pairwise inner products; the testing reference for gram_matrix.
Eigen::MatrixXcd gram_matrix_reference(const GaborSystemSpec& spec, double radius, const TimeGrid& grid);

/// S f = sum_e <f, e> e over the truncated system; f has spec.channels() channels.
VectorSignal frame_operator_apply(const GaborSystemSpec& spec, double radius, const VectorSignal& f);
Signal frame_operator_apply(const GaborSystemSpec& spec, double radius, const Signal& f);

/// sum_e |<f, e>|^2, the quadratic form of S, by direct summation.
double frame_sum(const GaborSystemSpec& spec, double radius, const VectorSignal& f);

enum class Verdict { stable_positive, decaying, inconclusive };
const char* verdict_name(Verdict v);

/// Frozen trend rule over per-radius lower bounds (needs >= 3 radii):
///   stable_positive: last three lower bounds within 10% of their max and min > 1e-2;
///   decaying: last lower bound < 1e-6 * last upper bound, or each of the last two
///             steps drops the lower bound by >= 25%;
///   inconclusive otherwise.
Verdict trend_verdict(const std::vector<double>& lower, const std::vector<double>& upper);

struct BoundsReport {
  std::string quantity;  ///< "frame" or "riesz"
  std::string spec;
  std::vector<double> radii;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> probe_lower;  ///< frame reports: min/max Rayleigh quotient over random probes
  std::vector<double> probe_upper;
  std::vector<std::size_t> sizes;   ///< elements per radius
  Verdict verdict = Verdict::inconclusive;
  double grid_half_width = 0.0;
  std::size_t grid_samples = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Radii schedule used when none is configured.
std::vector<double> default_radii();
inline constexpr double kDefaultProbeMargin = 3.0;

/// Time grid on [-(R_max + 4), R_max + 4) with step 1/32, wide enough for every
/// element and probe of the schedule.
TimeGrid working_grid(const std::vector<double>& radii);

/// Hermite orders 0..M with M = floor(pi (R - margin)^2): the functions whose
/// phase-space mass lies within radius R - margin.
int probe_band(double radius, double margin = kDefaultProbeMargin);

/// C(a, e) = <element e, probe a> with probes h_m in each channel, m <= probe_band(radius, margin),
/// ordered channel-major. C C^H is the frame operator compressed to the probe space.
Eigen::MatrixXcd probe_analysis_matrix(const GaborSystemSpec& spec, double radius, const TimeGrid& grid,
                                       double margin = kDefaultProbeMargin);

/// Probe samples: (channels * N) x (channels * (band + 1)), block diagonal.
Eigen::MatrixXcd probe_synthesis_matrix(std::size_t channels, const TimeGrid& grid, int band);

struct FrameSpectrum {
  double lower = 0.0;
  double upper = 0.0;
  double probe_lower = 0.0;
  double probe_upper = 0.0;
  std::size_t elements = 0;
};

/// Extremal eigenvalues of the truncated frame operator compressed to the probe space
/// (per channel Hermite orders <= probe_band), plus Rayleigh quotients of `probe_count`
/// seeded random probes from the same space.
FrameSpectrum compressed_frame_spectrum(const GaborSystemSpec& spec, double radius, const TimeGrid& grid,
                                        std::size_t probe_count, std::uint64_t seed,
                                        double margin = kDefaultProbeMargin);

BoundsReport estimate_frame_bounds(const GaborSystemSpec& spec, const std::vector<double>& radii,
                                   const TimeGrid& grid, std::size_t probe_count, std::uint64_t seed,
                                   double margin = kDefaultProbeMargin);

BoundsReport estimate_riesz_bounds(const GaborSystemSpec& spec, const std::vector<double>& radii,
                                   const TimeGrid& grid);

/// Extremal eigenvalues of a Hermitian matrix: dense solver below 2000 rows, Lanczos
/// with full reorthogonalization above.
std::pair<double, double> extremal_eigenvalues(const Eigen::MatrixXcd& h);
std::pair<double, double> lanczos_extremal(const Eigen::MatrixXcd& h, int steps, std::uint64_t seed);

struct DualityReport {
  BoundsReport super_frame;    ///< G(g_vec, Lambda) frame
  BoundsReport union_riesz;    ///< union of G(g_k, Lambda^0) Riesz
  BoundsReport vector_riesz;   ///< G(g_vec, Lambda) Riesz
  BoundsReport multi_frame;    ///< union of G(g_k, Lambda^0) frame
  bool frame_pair_agrees = false;
  bool riesz_pair_agrees = false;

  std::string to_json() const;
};

DualityReport duality_check(const std::vector<Window>& windows, const Lattice2D& lattice,
                            const std::vector<double>& radii, const TimeGrid& grid,
                            std::size_t probe_count, std::uint64_t seed);

}  // namespace polyfock
