#include "polyfock/frames.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "polyfock/errors.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/random.hpp"

namespace polyfock {

namespace {

using Idx = Eigen::Index;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_spec(const GaborSystemSpec& spec) {
  if (spec.windows.empty()) throw ParameterError("Gabor system needs at least one window");
  if (spec.kind == SystemKind::scalar && spec.windows.size() != 1) {
    throw ParameterError("scalar Gabor system takes exactly one window");
  }
}

void check_radii(const std::vector<double>& radii) {
  if (radii.size() < 3) throw ParameterError("bounds estimation needs at least 3 truncation radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ParameterError("truncation radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ParameterError("truncation radii must increase");
  }
}

bool all_analytic(const GaborSystemSpec& spec) {
  return std::all_of(spec.windows.begin(), spec.windows.end(), [](const Window& w) { return w.analytic(); });
}

// exp(-2 pi i (w_b - w_a) x_a)
cplx pair_phase(const LatticePoint& a, const LatticePoint& b) {
  return std::polar(1.0, -kTwoPi * std::fmod((b.omega - a.omega) * a.x, 1.0));
}

Eigen::MatrixXd probe_table(const TimeGrid& grid, int band) {
  const Eigen::VectorXd t = grid.nodes();
  return hermite_table(band, std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
}

}  // namespace

const char* system_kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::scalar:
      return "scalar";
    case SystemKind::super:
      return "super";
    case SystemKind::multi_union:
      return "multi_union";
  }
  return "?";
}

SystemKind parse_system_kind(const std::string& s) {
  if (s == "scalar") return SystemKind::scalar;
  if (s == "super") return SystemKind::super;
  if (s == "multi_union" || s == "union") return SystemKind::multi_union;
  throw ConfigError("unknown system kind '" + s + "' (expected scalar, super, multi_union)");
}

std::size_t GaborSystemSpec::channels() const { return kind == SystemKind::super ? windows.size() : 1; }

std::string GaborSystemSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << system_kind_name(kind) << " windows=";
  for (std::size_t i = 0; i < windows.size(); ++i) out << (i ? "," : "") << windows[i].spec();
  const auto& a = lattice.generator();
  out << " lattice=matrix:" << a(0, 0) << "," << a(0, 1) << "," << a(1, 0) << "," << a(1, 1);
  return out.str();
}

std::vector<Window> hermite_windows(int n) {
  if (n < 1) throw ParameterError("need at least one Hermite window");
  std::vector<Window> out;
  for (int k = 0; k < n; ++k) out.push_back(Window::hermite(k));
  return out;
}

std::vector<SystemElement> system_elements(const GaborSystemSpec& spec, const LatticePointSet& points) {
  check_spec(spec);
  std::vector<SystemElement> out;
  if (spec.kind == SystemKind::multi_union) {
    for (std::size_t w = 0; w < spec.windows.size(); ++w) {
      for (const auto& p : points.points) out.push_back({p, static_cast<int>(w)});
    }
  } else {
    const int w = spec.kind == SystemKind::super ? -1 : 0;
    for (const auto& p : points.points) out.push_back({p, w});
  }
  return out;
}

Eigen::MatrixXcd synthesis_matrix(const GaborSystemSpec& spec, const std::vector<SystemElement>& elements,
                                  const TimeGrid& grid) {
  const auto n = static_cast<Idx>(grid.size());
  const auto channels = static_cast<Idx>(spec.channels());
  Eigen::MatrixXcd e(channels * n, static_cast<Idx>(elements.size()));
  const auto count = static_cast<long>(elements.size());
#pragma omp parallel for schedule(static)
  for (long c = 0; c < count; ++c) {
    const auto& el = elements[static_cast<std::size_t>(c)];
    if (el.window < 0) {
      for (Idx k = 0; k < channels; ++k) {
        e.col(c).segment(k * n, n) = spec.windows[static_cast<std::size_t>(k)].shifted(grid, el.point.x, el.point.omega);
      }
    } else {
      e.col(c) = spec.windows[static_cast<std::size_t>(el.window)].shifted(grid, el.point.x, el.point.omega);
    }
  }
  return e;
}

Eigen::MatrixXcd gram_matrix(const GaborSystemSpec& spec, double radius, const TimeGrid& grid) {
  check_spec(spec);
  const LatticePointSet points = enumerate_points(spec.lattice, radius);
  const auto elements = system_elements(spec, points);
  const auto count = static_cast<long>(elements.size());
  Eigen::MatrixXcd g(count, count);

  if (!all_analytic(spec)) {
    const Eigen::MatrixXcd e = synthesis_matrix(spec, elements, grid);
#pragma omp parallel for schedule(dynamic, 8)
    for (long a = 0; a < count; ++a) {
      for (long b = 0; b < count; ++b) g(a, b) = e.col(b).dot(e.col(a)) * grid.step();
    }
    return g;
  }

  // Difference table D_{kl}(di, dj) = <g_k, pi_{A(di,dj)} g_l> over the box of
  // integer differences whose lattice point lies within 2R.
  long bi = 0;
  long bj = 0;
  for (const auto& p : points.points) {
    bi = std::max(bi, std::abs(p.i));
    bj = std::max(bj, std::abs(p.j));
  }
  const long wi = 4 * bi + 1;
  const long wj = 4 * bj + 1;
  const std::size_t nw = spec.windows.size();
  const bool super = spec.kind == SystemKind::super;
  const std::size_t pairs = super ? 1 : nw * nw;
  std::vector<std::pair<long, long>> needed;
  const double reach = 2.0 * radius * (1.0 + 1e-12);
  for (long di = -2 * bi; di <= 2 * bi; ++di) {
    for (long dj = -2 * bj; dj <= 2 * bj; ++dj) {
      if (spec.lattice.point(di, dj).norm() <= reach) needed.emplace_back(di, dj);
    }
  }
  std::vector<Eigen::VectorXcd> base(nw);
  for (std::size_t k = 0; k < nw; ++k) base[k] = spec.windows[k].on(grid).values();
  std::vector<cplx> table(static_cast<std::size_t>(wi * wj) * pairs, cplx(0.0));
  const auto slot = [&](long di, long dj, std::size_t pair) {
    return (static_cast<std::size_t>((di + 2 * bi) * wj + (dj + 2 * bj))) * pairs + pair;
  };
  const auto nneed = static_cast<long>(needed.size());
#pragma omp parallel for schedule(static)
  for (long q = 0; q < nneed; ++q) {
    const auto [di, dj] = needed[static_cast<std::size_t>(q)];
    const Eigen::Vector2d d = spec.lattice.point(di, dj);
    if (super) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < nw; ++k) {
        s += spec.windows[k].shifted(grid, d.x(), d.y()).dot(base[k]);
      }
      table[slot(di, dj, 0)] = s * grid.step();
    } else {
      for (std::size_t l = 0; l < nw; ++l) {
        const Eigen::VectorXcd sh = spec.windows[l].shifted(grid, d.x(), d.y());
        for (std::size_t k = 0; k < nw; ++k) table[slot(di, dj, k * nw + l)] = sh.dot(base[k]) * grid.step();
      }
    }
  }
#pragma omp parallel for schedule(static)
  for (long a = 0; a < count; ++a) {
    const auto& ea = elements[static_cast<std::size_t>(a)];
    for (long b = 0; b < count; ++b) {
      const auto& eb = elements[static_cast<std::size_t>(b)];
      const std::size_t pair =
          super ? 0 : static_cast<std::size_t>(ea.window) * nw + static_cast<std::size_t>(eb.window);
      g(a, b) = pair_phase(ea.point, eb.point) * table[slot(eb.point.i - ea.point.i, eb.point.j - ea.point.j, pair)];
    }
  }
  return g;
}

Eigen::MatrixXcd gram_matrix_reference(const GaborSystemSpec& spec, double radius, const TimeGrid& grid) {
  const LatticePointSet points = enumerate_points(spec.lattice, radius);
  const auto elements = system_elements(spec, points);
  const Eigen::MatrixXcd e = synthesis_matrix(spec, elements, grid);
  const Idx count = e.cols();
  Eigen::MatrixXcd g(count, count);
  for (Idx a = 0; a < count; ++a) {
    for (Idx b = 0; b < count; ++b) {
      cplx s = 0.0;
      for (Idx j = 0; j < e.rows(); ++j) s += e(j, a) * std::conj(e(j, b));
      g(a, b) = s * grid.step();
    }
  }
  return g;
}

namespace {

Eigen::VectorXcd stack(const VectorSignal& f) {
  const auto n = static_cast<Idx>(f.grid().size());
  Eigen::VectorXcd v(n * static_cast<Idx>(f.channel_count()));
  for (std::size_t k = 0; k < f.channel_count(); ++k) v.segment(static_cast<Idx>(k) * n, n) = f.channel(k).values();
  return v;
}

VectorSignal unstack(const TimeGrid& grid, const Eigen::VectorXcd& v, std::size_t channels) {
  const auto n = static_cast<Idx>(grid.size());
  std::vector<Signal> out;
  for (std::size_t k = 0; k < channels; ++k) out.emplace_back(grid, v.segment(static_cast<Idx>(k) * n, n));
  return VectorSignal(std::move(out));
}

Eigen::VectorXcd analysis(const GaborSystemSpec& spec, double radius, const VectorSignal& f, Eigen::MatrixXcd* e_out) {
  if (f.channel_count() != spec.channels()) throw ShapeError("signal channel count does not match the Gabor system");
  const auto elements = system_elements(spec, enumerate_points(spec.lattice, radius));
  Eigen::MatrixXcd e = synthesis_matrix(spec, elements, f.grid());
  Eigen::VectorXcd c = e.adjoint() * stack(f) * f.grid().step();
  if (e_out) *e_out = std::move(e);
  return c;
}

}  // namespace

VectorSignal frame_operator_apply(const GaborSystemSpec& spec, double radius, const VectorSignal& f) {
  Eigen::MatrixXcd e;
  const Eigen::VectorXcd c = analysis(spec, radius, f, &e);
  return unstack(f.grid(), e * c, f.channel_count());
}

Signal frame_operator_apply(const GaborSystemSpec& spec, double radius, const Signal& f) {
  return frame_operator_apply(spec, radius, VectorSignal({f})).channel(0);
}

double frame_sum(const GaborSystemSpec& spec, double radius, const VectorSignal& f) {
  return analysis(spec, radius, f, nullptr).squaredNorm();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::stable_positive:
      return "stable_positive";
    case Verdict::decaying:
      return "decaying";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict trend_verdict(const std::vector<double>& lower, const std::vector<double>& upper) {
  if (lower.size() < 3 || upper.size() != lower.size()) {
    throw ParameterError("trend rule needs at least 3 radii with matching upper bounds");
  }
  const std::size_t n = lower.size();
  const double a = lower[n - 3];
  const double b = lower[n - 2];
  const double c = lower[n - 1];
  const double hi = std::max({a, b, c});
  const double lo = std::min({a, b, c});
  if (lo > 1e-2 && (hi - lo) <= 0.1 * hi) return Verdict::stable_positive;
  if (c < 1e-6 * upper[n - 1]) return Verdict::decaying;
  if (b <= 0.75 * a && c <= 0.75 * b) return Verdict::decaying;
  return Verdict::inconclusive;
}

std::string BoundsReport::to_json() const {
  nlohmann::ordered_json j;
  j["quantity"] = quantity;
  j["spec"] = spec;
  j["grid"] = {{"half_width", grid_half_width}, {"samples", grid_samples}};
  j["seed"] = seed;
  j["radii"] = radii;
  j["lower"] = lower;
  j["upper"] = upper;
  if (!probe_lower.empty()) {
    j["probe_lower"] = probe_lower;
    j["probe_upper"] = probe_upper;
  }
  j["elements"] = sizes;
  j["verdict"] = verdict_name(verdict);
  return j.dump(2) + "\n";
}

std::string BoundsReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "radius,lower,upper\n";
  for (std::size_t i = 0; i < radii.size(); ++i) out << radii[i] << "," << lower[i] << "," << upper[i] << "\n";
  return out.str();
}

std::vector<double> default_radii() { return {4.0, 6.0, 8.0, 10.0, 12.0}; }

TimeGrid working_grid(const std::vector<double>& radii) {
  if (radii.empty()) throw ParameterError("working grid needs a radius schedule");
  const double half = std::ceil(*std::max_element(radii.begin(), radii.end())) + 4.0;
  return TimeGrid(half, static_cast<std::size_t>(2.0 * half * 32.0));
}

int probe_band(double radius, double margin) {
  const double r = std::max(0.0, radius - margin);
  return static_cast<int>(std::floor(std::numbers::pi * r * r));
}

Eigen::MatrixXcd probe_analysis_matrix(const GaborSystemSpec& spec, double radius, const TimeGrid& grid,
                                       double margin) {
  const auto elements = system_elements(spec, enumerate_points(spec.lattice, radius));
  const Eigen::MatrixXcd e = synthesis_matrix(spec, elements, grid);
  const int band = probe_band(radius, margin);
  const Eigen::MatrixXcd h = probe_table(grid, band).cast<cplx>();
  const auto n = static_cast<Idx>(grid.size());
  const auto channels = static_cast<Idx>(spec.channels());
  const Idx per = band + 1;
  Eigen::MatrixXcd c(channels * per, e.cols());
  for (Idx k = 0; k < channels; ++k) c.middleRows(k * per, per) = h * e.middleRows(k * n, n) * grid.step();
  return c;
}

Eigen::MatrixXcd probe_synthesis_matrix(std::size_t channels, const TimeGrid& grid, int band) {
  const Eigen::MatrixXd h = probe_table(grid, band);
  const auto n = static_cast<Idx>(grid.size());
  const Idx per = band + 1;
  const auto ch = static_cast<Idx>(channels);
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(ch * n, ch * per);
  for (Idx k = 0; k < ch; ++k) q.block(k * n, k * per, n, per) = h.transpose().cast<cplx>();
  return q;
}

FrameSpectrum compressed_frame_spectrum(const GaborSystemSpec& spec, double radius, const TimeGrid& grid,
                                        std::size_t probe_count, std::uint64_t seed, double margin) {
  const Eigen::MatrixXcd c = probe_analysis_matrix(spec, radius, grid, margin);
  const Eigen::MatrixXcd kmat = c * c.adjoint();
  FrameSpectrum out;
  std::tie(out.lower, out.upper) = extremal_eigenvalues(kmat);
  out.lower = std::max(0.0, out.lower);
  out.elements = static_cast<std::size_t>(c.cols());
  auto rng = stream(seed, "frame-probes", static_cast<std::uint64_t>(std::llround(radius * 1000.0)));
  out.probe_lower = std::numeric_limits<double>::infinity();
  out.probe_upper = 0.0;
  for (std::size_t p = 0; p < probe_count; ++p) {
    const Eigen::VectorXcd v = complex_gaussian(rng, kmat.rows());
    const double q = (v.adjoint() * kmat * v)(0).real() / v.squaredNorm();
    out.probe_lower = std::min(out.probe_lower, q);
    out.probe_upper = std::max(out.probe_upper, q);
  }
  if (probe_count == 0) out.probe_lower = 0.0;
  return out;
}

BoundsReport estimate_frame_bounds(const GaborSystemSpec& spec, const std::vector<double>& radii,
                                   const TimeGrid& grid, std::size_t probe_count, std::uint64_t seed,
                                   double margin) {
  check_spec(spec);
  check_radii(radii);
  BoundsReport r;
  r.quantity = "frame";
  r.spec = spec.describe();
  r.radii = radii;
  r.grid_half_width = grid.half_width();
  r.grid_samples = grid.size();
  r.seed = seed;
  for (double radius : radii) {
    const FrameSpectrum s = compressed_frame_spectrum(spec, radius, grid, probe_count, seed, margin);
    r.lower.push_back(s.lower);
    r.upper.push_back(s.upper);
    r.probe_lower.push_back(s.probe_lower);
    r.probe_upper.push_back(s.probe_upper);
    r.sizes.push_back(s.elements);
  }
  r.verdict = trend_verdict(r.lower, r.upper);
  return r;
}

BoundsReport estimate_riesz_bounds(const GaborSystemSpec& spec, const std::vector<double>& radii,
                                   const TimeGrid& grid) {
  check_spec(spec);
  check_radii(radii);
  BoundsReport r;
  r.quantity = "riesz";
  r.spec = spec.describe();
  r.radii = radii;
  r.grid_half_width = grid.half_width();
  r.grid_samples = grid.size();
  for (double radius : radii) {
    const Eigen::MatrixXcd g = gram_matrix(spec, radius, grid);
    auto [lo, hi] = extremal_eigenvalues(g);
    r.lower.push_back(std::max(0.0, lo));
    r.upper.push_back(hi);
    r.sizes.push_back(static_cast<std::size_t>(g.rows()));
  }
  r.verdict = trend_verdict(r.lower, r.upper);
  return r;
}

std::pair<double, double> extremal_eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return {0.0, 0.0};
  if (h.rows() < 2000) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
    return {solver.eigenvalues()(0), solver.eigenvalues()(h.rows() - 1)};
  }
  return lanczos_extremal(h, 400, 0x5eed);
}

std::pair<double, double> lanczos_extremal(const Eigen::MatrixXcd& h, int steps, std::uint64_t seed) {
  const Idx n = h.rows();
  const Idx m = std::min<Idx>(steps, n);
  auto rng = stream(seed, "lanczos");
  Eigen::MatrixXcd q(n, m);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  Eigen::VectorXcd v = complex_gaussian(rng, n);
  v.normalize();
  Idx used = 0;
  for (Idx k = 0; k < m; ++k) {
    q.col(k) = v;
    Eigen::VectorXcd w = h * v;
    alpha[k] = v.dot(w).real();
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
    }
    used = k + 1;
    const double b = w.norm();
    if (k + 1 < m) beta[k] = b;
    if (b < 1e-13 * std::max(1.0, std::abs(alpha[k]))) break;
    v = w / b;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
  for (Idx k = 0; k < used; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < used) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()(0), solver.eigenvalues()(used - 1)};
}

std::string DualityReport::to_json() const {
  nlohmann::ordered_json j;
  j["super_frame"] = nlohmann::ordered_json::parse(super_frame.to_json());
  j["union_riesz_adjoint"] = nlohmann::ordered_json::parse(union_riesz.to_json());
  j["vector_riesz"] = nlohmann::ordered_json::parse(vector_riesz.to_json());
  j["multi_frame_adjoint"] = nlohmann::ordered_json::parse(multi_frame.to_json());
  j["frame_pair_agrees"] = frame_pair_agrees;
  j["riesz_pair_agrees"] = riesz_pair_agrees;
  return j.dump(2) + "\n";
}

DualityReport duality_check(const std::vector<Window>& windows, const Lattice2D& lattice,
                            const std::vector<double>& radii, const TimeGrid& grid,
                            std::size_t probe_count, std::uint64_t seed) {
  const Lattice2D dual = adjoint_lattice(lattice);
  const GaborSystemSpec super{SystemKind::super, windows, lattice};
  const GaborSystemSpec un{SystemKind::multi_union, windows, dual};
  DualityReport r{estimate_frame_bounds(super, radii, grid, probe_count, seed),
                  estimate_riesz_bounds(un, radii, grid),
                  estimate_riesz_bounds(super, radii, grid),
                  estimate_frame_bounds(un, radii, grid, probe_count, seed),
                  false,
                  false};
  r.frame_pair_agrees = r.super_frame.verdict == r.union_riesz.verdict;
  r.riesz_pair_agrees = r.vector_riesz.verdict == r.multi_frame.verdict;
  return r;
}

}  // namespace polyfock
