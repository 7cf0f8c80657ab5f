#include "polyfock/gabor.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "polyfock/errors.hpp"
#include "polyfock/fft.hpp"

namespace polyfock {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i * pi * c * m^2) with the integer square reduced before scaling.
cplx chirp(double c, long m) {
  const double sq = static_cast<double>(m) * static_cast<double>(m);
  return std::polar(1.0, std::numbers::pi * std::fmod(c * sq, 2.0));
}

// Windowed product v_j = f_j conj(g_{j-s}) for one snapped shift; returns [lo, hi).
std::pair<long, long> window_product(const Signal& f, const Signal& g, long s, cplx* v) {
  const long n = static_cast<long>(f.grid().size());
  const long lo = std::max(0L, s);
  const long hi = std::min(n, n + s);
  for (long j = 0; j < n; ++j) v[j] = 0.0;
  for (long j = lo; j < hi; ++j) {
    v[j] = f.values()[j] * std::conj(g.values()[j - s]);
  }
  return {lo, hi};
}

void check_pair(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) throw ShapeError("STFT of signal and window on different grids");
}

Eigen::MatrixXcd rows_reference(const Signal& f, const Signal& g, std::span<const double> xs,
                                double omega0, double domega, std::size_t count) {
  const auto& grid = f.grid();
  const auto n = grid.size();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(count));
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long s = snap_shift(grid, xs[i]).steps;
    const auto [lo, hi] = window_product(f, g, s, v.data());
    for (std::size_t k = 0; k < count; ++k) {
      const double omega = omega0 + static_cast<double>(k) * domega;
      cplx acc = 0.0;
      for (long j = lo; j < hi; ++j) {
        acc += v[static_cast<std::size_t>(j)] *
               std::polar(1.0, -kTwoPi * grid.node(static_cast<std::size_t>(j)) * omega);
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = acc * grid.step();
    }
  }
  return out;
}

Eigen::MatrixXcd rows_direct(const Signal& f, const Signal& g, std::span<const double> xs,
                             double omega0, double domega, std::size_t count) {
  const auto& grid = f.grid();
  const auto n = grid.size();
  const auto nx = static_cast<long>(xs.size());
  Eigen::MatrixXcd out(nx, static_cast<Eigen::Index>(count));
#pragma omp parallel
  {
    std::vector<cplx> v(n);
#pragma omp for schedule(static)
    for (long i = 0; i < nx; ++i) {
      const long s = snap_shift(grid, xs[static_cast<std::size_t>(i)]).steps;
      const auto [lo, hi] = window_product(f, g, s, v.data());
      for (std::size_t k = 0; k < count; ++k) {
        const double omega = omega0 + static_cast<double>(k) * domega;
        // Restart the twiddle recurrence every 256 samples to bound drift.
        cplx acc = 0.0;
        cplx tw;
        const cplx rot = std::polar(1.0, -kTwoPi * grid.step() * omega);
        for (long j = lo; j < hi; ++j) {
          if ((j - lo) % 256 == 0) {
            tw = std::polar(1.0, -kTwoPi * grid.node(static_cast<std::size_t>(j)) * omega);
          }
          acc += v[static_cast<std::size_t>(j)] * tw;
          tw *= rot;
        }
        out(i, static_cast<Eigen::Index>(k)) = acc * grid.step();
      }
    }
  }
  return out;
}

// Chirp-z evaluation of S_k = sum_j v_j exp(-2 pi i t_j w_k), t_j = t0 + j dt,
// w_k = w0 + k dw, via j k = (j^2 + k^2 - (k - j)^2) / 2.
Eigen::MatrixXcd rows_fft(const Signal& f, const Signal& g, std::span<const double> xs,
                          double omega0, double domega, std::size_t count) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  const double dt = grid.step();
  const double t0 = grid.node(0);
  const double c = dt * domega;
  const std::size_t len = next_pow2(n + count - 1);

  std::vector<cplx> pre(n);
  for (std::size_t j = 0; j < n; ++j) {
    pre[j] = std::polar(1.0, -kTwoPi * std::fmod(static_cast<double>(j) * dt * omega0, 1.0)) *
             std::conj(chirp(c, static_cast<long>(j)));
  }
  std::vector<cplx> post(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double omega = omega0 + static_cast<double>(k) * domega;
    post[k] = std::polar(1.0, -kTwoPi * std::fmod(t0 * omega, 1.0)) *
              std::conj(chirp(c, static_cast<long>(k))) * dt;
  }

  const FftPlan forward(len, false);
  const FftPlan backward(len, true);
  FftBuffer kernel(len);
  for (std::size_t m = 0; m < len; ++m) kernel[m] = 0.0;
  for (std::size_t m = 0; m < count; ++m) kernel[m] = chirp(c, static_cast<long>(m));
  for (std::size_t m = 1; m < n; ++m) kernel[len - m] = chirp(c, static_cast<long>(m));
  forward.execute(kernel.data());

  const auto nx = static_cast<long>(xs.size());
  Eigen::MatrixXcd out(nx, static_cast<Eigen::Index>(count));
  const double inv_len = 1.0 / static_cast<double>(len);
#pragma omp parallel
  {
    FftBuffer buf(len);
    std::vector<cplx> v(n);
#pragma omp for schedule(static)
    for (long i = 0; i < nx; ++i) {
      const long s = snap_shift(grid, xs[static_cast<std::size_t>(i)]).steps;
      window_product(f, g, s, v.data());
      for (std::size_t j = 0; j < n; ++j) buf[j] = v[j] * pre[j];
      for (std::size_t j = n; j < len; ++j) buf[j] = 0.0;
      forward.execute(buf.data());
      for (std::size_t m = 0; m < len; ++m) buf[m] *= kernel[m];
      backward.execute(buf.data());
      for (std::size_t k = 0; k < count; ++k) {
        out(i, static_cast<Eigen::Index>(k)) = buf[k] * post[k] * inv_len;
      }
    }
  }
  return out;
}

}  // namespace

FftPlan::FftPlan(std::size_t length, bool inverse) : length_(length), plan_(nullptr) {
  std::lock_guard lock(planner_mutex());
  auto* tmp = fftw_alloc_complex(length);
  plan_ = fftw_plan_dft_1d(static_cast<int>(length), tmp, tmp, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                           FFTW_ESTIMATE);
  fftw_free(tmp);
  if (!plan_) throw Error("FFTW could not create a plan");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void FftPlan::execute(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), p, p);
}

FftBuffer::FftBuffer(std::size_t length)
    : length_(length), data_(reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(length))) {
  if (!data_) throw std::bad_alloc();
}

FftBuffer::~FftBuffer() { fftw_free(data_); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

SnappedShift snap_shift(const TimeGrid& grid, double x) {
  // nearbyint honours the default round-to-nearest-even mode.
  const double steps = std::nearbyint(x / grid.step());
  return {static_cast<long>(steps), std::abs(x - steps * grid.step())};
}

Signal tf_shift(const Signal& g, TFShift s) {
  const auto& grid = g.grid();
  const long shift = snap_shift(grid, s.x).steps;
  const long n = static_cast<long>(grid.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (long j = 0; j < n; ++j) {
    const long src = j - shift;
    if (src < 0 || src >= n) continue;
    out[j] = g.values()[src] * std::polar(1.0, kTwoPi * s.omega * grid.node(static_cast<std::size_t>(j)));
  }
  return Signal(grid, std::move(out));
}

Signal tf_shift_bandlimited(const Signal& g, TFShift s) {
  const auto& grid = g.grid();
  const std::size_t n = grid.size();
  const std::size_t len = next_pow2(2 * n);
  const FftPlan forward(len, false);
  const FftPlan backward(len, true);
  FftBuffer buf(len);
  for (std::size_t j = 0; j < len; ++j) buf[j] = j < n ? g[j] : cplx(0.0);
  forward.execute(buf.data());
  const double span = static_cast<double>(len) * grid.step();
  for (std::size_t q = 0; q < len; ++q) {
    const long signed_q = q < len / 2 ? static_cast<long>(q) : static_cast<long>(q) - static_cast<long>(len);
    const double nu = (q == len / 2) ? 0.0 : static_cast<double>(signed_q) / span;
    buf[q] *= std::polar(1.0, -kTwoPi * std::fmod(nu * s.x, 1.0));
  }
  backward.execute(buf.data());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    out[static_cast<Eigen::Index>(j)] =
        buf[j] / static_cast<double>(len) * std::polar(1.0, kTwoPi * std::fmod(s.omega * grid.node(j), 1.0));
  }
  return Signal(grid, std::move(out));
}

Eigen::MatrixXcd stft_rows(const Signal& f, const Signal& g, std::span<const double> xs,
                           double omega0, double domega, std::size_t count, StftMethod method) {
  check_pair(f, g);
  switch (method) {
    case StftMethod::reference:
      return rows_reference(f, g, xs, omega0, domega, count);
    case StftMethod::direct:
      return rows_direct(f, g, xs, omega0, domega, count);
    case StftMethod::fft:
      break;
  }
  return rows_fft(f, g, xs, omega0, domega, count);
}

GridField stft(const Signal& f, const Signal& g, const PhaseGrid& phase, StftMethod method) {
  std::vector<double> xs(phase.nx());
  for (std::size_t i = 0; i < phase.nx(); ++i) xs[i] = phase.x_node(i);
  return GridField(phase, stft_rows(f, g, xs, phase.omega_node(0), phase.domega(), phase.nomega(), method));
}

double stft_snap_residual(const TimeGrid& time, const PhaseGrid& phase) {
  double worst = 0.0;
  for (std::size_t i = 0; i < phase.nx(); ++i) {
    worst = std::max(worst, snap_shift(time, phase.x_node(i)).residual);
  }
  return worst;
}

OrthogonalityCheck verify_orthogonality_relations(const Signal& f1, const Signal& f2,
                                                  const Signal& g1, const Signal& g2,
                                                  const PhaseGrid& phase) {
  const GridField v1 = stft(f1, g1, phase);
  const GridField v2 = stft(f2, g2, phase);
  return {phase_inner_product(v1, v2, PhaseWeight::none),
          inner_product(f1, f2) * std::conj(inner_product(g1, g2))};
}

GridField super_stft(const VectorSignal& f, const VectorSignal& g, const PhaseGrid& phase,
                     StftMethod method) {
  if (f.channel_count() != g.channel_count()) {
    throw ShapeError("super STFT needs equal channel counts");
  }
  GridField out = GridField::zeros(phase);
  for (std::size_t k = 0; k < f.channel_count(); ++k) {
    out.values() += stft(f.channel(k), g.channel(k), phase, method).values();
  }
  return out;
}

}  // namespace polyfock
