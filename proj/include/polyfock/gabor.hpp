#pragma once

#include <span>
#include <vector>

#include "polyfock/grid.hpp"

namespace polyfock {

/// Time-frequency shift pi_(x, omega) = M_omega T_x.
struct TFShift {
  double x = 0.0;
  double omega = 0.0;
};

/// Whole-step index closest to x / step (ties to even) and the residual |x - index * step|.
struct SnappedShift {
  long steps = 0;
  double residual = 0.0;
};
SnappedShift snap_shift(const TimeGrid& grid, double x);

/// e^{2 pi i omega t_j} g(t_j - x), with x snapped to the grid and zero fill at the borders.
Signal tf_shift(const Signal& g, TFShift s);

/// Same operator with an exact sub-step translation (band-limited FFT interpolation on a
/// zero-padded copy). Used where composition identities must hold to round-off.
Signal tf_shift_bandlimited(const Signal& g, TFShift s);

enum class StftMethod {
  fft,        ///< chirp-z (Bluestein) evaluation of every x row, OpenMP over rows
  direct,     ///< direct sums with twiddle recurrences, OpenMP over rows
  reference,  ///< serial direct sums with exact twiddles; slow, kept for testing
};

/// V_g f(x, omega) = <f, M_omega T_x g> on every node of `phase`.
GridField stft(const Signal& f, const Signal& g, const PhaseGrid& phase,
               StftMethod method = StftMethod::fft);

/// V_g f at (xs[i], omega0 + k * domega); domega may be negative. Rows follow xs.
Eigen::MatrixXcd stft_rows(const Signal& f, const Signal& g, std::span<const double> xs,
                           double omega0, double domega, std::size_t count,
                           StftMethod method = StftMethod::fft);

/// Largest snapping residual of the phase grid's x nodes against the time step.
double stft_snap_residual(const TimeGrid& time, const PhaseGrid& phase);

struct OrthogonalityCheck {
  cplx lhs;  ///< <V_{g1} f1, V_{g2} f2> by phase quadrature
  cplx rhs;  ///< <f1, f2> conj(<g1, g2>)
};

OrthogonalityCheck verify_orthogonality_relations(const Signal& f1, const Signal& f2,
                                                  const Signal& g1, const Signal& g2,
                                                  const PhaseGrid& phase);

/// Sum over channels of V_{g_k} f_k.
GridField super_stft(const VectorSignal& f, const VectorSignal& g, const PhaseGrid& phase,
                     StftMethod method = StftMethod::fft);

}  // namespace polyfock
