#include "polyfock/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/hermite.hpp"

namespace polyfock {

namespace {

constexpr double kPi = std::numbers::pi;
using Idx = Eigen::Index;

// exp(i pi x omega - pi |z|^2 / 2)
cplx weight_factor(cplx z) {
  return std::polar(std::exp(-0.5 * kPi * std::norm(z)), kPi * z.real() * z.imag());
}

template <typename Fn>
GridField tabulate(const PhaseGrid& phase, Fn&& fn) {
  Eigen::MatrixXcd v(static_cast<Idx>(phase.nx()), static_cast<Idx>(phase.nomega()));
  for (std::size_t k = 0; k < phase.nomega(); ++k) {
    for (std::size_t i = 0; i < phase.nx(); ++i) v(static_cast<Idx>(i), static_cast<Idx>(k)) = fn(phase.z(i, k));
  }
  return GridField(phase, std::move(v));
}

// Weighted field V_{h_n} f(x, -omega) on the phase grid.
GridField reflected_stft(const Signal& f, const Signal& window, const PhaseGrid& phase) {
  std::vector<double> xs(phase.nx());
  for (std::size_t i = 0; i < phase.nx(); ++i) xs[i] = phase.x_node(i);
  return GridField(phase, stft_rows(f, window, xs, -phase.omega_node(0), -phase.domega(), phase.nomega()));
}

FockField from_weighted(const GridField& weighted) {
  return FockField(weighted, NormTag::bargmann_weighted).as(NormTag::raw_F);
}

// Fourth-order central first differences along x (axis 0) or omega (axis 1).
Eigen::MatrixXcd central_diff(const Eigen::MatrixXcd& v, int axis, double h) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(v.rows(), v.cols());
  const Idx nx = v.rows();
  const Idx nw = v.cols();
  for (Idx k = 0; k < nw; ++k) {
    for (Idx i = 0; i < nx; ++i) {
      const Idx a = axis == 0 ? i : k;
      const Idx len = axis == 0 ? nx : nw;
      if (a < 2 || a + 2 >= len) continue;
      auto at = [&](Idx d) { return axis == 0 ? v(i + d, k) : v(i, k + d); };
      out(i, k) = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
    }
  }
  return out;
}

NodeMask interior_mask(const PhaseGrid& phase, int ring) {
  NodeMask m(static_cast<Idx>(phase.nx()), static_cast<Idx>(phase.nomega()));
  for (Idx k = 0; k < m.cols(); ++k) {
    for (Idx i = 0; i < m.rows(); ++i) {
      m(i, k) = i >= ring && k >= ring && i < m.rows() - ring && k < m.cols() - ring;
    }
  }
  return m;
}

// d/dz (sign -1) or d/dconj(z) (sign +1).
Eigen::MatrixXcd wirtinger(const Eigen::MatrixXcd& v, const PhaseGrid& phase, double sign) {
  return 0.5 * (central_diff(v, 0, phase.dx()) + cplx(0.0, sign) * central_diff(v, 1, phase.domega()));
}

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

// Cubic Lagrange weights for fractional offset s in [0, 1) on nodes -1, 0, 1, 2.
std::array<double, 4> lagrange4(double s) {
  return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
          -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

bool interpolate(const GridField& f, cplx z, cplx& out) {
  const auto& g = f.grid();
  const double u = (z.real() + g.x_half_width()) / g.dx();
  const double w = (z.imag() + g.omega_half_width()) / g.domega();
  const double iu = std::floor(u);
  const double iw = std::floor(w);
  if (iu < 1 || iw < 1 || iu + 2 > static_cast<double>(g.nx()) - 1 ||
      iw + 2 > static_cast<double>(g.nomega()) - 1) {
    out = 0.0;
    return false;
  }
  const auto a = lagrange4(u - iu);
  const auto b = lagrange4(w - iw);
  const auto i0 = static_cast<Idx>(iu) - 1;
  const auto k0 = static_cast<Idx>(iw) - 1;
  cplx acc = 0.0;
  for (int p = 0; p < 4; ++p) {
    cplx row = 0.0;
    for (int q = 0; q < 4; ++q) row += b[static_cast<std::size_t>(q)] * f.values()(i0 + p, k0 + q);
    acc += a[static_cast<std::size_t>(p)] * row;
  }
  out = acc;
  return true;
}

}  // namespace

const char* norm_tag_name(NormTag tag) {
  return tag == NormTag::raw_F ? "raw_F" : "bargmann_weighted";
}

std::string convention_note() {
  return "V_g f(x,omega) = <f, M_omega T_x g>, z = x + i omega; "
         "B^n f(z) = exp(-i pi x omega + pi |z|^2/2) V_{h_n} f(x, -omega)";
}

FockField FockField::as(NormTag tag) const {
  if (tag == tag_) return *this;
  const bool to_weighted = tag == NormTag::bargmann_weighted;
  GridField out = field_;
  const auto& g = field_.grid();
  for (std::size_t k = 0; k < g.nomega(); ++k) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const cplx w = weight_factor(g.z(i, k));
      auto& v = out.values()(static_cast<Idx>(i), static_cast<Idx>(k));
      v = to_weighted ? v * w : v / w;
    }
  }
  return FockField(std::move(out), tag);
}

FockField bargmann_transform(const Signal& f, const PhaseGrid& phase, BargmannRoute route) {
  if (route == BargmannRoute::stft) return from_weighted(reflected_stft(f, gaussian_window(f.grid()), phase));
  const auto& grid = f.grid();
  const double c = std::pow(2.0, 0.25) * grid.step();
  Eigen::MatrixXcd v(static_cast<Idx>(phase.nx()), static_cast<Idx>(phase.nomega()));
  const auto nw = static_cast<long>(phase.nomega());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nw; ++k) {
    for (std::size_t i = 0; i < phase.nx(); ++i) {
      const cplx z = phase.z(i, static_cast<std::size_t>(k));
      cplx acc = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.node(j);
        acc += f[j] * std::exp(2.0 * kPi * t * z - kPi * t * t - 0.5 * kPi * z * z);
      }
      v(static_cast<Idx>(i), static_cast<Idx>(k)) = acc * c;
    }
  }
  return FockField(GridField(phase, std::move(v)), NormTag::raw_F);
}

FockField monomial_basis(int m, const PhaseGrid& phase) {
  if (m < 0) throw ParameterError("monomial index must be non-negative");
  const double scale = std::exp(0.5 * (m * std::log(kPi) - std::lgamma(m + 1.0)));
  return FockField(tabulate(phase, [&](cplx z) { return scale * std::pow(z, m); }), NormTag::raw_F);
}

FockField true_poly_bargmann(const Signal& f, int n, const PhaseGrid& phase) {
  return from_weighted(reflected_stft(f, hermite_function(n, f.grid()), phase));
}

MaskedFockField true_poly_bargmann_derivative_route(const Signal& f, int n, const PhaseGrid& phase) {
  if (n < 0) throw ParameterError("polyanalytic order must be non-negative");
  if (n > 4) throw CapabilityError("derivative route supports n <= 4 (stencil stability)");
  const FockField F = bargmann_transform(f, phase);
  std::vector<Eigen::MatrixXcd> derivs{F.values()};
  for (int j = 1; j <= n; ++j) derivs.push_back(wirtinger(derivs.back(), phase, -1.0));
  const double norm = std::exp(-0.5 * (n * std::log(kPi) + std::lgamma(n + 1.0)));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(F.values().rows(), F.values().cols());
  for (std::size_t k = 0; k < phase.nomega(); ++k) {
    for (std::size_t i = 0; i < phase.nx(); ++i) {
      const cplx mz = -kPi * std::conj(phase.z(i, k));
      cplx acc = 0.0;
      cplx power = 1.0;
      for (int q = 0; q <= n; ++q) {
        acc += binomial(n, q) * power * derivs[static_cast<std::size_t>(n - q)](static_cast<Idx>(i), static_cast<Idx>(k));
        power *= mz;
      }
      out(static_cast<Idx>(i), static_cast<Idx>(k)) = norm * acc;
    }
  }
  NodeMask valid = interior_mask(phase, 2 * n);
  out = valid.select(out, Eigen::MatrixXcd::Zero(out.rows(), out.cols()));
  return {FockField(GridField(phase, std::move(out)), NormTag::raw_F), std::move(valid)};
}

FockField poly_bargmann(const VectorSignal& f, const PhaseGrid& phase) {
  GridField acc = GridField::zeros(phase);
  for (std::size_t k = 0; k < f.channel_count(); ++k) {
    acc.values() += reflected_stft(f.channel(k), hermite_function(static_cast<int>(k), f.grid()), phase).values();
  }
  return from_weighted(acc);
}

FockField basis_ekm(int k, int m, const PhaseGrid& phase, const EkmTable& table) {
  table.terms(k, m);
  return FockField(tabulate(phase, [&](cplx z) { return table.evaluate(k, m, z); }), NormTag::raw_F);
}

cplx ekm_weighted(int k, int m, cplx z) {
  if (k < 0 || m < 0) throw ParameterError("e_{k,m} indices must be non-negative");
  const cplx u = std::sqrt(kPi) * z;
  const double r = std::abs(u);
  const double theta = std::arg(u);
  const double base = -0.5 * (std::lgamma(k + 1.0) + std::lgamma(m + 1.0)) - 0.5 * r * r;
  double acc = 0.0;
  for (int j = 0; j <= std::min(k, m); ++j) {
    const int power = m + k - 2 * j;
    if (r == 0.0 && power > 0) continue;
    const double log_mag = base + std::lgamma(j + 1.0) + std::log(binomial(m, j)) +
                           std::log(binomial(k, j)) + (power > 0 ? power * std::log(r) : 0.0);
    acc += ((j % 2) ? -1.0 : 1.0) * std::exp(log_mag);
  }
  if (k % 2) acc = -acc;
  return std::polar(acc, (m - k) * theta);
}

ShiftedFockField beta_shift(const FockField& F, cplx z0) {
  const FockField raw = F.as(NormTag::raw_F);
  const auto& phase = raw.grid();
  const cplx pre = std::polar(std::exp(-0.5 * kPi * std::norm(z0)), kPi * z0.real() * z0.imag());
  bool outside = false;
  GridField out = tabulate(phase, [&](cplx zeta) {
    cplx v;
    if (!interpolate(raw.field(), zeta - z0, v)) {
      outside = true;
      return cplx(0.0);
    }
    return pre * std::exp(kPi * std::conj(z0) * zeta) * v;
  });
  return {FockField(std::move(out), NormTag::raw_F), outside};
}

ShiftedFockField intertwining_shift(const FockField& F, TFShift s) {
  auto shifted = beta_shift(F, cplx(s.x, -s.omega));
  const cplx phase = std::polar(1.0, 2.0 * kPi * s.x * s.omega);
  GridField scaled(shifted.field.grid(), shifted.field.values() * phase);
  return {FockField(std::move(scaled), NormTag::raw_F), shifted.outside};
}

ReproducingValue reproducing_eval(const FockField& F, cplx z, int derivative_order) {
  if (derivative_order < 0) throw ParameterError("derivative order must be non-negative");
  const FockField raw = F.as(NormTag::raw_F);
  const auto& g = raw.grid();
  cplx acc = 0.0;
  for (std::size_t k = 0; k < g.nomega(); ++k) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const cplx w = g.z(i, k);
      const cplx wb = std::conj(w);
      acc += raw.values()(static_cast<Idx>(i), static_cast<Idx>(k)) * std::pow(wb, derivative_order) *
             std::exp(kPi * z * wb - kPi * std::norm(w));
    }
  }
  const double margin = std::min(g.x_half_width() - std::abs(z.real()), g.omega_half_width() - std::abs(z.imag()));
  return {acc * g.cell_area(), margin < 4.0};
}

MaskedFockField dbar_power(const FockField& F, int p) {
  if (p < 0) throw ParameterError("dbar power must be non-negative");
  if (p > 4) throw CapabilityError("dbar_power supports p <= 4 (stencil stability)");
  const FockField raw = F.as(NormTag::raw_F);
  Eigen::MatrixXcd v = raw.values();
  for (int q = 0; q < p; ++q) v = wirtinger(v, raw.grid(), 1.0);
  NodeMask valid = interior_mask(raw.grid(), 2 * p);
  v = valid.select(v, Eigen::MatrixXcd::Zero(v.rows(), v.cols()));
  return {FockField(GridField(raw.grid(), std::move(v)), NormTag::raw_F), std::move(valid)};
}

FockField project_true_component(const FockField& F, int k, int max_m, const EkmTable& table) {
  const FockField raw = F.as(NormTag::raw_F);
  GridField acc = GridField::zeros(raw.grid());
  for (int m = 0; m <= max_m; ++m) {
    const FockField e = basis_ekm(k, m, raw.grid(), table);
    acc.values() += fock_inner_product(raw, e) * e.values();
  }
  return FockField(std::move(acc), NormTag::raw_F);
}

cplx fock_inner_product(const FockField& F, const FockField& G) {
  // In the weighted representation the Fock pairing is the plain quadrature.
  return phase_inner_product(F.as(NormTag::bargmann_weighted).field(),
                             G.as(NormTag::bargmann_weighted).field(), PhaseWeight::none);
}

double fock_norm(const FockField& F) {
  return std::sqrt(phase_quadrature(F.as(NormTag::bargmann_weighted).field(), PhaseWeight::none));
}

double fock_norm_on(const FockField& F, const NodeMask& mask, double radius) {
  const FockField w = F.as(NormTag::bargmann_weighted);
  const auto& g = w.grid();
  double s = 0.0;
  for (std::size_t k = 0; k < g.nomega(); ++k) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (!mask(static_cast<Idx>(i), static_cast<Idx>(k)) || std::abs(g.z(i, k)) > radius) continue;
      s += std::norm(w.values()(static_cast<Idx>(i), static_cast<Idx>(k)));
    }
  }
  return std::sqrt(s * g.cell_area());
}

double max_abs_diff_on_disk(const FockField& F, const FockField& G, double radius) {
  if (!(F.grid() == G.grid())) throw ShapeError("fields on different phase grids");
  const FockField a = F.as(NormTag::raw_F);
  const FockField b = G.as(NormTag::raw_F);
  const auto& g = a.grid();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.nomega(); ++k) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (std::abs(g.z(i, k)) > radius) continue;
      worst = std::max(worst, std::abs(a.values()(static_cast<Idx>(i), static_cast<Idx>(k)) -
                                       b.values()(static_cast<Idx>(i), static_cast<Idx>(k))));
    }
  }
  return worst;
}

std::string fock_field_to_csv(const FockField& F) {
  return grid_field_to_csv(F.field(), {"convention: " + convention_note(),
                                       std::string("norm_tag: ") + norm_tag_name(F.tag())});
}

}  // namespace polyfock
