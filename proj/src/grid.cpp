#include "polyfock/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polyfock/errors.hpp"

namespace polyfock {

TimeGrid::TimeGrid(double half_width, std::size_t samples)
    : half_width_(half_width), samples_(samples), step_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ParameterError("time grid half width must be positive and finite");
  }
  if (samples < 2) throw ParameterError("time grid needs at least 2 samples");
  step_ = 2.0 * half_width / static_cast<double>(samples);
}

Eigen::VectorXd TimeGrid::nodes() const {
  Eigen::VectorXd t(static_cast<Eigen::Index>(samples_));
  for (std::size_t j = 0; j < samples_; ++j) t[static_cast<Eigen::Index>(j)] = node(j);
  return t;
}

TimeGrid make_time_grid(double half_width, std::size_t samples) {
  return TimeGrid(half_width, samples);
}

Signal::Signal(TimeGrid grid, Eigen::VectorXcd values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
    std::ostringstream msg;
    msg << "signal has " << values_.size() << " samples but grid has " << grid_.size();
    throw ShapeError(msg.str());
  }
  if (!values_.allFinite()) throw ParameterError("signal contains non-finite samples");
}

Signal Signal::zeros(const TimeGrid& grid) {
  return Signal(grid, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size())));
}

double Signal::norm() const { return std::sqrt(values_.squaredNorm() * grid_.step()); }

Signal Signal::operator+(const Signal& other) const {
  if (!(grid_ == other.grid_)) throw ShapeError("cannot add signals on different grids");
  return Signal(grid_, values_ + other.values_);
}

Signal Signal::operator*(cplx scale) const { return Signal(grid_, values_ * scale); }

VectorSignal::VectorSignal(std::vector<Signal> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw ShapeError("vector signal needs at least one channel");
  for (const auto& c : channels_) {
    if (!(c.grid() == channels_.front().grid())) {
      throw ShapeError("vector signal channels must share one grid");
    }
  }
}

VectorSignal VectorSignal::zeros(const TimeGrid& grid, std::size_t channels) {
  return VectorSignal(std::vector<Signal>(channels, Signal::zeros(grid)));
}

double VectorSignal::norm() const {
  double s = 0.0;
  for (const auto& c : channels_) s += c.values().squaredNorm() * c.grid().step();
  return std::sqrt(s);
}

PhaseGrid::PhaseGrid(double x_half_width, double omega_half_width, std::size_t nx,
                     std::size_t nomega)
    : x_half_width_(x_half_width), omega_half_width_(omega_half_width), nx_(nx), nomega_(nomega) {
  if (!(x_half_width > 0.0) || !(omega_half_width > 0.0)) {
    throw ParameterError("phase grid half widths must be positive");
  }
  if (nx < 2 || nomega < 2) throw ParameterError("phase grid needs at least 2 nodes per axis");
}

GridField::GridField(PhaseGrid grid, Eigen::MatrixXcd values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != grid_.nx() ||
      static_cast<std::size_t>(values_.cols()) != grid_.nomega()) {
    throw ShapeError("grid field dimensions do not match its phase grid");
  }
}

GridField GridField::zeros(const PhaseGrid& grid) {
  return GridField(grid, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.nx()),
                                                static_cast<Eigen::Index>(grid.nomega())));
}

cplx inner_product(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) throw ShapeError("inner product of signals on different grids");
  // dot() conjugates its first argument.
  return g.values().dot(f.values()) * f.grid().step();
}

cplx vector_inner_product(const VectorSignal& f, const VectorSignal& g) {
  if (f.channel_count() != g.channel_count()) {
    throw ShapeError("vector inner product needs equal channel counts");
  }
  cplx s = 0.0;
  for (std::size_t k = 0; k < f.channel_count(); ++k) s += inner_product(f.channel(k), g.channel(k));
  return s;
}

namespace {

double weight_at(const PhaseGrid& grid, std::size_t i, std::size_t k, PhaseWeight weight) {
  if (weight == PhaseWeight::none) return 1.0;
  return std::exp(-std::numbers::pi * std::norm(grid.z(i, k)));
}

}  // namespace

double phase_quadrature(const GridField& field, PhaseWeight weight) {
  const auto& grid = field.grid();
  double s = 0.0;
  for (std::size_t k = 0; k < grid.nomega(); ++k) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      s += std::norm(field.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) *
           weight_at(grid, i, k, weight);
    }
  }
  return s * grid.cell_area();
}

cplx phase_inner_product(const GridField& f, const GridField& g, PhaseWeight weight) {
  if (!(f.grid() == g.grid())) throw ShapeError("phase inner product of fields on different grids");
  const auto& grid = f.grid();
  cplx s = 0.0;
  for (std::size_t k = 0; k < grid.nomega(); ++k) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto kk = static_cast<Eigen::Index>(k);
      s += f.values()(ii, kk) * std::conj(g.values()(ii, kk)) * weight_at(grid, i, k, weight);
    }
  }
  return s * grid.cell_area();
}

TimeGrid default_time_grid() { return TimeGrid(8.0, 4096); }

PhaseGrid default_phase_grid() { return PhaseGrid(6.0, 6.0, 256, 256); }

}  // namespace polyfock
