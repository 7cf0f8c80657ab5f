#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polyfock {

using cplx = std::complex<double>;

/// Uniform grid on [-T, T) with N nodes t_j = -T + j * (2T / N).
class TimeGrid {
 public:
  TimeGrid(double half_width, std::size_t samples);

  double half_width() const { return half_width_; }
  std::size_t size() const { return samples_; }
  double step() const { return step_; }
  double node(std::size_t j) const { return -half_width_ + static_cast<double>(j) * step_; }
  Eigen::VectorXd nodes() const;

  bool operator==(const TimeGrid& other) const {
    return half_width_ == other.half_width_ && samples_ == other.samples_;
  }

 private:
  double half_width_;
  std::size_t samples_;
  double step_;
};

TimeGrid make_time_grid(double half_width, std::size_t samples);

/// Complex samples on a TimeGrid; the discrete stand-in for an L2(R) function.
class Signal {
 public:
  Signal(TimeGrid grid, Eigen::VectorXcd values);
  static Signal zeros(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return values_; }
  cplx operator[](std::size_t j) const { return values_[static_cast<Eigen::Index>(j)]; }
  double norm() const;

  Signal operator+(const Signal& other) const;
  Signal operator*(cplx scale) const;

 private:
  TimeGrid grid_;
  Eigen::VectorXcd values_;
};

/// Ordered tuple of channels on one shared grid (an element of L2(R, C^n)).
class VectorSignal {
 public:
  explicit VectorSignal(std::vector<Signal> channels);
  static VectorSignal zeros(const TimeGrid& grid, std::size_t channels);

  const TimeGrid& grid() const { return channels_.front().grid(); }
  std::size_t channel_count() const { return channels_.size(); }
  const Signal& channel(std::size_t k) const { return channels_.at(k); }
  const std::vector<Signal>& channels() const { return channels_; }
  double norm() const;

 private:
  std::vector<Signal> channels_;
};

/// Rectangular grid over the phase plane: x_i = -X + i*dx, omega_k = -W + k*dw.
class PhaseGrid {
 public:
  PhaseGrid(double x_half_width, double omega_half_width, std::size_t nx, std::size_t nomega);

  double x_half_width() const { return x_half_width_; }
  double omega_half_width() const { return omega_half_width_; }
  std::size_t nx() const { return nx_; }
  std::size_t nomega() const { return nomega_; }
  double dx() const { return 2.0 * x_half_width_ / static_cast<double>(nx_); }
  double domega() const { return 2.0 * omega_half_width_ / static_cast<double>(nomega_); }
  double cell_area() const { return dx() * domega(); }
  double x_node(std::size_t i) const { return -x_half_width_ + static_cast<double>(i) * dx(); }
  double omega_node(std::size_t k) const {
    return -omega_half_width_ + static_cast<double>(k) * domega();
  }
  cplx z(std::size_t i, std::size_t k) const { return {x_node(i), omega_node(k)}; }

  bool operator==(const PhaseGrid& other) const {
    return x_half_width_ == other.x_half_width_ && omega_half_width_ == other.omega_half_width_ &&
           nx_ == other.nx_ && nomega_ == other.nomega_;
  }

 private:
  double x_half_width_;
  double omega_half_width_;
  std::size_t nx_;
  std::size_t nomega_;
};

/// Complex values on a PhaseGrid, stored nx x nomega.
class GridField {
 public:
  GridField(PhaseGrid grid, Eigen::MatrixXcd values);
  static GridField zeros(const PhaseGrid& grid);

  const PhaseGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }
  Eigen::MatrixXcd& values() { return values_; }

 private:
  PhaseGrid grid_;
  Eigen::MatrixXcd values_;
};

/// Riemann-sum L2 pairing  sum_j f_j conj(g_j) * step.
cplx inner_product(const Signal& f, const Signal& g);

/// Channel-wise sum of inner products.
cplx vector_inner_product(const VectorSignal& f, const VectorSignal& g);

enum class PhaseWeight { none, gaussian };

/// Cell-area weighted sum of |F|^2, optionally against exp(-pi |z|^2).
double phase_quadrature(const GridField& field, PhaseWeight weight);

/// Cell-area weighted sum of F conj(G) with the chosen weight.
cplx phase_inner_product(const GridField& f, const GridField& g, PhaseWeight weight);

/// Default desk-scale grids.
TimeGrid default_time_grid();
PhaseGrid default_phase_grid();

}  // namespace polyfock
