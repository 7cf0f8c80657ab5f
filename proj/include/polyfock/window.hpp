#pragma once

#include <optional>
#include <string>

#include "polyfock/grid.hpp"
#include "polyfock/hermite.hpp"

namespace polyfock {

/// A Gabor window: an analytic Hermite/Gaussian function or a sampled signal.
///
/// Analytic windows are evaluated exactly at shifted nodes, so arbitrary
/// lattice shifts carry no snapping error. Sampled windows only exist on
/// their own grid and are shifted by whole steps (see tf_shift).
class Window {
 public:
  static Window gaussian();
  static Window hermite(int n, int max_order = kDefaultMaxHermiteOrder);
  static Window sampled(Signal samples, std::string label);

  /// `gaussian`, `hermite:<n>` or `csv:<path>` (columns t,re,im).
  static Window parse(const std::string& spec, int max_order = kDefaultMaxHermiteOrder);

  const std::string& spec() const { return spec_; }
  bool analytic() const { return !samples_.has_value(); }
  int hermite_order() const { return order_; }

  /// Samples of the window itself on `grid`.
  Signal on(const TimeGrid& grid) const;

  /// Samples of M_omega T_x g on `grid`, zero-filled outside the grid.
  Eigen::VectorXcd shifted(const TimeGrid& grid, double x, double omega) const;

 private:
  Window(std::string spec, int order, std::optional<Signal> samples)
      : spec_(std::move(spec)), order_(order), samples_(std::move(samples)) {}

  std::string spec_;
  int order_ = 0;
  std::optional<Signal> samples_;
};

}  // namespace polyfock
