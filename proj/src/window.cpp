#include "polyfock/window.hpp"

#include <cmath>
#include <numbers>

#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/gabor.hpp"

namespace polyfock {

Window Window::gaussian() { return Window("gaussian", 0, std::nullopt); }

Window Window::hermite(int n, int max_order) {
  if (n < 0 || n > max_order) {
    throw ParameterError("Hermite window order " + std::to_string(n) + " outside [0, " +
                         std::to_string(max_order) + "]");
  }
  return Window("hermite:" + std::to_string(n), n, std::nullopt);
}

Window Window::sampled(Signal samples, std::string label) {
  return Window(std::move(label), -1, std::move(samples));
}

Window Window::parse(const std::string& spec, int max_order) {
  if (spec == "gaussian") return gaussian();
  if (spec.rfind("hermite:", 0) == 0) {
    const std::string arg = spec.substr(8);
    std::size_t used = 0;
    int n = -1;
    try {
      n = std::stoi(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw ConfigError("bad Hermite window spec '" + spec + "'");
    return hermite(n, max_order);
  }
  if (spec.rfind("csv:", 0) == 0) return sampled(read_signal_csv(spec.substr(4)), spec);
  throw ConfigError("unknown window spec '" + spec + "' (expected gaussian, hermite:<n>, csv:<path>)");
}

Signal Window::on(const TimeGrid& grid) const {
  if (samples_) {
    if (!(samples_->grid() == grid)) throw ShapeError("sampled window '" + spec_ + "' lives on another grid");
    return *samples_;
  }
  return Signal(grid, shifted(grid, 0.0, 0.0));
}

Eigen::VectorXcd Window::shifted(const TimeGrid& grid, double x, double omega) const {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXcd out(n);
  if (samples_) {
    if (!(samples_->grid() == grid)) throw ShapeError("sampled window '" + spec_ + "' lives on another grid");
    return tf_shift(*samples_, {x, omega}).values();
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = grid.node(static_cast<std::size_t>(j));
    out[j] = hermite_value(order_, t - x) * std::polar(1.0, two_pi * omega * t);
  }
  return out;
}

}  // namespace polyfock
