#include "polyfock/hermite.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "polyfock/errors.hpp"
#include "polyfock/gabor.hpp"

namespace polyfock {

namespace {

// h_{n+1}(t) = a_n t h_n(t) - b_n h_{n-1}(t), h_0 = 2^{1/4} exp(-pi t^2).
// Values obtained by symbolic differentiation of the Rodrigues formula
// (tools/derive_hermite_recurrence.py); closed forms a_n = 2 sqrt(pi/(n+1)),
// b_n = sqrt(n/(n+1)) take over beyond the table.
constexpr std::array<double, 12> kRecurrenceA = {
    3.5449077018110322, 2.5066282746310007, 2.046653415892977,  1.7724538509055161,
    1.5853309190424043, 1.4472025091165353, 1.3398491713813576, 1.2533141373155003,
    1.1816359006036774, 1.1209982432795857, 1.0688298875771143, 1.0233267079464885};
constexpr std::array<double, 12> kRecurrenceB = {
    0.0,                0.70710678118654757, 0.81649658092772603, 0.8660254037844386,
    0.89442719099991586, 0.9128709291752769, 0.92582009977255142, 0.93541434669348533,
    0.94280904158206336, 0.94868329805051377, 0.95346258924559235, 0.9574271077563381};

double coeff_a(int n) {
  return n < static_cast<int>(kRecurrenceA.size())
             ? kRecurrenceA[static_cast<std::size_t>(n)]
             : 2.0 * std::sqrt(std::numbers::pi / (n + 1.0));
}

double coeff_b(int n) {
  return n < static_cast<int>(kRecurrenceB.size()) ? kRecurrenceB[static_cast<std::size_t>(n)]
                                                   : std::sqrt(n / (n + 1.0));
}

const double kGaussNorm = std::pow(2.0, 0.25);

void check_order(int n, int max_order) {
  if (n < 0 || n > max_order) {
    throw ParameterError("Hermite order " + std::to_string(n) + " outside [0, " +
                         std::to_string(max_order) + "]");
  }
}

}  // namespace

Signal gaussian_window(const TimeGrid& grid) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    v[static_cast<Eigen::Index>(j)] = kGaussNorm * std::exp(-std::numbers::pi * t * t);
  }
  return Signal(grid, std::move(v));
}

Eigen::MatrixXd hermite_table(int max_order, std::span<const double> t) {
  if (max_order < 0) throw ParameterError("negative Hermite order");
  const auto cols = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd h(max_order + 1, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double x = t[static_cast<std::size_t>(j)];
    h(0, j) = kGaussNorm * std::exp(-std::numbers::pi * x * x);
  }
  if (max_order >= 1) h.row(1) = coeff_a(0) * h.row(0).cwiseProduct(
                                     Eigen::Map<const Eigen::RowVectorXd>(t.data(), cols));
  for (int n = 1; n < max_order; ++n) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      h(n + 1, j) = coeff_a(n) * t[static_cast<std::size_t>(j)] * h(n, j) - coeff_b(n) * h(n - 1, j);
    }
  }
  return h;
}

double hermite_value(int n, double t) {
  if (n < 0) throw ParameterError("negative Hermite order");
  double prev = 0.0;
  double cur = kGaussNorm * std::exp(-std::numbers::pi * t * t);
  for (int k = 0; k < n; ++k) {
    const double next = coeff_a(k) * t * cur - coeff_b(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Signal hermite_function(int n, const TimeGrid& grid, int max_order) {
  check_order(n, max_order);
  const Eigen::VectorXd t = grid.nodes();
  const Eigen::MatrixXd h = hermite_table(n, std::span<const double>(t.data(), grid.size()));
  return Signal(grid, h.row(n).transpose().cast<cplx>());
}

double s0_norm_formula(int n) {
  if (n < 0) throw ParameterError("negative Hermite order");
  return std::exp((n / 2.0 + 1.0) * std::log(2.0) + std::lgamma(n / 2.0 + 1.0) -
                  0.5 * std::lgamma(n + 1.0));
}

double s0_norm_numeric(int n, const PhaseGrid& phase, const TimeGrid& time) {
  const Signal h = hermite_function(n, time, std::max(n, kDefaultMaxHermiteOrder));
  const GridField v = stft(h, gaussian_window(time), phase);
  return v.values().cwiseAbs().sum() * phase.cell_area();
}

}  // namespace polyfock
