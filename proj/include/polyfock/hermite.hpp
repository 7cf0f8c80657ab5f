#pragma once

#include <span>

#include "polyfock/grid.hpp"

namespace polyfock {

/// Default cap on Hermite orders requested through the public window API.
inline constexpr int kDefaultMaxHermiteOrder = 12;

/// phi(t) = 2^{1/4} exp(-pi t^2), the L2-normalized Gaussian.
Signal gaussian_window(const TimeGrid& grid);

/// Hermite function h_n under the exp(-pi t^2) convention, sampled on `grid`.
/// Throws ParameterError when n is negative or exceeds `max_order`.
Signal hermite_function(int n, const TimeGrid& grid, int max_order = kDefaultMaxHermiteOrder);

/// h_0 .. h_max_order at the given abscissae; row n holds h_n.
Eigen::MatrixXd hermite_table(int max_order, std::span<const double> t);

double hermite_value(int n, double t);

/// Closed form 2^{n/2+1} Gamma(n/2+1) / sqrt(n!) of the S0 norm of h_n.
double s0_norm_formula(int n);

/// Phase-plane quadrature of |V_phi h_n| over `phase`.
double s0_norm_numeric(int n, const PhaseGrid& phase, const TimeGrid& time);

}  // namespace polyfock
