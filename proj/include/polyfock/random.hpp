#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace polyfock {

/// Named, splittable streams derived from one 64-bit seed:
/// stream(seed, name, index) seeds mt19937_64 with
/// splitmix64(seed ^ splitmix64(fnv1a(name) + index)).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);
std::mt19937_64 stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

/// Standard complex Gaussian vector: real and imaginary parts N(0, 1/2), so E|v_i|^2 = 1.
/// Uses an explicit Box-Muller transform so values do not depend on the library's
/// distribution implementation.
Eigen::VectorXcd complex_gaussian(std::mt19937_64& rng, Eigen::Index size);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);

}  // namespace polyfock

#include "polyfock/grid.hpp"

namespace polyfock {

/// Unit-norm signal with complex Gaussian coefficients on h_0 .. h_max_order.
Signal random_hermite_signal(const TimeGrid& grid, int max_order, std::mt19937_64& rng);

}  // namespace polyfock
