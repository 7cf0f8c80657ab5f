#include "polyfock/random.hpp"

#include <cmath>
#include <numbers>

namespace polyfock {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(fnv1a(name) + index)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXcd complex_gaussian(std::mt19937_64& rng, Eigen::Index size) {
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-std::log(u1));  // |v|^2 ~ Exp(1)
    v[i] = std::polar(r, 2.0 * std::numbers::pi * u2);
  }
  return v;
}

}  // namespace polyfock

#include "polyfock/hermite.hpp"

namespace polyfock {

Signal random_hermite_signal(const TimeGrid& grid, int max_order, std::mt19937_64& rng) {
  const Eigen::VectorXd t = grid.nodes();
  const Eigen::MatrixXd h =
      hermite_table(max_order, std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
  const Eigen::VectorXcd c = complex_gaussian(rng, max_order + 1).normalized();
  return Signal(grid, h.transpose().cast<std::complex<double>>() * c);
}

}  // namespace polyfock
