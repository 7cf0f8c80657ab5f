#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/grid.hpp"

namespace polyfock {

/// Lambda = A Z^2 for an invertible 2x2 generator A; points are (x, omega).
class Lattice2D {
 public:
  explicit Lattice2D(const Eigen::Matrix2d& generator);

  const Eigen::Matrix2d& generator() const { return generator_; }
  double density() const { return 1.0 / std::abs(generator_.determinant()); }
  Eigen::Vector2d point(long i, long j) const { return generator_ * Eigen::Vector2d(double(i), double(j)); }

 private:
  Eigen::Matrix2d generator_;
};

/// Throws ParameterError when |det A| <= 1e-12.
Lattice2D lattice_from_matrix(const Eigen::Matrix2d& a);
Lattice2D square_lattice(double alpha);
Lattice2D rect_lattice(double alpha, double beta);
/// Square lattice of density D (alpha = 1 / sqrt(D)).
Lattice2D lattice_with_density(double d);

double density(const Lattice2D& lattice);

/// Generator J (A^T)^{-1} with J = [[0, 1], [-1, 0]].
Lattice2D adjoint_lattice(const Lattice2D& lattice);

/// `square:<a>`, `rect:<a>,<b>`, `matrix:<a11>,<a12>,<a21>,<a22>` or `density:<D>`.
Lattice2D parse_lattice(const std::string& spec);

struct LatticePoint {
  long i = 0;  ///< integer coordinates
  long j = 0;
  double x = 0.0;
  double omega = 0.0;
};

struct LatticePointSet {
  std::vector<LatticePoint> points;
  double radius = 0.0;
  Eigen::Matrix2d generator;

  std::size_t size() const { return points.size(); }
};

inline constexpr std::size_t kDefaultPointCap = 20000;

/// All points with |point| <= radius, ordered lexicographically by (i, j).
/// Throws CapacityError when the count exceeds `cap`.
LatticePointSet enumerate_points(const Lattice2D& lattice, double radius,
                                 std::size_t cap = kDefaultPointCap);

/// Same point set as a sorted list of rounded coordinates, for set comparison.
std::vector<std::pair<double, double>> point_set_coordinates(const LatticePointSet& set,
                                                             double resolution = 1e-9);

/// max over z in Lambda, |z| <= test_radius, of |pi_z pi_mu g - pi_mu pi_z g| / |g|.
/// Shifts are applied with sub-step exactness (tf_shift_bandlimited).
double commutation_residual(const Lattice2D& lattice, double mu_x, double mu_omega,
                            const Signal& g, double test_radius = 3.0);

}  // namespace polyfock
