#include "polyfock/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyfock/errors.hpp"
#include "polyfock/gabor.hpp"

namespace polyfock {

namespace {

std::vector<double> parse_numbers(const std::string& spec, const std::string& body, std::size_t count) {
  std::vector<double> out;
  std::istringstream in(body);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(v)) {
      throw ConfigError("bad number '" + cell + "' in lattice spec '" + spec + "'");
    }
    out.push_back(v);
  }
  if (out.size() != count) {
    throw ConfigError("lattice spec '" + spec + "' needs " + std::to_string(count) + " numbers");
  }
  return out;
}

}  // namespace

Lattice2D::Lattice2D(const Eigen::Matrix2d& generator) : generator_(generator) {
  if (!generator.allFinite() || !(std::abs(generator.determinant()) > 1e-12)) {
    throw ParameterError("lattice generator must be finite with |det A| > 1e-12");
  }
}

Lattice2D lattice_from_matrix(const Eigen::Matrix2d& a) { return Lattice2D(a); }

Lattice2D square_lattice(double alpha) { return rect_lattice(alpha, alpha); }

Lattice2D rect_lattice(double alpha, double beta) {
  Eigen::Matrix2d a;
  a << alpha, 0.0, 0.0, beta;
  return Lattice2D(a);
}

Lattice2D lattice_with_density(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw ParameterError("lattice density must be positive");
  return square_lattice(1.0 / std::sqrt(d));
}

double density(const Lattice2D& lattice) { return lattice.density(); }

Lattice2D adjoint_lattice(const Lattice2D& lattice) {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  return Lattice2D(j * lattice.generator().transpose().inverse());
}

Lattice2D parse_lattice(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("lattice spec '" + spec + "' lacks a kind prefix");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  try {
    if (kind == "square") return square_lattice(parse_numbers(spec, body, 1)[0]);
    if (kind == "density") return lattice_with_density(parse_numbers(spec, body, 1)[0]);
    if (kind == "rect") {
      const auto v = parse_numbers(spec, body, 2);
      return rect_lattice(v[0], v[1]);
    }
    if (kind == "matrix") {
      const auto v = parse_numbers(spec, body, 4);
      Eigen::Matrix2d a;
      a << v[0], v[1], v[2], v[3];
      return lattice_from_matrix(a);
    }
  } catch (const ParameterError& e) {
    throw ConfigError("lattice spec '" + spec + "': " + e.what());
  }
  throw ConfigError("unknown lattice kind '" + kind + "' (expected square, rect, matrix, density)");
}

LatticePointSet enumerate_points(const Lattice2D& lattice, double radius, std::size_t cap) {
  if (!(radius > 0.0)) throw ParameterError("enumeration radius must be positive");
  const Eigen::Matrix2d& a = lattice.generator();
  // |A^{-1} p|_inf <= |A^{-1}|_{inf->inf} |p|_inf bounds the integer box.
  const Eigen::Matrix2d inv = a.inverse();
  const double row0 = std::abs(inv(0, 0)) + std::abs(inv(0, 1));
  const double row1 = std::abs(inv(1, 0)) + std::abs(inv(1, 1));
  const long bi = static_cast<long>(std::ceil(radius * row0)) + 1;
  const long bj = static_cast<long>(std::ceil(radius * row1)) + 1;
  LatticePointSet set;
  set.radius = radius;
  set.generator = a;
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (long i = -bi; i <= bi; ++i) {
    for (long j = -bj; j <= bj; ++j) {
      const Eigen::Vector2d p = lattice.point(i, j);
      if (p.squaredNorm() > r2) continue;
      set.points.push_back({i, j, p.x(), p.y()});
      if (set.points.size() > cap) {
        std::ostringstream msg;
        msg << "lattice enumeration at radius " << radius << " exceeds the cap of " << cap << " points";
        throw CapacityError(msg.str());
      }
    }
  }
  return set;
}

std::vector<std::pair<double, double>> point_set_coordinates(const LatticePointSet& set, double resolution) {
  std::vector<std::pair<double, double>> out;
  out.reserve(set.size());
  for (const auto& p : set.points) {
    out.emplace_back(std::round(p.x / resolution) * resolution, std::round(p.omega / resolution) * resolution);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double commutation_residual(const Lattice2D& lattice, double mu_x, double mu_omega, const Signal& g,
                            double test_radius) {
  const double gnorm = g.norm();
  if (gnorm == 0.0) return 0.0;
  const Signal mu_g = tf_shift_bandlimited(g, {mu_x, mu_omega});
  double worst = 0.0;
  for (const auto& p : enumerate_points(lattice, test_radius).points) {
    const Signal a = tf_shift_bandlimited(mu_g, {p.x, p.omega});
    const Signal b = tf_shift_bandlimited(tf_shift_bandlimited(g, {p.x, p.omega}), {mu_x, mu_omega});
    worst = std::max(worst, (a + b * cplx(-1.0)).norm() / gnorm);
  }
  return worst;
}

}  // namespace polyfock
