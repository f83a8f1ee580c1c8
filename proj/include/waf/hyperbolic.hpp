#pragma once

#include <cmath>
#include <complex>

// Poincare disk primitives used by the polygon builder. All distances are in
// the curvature -1 metric.

namespace waf::hyp {

using Complex = std::complex<double>;

inline double dist(const Complex& z, const Complex& w) {
  const double num = std::norm(z - w);
  const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
  return std::acosh(1.0 + 2.0 * num / den);
}

// Mobius transform of the disk sending a to 0: z -> (z - a) / (1 - conj(a) z).
inline Complex mobius_to_origin(const Complex& a, const Complex& z) {
  return (z - a) / (1.0 - std::conj(a) * z);
}

inline Complex mobius_from_origin(const Complex& a, const Complex& z) {
  return (z + a) / (1.0 + std::conj(a) * z);
}

// Hyperbolic midpoint of the geodesic segment [z, w].
inline Complex midpoint(const Complex& z, const Complex& w) {
  const Complex w1 = mobius_to_origin(z, w);
  const double r = std::abs(w1);
  if (r == 0.0) return z;
  const double rm = std::tanh(0.5 * std::atanh(r));
  return mobius_from_origin(z, w1 * (rm / r));
}

// Point at hyperbolic polar coordinates (r, theta) seen from the origin.
inline Complex from_polar(double r, double theta) {
  const double s = std::tanh(0.5 * r);
  return Complex(s * std::cos(theta), s * std::sin(theta));
}

// Circumradius R of the regular n-gon with interior angle 2*beta, from the
// right triangle (center, corner, edge midpoint): cosh(R) = cot(pi/n) cot(beta).
inline double regular_polygon_circumradius(int n, double interior_angle) {
  const double beta = 0.5 * interior_angle;
  return std::acosh(1.0 / (std::tan(M_PI / n) * std::tan(beta)));
}

// The 4g-gon whose angles sum to 2*pi (interior angle pi/(2g)), so that the
// corner classes glue to a smooth point: cosh(R) = cot^2(pi/(4g)).
inline double regular_polygon_circumradius_4g(int genus) {
  const int n = 4 * genus;
  return regular_polygon_circumradius(n, M_PI / (2.0 * genus));
}

// Apothem (center to edge midpoint) of the same polygon:
// cosh(apothem) = cos(beta) / sin(pi/n) with beta = pi/(4g) = pi/n.
inline double regular_polygon_apothem_4g(int genus) {
  const int n = 4 * genus;
  const double beta = M_PI / (4.0 * genus);
  return std::acosh(std::cos(beta) / std::sin(M_PI / n));
}

}  // namespace waf::hyp
