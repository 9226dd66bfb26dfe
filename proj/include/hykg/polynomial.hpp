#pragma once

#include <algorithm>
#include <cmath>

namespace hykg {

/// Real polynomial c2*s^2 + c1*s + c0.
struct Poly2 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  constexpr double operator()(double s) const { return (c2 * s + c1) * s + c0; }

  /// Degree from the highest nonzero coefficient; -1 for the zero polynomial.
  constexpr int degree() const {
    if (c2 != 0.0) return 2;
    if (c1 != 0.0) return 1;
    if (c0 != 0.0) return 0;
    return -1;
  }

  /// Value of the first derivative at s.
  constexpr double derivative(double s) const { return 2.0 * c2 * s + c1; }

  double max_abs_coeff() const { return std::max({std::abs(c0), std::abs(c1), std::abs(c2)}); }

  friend constexpr Poly2 operator+(Poly2 p, Poly2 q) { return {p.c0 + q.c0, p.c1 + q.c1, p.c2 + q.c2}; }
  friend constexpr Poly2 operator-(Poly2 p, Poly2 q) { return {p.c0 - q.c0, p.c1 - q.c1, p.c2 - q.c2}; }
  friend constexpr Poly2 operator*(double k, Poly2 p) { return {k * p.c0, k * p.c1, k * p.c2}; }
  friend constexpr bool operator==(const Poly2&, const Poly2&) = default;
};

/// Square of a linear polynomial (c2 of the argument is ignored).
constexpr Poly2 square_linear(Poly2 p) { return {p.c0 * p.c0, 2.0 * p.c0 * p.c1, p.c1 * p.c1}; }

/// Discriminant c1^2 - 4 c2 c0; zero iff the quadratic is a perfect square.
constexpr double discriminant(Poly2 p) { return p.c1 * p.c1 - 4.0 * p.c2 * p.c0; }

}  // namespace hykg
