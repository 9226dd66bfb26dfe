#pragma once

// Closed-form radial functions: the (D, F) exponent pair, Jacobi and Rodrigues
// polynomials, assembly of R(r), normalisation and node counting.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "hykg/error.hpp"
#include "hykg/hylleraas.hpp"
#include "hykg/level.hpp"
#include "hykg/quadrature.hpp"

namespace hykg::wave {

using model::HylleraasParams;

/// Which grouping of the D exponent to use.
enum class DReading {
  Literal,    // (1 - (muJ c + nuJ)) / (alpha1 (c - a))
  Symmetric,  // -(muJ c + nuJ) / (2 alpha1 (c - a))
};

/// Which base carries which half-exponent.
enum class Placement {
  DOnA,  // (s+a)^{D/2} (s+c)^{F/2}
  FOnA,  // (s+a)^{F/2} (s+c)^{D/2}
};

constexpr std::string_view to_string(DReading r) { return r == DReading::Literal ? "literal" : "symmetric"; }
constexpr std::string_view to_string(Placement p) { return p == Placement::DOnA ? "D_on_a" : "F_on_a"; }

struct WavefactorParams {
  double D = 0.0;            // literal reading
  double D_symmetric = 0.0;  // symmetric reading
  double F = 0.0;
  double muJ = 0.0;
  double nuJ = 0.0;

  double d_exponent(DReading r) const { return r == DReading::Literal ? D : D_symmetric; }
};

/// Exponents at energy E. Throws DegenerateAC (a = c) or NotRepresentable (negative radicand).
inline WavefactorParams exponents_DF(const HylleraasParams& p, double E) {
  const model::AppendixConstants k = model::appendix_constants(p, E);
  const double span = k.c - k.a;
  if (std::abs(span) <= 1e-14 * std::max({1.0, std::abs(k.a), std::abs(k.c)})) {
    throw Error(Errc::DegenerateAC, "a = c");
  }
  if (k.delta2 < 0.0 || k.V2 < 0.0) throw Error(Errc::NotRepresentable, "negative radicand");
  const double shifted = std::sqrt(k.delta2) * (k.eps2 + k.A);
  const double root_ab = std::sqrt(k.V2);
  if (shifted + root_ab < 0.0 || shifted - root_ab < 0.0) {
    throw Error(Errc::NotRepresentable, "negative radicand");
  }
  WavefactorParams w;
  w.muJ = std::sqrt(shifted + root_ab);
  w.nuJ = std::sqrt(shifted - root_ab);
  w.D = (1.0 - (w.muJ * k.c + w.nuJ)) / (k.alpha1 * span);
  w.D_symmetric = -(w.muJ * k.c + w.nuJ) / (2.0 * k.alpha1 * span);
  w.F = (w.muJ * k.a + w.nuJ) / (2.0 * k.alpha1 * span);
  return w;
}

/// alpha, beta > -1.
inline bool is_classical(double alpha, double beta) { return alpha > -1.0 && beta > -1.0; }

/// Generalised binomial z (z-1) ... (z-m+1) / m!.
inline double binom(double z, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (z - i) / (i + 1);
  return r;
}

/// Falling factorial z (z-1) ... (z-m+1).
inline double falling(double z, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= z - i;
  return r;
}

/// Jacobi P_n^{(alpha, beta)}(x) as an explicit sum; valid for every real alpha, beta.
inline double jacobi_sum(int n, double alpha, double beta, double x) {
  const double hm = 0.5 * (x - 1.0);
  const double hp = 0.5 * (x + 1.0);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    s += binom(n + alpha, n - k) * binom(n + beta, k) * std::pow(hm, k) * std::pow(hp, n - k);
  }
  return s;
}

/// Jacobi P_n^{(alpha, beta)}(x) by the three-term recurrence in n.
inline double jacobi_P(int n, double alpha, double beta, double x) {
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  double p0 = 1.0;
  double p1 = 0.5 * ((ab + 2.0) * x + (alpha - beta));
  for (int k = 2; k <= n; ++k) {
    const double t = 2.0 * k + ab;
    const double den = 2.0 * k * (k + ab) * (t - 2.0);
    if (den == 0.0) return jacobi_sum(n, alpha, beta, x);
    const double c1 = (t - 1.0) * (t * (t - 2.0) * x + alpha * alpha - beta * beta);
    const double c2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * t;
    const double p2 = (c1 * p1 - c2 * p0) / den;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// (s+a)^{-D} (s+c)^{-F} d^n/ds^n [(s+a)^{n+D} (s+c)^{n+F}] via the Leibniz sum.
inline double rodrigues_chi(int n, double D, double F, double a, double c, double s) {
  if (n < 0 || n > 12) throw Error(Errc::InvalidArgument, "rodrigues_chi needs 0 <= n <= 12");
  const double pa = s + a;
  const double pc = s + c;
  if (!(pa > 0.0) || !(pc > 0.0)) throw Error(Errc::DomainError, "s+a and s+c must be positive");
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binom(n, k) * falling(n + D, k) * falling(n + F, n - k) * std::pow(pa, n - k) * std::pow(pc, k);
  }
  return sum;
}

/// Affine map sending s = -a to x = 1 and s = -c to x = -1.
inline double jacobi_argument(double s, double a, double c) {
  if (c == a) throw Error(Errc::DegenerateAC, "a = c");
  return (2.0 * s + a + c) / (c - a);
}

/// chi_n(s) = n! (c - a)^n P_n^{(D,F)}(x(s)).
inline double rodrigues_jacobi_constant(int n, double a, double c) {
  return falling(n, n) * std::pow(c - a, n);
}

/// chi_n through the Leibniz sum for n <= 12, through the Jacobi recurrence beyond.
inline double chi(int n, double D, double F, double a, double c, double s) {
  if (n <= 12) return rodrigues_chi(n, D, F, a, c, s);
  return rodrigues_jacobi_constant(n, a, c) * jacobi_P(n, D, F, jacobi_argument(s, a, c));
}

struct Variant {
  DReading reading = DReading::Literal;
  Placement placement = Placement::DOnA;
};

inline constexpr Variant kAllVariants[] = {{DReading::Literal, Placement::DOnA},
                                           {DReading::Literal, Placement::FOnA},
                                           {DReading::Symmetric, Placement::DOnA},
                                           {DReading::Symmetric, Placement::FOnA}};

/// R(r) = (s+a)^{e_a} (s+c)^{e_c} chi_n(s) with s = s(r); unnormalised.
inline double radial_R(const HylleraasParams& p, const WavefactorParams& w, int n, double r,
                       Variant v = {}) {
  const model::ABC abc = model::derive_abc(p);
  const double s = model::s_of_r(r, p);
  const double D = w.d_exponent(v.reading);
  const double ea = v.placement == Placement::DOnA ? 0.5 * D : 0.5 * w.F;
  const double ec = v.placement == Placement::DOnA ? 0.5 * w.F : 0.5 * D;
  const double pa = s + abc.a;
  const double pc = s + abc.c;
  if (!(pa > 0.0) || !(pc > 0.0)) throw Error(Errc::DomainError, "s+a and s+c must be positive");
  return std::exp(ea * std::log(pa) + ec * std::log(pc)) * chi(n, D, w.F, abc.a, abc.c, s);
}

struct RadialFunction {
  EnergyLevel level;
  std::vector<double> grid;    // uniform, strictly increasing
  std::vector<double> values;
  double norm_constant = 1.0;
  int node_count = 0;

  double h() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

inline RadialFunction sample(const EnergyLevel& level, const std::vector<double>& grid,
                             const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.size() < 2) {
    throw Error(Errc::InvalidArgument, "grid and values must match and hold >= 2 samples");
  }
  RadialFunction rf;
  rf.level = level;
  rf.grid = grid;
  rf.values = values;
  rf.node_count = count_sign_changes(values);
  return rf;
}

/// True when the outer end has decayed below 1e-8 of the peak.
inline bool tail_converged(const RadialFunction& rf) {
  double peak = 0.0;
  for (double v : rf.values) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0) || !std::isfinite(peak)) return false;
  return std::abs(rf.values.back()) < 1e-8 * peak;
}

/// Rescales to unit integral of R^2 (composite Simpson). The left end is the origin
/// boundary, so only the outer tail is checked. Throws TailNotConverged.
inline RadialFunction normalize(const RadialFunction& rf) {
  if (!tail_converged(rf)) throw Error(Errc::TailNotConverged, "R has not decayed at r_max");
  std::vector<double> sq(rf.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = rf.values[i] * rf.values[i];
  const double integral = simpson_uniform(sq, rf.h());
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw Error(Errc::TailNotConverged, "norm integral not finite and positive");
  }
  RadialFunction out = rf;
  out.norm_constant = 1.0 / std::sqrt(integral);
  for (double& v : out.values) v *= out.norm_constant;
  out.node_count = count_sign_changes(out.values);
  return out;
}

inline int count_nodes(const RadialFunction& rf) { return count_sign_changes(rf.values); }

/// |<u, v>| / (|u| |v|) on a shared uniform grid.
inline double overlap(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw Error(Errc::InvalidArgument, "overlap needs equal lengths");
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (!(uu > 0.0) || !(vv > 0.0)) return 0.0;
  return std::abs(uv) / std::sqrt(uu * vv);
}

/// Relative L2 residual of -u'' + (W - Ebar) u on the interior of a uniform grid:
/// |res| / (|u''| + |(W - Ebar) u|), second differences for u''.
inline double ode_residual(const std::vector<double>& u, const std::vector<double>& W, double ebar, double h) {
  if (u.size() != W.size() || u.size() < 3) throw Error(Errc::InvalidArgument, "ode_residual size mismatch");
  double res = 0.0, kin = 0.0, pot = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    const double wp = (W[i] - ebar) * u[i];
    res += (wp - d2) * (wp - d2);
    kin += d2 * d2;
    pot += wp * wp;
  }
  const double scale = std::sqrt(kin) + std::sqrt(pot);
  if (!(scale > 0.0)) return 0.0;
  return std::sqrt(res) / scale;
}

}  // namespace hykg::wave
