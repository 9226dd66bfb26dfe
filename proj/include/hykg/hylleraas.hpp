#pragma once

// Hylleraas potential model: parameters, the exponential change of variable,
// the potential itself and the closed-form constant cascade at a trial energy.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hykg/error.hpp"

namespace hykg::model {

/// Selects s = exp(+2(1+K)wr) or the decaying exp(-2(1+K)wr).
enum class SSign { PositiveExponent, NegativeExponent };

constexpr std::string_view to_string(SSign s) {
  return s == SSign::PositiveExponent ? "positive" : "negative";
}

struct ABC {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct HylleraasParams {
  double K = 2.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double omega = 0.25;
  double D_e = 1.0;
  double M = 1.0;
  double mu = 1.0;  // auxiliary factor of the transformed equation, no physical reading
  SSign s_sign = SSign::PositiveExponent;

  /// The reference parameter set used throughout the test suites.
  static HylleraasParams reference() {
    HylleraasParams p;
    p.s_sign = SSign::NegativeExponent;
    return p;
  }

  /// Exponent scale (1+K)w of s(r).
  double kappa() const { return (1.0 + K) * omega; }
};

/// a, b, c from the shape parameters.
inline ABC derive_abc(double K, double k1, double k2) {
  const double da = 1.0 + k2;
  const double db = 1.0 + k1 + k2;
  const double dc = 1.0 + k1;
  if (da == 0.0 || db == 0.0 || dc == 0.0) {
    throw Error(Errc::DegenerateParams, "1+k1, 1+k2 and 1+k1+k2 must be nonzero");
  }
  ABC r{(K - k2) / da, (K - k1 + k2) / db, (K - k1) / dc};
  if (1.0 + r.a == 0.0 || 1.0 + r.b == 0.0 || 1.0 + r.c == 0.0) {
    throw Error(Errc::DegenerateParams, "1+a, 1+b and 1+c must be nonzero");
  }
  return r;
}

inline ABC derive_abc(const HylleraasParams& p) { return derive_abc(p.K, p.k1, p.k2); }

/// Throws DegenerateParams unless the parameter set satisfies the model invariants.
inline void validate(const HylleraasParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!(finite(p.K) && finite(p.k1) && finite(p.k2) && finite(p.omega) && finite(p.D_e) &&
        finite(p.M) && finite(p.mu))) {
    throw Error(Errc::DegenerateParams, "non-finite parameter");
  }
  if (!(p.omega > 0.0)) throw Error(Errc::DegenerateParams, "omega must be > 0");
  if (!(p.D_e >= 0.0)) throw Error(Errc::DegenerateParams, "D_e must be >= 0");
  if (!(p.M > 0.0)) throw Error(Errc::DegenerateParams, "M must be > 0");
  if (!(p.mu > 0.0)) throw Error(Errc::DegenerateParams, "mu must be > 0");
  if (1.0 + p.K == 0.0) throw Error(Errc::DegenerateParams, "1+K must be nonzero");
  (void)derive_abc(p);
}

/// s(r) = exp(+-2(1+K) w r). Overflow is reported as OutOfRange.
inline double s_of_r(double r, double K, double omega, SSign sign) {
  if (!(r >= 0.0)) throw Error(Errc::DomainError, "s_of_r requires r >= 0");
  const double x = (sign == SSign::PositiveExponent ? 2.0 : -2.0) * (1.0 + K) * omega * r;
  if (x > std::log(std::numeric_limits<double>::max())) {
    throw Error(Errc::OutOfRange, "s(r) overflows at r = " + std::to_string(r));
  }
  return std::exp(x);
}

inline double s_of_r(double r, const HylleraasParams& p) { return s_of_r(r, p.K, p.omega, p.s_sign); }

/// V as a function of s, shared by potential_V and the derivative.
inline double potential_of_s(double s, const HylleraasParams& p, const ABC& abc) {
  const auto [a, b, c] = abc;
  const double den = (s + a) * (s + c) * (1.0 + b);
  if (den == 0.0) throw Error(Errc::SingularPotential, "(s+a)(s+c)(1+b) vanishes");
  const double v = p.D_e * (1.0 - (1.0 + a) * (1.0 + c) * (s + b) / den);
  if (!std::isfinite(v)) throw Error(Errc::OutOfRange, "potential not finite");
  return v;
}

inline double potential_V(double r, const HylleraasParams& p) {
  return potential_of_s(s_of_r(r, p), p, derive_abc(p));
}

/// dV/dr, analytic.
inline double potential_dVdr(double r, const HylleraasParams& p) {
  const auto [a, b, c] = derive_abc(p);
  const double s = s_of_r(r, p);
  const double pa = s + a;
  const double pc = s + c;
  if (pa == 0.0 || pc == 0.0) throw Error(Errc::SingularPotential, "(s+a)(s+c) vanishes");
  // d/ds (s+b)/((s+a)(s+c))
  const double dg = (pa * pc - (s + b) * (pa + pc)) / (pa * pa * pc * pc);
  const double ds_dr = (p.s_sign == SSign::PositiveExponent ? 2.0 : -2.0) * p.kappa() * s;
  return -p.D_e * (1.0 + a) * (1.0 + c) / (1.0 + b) * dg * ds_dr;
}

/// Every constant of the transformed equation and the closed-form cascade at a trial energy E.
struct AppendixConstants {
  double a = 0, b = 0, c = 0;
  double Ebar = 0;  // E^2 - M^2
  double Vbar = 0;  // 2 D_e (E + M)
  double eps2 = 0;
  double beta2 = 0;        // eps2 - betap2
  double gamma2 = 0;       // eps2 - gammap2
  double betap2 = 0;
  double gammap2 = 0;
  double beta2_direct = 0;   // direct formula, audit only
  double gamma2_direct = 0;  // direct formula, audit only
  double alpha1 = 0, alpha2 = 0, alpha3 = 0;
  double xi1 = 0, xi2 = 0;
  double Lam1 = 0, Lam2 = 0, Lam3 = 0, Lam4 = 0;
  double delta2 = 0;    // Lam3^2 + 12 Lam1
  double delta_A9 = 0;  // explicit closed-form expression
  double A = 0, B = 0;
  double U2 = 0;  // delta2 (eps2 + A)^2
  double V2 = 0;  // A^2 - B
};

inline AppendixConstants appendix_constants(const HylleraasParams& p, double E) {
  const ABC abc = derive_abc(p);
  const auto [a, b, c] = abc;
  AppendixConstants k;
  k.a = a;
  k.b = b;
  k.c = c;
  const double scale = p.kappa() * p.kappa();
  k.Ebar = E * E - p.M * p.M;
  k.Vbar = 2.0 * p.D_e * (E + p.M);
  k.eps2 = -2.0 * p.mu * (1.0 + b) * k.Ebar / scale;
  k.betap2 = (1.0 + a) * (1.0 + c) * k.Vbar / scale;
  k.gammap2 = (1.0 + b) * (1.0 + a) * (1.0 + c) * k.Vbar / scale;
  k.beta2 = k.eps2 - k.betap2;
  k.gamma2 = k.eps2 - k.gammap2;
  k.beta2_direct = (2.0 * p.mu * (1.0 + b) * (a + c) * E - (1.0 + a) * (1.0 + c) * k.Vbar) / scale;
  k.gamma2_direct = (2.0 * (1.0 + b) * E - (1.0 + a) * (1.0 + c) * k.Vbar) / scale;

  k.alpha1 = 1.0 + b;
  k.alpha2 = 2.0 * (1.0 + b) * (a + c);
  k.alpha3 = 2.0 * a * c * (1.0 + b);
  const double al1 = k.alpha1;
  k.xi1 = 2.0 * a * al1 * al1 - k.betap2;
  k.xi2 = al1 * al1 * a * a - k.gammap2;

  k.Lam1 = k.alpha2 * k.alpha2 - 8.0 * al1 * k.alpha3;
  k.Lam2 = 2.0 * al1 * k.xi1 - 4.0 * al1 * al1 * k.alpha3 - 8.0 * al1 * k.xi2;
  k.Lam3 = 2.0 * k.alpha2 - 4.0 * k.alpha3 - 8.0 * al1;
  k.Lam4 = k.xi1 * k.xi1 - 4.0 * al1 * al1 * k.xi2;

  k.delta2 = k.Lam3 * k.Lam3 + 12.0 * k.Lam1;
  k.delta_A9 = 64.0 * (1.0 + b) * (1.0 + b) *
               (a * (1.0 - c) - a * (8.0 * c + 1.0) + c * c * (1.0 - a) + a + 4.0);
  k.A = (2.0 * k.Lam2 * k.alpha3 + 16.0 * k.Lam1 * al1 * al1 + 16.0 * k.Lam1 * k.xi1) / k.delta2;
  k.B = (k.Lam2 * k.Lam2 - 4.0 * k.Lam1 * k.Lam4) / k.delta2;
  k.U2 = k.delta2 * (k.eps2 + k.A) * (k.eps2 + k.A);
  k.V2 = k.A * k.A - k.B;
  return k;
}

struct StationaryPoint {
  double r = 0.0;
  double value = 0.0;
};

/// Stationary points of f on [r_lo, r_hi]: sign changes of a central-difference
/// derivative on an n_samples grid, refined by bisection on df until |df| < deriv_tol.
template <class F, class DF>
std::vector<StationaryPoint> find_stationary_points(F&& f, DF&& df, double r_lo, double r_hi,
                                                    int n_samples, double deriv_tol) {
  if (!(r_hi > r_lo) || n_samples < 3) throw Error(Errc::InvalidArgument, "bad sampling range");
  const double h = (r_hi - r_lo) / (n_samples - 1);
  std::vector<double> fs(n_samples);
  for (int i = 0; i < n_samples; ++i) fs[i] = f(r_lo + i * h);

  std::vector<StationaryPoint> out;
  // central differences at interior nodes
  double prev = (fs[2] - fs[0]) / (2.0 * h);
  for (int i = 2; i + 1 < n_samples; ++i) {
    const double cur = (fs[i + 1] - fs[i - 1]) / (2.0 * h);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      double lo = r_lo + (i - 2) * h;
      double hi = r_lo + (i + 1) * h;
      double dlo = df(lo);
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double dm = df(mid);
        if (std::abs(dm) < deriv_tol || mid == lo || mid == hi) break;
        if ((dm < 0.0) == (dlo < 0.0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      if (out.empty() || std::abs(out.back().r - mid) > 2.0 * h) out.push_back({mid, f(mid)});
    }
    prev = cur;
  }
  return out;
}

/// Stationary points of V on (0, r_max].
inline std::vector<StationaryPoint> potential_extrema(const HylleraasParams& p, double r_max,
                                                      int n_samples) {
  if (!(r_max > 0.0)) throw Error(Errc::InvalidArgument, "r_max must be > 0");
  if (n_samples < 100) throw Error(Errc::InvalidArgument, "n_samples must be >= 100");
  const ABC abc = derive_abc(p);
  auto v = [&](double r) { return potential_of_s(s_of_r(r, p), p, abc); };
  auto dv = [&](double r) { return potential_dVdr(r, p); };
  return find_stationary_points(v, dv, 0.0, r_max, n_samples, 1e-10 * p.D_e * p.omega);
}

}  // namespace hykg::model
