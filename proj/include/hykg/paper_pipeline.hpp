#pragma once

// The closed-form Hylleraas-specific derivation and its three energy engines:
// the explicit closed form, the implicit lambda = lambda_n condition, and the
// mechanical NU reduction of the same hypergeometric-type input.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "hykg/error.hpp"
#include "hykg/hylleraas.hpp"
#include "hykg/level.hpp"
#include "hykg/nu_engine.hpp"
#include "hykg/roots.hpp"

namespace hykg::paper {

using model::AppendixConstants;
using model::HylleraasParams;
using cplx = std::complex<double>;

/// sigma = 2 alpha1 (s+a)(s+c), tau_tilde = 2 alpha1 (s+c), sigma_tilde = -eps^2 s^2 + beta^2 s + gamma^2.
inline nu::NUInput build_nu_input(const AppendixConstants& k) {
  const double two_al = 2.0 * k.alpha1;
  return {Poly2{two_al * k.a * k.c, two_al * (k.a + k.c), two_al},
          Poly2{two_al * k.c, two_al, 0.0},
          Poly2{k.gamma2, k.beta2, -k.eps2}};
}

inline nu::NUInput build_nu_input(const HylleraasParams& p, double E) {
  return build_nu_input(model::appendix_constants(p, E));
}

/// Closed-form expressions for k, pi, tau, tau', lambda and lambda_n at (E, n).
/// Negative radicands are continued into the complex plane and flagged.
struct PaperIntermediates {
  double E = 0.0;
  int n = 0;
  double U2 = 0.0;
  double V2 = 0.0;
  cplx muJ, nuJ;        // sqrt(delta(eps^2+A) +- sqrt(A^2-B))
  cplx k;
  cplx pi0, pi1;        // pi = pi1 s + pi0
  cplx tau0, tau1;      // tau = tau1 s + tau0
  cplx tau_prime;       // as stated, not d/ds of tau
  cplx lambda;
  cplx lambda_n;
  Flags flags;          // NegativeUnderSqrt

  bool real() const { return !flags.has(LevelFlag::NegativeUnderSqrt); }
};

namespace detail {

inline cplx csqrt(double x, Flags& flags) {
  if (x < 0.0) flags.set(LevelFlag::NegativeUnderSqrt);
  return std::sqrt(cplx(x, 0.0));
}

inline cplx csqrt(cplx x, Flags& flags) {
  if (x.imag() != 0.0 || x.real() < 0.0) flags.set(LevelFlag::NegativeUnderSqrt);
  return std::sqrt(x);
}

}  // namespace detail

inline PaperIntermediates paper_intermediates(const AppendixConstants& k, double E, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  PaperIntermediates out;
  out.E = E;
  out.n = n;
  out.U2 = k.U2;
  out.V2 = k.V2;
  Flags& fl = out.flags;
  const cplx delta = detail::csqrt(k.delta2, fl);
  const cplx root_ab = detail::csqrt(k.V2, fl);
  const cplx shifted = delta * (k.eps2 + k.A);
  out.muJ = detail::csqrt(shifted + root_ab, fl);
  out.nuJ = detail::csqrt(shifted - root_ab, fl);

  const double head = -(k.Lam2 + k.Lam3 * k.eps2);
  out.k = head - detail::csqrt(k.U2 - k.V2, fl);
  out.pi1 = k.alpha1 - out.muJ;
  out.pi0 = k.alpha1 * k.a - out.nuJ;
  out.tau1 = 4.0 * k.alpha1 - 2.0 * out.muJ;
  out.tau0 = 2.0 * k.alpha1 * (k.a + k.c) + 2.0 * out.nuJ;
  out.tau_prime = -2.0 * (out.muJ - 4.0 * k.alpha1);
  out.lambda = out.k;
  const double nn = n;
  // sqrt(U + V) with U = delta (eps^2 + A), V = sqrt(A^2 - B) is muJ
  out.lambda_n = n == 0 ? cplx(0.0) : 2.0 * nn * out.muJ - 2.0 * k.alpha1 * nn * (nn + 3.0);
  return out;
}

inline PaperIntermediates paper_intermediates(const HylleraasParams& p, double E, int n) {
  return paper_intermediates(model::appendix_constants(p, E), E, n);
}

/// Right-hand side of the explicit energy formula for one sign.
///
///   Ebar = P [L3 + (A/S)(1 + (L3/A) S - d(1+2n)/S)]
///        +- P sqrt( [L3 + (A/S)(1 + (L3/A) S - (d/S)(1+2n))] (2d/S)^2
///                   [(A/S)(A/2 - d(1+2n)/S) + alpha1(1 + 2n(n+3)) - L3 - S]^2 )
///   P = w^2 (1+K)^2 S / (2 mu (1+b) d^2),  S = sqrt(A^2 - B)
///
// d is the explicit delta_A9 expression. Juxtaposed factors under the outer root
/// are read as a product. nullopt where a radicand is negative or S = 0.
inline std::optional<double> explicit_energy_rhs(const AppendixConstants& k, const HylleraasParams& p, int n,
                                      int sign) {
  if (!(k.V2 > 0.0) || k.A == 0.0) return std::nullopt;
  const double S = std::sqrt(k.V2);
  const double d = k.delta_A9;
  if (d == 0.0) return std::nullopt;
  const double nn = n;
  const double m = 1.0 + 2.0 * nn;
  const double pref = p.kappa() * p.kappa() * S / (2.0 * p.mu * (1.0 + k.b) * d * d);
  const double bracket = k.Lam3 + (k.A / S) * (1.0 + (k.Lam3 / k.A) * S - d * m / S);
  const double inner =
      (k.A / S) * (k.A / 2.0 - d * m / S) + k.alpha1 * (1.0 + 2.0 * nn * (nn + 3.0)) - k.Lam3 - S;
  const double ratio = 2.0 * d / S;
  const double rad = bracket * ratio * ratio * inner * inner;
  if (!(rad >= 0.0)) return std::nullopt;
  const double v = pref * bracket + (sign >= 0 ? 1.0 : -1.0) * pref * std::sqrt(rad);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

struct PipelineOptions {
  int intervals = 2000;
  double window_eps = 1e-9;   // window is (-M(1-eps), M(1-eps))
  double dedup_rel = 1e-9;    // roots closer than dedup_rel*M are merged
  double explicit_tol = 1e-10;    // |Ebar - RHS| / M^2
};

namespace detail {

inline roots::ScanOptions scan_options(const PipelineOptions& o) {
  roots::ScanOptions s;
  s.intervals = o.intervals;
  return s;
}

inline void finish_search(LevelSearch& ls, const HylleraasParams& p, const PipelineOptions& o) {
  std::stable_sort(ls.levels.begin(), ls.levels.end(),
                   [](const EnergyLevel& x, const EnergyLevel& y) { return x.E < y.E; });
  std::vector<EnergyLevel> merged;
  for (const EnergyLevel& lv : ls.levels) {
    if (!merged.empty() && std::abs(lv.E - merged.back().E) <= o.dedup_rel * p.M) {
      merged.back().flags.set(LevelFlag::DuplicateMerged);
      continue;
    }
    merged.push_back(lv);
  }
  ls.levels = std::move(merged);
  if (ls.levels.empty()) ls.flags.set(LevelFlag::NoRoot);
}

inline EnergyLevel make_level(int n, double E, Engine eng, double residual,
                              const AppendixConstants& k) {
  EnergyLevel lv;
  lv.n = n;
  lv.E = E;
  lv.Ebar = k.Ebar;
  lv.engine = eng;
  lv.residual = residual;
  if (k.eps2 < 0.0) lv.flags.set(LevelFlag::Eps2Negative);
  return lv;
}

}  // namespace detail

inline void check_n(int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
}

/// Roots in E of Ebar(E) - RHS(E) for both signs of the explicit formula.
inline LevelSearch energy_eq45(const HylleraasParams& p, int n, const PipelineOptions& o = {}) {
  model::validate(p);
  check_n(n);
  const double lo = -p.M * (1.0 - o.window_eps);
  const double hi = p.M * (1.0 - o.window_eps);
  LevelSearch ls;
  for (int sign : {+1, -1}) {
    auto g = [&](double E) -> std::optional<double> {
      const AppendixConstants k = model::appendix_constants(p, E);
      const std::optional<double> rhs = explicit_energy_rhs(k, p, n, sign);
      if (!rhs) return std::nullopt;
      return k.Ebar - *rhs;
    };
    const roots::ScanResult sr = roots::scan_roots(g, lo, hi, detail::scan_options(o));
    if (sr.gap_samples > 0 || sr.abandoned > 0) ls.flags.set(LevelFlag::NegativeUnderSqrt);
    for (const roots::Root& r : sr.roots) {
      const AppendixConstants k = model::appendix_constants(p, r.x);
      const std::optional<double> rhs = explicit_energy_rhs(k, p, n, sign);
      if (!rhs) continue;
      const double res = std::abs(k.Ebar - *rhs) / (p.M * p.M);
      if (res > o.explicit_tol) continue;  // sign change across a pole
      EnergyLevel lv = detail::make_level(n, r.x, Engine::Eq45Verbatim, res, k);
      lv.branch_sign = sign;
      ls.levels.push_back(lv);
    }
  }
  detail::finish_search(ls, p, o);
  return ls;
}

/// Implicit residual lambda(E) - lambda_n(E) from the closed-form expressions; nullopt off the real axis.
inline std::optional<double> implicit_residual(const HylleraasParams& p, double E, int n) {
  const PaperIntermediates pi = paper_intermediates(p, E, n);
  if (pi.lambda.imag() != 0.0 || pi.lambda_n.imag() != 0.0) return std::nullopt;
  const double r = pi.lambda.real() - pi.lambda_n.real();
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

inline LevelSearch energy_implicit(const HylleraasParams& p, int n, const PipelineOptions& o = {}) {
  model::validate(p);
  check_n(n);
  const double lo = -p.M * (1.0 - o.window_eps);
  const double hi = p.M * (1.0 - o.window_eps);
  LevelSearch ls;
  auto f = [&](double E) { return implicit_residual(p, E, n); };
  const roots::ScanResult sr = roots::scan_roots(f, lo, hi, detail::scan_options(o));
  if (sr.gap_samples > 0 || sr.abandoned > 0) ls.flags.set(LevelFlag::NegativeUnderSqrt);
  for (const roots::Root& r : sr.roots) {
    const PaperIntermediates pi = paper_intermediates(p, r.x, n);
    const double res = std::abs(pi.lambda.real() - pi.lambda_n.real());
    const double tol = 1e-8 * std::max(1.0, std::abs(pi.lambda) + std::abs(pi.lambda_n));
    if (!pi.real() && (pi.lambda.imag() != 0.0 || pi.lambda_n.imag() != 0.0)) continue;
    if (res > tol) continue;
    ls.levels.push_back(detail::make_level(n, r.x, Engine::ImplicitLambda, res,
                                           model::appendix_constants(p, r.x)));
  }
  detail::finish_search(ls, p, o);
  return ls;
}

/// Quantization roots of the mechanical NU reduction of the transformed equation.
inline LevelSearch energy_mechanical(const HylleraasParams& p, int n, const PipelineOptions& o = {}) {
  model::validate(p);
  check_n(n);
  const double lo = -p.M * (1.0 - o.window_eps);
  const double hi = p.M * (1.0 - o.window_eps);
  auto build = [&](double E) { return build_nu_input(p, E); };
  const nu::QuantizationScan qs = nu::quantization_roots(build, n, lo, hi, detail::scan_options(o));
  LevelSearch ls;
  if (qs.gap_seen) ls.flags.set(LevelFlag::BranchGap);
  for (const nu::QuantizationRoot& r : qs.roots) {
    EnergyLevel lv = detail::make_level(n, r.x, Engine::MechanicalNU, std::abs(*r.at_root.residual),
                                        model::appendix_constants(p, r.x));
    lv.branch_sign = r.at_root.solution.sign_choice == nu::Sign::Plus ? +1 : -1;
    ls.levels.push_back(lv);
  }
  detail::finish_search(ls, p, o);
  return ls;
}

/// The level an engine reports for quantum number n: the highest root in the window.
inline std::optional<EnergyLevel> representative(const LevelSearch& ls) {
  if (ls.levels.empty()) return std::nullopt;
  return ls.levels.back();
}

/// Flags OrderViolation on every level of n whose representative does not exceed that of n-1.
inline void mark_order_violations(std::vector<LevelSearch>& by_n) {
  std::optional<double> prev;
  for (LevelSearch& ls : by_n) {
    const std::optional<EnergyLevel> rep = representative(ls);
    if (!rep) continue;
    if (prev && !(rep->E > *prev)) {
      for (EnergyLevel& lv : ls.levels) lv.flags.set(LevelFlag::OrderViolation);
      ls.flags.set(LevelFlag::OrderViolation);
    }
    prev = rep->E;
  }
}

}  // namespace hykg::paper
