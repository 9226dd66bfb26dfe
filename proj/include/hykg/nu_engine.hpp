#pragma once

// Mechanical Nikiforov-Uvarov reduction of
//   psi'' + (tau_tilde/sigma) psi' + (sigma_tilde/sigma^2) psi = 0
// to hypergeometric type. Works from the three input polynomials alone.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "hykg/error.hpp"
#include "hykg/polynomial.hpp"
#include "hykg/roots.hpp"

namespace hykg::nu {

struct NUInput {
  Poly2 sigma;        // degree <= 2, not identically zero
  Poly2 tau_tilde;    // degree <= 1
  Poly2 sigma_tilde;  // degree <= 2
};

inline void validate(const NUInput& in) {
  if (in.sigma.degree() < 0) throw Error(Errc::InvalidArgument, "sigma is identically zero");
  if (in.tau_tilde.c2 != 0.0) throw Error(Errc::InvalidArgument, "tau_tilde must be at most linear");
}

enum class Sign { Plus, Minus };

constexpr std::string_view to_string(Sign s) { return s == Sign::Plus ? "Plus" : "Minus"; }

struct NUSolution {
  double k = 0.0;
  Poly2 pi;  // linear
  Sign sign_choice = Sign::Minus;
  Poly2 tau;  // tau_tilde + 2 pi
  double lambda = 0.0;  // k + pi'
  double residual_square = 0.0;  // |discriminant of the under-root quadratic at k|

  double tau_prime() const { return tau.c1; }
};

/// (sigma' - tau_tilde)/2, a linear polynomial.
inline Poly2 half_gap(const NUInput& in) {
  return {0.5 * (in.sigma.c1 - in.tau_tilde.c0), 0.5 * (2.0 * in.sigma.c2 - in.tau_tilde.c1), 0.0};
}

/// Q_k(s) = ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma.
inline Poly2 under_root_quadratic(const NUInput& in, double k) {
  return square_linear(half_gap(in)) - in.sigma_tilde + k * in.sigma;
}

/// Perfect-square tolerance for a quadratic: 1e-10 (1 + max|coeff|)^2.
inline double square_tolerance(const Poly2& q) {
  const double m = 1.0 + q.max_abs_coeff();
  return 1e-10 * m * m;
}

/// disc(Q_k) = d2 k^2 + d1 k + d0.
struct KPolynomial {
  double d0 = 0.0, d1 = 0.0, d2 = 0.0;
  double operator()(double k) const { return (d2 * k + d1) * k + d0; }
};

inline KPolynomial k_discriminant(const NUInput& in) {
  const Poly2 base = under_root_quadratic(in, 0.0);
  const Poly2& s = in.sigma;
  return {base.c1 * base.c1 - 4.0 * base.c2 * base.c0,
          2.0 * base.c1 * s.c1 - 4.0 * (base.c2 * s.c0 + base.c0 * s.c2),
          s.c1 * s.c1 - 4.0 * s.c2 * s.c0};
}

struct KRoot {
  double k = 0.0;
  double residual = 0.0;  // |disc(Q_k)| after back-substitution
};

/// Real k for which Q_k is the square of a linear polynomial, ascending.
/// Throws NoRealK, or DegenerateSigma when every k works.
inline std::vector<KRoot> solve_k(const NUInput& in) {
  validate(in);
  const KPolynomial d = k_discriminant(in);
  const Poly2& s = in.sigma;
  const Poly2 base = under_root_quadratic(in, 0.0);
  std::vector<double> ks;

  const double d2_scale = std::max(s.c1 * s.c1, std::abs(4.0 * s.c2 * s.c0));
  const bool linear = std::abs(d.d2) <= 1e-12 * d2_scale;
  if (linear) {
    const double d1_scale = std::abs(2.0 * base.c1 * s.c1) + 4.0 * std::abs(base.c2 * s.c0) +
                            4.0 * std::abs(base.c0 * s.c2);
    if (std::abs(d.d1) <= 1e-14 * d1_scale || d.d1 == 0.0) {
      const double d0_scale = base.c1 * base.c1 + 4.0 * std::abs(base.c2 * base.c0);
      if (std::abs(d.d0) <= 1e-14 * d0_scale || d.d0 == 0.0) {
        throw Error(Errc::DegenerateSigma, "perfect-square condition holds for every k");
      }
      throw Error(Errc::NoRealK, "perfect-square condition has no solution");
    }
    ks.push_back(-d.d0 / d.d1);
  } else {
    double delta = d.d1 * d.d1 - 4.0 * d.d2 * d.d0;
    if (delta < 0.0) {
      if (delta >= -1e-12 * (d.d1 * d.d1 + 4.0 * std::abs(d.d2 * d.d0))) {
        delta = 0.0;
      } else {
        throw Error(Errc::NoRealK, "k-discriminant is negative");
      }
    }
    const double q = -0.5 * (d.d1 + std::copysign(std::sqrt(delta), d.d1));
    if (q == 0.0) {
      ks.push_back(0.0);
    } else {
      ks.push_back(q / d.d2);
      ks.push_back(d.d0 / q);
    }
  }

  std::vector<KRoot> out;
  for (double k : ks) {
    // one Newton step on disc(k)
    const double slope = 2.0 * d.d2 * k + d.d1;
    if (slope != 0.0) {
      const double kn = k - d(k) / slope;
      if (std::isfinite(kn) && std::abs(d(kn)) <= std::abs(d(k))) k = kn;
    }
    out.push_back({k, std::abs(discriminant(under_root_quadratic(in, k)))});
  }
  std::sort(out.begin(), out.end(), [](const KRoot& x, const KRoot& y) { return x.k < y.k; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const KRoot& x, const KRoot& y) { return x.k == y.k; }),
            out.end());
  return out;
}

/// Linear square root of a perfect-square quadratic, leading coefficient >= 0.
inline std::optional<Poly2> linear_sqrt(const Poly2& q) {
  const double tol = square_tolerance(q);
  if (std::abs(discriminant(q)) > tol) return std::nullopt;
  const double small = 1e-14 * (1.0 + q.max_abs_coeff());
  if (q.c2 > small) {
    const double r1 = std::sqrt(q.c2);
    return Poly2{q.c1 / (2.0 * r1), r1, 0.0};
  }
  if (q.c2 < -small) return std::nullopt;
  if (std::abs(q.c1) > small) return std::nullopt;
  if (q.c0 < -small) return std::nullopt;
  return Poly2{std::sqrt(std::max(q.c0, 0.0)), 0.0, 0.0};
}

/// Every (k, sign) pair: pi = (sigma' - tau_tilde)/2 +- sqrt(Q_k).
inline std::vector<NUSolution> pi_candidates(const NUInput& in) {
  const std::vector<KRoot> ks = solve_k(in);
  const Poly2 h = half_gap(in);
  std::vector<NUSolution> out;
  for (const KRoot& kr : ks) {
    const Poly2 q = under_root_quadratic(in, kr.k);
    const std::optional<Poly2> root = linear_sqrt(q);
    if (!root) continue;
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      NUSolution sol;
      sol.k = kr.k;
      sol.sign_choice = sg;
      sol.pi = sg == Sign::Plus ? h + *root : h - *root;
      sol.tau = in.tau_tilde + 2.0 * sol.pi;
      sol.lambda = sol.k + sol.pi.c1;
      sol.residual_square = kr.residual;
      out.push_back(sol);
    }
  }
  if (out.empty()) throw Error(Errc::ImperfectSquare, "no k yields a real linear square root");
  return out;
}

struct BranchSelection {
  NUSolution chosen;
  std::vector<NUSolution> rejected;
};

/// Picks the candidate with tau' < 0; among several, the most negative tau'.
/// Exact ties (1e-12 relative) go to the larger tau(0), then smaller k, then Minus.
inline BranchSelection select_branch(const std::vector<NUSolution>& candidates) {
  if (candidates.empty()) throw Error(Errc::InvalidArgument, "no candidates");
  auto preferred = [](const NUSolution& x, const NUSolution& best) {
    const double tol = 1e-12 * std::max(1.0, std::abs(best.tau_prime()));
    if (x.tau_prime() < best.tau_prime() - tol) return true;
    if (x.tau_prime() > best.tau_prime() + tol) return false;
    if (x.tau.c0 != best.tau.c0) return x.tau.c0 > best.tau.c0;
    if (x.k != best.k) return x.k < best.k;
    return x.sign_choice == Sign::Minus && best.sign_choice == Sign::Plus;
  };
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!(candidates[i].tau_prime() < 0.0)) continue;
    if (!best || preferred(candidates[i], candidates[*best])) best = i;
  }
  if (!best) throw Error(Errc::NoValidBranch, "no candidate has tau' < 0");
  BranchSelection sel;
  sel.chosen = candidates[*best];
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i != *best) sel.rejected.push_back(candidates[i]);
  }
  return sel;
}

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
inline double lambda_n(const NUInput& in, const NUSolution& sol, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  const double nn = n;
  return -nn * sol.tau_prime() - 0.5 * nn * (nn - 1.0) * (2.0 * in.sigma.c2);
}

/// lambda - lambda_n on the selected branch, or a gap marker where the method degenerates.
struct Quantization {
  std::optional<double> residual;
  std::optional<Errc> gap;  // NoRealK, DegenerateSigma, ImperfectSquare or NoValidBranch
  NUSolution solution;
  double lambda = 0.0;
  double lambda_n = 0.0;

  bool ok() const { return residual.has_value(); }
};

inline Quantization quantization_residual(const NUInput& in, int n) {
  Quantization q;
  try {
    const BranchSelection sel = select_branch(pi_candidates(in));
    q.solution = sel.chosen;
    q.lambda = sel.chosen.lambda;
    q.lambda_n = lambda_n(in, sel.chosen, n);
    const double r = q.lambda - q.lambda_n;
    if (std::isfinite(r)) {
      q.residual = r;
    } else {
      q.gap = Errc::ImperfectSquare;
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::NoRealK:
      case Errc::DegenerateSigma:
      case Errc::ImperfectSquare:
      case Errc::NoValidBranch:
        q.gap = e.code();
        break;
      default:
        throw;
    }
  }
  return q;
}

/// Acceptance tolerance for a quantization root.
inline double quantization_tolerance(const Quantization& q) {
  return 1e-8 * std::max(1.0, std::abs(q.lambda) + std::abs(q.lambda_n));
}

struct QuantizationRoot {
  double x = 0.0;
  Quantization at_root;
};

struct QuantizationScan {
  std::vector<QuantizationRoot> roots;  // ascending, each within quantization_tolerance
  bool gap_seen = false;
  int rejected_jumps = 0;  // sign changes across branch switches, not roots
};

/// Roots in x of lambda(x) - lambda_n(x) for an x-parameterised NU input.
template <class Builder>
QuantizationScan quantization_roots(Builder&& build, int n, double lo, double hi,
                                    const roots::ScanOptions& opt = {}) {
  auto f = [&](double x) -> std::optional<double> {
    return quantization_residual(build(x), n).residual;
  };
  const roots::ScanResult sr = roots::scan_roots(f, lo, hi, opt);
  QuantizationScan out;
  out.gap_seen = sr.gap_samples > 0 || sr.abandoned > 0;
  for (const roots::Root& r : sr.roots) {
    Quantization q = quantization_residual(build(r.x), n);
    if (q.ok() && std::abs(*q.residual) <= quantization_tolerance(q)) {
      out.roots.push_back({r.x, q});
    } else {
      ++out.rejected_jumps;
    }
  }
  return out;
}

/// Factor f with f'/f = N/sigma: |s-r1|^p1 |s-r2|^p2 exp(exp_linear s + exp_pole/(s-r1)).
struct FactorForm {
  enum class Kind { DistinctRoots, SimpleRoot, RepeatedRoot };
  Kind kind = Kind::DistinctRoots;
  double r1 = 0.0, r2 = 0.0;
  double p1 = 0.0, p2 = 0.0;
  double exp_linear = 0.0;
  double exp_pole = 0.0;

  /// True when an exponential factor is needed (single or repeated sigma root).
  bool has_exponential() const { return kind != Kind::DistinctRoots; }

  double log_abs(double s) const {
    double v = p1 * std::log(std::abs(s - r1)) + exp_linear * s;
    if (kind == Kind::DistinctRoots) v += p2 * std::log(std::abs(s - r2));
    if (kind == Kind::RepeatedRoot) v += exp_pole / (s - r1);
    return v;
  }

  double operator()(double s) const { return std::exp(log_abs(s)); }
};

constexpr std::string_view to_string(FactorForm::Kind k) {
  switch (k) {
    case FactorForm::Kind::DistinctRoots: return "DistinctRoots";
    case FactorForm::Kind::SimpleRoot: return "SimpleRoot";
    case FactorForm::Kind::RepeatedRoot: return "RepeatedRoot";
  }
  return "?";
}

/// Partial fractions of numerator/sigma.
inline FactorForm integrate_log_derivative(const Poly2& numerator, const Poly2& sigma) {
  FactorForm f;
  if (sigma.c2 != 0.0) {
    const double disc = discriminant(sigma);
    if (std::abs(disc) <= 1e-12 * sigma.c1 * sigma.c1 || disc == 0.0) {
      f.kind = FactorForm::Kind::RepeatedRoot;
      f.r1 = f.r2 = -sigma.c1 / (2.0 * sigma.c2);
      f.p1 = numerator.c1 / sigma.c2;
      f.exp_pole = -numerator(f.r1) / sigma.c2;
      return f;
    }
    if (disc < 0.0) throw Error(Errc::ComplexRoots, "sigma has complex roots");
    const double q = -0.5 * (sigma.c1 + std::copysign(std::sqrt(disc), sigma.c1));
    double x1 = q / sigma.c2;
    double x2 = sigma.c0 / q;
    if (x1 < x2) std::swap(x1, x2);
    f.kind = FactorForm::Kind::DistinctRoots;
    f.r1 = x1;
    f.r2 = x2;
    f.p1 = numerator(x1) / (sigma.c2 * (x1 - x2));
    f.p2 = numerator(x2) / (sigma.c2 * (x2 - x1));
    return f;
  }
  if (sigma.c1 != 0.0) {
    f.kind = FactorForm::Kind::SimpleRoot;
    f.r1 = f.r2 = -sigma.c0 / sigma.c1;
    f.p1 = numerator(f.r1) / sigma.c1;
    f.exp_linear = numerator.c1 / sigma.c1;
    return f;
  }
  throw Error(Errc::DomainError, "constant sigma has no root structure");
}

struct WaveFactors {
  FactorForm phi;  // phi'/phi = pi/sigma
  FactorForm rho;  // (sigma rho)' = tau rho
};

inline WaveFactors wavefactor_exponents(const NUInput& in, const NUSolution& sol) {
  const Poly2 dsigma{in.sigma.c1, 2.0 * in.sigma.c2, 0.0};
  return {integrate_log_derivative(sol.pi, in.sigma),
          integrate_log_derivative(sol.tau - dsigma, in.sigma)};
}

/// Classic hydrogen-like input: sigma = s, tau_tilde = 0, sigma_tilde = -eps^2 s^2 + beta s - l(l+1).
inline NUInput hydrogen_like_input(double eps, double beta, int l) {
  return {Poly2{0.0, 1.0, 0.0}, Poly2{}, Poly2{-static_cast<double>(l) * (l + 1), beta, -eps * eps}};
}

}  // namespace hykg::nu
