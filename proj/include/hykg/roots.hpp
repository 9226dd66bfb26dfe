#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "hykg/error.hpp"

namespace hykg::roots {

struct ScanOptions {
  int intervals = 2000;
  double xtol = 1e-12;  // bisection stops once the bracket is this narrow (or cannot shrink)
  bool full_precision = true;  // keep bisecting down to adjacent doubles
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct Root {
  double x = 0.0;
  double f = 0.0;  // function value at x (the smaller-magnitude bracket end)
};

struct ScanResult {
  std::vector<Root> roots;
  int gap_samples = 0;      // scan samples where f was undefined
  int abandoned = 0;        // brackets lost to an undefined midpoint
};

/// Bisection on a sign-changing bracket. f returns nullopt where undefined.
template <class F>
std::optional<Root> bisect(F&& f, Bracket br, const ScanOptions& opt) {
  double lo = br.lo, hi = br.hi, flo = br.f_lo, fhi = br.f_hi;
  if (flo == 0.0) return Root{lo, 0.0};
  if (fhi == 0.0) return Root{hi, 0.0};
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (!opt.full_precision && hi - lo <= opt.xtol) break;
    const std::optional<double> fm = f(mid);
    if (!fm || !std::isfinite(*fm)) return std::nullopt;
    if (*fm == 0.0) return Root{mid, 0.0};
    if ((*fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = *fm;
    } else {
      hi = mid;
      fhi = *fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? Root{lo, flo} : Root{hi, fhi};
}

/// Samples f on `intervals` equal subintervals of [lo, hi] and bisects each sign change.
/// Undefined samples split the scan; no bracket straddles them.
template <class F>
ScanResult scan_roots(F&& f, double lo, double hi, const ScanOptions& opt = {}) {
  if (!(hi > lo) || opt.intervals < 1) throw Error(Errc::InvalidArgument, "empty scan window");
  ScanResult out;
  const int n = opt.intervals;
  std::optional<double> prev;
  double prev_x = lo;
  for (int i = 0; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    std::optional<double> fx = f(x);
    if (fx && !std::isfinite(*fx)) fx.reset();
    if (!fx) ++out.gap_samples;
    if (fx && prev) {
      if (*prev == 0.0) {
        // already recorded
      } else if (*fx == 0.0 || (*fx < 0.0) != (*prev < 0.0)) {
        if (auto r = bisect(f, Bracket{prev_x, x, *prev, *fx}, opt)) {
          out.roots.push_back(*r);
        } else {
          ++out.abandoned;
        }
      }
    } else if (fx && *fx == 0.0) {
      out.roots.push_back({x, 0.0});
    }
    prev = fx;
    prev_x = x;
  }
  return out;
}

}  // namespace hykg::roots
