#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hykg/error.hpp"

namespace hykg {

/// Composite Simpson on uniform samples; an odd panel count closes with a 3/8 panel.
inline double simpson_uniform(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  if (n == 3) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);
  std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) s += y[i] + 4.0 * y[i + 1] + y[i + 2];
  s *= h / 3.0;
  if (simpson_end != intervals) {
    const std::size_t i = simpson_end;
    s += 3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
  }
  return s;
}

/// Composite Simpson of f on [a, b], doubling the panel count until successive
/// estimates agree to rel_tol.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-9, int start_panels = 64,
                 int max_panels = 1 << 22) {
  if (!(b > a)) throw Error(Errc::InvalidArgument, "empty integration range");
  int n = start_panels + (start_panels % 2);
  auto simpson = [&](int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
  };
  double prev = simpson(n);
  while (n < max_panels) {
    n *= 2;
    const double cur = simpson(n);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

/// Strict sign changes, ignoring samples at or below 1e-9 of the peak.
inline int count_sign_changes(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double band = 1e-9 * peak;
  int nodes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) <= band) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

}  // namespace hykg
