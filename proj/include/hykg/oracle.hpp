#pragma once

// Reference solver for the radial equation -u'' + W(r) u = Ebar u on a uniform
// grid with u = 0 one step outside both ends. The relativistic energy is the
// root of Ebar_n(E) - (E^2 - M^2) with W = 2(E V + M S) - V^2 + S^2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hykg/error.hpp"
#include "hykg/hylleraas.hpp"
#include "hykg/level.hpp"
#include "hykg/quadrature.hpp"

namespace hykg::oracle {

using model::HylleraasParams;

struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int N = 0;
  double h = 0.0;

  /// Unknowns at r_min + i h; the Dirichlet nodes sit at r_min - h and r_max + h.
  static RadialGrid make(double r_min, double r_max, int N) {
    if (N < 200) throw Error(Errc::InvalidArgument, "grid needs N >= 200");
    if (!(r_max > r_min) || !(r_min > 0.0)) throw Error(Errc::InvalidArgument, "bad grid range");
    return {r_min, r_max, N, (r_max - r_min) / (N - 1)};
  }

  /// Interior nodes of [0, L] with N unknowns: h = L/(N+1).
  static RadialGrid box(double L, int N) {
    if (!(L > 0.0)) throw Error(Errc::InvalidArgument, "box length must be > 0");
    const double h = L / (N + 1);
    RadialGrid g = make(h, L - h, N);
    g.h = h;
    return g;
  }

  /// r_min = h, so the left Dirichlet node is r = 0. r_max defaults to 30/((1+K)w).
  static RadialGrid for_params(const HylleraasParams& p, std::optional<double> r_max = std::nullopt,
                               int N = 4000) {
    const double rm = r_max.value_or(30.0 / p.kappa());
    if (!(rm > 0.0)) throw Error(Errc::InvalidArgument, "r_max must be > 0");
    const double h = rm / N;
    RadialGrid g = make(h, rm, N);
    g.h = h;
    return g;
  }

  double r(int i) const { return r_min + i * h; }

  std::vector<double> points() const {
    std::vector<double> v(N);
    for (int i = 0; i < N; ++i) v[i] = r(i);
    return v;
  }

  /// Tail coverage heuristic r_max (1+K) w >= 20.
  bool covers_tail(const HylleraasParams& p) const { return r_max * p.kappa() >= 20.0; }
};

/// W for scalar S and vector V; S = V gives 2(E + M) V.
inline double effective_potential(double E, double M, double V, double S) {
  return 2.0 * (E * V + M * S) - V * V + S * S;
}

struct EffectiveProblem {
  double E_param = 0.0;
  std::vector<double> W;         // W(r_i)
  std::vector<double> diagonal;  // 2/h^2 + W
  double offdiagonal = 0.0;      // -1/h^2

  /// h^2 max|W| < 0.5.
  bool stable(double h) const {
    double m = 0.0;
    for (double w : W) m = std::max(m, std::abs(w));
    return h * h * m < 0.5;
  }
};

inline EffectiveProblem make_problem(const RadialGrid& g, const std::vector<double>& W, double E = 0.0) {
  if (static_cast<int>(W.size()) != g.N) throw Error(Errc::InvalidArgument, "W size mismatch");
  EffectiveProblem pr;
  pr.E_param = E;
  pr.W = W;
  pr.diagonal.resize(W.size());
  const double ih2 = 1.0 / (g.h * g.h);
  for (std::size_t i = 0; i < W.size(); ++i) pr.diagonal[i] = 2.0 * ih2 + W[i];
  pr.offdiagonal = -ih2;
  return pr;
}

inline std::vector<double> potential_samples(const HylleraasParams& p, const RadialGrid& g) {
  const model::ABC abc = model::derive_abc(p);
  std::vector<double> v(g.N);
  for (int i = 0; i < g.N; ++i) v[i] = model::potential_of_s(model::s_of_r(g.r(i), p), p, abc);
  return v;
}

/// W(r_i) = 2(E + M) V(r_i) from cached V samples.
inline std::vector<double> hylleraas_W(const HylleraasParams& p, double E, const std::vector<double>& V) {
  std::vector<double> w(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) w[i] = effective_potential(E, p.M, V[i], V[i]);
  return w;
}

/// Number of eigenvalues strictly below x.
inline int sturm_count(const std::vector<double>& diag, double off, double x) {
  const double e2 = off * off;
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = (diag[i] - x) - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

/// The m smallest eigenvalues, ascending, by bisection on the Sturm count.
inline std::vector<double> lowest_eigenvalues(const std::vector<double>& diag, double off, int m) {
  if (m < 1 || m > static_cast<int>(diag.size())) throw Error(Errc::InvalidArgument, "bad eigenvalue count");
  const double lo0 = *std::min_element(diag.begin(), diag.end()) - 2.0 * std::abs(off);
  const double hi0 = *std::max_element(diag.begin(), diag.end()) + 2.0 * std::abs(off);
  std::vector<double> out(m);
  double lo_floor = lo0;
  for (int k = 0; k < m; ++k) {
    double lo = lo_floor, hi = hi0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
      if (sturm_count(diag, off, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[k] = 0.5 * (lo + hi);
    lo_floor = lo;
  }
  return out;
}

inline std::vector<double> lowest_eigenvalues(const RadialGrid& g, const std::vector<double>& W, int m) {
  const EffectiveProblem pr = make_problem(g, W);
  return lowest_eigenvalues(pr.diagonal, pr.offdiagonal, m);
}

/// The m smallest Ebar of -d^2/dr^2 + 2(E + M) V at E = E_param.
inline std::vector<double> effective_eigen(const HylleraasParams& p, double E_param, const RadialGrid& g,
                                           int m) {
  model::validate(p);
  return lowest_eigenvalues(g, hylleraas_W(p, E_param, potential_samples(p, g)), m);
}

/// Eigenvector for a known eigenvalue by inverse iteration. Normalised to sum u^2 h = 1,
/// first significant sample positive.
inline std::vector<double> eigenvector(const RadialGrid& g, const std::vector<double>& W, double eigenvalue) {
  const EffectiveProblem pr = make_problem(g, W);
  const int n = g.N;
  const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
  std::vector<double> x(n, 1.0);
  // Gaussian elimination with partial pivoting on the tridiagonal (T - shift).
  std::vector<double> dl(n), d(n), du(n), du2(n);
  std::vector<int> swapped(n, 0);
  auto factor = [&] {
    for (int i = 0; i < n; ++i) {
      d[i] = pr.diagonal[i] - shift;
      dl[i] = pr.offdiagonal;
      du[i] = pr.offdiagonal;
      du2[i] = 0.0;
    }
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        swapped[i] = 0;
        if (d[i] == 0.0) d[i] = 1e-300;
        const double f = dl[i] / d[i];
        dl[i] = f;
        d[i + 1] -= f * du[i];
      } else {
        swapped[i] = 1;
        const double f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        const double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  };
  auto solve = [&](std::vector<double>& b) {
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  };
  factor();
  for (int it = 0; it < 4; ++it) {
    solve(x);
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    for (double& v : x) v /= m;
  }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm * g.h);
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  double sign = 1.0;
  for (double v : x) {
    if (std::abs(v) > 1e-6 * peak) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& v : x) v *= sign / norm;
  return x;
}

// ---------------------------------------------------------------- Numerov

struct NumerovEigen {
  double value = 0.0;
  int nodes = 0;
  Flags flags;  // NoRoot, NodeMismatch
  std::vector<double> u;  // assembled solution at the grid nodes
};

namespace detail {

/// Numerov recurrence a_{i+1} u_{i+1} = b_i u_i - a_{i-1} u_{i-1}, with f = W - Ebar.
struct NumerovCoeffs {
  std::vector<double> a, b;  // including the two Dirichlet nodes at index 0 and N+1
};

inline NumerovCoeffs numerov_coeffs(const RadialGrid& g, const std::vector<double>& W, double ebar) {
  const int n = g.N;
  const double h2 = g.h * g.h;
  NumerovCoeffs c;
  c.a.resize(n + 2);
  c.b.resize(n + 2);
  // boundary nodes carry f of their neighbours; their u is zero so only a matters
  for (int i = 0; i < n + 2; ++i) {
    const int j = std::clamp(i - 1, 0, n - 1);
    const double f = W[j] - ebar;
    c.a[i] = 1.0 - h2 * f / 12.0;
    c.b[i] = 2.0 + 10.0 * h2 * f / 12.0;
  }
  return c;
}

inline void rescale_if_large(std::vector<double>& u, std::size_t upto_lo, std::size_t upto_hi) {
  double m = std::max(std::abs(u[upto_lo]), std::abs(u[upto_hi]));
  if (m > 1e150) {
    for (double& x : u) x /= m;
  }
}

/// Outward solution on nodes 0..N+1 with u_0 = 0, u_1 = h.
inline std::vector<double> outward(const NumerovCoeffs& c, double h) {
  const std::size_t n2 = c.a.size();
  std::vector<double> u(n2, 0.0);
  u[1] = h;
  for (std::size_t i = 1; i + 1 < n2; ++i) {
    u[i + 1] = (c.b[i] * u[i] - c.a[i - 1] * u[i - 1]) / c.a[i + 1];
    rescale_if_large(u, i, i + 1);
  }
  return u;
}

/// Inward solution with u_{N+1} = 0, u_N = h.
inline std::vector<double> inward(const NumerovCoeffs& c, double h) {
  const std::size_t n2 = c.a.size();
  std::vector<double> u(n2, 0.0);
  u[n2 - 2] = h;
  for (std::size_t i = n2 - 2; i >= 1; --i) {
    u[i - 1] = (c.b[i] * u[i] - c.a[i + 1] * u[i + 1]) / c.a[i - 1];
    rescale_if_large(u, i - 1, i);
  }
  return u;
}

/// Eigenvalues of the Numerov pencil below ebar: nodes of the outward solution.
inline int numerov_count(const RadialGrid& g, const std::vector<double>& W, double ebar) {
  const NumerovCoeffs c = numerov_coeffs(g, W, ebar);
  std::vector<double> u = outward(c, g.h);
  // nodes strictly inside plus a sign flip of the value that should vanish at N+1
  int count = 0;
  int last = 1;
  for (std::size_t i = 2; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    const int s = u[i] > 0.0 ? 1 : -1;
    if (s != last) ++count;
    last = s;
  }
  return count;
}

/// Outermost index where W - ebar goes from negative to nonnegative; midpoint fallback.
inline int matching_index(const std::vector<double>& W, double ebar) {
  const int n = static_cast<int>(W.size());
  for (int i = n - 2; i >= 2; --i) {
    if (W[i] - ebar < 0.0 && W[i + 1] - ebar >= 0.0) {
      if (i < n - 3) return i + 1;  // node index (shifted by the Dirichlet node)
      break;
    }
  }
  return n / 2;
}

}  // namespace detail

/// Matching defect: the conserved discrete Wronskian of the outward and inward solutions,
/// divided by their local norms at the matching point. Continuous in ebar with simple zeros
/// at the eigenvalues of the Numerov discretisation.
inline double numerov_defect(const RadialGrid& g, const std::vector<double>& W, double ebar,
                             int* match_out = nullptr) {
  const detail::NumerovCoeffs c = detail::numerov_coeffs(g, W, ebar);
  const std::vector<double> uo = detail::outward(c, g.h);
  const std::vector<double> ui = detail::inward(c, g.h);
  const int m = detail::matching_index(W, ebar);
  if (match_out) *match_out = m;
  const double w = c.a[m] * c.a[m + 1] * (uo[m] * ui[m + 1] - uo[m + 1] * ui[m]);
  const double no = std::hypot(uo[m], uo[m + 1]);
  const double ni = std::hypot(ui[m], ui[m + 1]);
  return w / (no * ni);
}

/// n-th eigenvalue (0-based) of the Numerov discretisation: bracketed by node counting,
/// refined by bisection on the matching defect.
inline NumerovEigen numerov_eigenvalue(const RadialGrid& g, const std::vector<double>& W, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  NumerovEigen out;
  double lo = *std::min_element(W.begin(), W.end()) - 1.0;
  double step = 1.0;
  double hi = lo + step;
  while (detail::numerov_count(g, W, hi) < n + 1) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (!std::isfinite(hi) || step > 1e12) {
      out.flags.set(LevelFlag::NoRoot);
      return out;
    }
  }
  // narrow until the bracket holds exactly the n-th eigenvalue
  for (int it = 0; it < 200; ++it) {
    const int clo = detail::numerov_count(g, W, lo);
    const int chi = detail::numerov_count(g, W, hi);
    if (clo == n && chi == n + 1) break;
    const double mid = 0.5 * (lo + hi);
    if (detail::numerov_count(g, W, mid) > n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double dlo = numerov_defect(g, W, lo);
  double dhi = numerov_defect(g, W, hi);
  if ((dlo < 0.0) == (dhi < 0.0) && dlo != 0.0 && dhi != 0.0) {
    out.flags.set(LevelFlag::NoRoot);
    return out;
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double dm = numerov_defect(g, W, mid);
    if (dm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((dm < 0.0) == (dlo < 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  out.value = 0.5 * (lo + hi);

  int m = 0;
  (void)numerov_defect(g, W, out.value, &m);
  const detail::NumerovCoeffs c = detail::numerov_coeffs(g, W, out.value);
  const std::vector<double> uo = detail::outward(c, g.h);
  const std::vector<double> ui = detail::inward(c, g.h);
  out.u.resize(g.N);
  const double scale = ui[m] != 0.0 ? uo[m] / ui[m] : 1.0;
  for (int i = 0; i < g.N; ++i) {
    const int node = i + 1;
    out.u[i] = node <= m ? uo[node] : ui[node] * scale;
  }
  out.nodes = count_sign_changes(out.u);
  if (out.nodes != n) out.flags.set(LevelFlag::NodeMismatch);
  return out;
}

// ---------------------------------------------------------------- relativistic root

struct OuterOptions {
  int seeds = 64;
  double rel_tol = 1e-10;  // bisection width in units of M
  int max_refine = 6;      // interval halvings for the continuity check
};

/// Acceptance tolerance for |g(E)| at an oracle root.
inline double oracle_tolerance(const HylleraasParams& p) { return 1e-8 * std::max(1.0, p.M * p.M); }

/// Highest root in (-M, M) of g(E) = ebar_n(E) - (E^2 - M^2).
template <class EigenFn>
LevelSearch solve_outer(const HylleraasParams& p, int n, EigenFn&& ebar_n, const OuterOptions& o = {}) {
  const double M = p.M;
  auto g = [&](double E) { return ebar_n(E) - (E * E - M * M); };
  const double lo = -M * (1.0 - 1e-9);
  const double hi = M * (1.0 - 1e-9);
  struct Sample {
    double E, g;
  };
  std::vector<Sample> s;
  for (int i = 0; i < o.seeds; ++i) {
    const double E = lo + (hi - lo) * i / (o.seeds - 1);
    s.push_back({E, g(E)});
  }
  // halve any step whose jump is far beyond its neighbours' slope
  for (int pass = 0; pass < o.max_refine; ++pass) {
    std::vector<Sample> refined;
    bool changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      refined.push_back(s[i]);
      const double jump = std::abs(s[i + 1].g - s[i].g);
      double local = 0.0;
      if (i > 0) local = std::max(local, std::abs(s[i].g - s[i - 1].g));
      if (i + 2 < s.size()) local = std::max(local, std::abs(s[i + 2].g - s[i + 1].g));
      if (local > 0.0 && jump > 10.0 * local) {
        const double Em = 0.5 * (s[i].E + s[i + 1].E);
        refined.push_back({Em, g(Em)});
        changed = true;
      }
    }
    refined.push_back(s.back());
    s = std::move(refined);
    if (!changed) break;
  }

  LevelSearch ls;
  std::optional<double> best;
  for (std::size_t i = s.size() - 1; i >= 1 && !best; --i) {
    double a = s[i - 1].E, b = s[i].E, ga = s[i - 1].g, gb = s[i].g;
    if (gb == 0.0) {
      best = b;
      break;
    }
    if ((ga < 0.0) == (gb < 0.0) && ga != 0.0) continue;
    while (b - a > o.rel_tol * M) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double gm = g(mid);
      if (gm == 0.0) {
        a = b = mid;
        break;
      }
      if ((gm < 0.0) == (ga < 0.0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    best = 0.5 * (a + b);
  }
  if (!best) {
    ls.flags.set(LevelFlag::NoRoot);
    return ls;
  }
  EnergyLevel lv;
  lv.n = n;
  lv.E = *best;
  lv.Ebar = lv.E * lv.E - M * M;
  lv.engine = Engine::Oracle;
  lv.residual = std::abs(g(lv.E));
  ls.levels.push_back(lv);
  return ls;
}

/// Matrix-method relativistic level n; at most one level (the highest root).
inline LevelSearch solve_relativistic(const HylleraasParams& p, int n, const RadialGrid& g,
                                      const OuterOptions& o = {}) {
  model::validate(p);
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  const std::vector<double> V = potential_samples(p, g);
  auto ebar_n = [&](double E) { return lowest_eigenvalues(g, hylleraas_W(p, E, V), n + 1)[n]; };
  return solve_outer(p, n, ebar_n, o);
}

/// Numerov-method relativistic level n inside E_bracket (whole window if absent).
inline LevelSearch numerov_shoot(const HylleraasParams& p, int n, const RadialGrid& g,
                                 std::optional<std::pair<double, double>> E_bracket = std::nullopt) {
  model::validate(p);
  if (n < 0) throw Error(Errc::InvalidArgument, "n must be >= 0");
  const std::vector<double> V = potential_samples(p, g);
  auto ebar_n = [&](double E) { return numerov_eigenvalue(g, hylleraas_W(p, E, V), n).value; };
  LevelSearch ls;
  if (!E_bracket) {
    ls = solve_outer(p, n, ebar_n);
  } else {
    auto gfun = [&](double E) { return ebar_n(E) - (E * E - p.M * p.M); };
    double a = E_bracket->first, b = E_bracket->second;
    double ga = gfun(a), gb = gfun(b);
    if ((ga < 0.0) == (gb < 0.0) && ga != 0.0 && gb != 0.0) {
      ls.flags.set(LevelFlag::NoRoot);
      return ls;
    }
    while (b - a > 1e-10 * p.M) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double gm = gfun(mid);
      if ((gm < 0.0) == (ga < 0.0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    EnergyLevel lv;
    lv.n = n;
    lv.E = 0.5 * (a + b);
    lv.Ebar = lv.E * lv.E - p.M * p.M;
    lv.engine = Engine::Oracle;
    lv.residual = std::abs(gfun(lv.E));
    ls.levels.push_back(lv);
  }
  for (EnergyLevel& lv : ls.levels) {
    const NumerovEigen ne = numerov_eigenvalue(g, hylleraas_W(p, lv.E, V), n);
    lv.flags.merge(ne.flags);
  }
  return ls;
}

/// Oracle level plus its eigenvector on the grid.
struct OracleState {
  LevelSearch search;
  std::vector<double> r;
  std::vector<double> u;  // empty when no level
  int nodes = 0;
};

inline OracleState oracle_state(const HylleraasParams& p, int n, const RadialGrid& g) {
  OracleState st;
  st.search = solve_relativistic(p, n, g);
  st.r = g.points();
  if (st.search.levels.empty()) return st;
  EnergyLevel& lv = st.search.levels.front();
  const std::vector<double> W = hylleraas_W(p, lv.E, potential_samples(p, g));
  const double ebar = lowest_eigenvalues(g, W, n + 1)[n];
  st.u = eigenvector(g, W, ebar);
  st.nodes = count_sign_changes(st.u);
  if (st.nodes != n) lv.flags.set(LevelFlag::NodeMismatch);
  return st;
}

/// (n+1)-th eigenvalue of -(1/(2 m)) d^2/dr^2 + 2 V(r), with mass m = M.
inline double schrodinger_limit(const HylleraasParams& p, int n, const RadialGrid& g,
                                double potential_scale = 2.0) {
  model::validate(p);
  const double mass = p.M;
  const std::vector<double> V = potential_samples(p, g);
  std::vector<double> W(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) W[i] = 2.0 * mass * potential_scale * V[i];
  return lowest_eigenvalues(g, W, n + 1)[n] / (2.0 * mass);
}

struct ConvergenceOrder {
  double slope = 0.0;
  bool low_signal = false;  // differences at rounding level, slope meaningless
};

/// Least-squares slope of log|E(h_j) - E(h_{j+1})| against log h_j.
inline ConvergenceOrder convergence_order(const std::vector<double>& h, const std::vector<double>& E) {
  if (h.size() != E.size() || h.size() < 3) throw Error(Errc::InvalidArgument, "need >= 3 grids");
  std::vector<double> xs, ys;
  ConvergenceOrder out;
  for (std::size_t j = 0; j + 1 < h.size(); ++j) {
    const double d = std::abs(E[j] - E[j + 1]);
    if (!(d > 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(E[j])))) {
      out.low_signal = true;
      continue;
    }
    xs.push_back(std::log(h[j]));
    ys.push_back(std::log(d));
  }
  if (xs.size() < 2) {
    out.low_signal = true;
    return out;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return out;
}

}  // namespace hykg::oracle
