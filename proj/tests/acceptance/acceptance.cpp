// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria, exit status = number of failures
//   acceptance --only N   run criterion N only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hykg/audit.hpp"
#include "hykg/cli.hpp"
#include "hykg/nu_engine.hpp"
#include "hykg/oracle.hpp"
#include "hykg/paper_pipeline.hpp"
#include "hykg/quadrature.hpp"
#include "hykg/wavefunction.hpp"

#ifndef HYKG_GOLDEN_DIR
#error "HYKG_GOLDEN_DIR must point at tests/golden"
#endif

using namespace hykg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// Box of length 20 with W = 0.
Outcome box_test() {
  const auto t0 = std::chrono::steady_clock::now();
  const double L = 20.0;
  const oracle::RadialGrid g = oracle::RadialGrid::box(L, 4000);
  const std::vector<double> zero(g.N, 0.0);
  const std::vector<double> ev = oracle::lowest_eigenvalues(g, zero, 3);
  double worst_matrix = 0.0, worst_numerov = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double exact = std::pow((k + 1) * M_PI / L, 2);
    worst_matrix = std::max(worst_matrix, rel(ev[k], exact));
    worst_numerov = std::max(worst_numerov, rel(oracle::numerov_eigenvalue(g, zero, k).value, exact));
  }

  // refinement sequences: matrix on the ground state, Numerov on a higher state so the
  // differences stay above rounding
  std::vector<double> hs, em, en;
  for (int N : {200, 400, 800, 1600}) {
    const oracle::RadialGrid gi = oracle::RadialGrid::box(L, N);
    const std::vector<double> z(gi.N, 0.0);
    hs.push_back(gi.h);
    em.push_back(oracle::lowest_eigenvalues(gi, z, 1)[0]);
    en.push_back(oracle::numerov_eigenvalue(gi, z, 9).value);
  }
  const oracle::ConvergenceOrder om = oracle::convergence_order(hs, em);
  const oracle::ConvergenceOrder on = oracle::convergence_order(hs, en);
  const double t = seconds_since(t0);

  const bool pass = worst_matrix < 1e-4 && worst_numerov < 1e-4 && !om.low_signal && !on.low_signal &&
                    std::abs(om.slope - 2.0) <= 0.1 && std::abs(on.slope - 4.0) <= 0.2 && t < 10.0;
  return {pass, "rel err matrix " + sci(worst_matrix) + " numerov " + sci(worst_numerov) + "; slope matrix " +
                    sci(om.slope) + " numerov " + sci(on.slope) + "; " + sci(t) + " s"};
}

// Odd states of the half-line oscillator -u'' + r^2 u = e u: e = 4k + 3.
Outcome oscillator_test() {
  const oracle::RadialGrid g = oracle::RadialGrid::box(10.0, 4000);
  std::vector<double> W(g.N);
  for (int i = 0; i < g.N; ++i) W[i] = g.r(i) * g.r(i);
  const std::vector<double> ev = oracle::lowest_eigenvalues(g, W, 3);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) worst = std::max(worst, rel(ev[k], 4.0 * k + 3.0));
  return {worst < 1e-4, "max rel err " + sci(worst)};
}

// sigma = s, tau~ = 0, sigma~ = -eps^2 s^2 + beta s - l(l+1): eps = beta / (2(n+l+1)).
Outcome hydrogen_test() {
  const auto t0 = std::chrono::steady_clock::now();
  const double beta = 1.0;
  double worst = 0.0;
  int missing = 0;
  for (int l = 0; l <= 2; ++l) {
    for (int n = 0; n <= 5; ++n) {
      auto build = [&](double eps) { return nu::hydrogen_like_input(eps, beta, l); };
      const nu::QuantizationScan qs = nu::quantization_roots(build, n, 1e-3, 1.0);
      if (qs.roots.size() != 1) {
        ++missing;
        continue;
      }
      worst = std::max(worst, rel(qs.roots.front().x, beta / (2.0 * (n + l + 1))));
    }
  }
  const double t = seconds_since(t0);
  return {missing == 0 && worst <= 1e-10 && t < 1.0,
          "max rel err " + sci(worst) + ", missing " + std::to_string(missing) + ", " + sci(t) + " s"};
}

// Random NU inputs with a real k.
Outcome perfect_square_test() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  int accepted = 0, attempts = 0, bad_residual = 0, nondeterministic = 0, no_branch = 0;
  double worst = 0.0;
  while (accepted < 100 && attempts < 100000) {
    ++attempts;
    nu::NUInput in{{coef(rng), coef(rng), coef(rng)}, {coef(rng), coef(rng), 0.0}, {coef(rng), coef(rng), coef(rng)}};
    std::vector<nu::KRoot> ks;
    try {
      ks = nu::solve_k(in);
    } catch (const Error&) {
      continue;
    }
    ++accepted;
    for (const nu::KRoot& kr : ks) {
      const Poly2 q = nu::under_root_quadratic(in, kr.k);
      const double scale = std::pow(1.0 + q.max_abs_coeff(), 2);
      worst = std::max(worst, kr.residual / scale);
      if (kr.residual > 1e-10 * scale) ++bad_residual;
    }
    try {
      const auto first = nu::select_branch(nu::pi_candidates(in)).chosen;
      for (int rep = 0; rep < 3; ++rep) {
        const auto again = nu::select_branch(nu::pi_candidates(in)).chosen;
        if (again.k != first.k || again.sign_choice != first.sign_choice || !(again.pi == first.pi)) {
          ++nondeterministic;
        }
      }
    } catch (const Error&) {
      ++no_branch;
    }
  }
  return {accepted == 100 && bad_residual == 0 && nondeterministic == 0,
          std::to_string(accepted) + " inputs, max scaled residual " + sci(worst) + ", nondeterministic " +
              std::to_string(nondeterministic) + " (" + std::to_string(no_branch) + " without tau' < 0)"};
}

// Default parameters end to end.
Outcome hylleraas_test() {
  const model::HylleraasParams p = model::HylleraasParams::reference();
  const oracle::RadialGrid g = oracle::RadialGrid::for_params(p);

  const LevelSearch mech = paper::energy_mechanical(p, 0);
  bool mech_ok = false;
  std::optional<double> mech_E;
  for (const EnergyLevel& lv : mech.levels) {
    const nu::Quantization q = nu::quantization_residual(paper::build_nu_input(p, lv.E), 0);
    if (std::abs(lv.E) < p.M && q.ok() && std::abs(*q.residual) <= nu::quantization_tolerance(q)) {
      mech_ok = true;
      mech_E = lv.E;
    }
  }

  bool oracle_ok = true;
  bool nodes_ok = true;
  std::optional<double> oracle_E;
  std::string nodes;
  for (int n = 0; n <= 3; ++n) {
    const oracle::OracleState st = oracle::oracle_state(p, n, g);
    if (st.search.levels.empty()) {
      if (n == 0) oracle_ok = false;
      continue;
    }
    const EnergyLevel& lv = st.search.levels.front();
    if (n == 0) {
      oracle_E = lv.E;
      oracle_ok = std::abs(lv.E) < p.M && lv.residual <= oracle::oracle_tolerance(p);
    }
    nodes += (nodes.empty() ? "" : ",") + std::to_string(st.nodes);
    if (st.nodes != n) nodes_ok = false;
  }

  std::string detail = "mechanical n=0 " + (mech_E ? sci(*mech_E) : std::string("none [") + mech.flags.str() + "]");
  detail += "; oracle n=0 " + (oracle_E ? sci(*oracle_E) : std::string("none"));
  detail += "; oracle nodes " + nodes;
  if (mech_E && oracle_E) detail += "; |dE| " + sci(std::abs(*mech_E - *oracle_E));
  return {mech_ok && oracle_ok && nodes_ok, detail};
}

// Determinism and totality of the audit at default parameters.
Outcome audit_test() {
  const model::HylleraasParams p = model::HylleraasParams::reference();
  const audit::AuditReport r1 = audit::run_audit(p, 3);
  const audit::AuditReport r2 = audit::run_audit(p, 3);
  const std::string j1 = audit::dump_json(r1), j2 = audit::dump_json(r2);
  const std::string c1 = audit::dump_csv(r1), c2 = audit::dump_csv(r2);
  const bool identical = j1 == j2 && c1 == c2;

  const char* identity_columns[] = {"disc_residual", "eq42_vs_derivative", "eq44_vs_eq12", "eq20_vs_eq23",
                                    "delta_a9_vs_eq35"};
  int missing = 0;
  for (const audit::AuditRow& row : r1.rows) {
    for (const char* name : identity_columns) {
      const audit::Check& c = row.check(name);
      if (!c.value || !std::isfinite(*c.value)) ++missing;
    }
  }
  int closed_form_null = 0;
  for (const audit::AuditRow& row : r1.rows) closed_form_null += !row.ode_residual_closedform.value;
  const bool columns = j1.find("\"eq42_vs_derivative\"") != std::string::npos &&
                       j1.find("\"eq44_vs_eq12\"") != std::string::npos;
  return {identical && missing == 0 && columns && r1.rows.size() == 4,
          std::string(identical ? "byte-identical" : "reports differ") + ", " + std::to_string(r1.rows.size()) +
              " rows, non-finite identity cells " + std::to_string(missing) + ", ode_residual_closedform null in " +
              std::to_string(closed_form_null) + " rows"};
}

// Jacobi, Rodrigues, normalisation and quadrature.
Outcome wavefunction_test() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> par(-0.9, 3.0), arg(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 10);
  double sym = 0.0, endpoint = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int n = deg(rng);
    const double a = par(rng), b = par(rng), x = arg(rng);
    const double lhs = wave::jacobi_P(n, a, b, -x);
    const double rhs = (n % 2 ? -1.0 : 1.0) * wave::jacobi_P(n, b, a, x);
    sym = std::max(sym, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-3));
    endpoint = std::max(endpoint, rel(wave::jacobi_P(n, a, b, 1.0), wave::binom(n + a, n)));
    const double lower = (n % 2 ? -1.0 : 1.0) * wave::binom(n + b, n);
    endpoint = std::max(endpoint, rel(wave::jacobi_P(n, a, b, -1.0), lower));
  }

  std::uniform_real_distribution<double> shift(-0.3, 1.5), spos(0.0, 5.0);
  double rodrigues = 0.0;
  for (int t = 0; t < 300; ++t) {
    const int n = t % 6;
    const double D = par(rng), F = par(rng), a = shift(rng), c = shift(rng);
    if (std::abs(c - a) < 0.05) continue;
    const double s = std::max(-a, -c) + 0.01 + spos(rng);
    const double leib = wave::rodrigues_chi(n, D, F, a, c, s);
    const double rec = wave::rodrigues_jacobi_constant(n, a, c) * wave::jacobi_P(n, D, F, wave::jacobi_argument(s, a, c));
    rodrigues = std::max(rodrigues, std::abs(leib - rec) / std::max(1.0, std::abs(leib)));
  }

  // Gaussian on a uniform grid: norm integral sqrt(pi)/2, idempotent and scale-free normalisation
  std::vector<double> r, v, v3;
  const double h = 1e-3;
  for (int i = 0; i <= 12000; ++i) {
    r.push_back(i * h);
    v.push_back(std::exp(-0.5 * r.back() * r.back()));
    v3.push_back(-3.0 * v.back());
  }
  const wave::RadialFunction once = wave::normalize(wave::sample({}, r, v));
  const wave::RadialFunction twice = wave::normalize(once);
  const wave::RadialFunction scaled = wave::normalize(wave::sample({}, r, v3));
  double idem = std::abs(twice.norm_constant - 1.0), lin = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    idem = std::max(idem, std::abs(twice.values[i] - once.values[i]));
    lin = std::max(lin, std::abs(scaled.values[i] + once.values[i]));
  }
  const double gauss = rel(1.0 / (once.norm_constant * once.norm_constant), std::sqrt(M_PI) / 2.0);
  const double quad = rel(integrate([](double x) { return std::exp(-x * x); }, 0.0, 12.0), std::sqrt(M_PI) / 2.0);

  const bool pass = sym <= 1e-12 && endpoint <= 1e-12 && rodrigues <= 1e-8 && idem <= 1e-12 && lin <= 1e-12 &&
                    gauss <= 1e-8 && quad <= 1e-8;
  return {pass, "symmetry " + sci(sym) + ", endpoints " + sci(endpoint) + ", rodrigues " + sci(rodrigues) +
                    ", idempotence " + sci(idem) + ", linearity " + sci(lin) + ", gaussian " + sci(gauss) +
                    ", quadrature " + sci(quad)};
}

// (E0 - M) approaches the Schrodinger ground state as M grows.
Outcome nonrelativistic_test() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> gaps;
  std::string detail;
  for (double M : {10.0, 100.0, 1000.0}) {
    model::HylleraasParams p = model::HylleraasParams::reference();
    p.M = M * p.D_e;
    const oracle::RadialGrid g = oracle::RadialGrid::for_params(p);
    const LevelSearch ls = oracle::solve_relativistic(p, 0, g);
    if (ls.levels.empty()) {
      detail += "M=" + sci(M) + " no level; ";
      gaps.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double e_nr = oracle::schrodinger_limit(p, 0, g);
    gaps.push_back(std::abs((ls.levels.front().E - p.M) - e_nr));
    detail += "M=" + sci(M) + " gap " + sci(gaps.back()) + "; ";
  }
  const double t = seconds_since(t0);
  const bool decreasing = gaps.size() == 3 && gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {decreasing && t < 60.0, detail + sci(t) + " s"};
}

std::string read_or_empty(const fs::path& p) {
  try {
    return io::read_file(p);
  } catch (const Error&) {
    return {};
  }
}

// spectrum and audit outputs at the default config against the committed golden files.
Outcome golden_test() {
  const fs::path base = fs::temp_directory_path() / ("hykg_acceptance_" + std::to_string(::getpid()));
  config::RunConfig c;
  std::ostringstream log;
  const char* names[] = {"spectrum.csv", "spectrum.json", "audit.csv", "audit.json"};
  std::vector<std::string> runs[2];
  for (int k = 0; k < 2; ++k) {
    c.out = (base / std::to_string(k)).string();
    cli::cmd_spectrum(c, log);
    cli::cmd_audit(c, log);
    for (const char* n : names) runs[k].push_back(read_or_empty(fs::path(c.out) / n));
  }
  fs::remove_all(base);
  int differ = 0, golden_mismatch = 0;
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    if (runs[0][i].empty() || runs[0][i] != runs[1][i]) ++differ;
    if (read_or_empty(fs::path(HYKG_GOLDEN_DIR) / names[i]) != runs[0][i]) ++golden_mismatch;
  }
  return {differ == 0 && golden_mismatch == 0, "files differing across runs " + std::to_string(differ) +
                                                   ", golden mismatches " + std::to_string(golden_mismatch)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {1, "oracle box", box_test},
      {2, "oscillator fixture", oscillator_test},
      {3, "NU hydrogen-like fixture", hydrogen_test},
      {4, "perfect-square invariant", perfect_square_test},
      {5, "Hylleraas end-to-end", hylleraas_test},
      {6, "audit determinism and totality", audit_test},
      {7, "wavefunction suite", wavefunction_test},
      {8, "non-relativistic limit trend", nonrelativistic_test},
      {9, "CLI golden files", golden_test},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %-32s %s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures;
}
