#pragma once

// Batch commands behind tools/hykg. Each returns a process exit code:
// 0 ok, 1 selftest failure, 2 configuration error, 3 I/O error, 4 level missing.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "hykg/audit.hpp"
#include "hykg/config.hpp"
#include "hykg/error.hpp"
#include "hykg/io.hpp"
#include "hykg/nu_engine.hpp"
#include "hykg/oracle.hpp"
#include "hykg/paper_pipeline.hpp"
#include "hykg/version.hpp"
#include "hykg/wavefunction.hpp"

namespace hykg::cli {

namespace fs = std::filesystem;
using config::RunConfig;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kSelftestFailed = 1, kConfigError = 2, kIoError = 3, kLevelMissing = 4 };

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::ConfigError:
    case Errc::DegenerateParams:
    case Errc::InvalidArgument:
      return kConfigError;
    case Errc::LevelMissing:
      return kLevelMissing;
    default:
      return kIoError;
  }
}

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results must be written by index.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += jobs) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline oracle::RadialGrid grid_for(const RunConfig& c, const model::HylleraasParams& p) {
  return oracle::RadialGrid::for_params(p, c.r_max, c.N);
}

inline paper::PipelineOptions pipeline_for(const RunConfig& c) {
  paper::PipelineOptions o;
  o.intervals = c.intervals;
  return o;
}

/// Levels of one engine for n = 0..n_max, with ordering violations flagged.
inline std::vector<LevelSearch> engine_levels(const RunConfig& c, const model::HylleraasParams& p, Engine e,
                                              int jobs) {
  std::vector<LevelSearch> by_n(c.n_max + 1);
  const oracle::RadialGrid g = grid_for(c, p);
  const paper::PipelineOptions po = pipeline_for(c);
  parallel_for(c.n_max + 1, jobs, [&](int n) {
    try {
      switch (e) {
        case Engine::Eq45Verbatim: by_n[n] = paper::energy_eq45(p, n, po); break;
        case Engine::ImplicitLambda: by_n[n] = paper::energy_implicit(p, n, po); break;
        case Engine::MechanicalNU: by_n[n] = paper::energy_mechanical(p, n, po); break;
        case Engine::Oracle: by_n[n] = oracle::oracle_state(p, n, g).search; break;
      }
    } catch (const Error&) {
      by_n[n].flags.set(LevelFlag::NoRoot);
    }
  });
  paper::mark_order_violations(by_n);
  return by_n;
}

inline std::string spectrum_csv(const std::vector<EnergyLevel>& levels) {
  std::string out = io::csv_line({"n", "engine", "E", "Ebar", "residual", "flags"});
  for (const EnergyLevel& lv : levels) {
    out += io::csv_line({std::to_string(lv.n), std::string(to_string(lv.engine)), io::format_double(lv.E),
                         io::format_double(lv.Ebar), io::format_double(lv.residual), lv.flags.str()});
  }
  return out;
}

inline std::string spectrum_json(const std::vector<EnergyLevel>& levels, const model::HylleraasParams& p) {
  json arr = json::array();
  for (const EnergyLevel& lv : levels) {
    arr.push_back(json{{"n", lv.n},
                       {"engine", std::string(to_string(lv.engine))},
                       {"E", lv.E},
                       {"Ebar", lv.Ebar},
                       {"residual", lv.residual},
                       {"flags", lv.flags.names()}});
  }
  return json{{"version", kVersion}, {"params", audit::params_to_json(p)}, {"levels", arr}}.dump(2) + "\n";
}

/// All levels of the selected engines, ordered by n then engine.
inline std::vector<EnergyLevel> collect_spectrum(const RunConfig& c, const model::HylleraasParams& p, int jobs) {
  std::vector<std::vector<LevelSearch>> per_engine;
  std::vector<Engine> engines;
  for (Engine e : kAllEngines) {
    if (c.selected(e)) {
      engines.push_back(e);
      per_engine.push_back(engine_levels(c, p, e, jobs));
    }
  }
  std::vector<EnergyLevel> out;
  for (int n = 0; n <= c.n_max; ++n) {
    for (std::size_t i = 0; i < engines.size(); ++i) {
      for (const EnergyLevel& lv : per_engine[i][n].levels) out.push_back(lv);
    }
  }
  return out;
}

/// Runs `point(params, dir, jobs)` once, or once per sweep value into indexed subdirectories
/// followed by index.csv.
inline int run_points(const RunConfig& c, const fs::path& out,
                      const std::function<int(const model::HylleraasParams&, const fs::path&, int)>& point) {
  if (!c.sweep) return point(c.params, out, c.jobs);
  const std::vector<double> values = c.sweep->values();
  std::vector<int> codes(values.size(), kOk);
  parallel_for(static_cast<int>(values.size()), c.jobs, [&](int i) {
    model::HylleraasParams p = c.params;
    config::set_param(p, c.sweep->param, values[i]);
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03d", i);
    try {
      codes[i] = point(p, out / dir, 1);
    } catch (const Error& e) {
      codes[i] = exit_code_for(e.code());
    }
  });
  std::string index = io::csv_line({"index", "param", "value", "dir", "exit"});
  int worst = kOk;
  for (std::size_t i = 0; i < values.size(); ++i) {
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03d", static_cast<int>(i));
    index += io::csv_line({std::to_string(i), c.sweep->param, io::format_double(values[i]), dir,
                           std::to_string(codes[i])});
    worst = std::max(worst, codes[i]);
  }
  io::write_atomic(out / "index.csv", index);
  return worst;
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& log) {
  const fs::path out(c.out);
  return run_points(c, out, [&](const model::HylleraasParams& p, const fs::path& dir, int jobs) {
    const std::vector<EnergyLevel> levels = collect_spectrum(c, p, jobs);
    if (c.csv) io::write_atomic(dir / "spectrum.csv", spectrum_csv(levels));
    if (c.json) io::write_atomic(dir / "spectrum.json", spectrum_json(levels, p));
    log << "spectrum: " << levels.size() << " levels -> " << dir.string() << "\n";
    return kOk;
  });
}

inline int cmd_audit(const RunConfig& c, std::ostream& log) {
  const fs::path out(c.out);
  return run_points(c, out, [&](const model::HylleraasParams& p, const fs::path& dir, int jobs) {
    audit::AuditOptions o;
    o.r_max = c.r_max;
    o.N = c.N;
    o.pipeline = pipeline_for(c);
    o.jobs = jobs;
    const audit::AuditReport rep = audit::run_audit(p, c.n_max, o);
    if (c.json) io::write_atomic(dir / "audit.json", audit::dump_json(rep));
    if (c.csv) io::write_atomic(dir / "audit.csv", audit::dump_csv(rep));
    log << "audit: " << rep.rows.size() << " rows -> " << dir.string() << "\n";
    return kOk;
  });
}

inline int cmd_oracle(const RunConfig& c, std::ostream& log) {
  const fs::path out(c.out);
  return run_points(c, out, [&](const model::HylleraasParams& p, const fs::path& dir, int jobs) {
    const oracle::RadialGrid g = grid_for(c, p);
    struct Row {
      oracle::OracleState st;
      std::optional<double> numerov;
      Flags numerov_flags;
    };
    std::vector<Row> rows(c.n_max + 1);
    parallel_for(c.n_max + 1, jobs, [&](int n) {
      rows[n].st = oracle::oracle_state(p, n, g);
      if (rows[n].st.search.levels.empty()) return;
      const double E = rows[n].st.search.levels.front().E;
      const double edge = p.M * (1.0 - 1e-9);
      const auto br = std::make_pair(std::max(E - 1e-3 * p.M, -edge), std::min(E + 1e-3 * p.M, edge));
      const LevelSearch ns = oracle::numerov_shoot(p, n, g, br);
      rows[n].numerov_flags = ns.flags;
      if (!ns.levels.empty()) {
        rows[n].numerov = ns.levels.front().E;
        rows[n].numerov_flags.merge(ns.levels.front().flags);
      }
    });
    std::string csv = io::csv_line({"n", "E", "Ebar", "residual", "nodes", "E_numerov", "flags"});
    json arr = json::array();
    for (int n = 0; n <= c.n_max; ++n) {
      const Row& r = rows[n];
      if (r.st.search.levels.empty()) {
        csv += io::csv_line({std::to_string(n), "", "", "", "", "", r.st.search.flags.str()});
        arr.push_back(json{{"n", n}, {"E", nullptr}, {"flags", r.st.search.flags.names()}});
        continue;
      }
      const EnergyLevel& lv = r.st.search.levels.front();
      Flags f = lv.flags;
      f.merge(r.st.search.flags);
      csv += io::csv_line({std::to_string(n), io::format_double(lv.E), io::format_double(lv.Ebar),
                           io::format_double(lv.residual), std::to_string(r.st.nodes),
                           io::format_optional(r.numerov), f.str()});
      arr.push_back(json{{"n", n},
                         {"E", lv.E},
                         {"Ebar", lv.Ebar},
                         {"residual", lv.residual},
                         {"nodes", r.st.nodes},
                         {"E_numerov", audit::opt_to_json(r.numerov)},
                         {"numerov_flags", r.numerov_flags.names()},
                         {"flags", f.names()}});
    }
    if (c.csv) io::write_atomic(dir / "oracle.csv", csv);
    if (c.json) {
      io::write_atomic(dir / "oracle.json",
                       json{{"version", kVersion}, {"params", audit::params_to_json(p)}, {"levels", arr}}.dump(2) + "\n");
    }
    log << "oracle: n = 0.." << c.n_max << " -> " << dir.string() << "\n";
    return kOk;
  });
}

/// wf_n{n}.csv with r, R_closed, R_oracle plus a wf_n{n}.flags.json sidecar.
inline int cmd_wavefunction(const RunConfig& c, int n, std::ostream& log) {
  if (n < 0) throw Error(Errc::ConfigError, "wavefunction n must be >= 0");
  if (n > 10) {
    log << "wavefunction: levels are computed for n <= 10 only\n";
    return kLevelMissing;
  }
  const model::HylleraasParams& p = c.params;
  const oracle::RadialGrid g = grid_for(c, p);
  const paper::PipelineOptions po = pipeline_for(c);

  audit::EngineResults res;
  for (Engine e : kAllEngines) {
    if (!c.selected(e)) continue;
    LevelSearch& ls = res.searches[audit::engine_index(e)];
    try {
      switch (e) {
        case Engine::Eq45Verbatim: ls = paper::energy_eq45(p, n, po); break;
        case Engine::ImplicitLambda: ls = paper::energy_implicit(p, n, po); break;
        case Engine::MechanicalNU: ls = paper::energy_mechanical(p, n, po); break;
        case Engine::Oracle: {
          oracle::OracleState st = oracle::oracle_state(p, n, g);
          ls = st.search;
          res.oracle_u = st.u;
          break;
        }
      }
    } catch (const Error&) {
      ls.flags.set(LevelFlag::NoRoot);
    }
  }
  const auto ref = audit::reference_level(res);
  if (!ref) {
    log << "wavefunction: no level n = " << n << " for the selected engines\n";
    return kLevelMissing;
  }
  const audit::ClosedFormReport cf = audit::closed_form_check(p, n, ref->second, g, res.oracle_u);

  std::vector<std::string> flags = cf.flags;
  std::vector<double> oracle_values = res.oracle_u;
  if (!oracle_values.empty()) {
    try {
      EnergyLevel lv = *paper::representative(res.searches[audit::engine_index(Engine::Oracle)]);
      oracle_values = wave::normalize(wave::sample(lv, g.points(), oracle_values)).values;
    } catch (const Error& e) {
      flags.push_back("R_oracle:" + std::string(to_string(e.code())));
    }
  }
  std::string csv = io::csv_line({"r", "R_closed", "R_oracle"});
  for (int i = 0; i < g.N; ++i) {
    csv += io::csv_line({io::format_double(g.r(i)), cf.values.empty() ? "" : io::format_double(cf.values[i]),
                         oracle_values.empty() ? "" : io::format_double(oracle_values[i])});
  }
  const fs::path out(c.out);
  const std::string stem = "wf_n" + std::to_string(n);
  io::write_atomic(out / (stem + ".csv"), csv);
  const json side{{"version", kVersion},
                  {"n", n},
                  {"engine", std::string(to_string(ref->first))},
                  {"E", ref->second},
                  {"variant", cf.variant ? json(*cf.variant) : json(nullptr)},
                  {"ode_residual", audit::opt_to_json(cf.ode_residual)},
                  {"overlap", audit::opt_to_json(cf.overlap)},
                  {"flags", flags}};
  io::write_atomic(out / (stem + ".flags.json"), side.dump(2) + "\n");
  log << "wavefunction: n = " << n << " (" << to_string(ref->first) << ") -> " << (out / (stem + ".csv")).string()
      << "\n";
  return kOk;
}

// ---------------------------------------------------------------- selftest

struct FixtureResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::string fmt_rel(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

/// Embedded fixtures. `perturb` names a fixture whose expected values are shifted by 1%.
inline std::vector<FixtureResult> run_fixtures(const std::string& perturb = {}) {
  std::vector<FixtureResult> out;
  auto shift = [&](const std::string& name) { return perturb == name ? 1.01 : 1.0; };

  {
    const oracle::RadialGrid g = oracle::RadialGrid::box(20.0, 4000);
    const std::vector<double> ev = oracle::lowest_eigenvalues(g, std::vector<double>(g.N, 0.0), 3);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double x = std::pow((k + 1) * M_PI / 20.0, 2) * shift("box");
      worst = std::max(worst, std::abs(ev[k] - x) / x);
    }
    out.push_back({"box", worst < 1e-4, "max rel err " + fmt_rel(worst)});
  }
  {
    const oracle::RadialGrid g = oracle::RadialGrid::box(10.0, 4000);
    std::vector<double> W(g.N);
    for (int i = 0; i < g.N; ++i) W[i] = g.r(i) * g.r(i);
    const std::vector<double> ev = oracle::lowest_eigenvalues(g, W, 3);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double x = (4.0 * k + 3.0) * shift("oscillator");
      worst = std::max(worst, std::abs(ev[k] - x) / x);
    }
    out.push_back({"oscillator", worst < 1e-4, "max rel err " + fmt_rel(worst)});
  }
  {
    const double beta = 1.0;
    double worst = 0.0;
    bool all_found = true;
    for (int l = 0; l <= 2; ++l) {
      for (int n = 0; n <= 5; ++n) {
        auto build = [&](double eps) { return nu::hydrogen_like_input(eps, beta, l); };
        const nu::QuantizationScan qs = nu::quantization_roots(build, n, 1e-3, 1.0);
        const double x = beta / (2.0 * (n + l + 1)) * shift("hydrogen_nu");
        if (qs.roots.size() != 1) {
          all_found = false;
          continue;
        }
        worst = std::max(worst, std::abs(qs.roots.front().x - x) / x);
      }
    }
    out.push_back({"hydrogen_nu", all_found && worst < 1e-10, "max rel err " + fmt_rel(worst)});
  }
  {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      for (double a : {-0.5, 0.3, 1.7}) {
        for (double b : {-0.2, 0.8, 2.5}) {
          for (double x : {-0.9, -0.3, 0.4, 0.85}) {
            const double lhs = wave::jacobi_P(n, a, b, -x) * shift("jacobi");
            const double rhs = (n % 2 ? -1.0 : 1.0) * wave::jacobi_P(n, b, a, x);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs) + 1e-12));
          }
          const double end = wave::jacobi_P(n, a, b, 1.0);
          const double expect = wave::binom(n + a, n);
          worst = std::max(worst, std::abs(end - expect) / std::abs(expect));
        }
      }
    }
    out.push_back({"jacobi", worst < 1e-12, "max rel err " + fmt_rel(worst)});
  }
  return out;
}

inline bool use_color() { return std::getenv("HYKG_NO_COLOR") == nullptr && isatty(fileno(stdout)); }

inline int cmd_selftest(std::ostream& os, const std::string& perturb = {}, bool color = false) {
  const std::vector<FixtureResult> results = run_fixtures(perturb);
  bool ok = true;
  for (const FixtureResult& r : results) {
    const char* tag = r.pass ? "PASS" : "FAIL";
    if (color) tag = r.pass ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
    os << std::left << std::setw(14) << r.name << tag << "  " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? kOk : kSelftestFailed;
}

}  // namespace hykg::cli
