#pragma once

// Cross-engine comparison per radial quantum number, plus the numeric checks of
// the closed-form identities. Failures become flags; only bad configuration throws.

#include <array>
#include <limits>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "hykg/error.hpp"
#include "hykg/hylleraas.hpp"
#include "hykg/io.hpp"
#include "hykg/level.hpp"
#include "hykg/nu_engine.hpp"
#include "hykg/oracle.hpp"
#include "hykg/paper_pipeline.hpp"
#include "hykg/version.hpp"
#include "hykg/wavefunction.hpp"

namespace hykg::audit {

using model::HylleraasParams;

/// A nullable numeric column with the reasons it is null or suspect.
struct Check {
  std::optional<double> value;
  std::vector<std::string> flags;

  friend bool operator==(const Check&, const Check&) = default;
};

struct EngineCell {
  std::optional<double> E;
  std::optional<double> residual;
  int level_count = 0;
  std::vector<std::string> flags;

  friend bool operator==(const EngineCell&, const EngineCell&) = default;
};

struct PairDiff {
  std::string first;
  std::string second;
  std::optional<double> value;

  friend bool operator==(const PairDiff&, const PairDiff&) = default;
};

inline constexpr const char* kCheckNames[] = {"disc_residual",    "eq42_vs_derivative", "eq44_vs_eq12",
                                              "eq20_vs_eq23",     "delta_a9_vs_eq35",   "ode_residual_closedform"};

struct AuditRow {
  int n = 0;
  std::array<EngineCell, 4> engines;  // kAllEngines order
  std::vector<PairDiff> diffs;        // every unordered engine pair, kAllEngines order
  std::string reference_engine;       // engine whose E feeds the checks, or "none"
  double reference_E = 0.0;
  Check disc_residual;
  std::optional<bool> tau_prime_sign;  // a tau' < 0 candidate exists at reference_E
  Check eq42_vs_derivative;
  Check eq44_vs_eq12;
  Check eq20_vs_eq23;
  Check delta_a9_vs_eq35;
  Check ode_residual_closedform;
  std::optional<std::string> closedform_variant;
  std::optional<double> closedform_overlap;

  const Check& check(std::string_view name) const {
    if (name == "disc_residual") return disc_residual;
    if (name == "eq42_vs_derivative") return eq42_vs_derivative;
    if (name == "eq44_vs_eq12") return eq44_vs_eq12;
    if (name == "eq20_vs_eq23") return eq20_vs_eq23;
    if (name == "delta_a9_vs_eq35") return delta_a9_vs_eq35;
    if (name == "ode_residual_closedform") return ode_residual_closedform;
    throw Error(Errc::InvalidArgument, "unknown check " + std::string(name));
  }

  friend bool operator==(const AuditRow&, const AuditRow&) = default;
};

struct AuditOptions {
  std::optional<double> r_max;  // oracle grid; default 30/((1+K)w)
  int N = 4000;
  paper::PipelineOptions pipeline;
  int jobs = 1;
};

struct AuditConfig {
  HylleraasParams params;
  int n_max = 3;
  double r_max = 0.0;
  int N = 4000;
  int intervals = 2000;

  friend bool operator==(const AuditConfig& x, const AuditConfig& y) {
    const auto& p = x.params;
    const auto& q = y.params;
    return p.K == q.K && p.k1 == q.k1 && p.k2 == q.k2 && p.omega == q.omega && p.D_e == q.D_e &&
           p.M == q.M && p.mu == q.mu && p.s_sign == q.s_sign && x.n_max == y.n_max &&
           x.r_max == y.r_max && x.N == y.N && x.intervals == y.intervals;
  }
};

struct AuditSummary {
  int rows = 0;
  std::map<std::string, int> missing_levels;  // engine -> rows without a level
  std::map<std::string, int> checks_nonzero;  // check -> rows with value > 1e-8
  std::map<std::string, int> checks_null;     // check -> rows with a null value

  friend bool operator==(const AuditSummary&, const AuditSummary&) = default;
};

struct AuditReport {
  std::string version = kVersion;
  AuditConfig config;
  std::vector<AuditRow> rows;
  AuditSummary summary;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Per-engine results for one n.
struct EngineResults {
  std::array<LevelSearch, 4> searches;  // kAllEngines order
  std::vector<double> oracle_u;         // eigenvector of the oracle level, if any
};

inline std::size_t engine_index(Engine e) { return static_cast<std::size_t>(e); }

inline EngineResults compute_levels(const HylleraasParams& p, int n, const oracle::RadialGrid& g,
                                    const AuditOptions& o) {
  EngineResults r;
  auto attempt = [&](Engine e, auto&& fn) {
    try {
      r.searches[engine_index(e)] = fn();
    } catch (const Error&) {
      r.searches[engine_index(e)].flags.set(LevelFlag::NoRoot);
    }
  };
  attempt(Engine::Eq45Verbatim, [&] { return paper::energy_eq45(p, n, o.pipeline); });
  attempt(Engine::ImplicitLambda, [&] { return paper::energy_implicit(p, n, o.pipeline); });
  attempt(Engine::MechanicalNU, [&] { return paper::energy_mechanical(p, n, o.pipeline); });
  try {
    oracle::OracleState st = oracle::oracle_state(p, n, g);
    r.searches[engine_index(Engine::Oracle)] = st.search;
    r.oracle_u = st.u;
  } catch (const Error&) {
    r.searches[engine_index(Engine::Oracle)].flags.set(LevelFlag::NoRoot);
  }
  return r;
}

/// Candidate with the most negative tau', valid or not; the branch rule without its sign filter.
inline std::optional<nu::NUSolution> steepest_candidate(const nu::NUInput& in, std::vector<std::string>& flags) {
  try {
    const std::vector<nu::NUSolution> cands = nu::pi_candidates(in);
    try {
      return nu::select_branch(cands).chosen;
    } catch (const Error&) {
      flags.push_back("NoValidBranch");
      std::vector<nu::NUSolution> shifted = cands;
      double worst = 0.0;
      for (const auto& c : cands) worst = std::max(worst, c.tau_prime());
      // shift every tau' below zero so the same ordering picks among all candidates
      for (auto& c : shifted) c.tau.c1 -= worst + 1.0;
      nu::NUSolution s = nu::select_branch(shifted).chosen;
      s.tau.c1 += worst + 1.0;
      return s;
    }
  } catch (const Error& e) {
    flags.emplace_back(to_string(e.code()));
    return std::nullopt;
  }
}

/// Closed-form radial function checks at energy E on the oracle grid.
struct ClosedFormReport {
  std::optional<double> ode_residual;  // smallest over the four variants
  std::optional<std::string> variant;
  std::optional<double> overlap;       // best variant against the oracle eigenvector
  std::vector<double> values;          // best variant, normalised when the tail allows
  std::vector<std::string> flags;
};

inline std::string variant_name(wave::Variant v) {
  return std::string(to_string(v.reading)) + "/" + std::string(to_string(v.placement));
}

inline ClosedFormReport closed_form_check(const HylleraasParams& p, int n, double E, const oracle::RadialGrid& g,
                                          const std::vector<double>& oracle_u) {
  ClosedFormReport rep;
  wave::WavefactorParams w;
  try {
    w = wave::exponents_DF(p, E);
  } catch (const Error& e) {
    rep.flags.emplace_back(to_string(e.code()));
    return rep;
  }
  const std::vector<double> W = oracle::hylleraas_W(p, E, oracle::potential_samples(p, g));
  const double ebar = E * E - p.M * p.M;
  std::vector<double> best_values;
  for (const wave::Variant v : wave::kAllVariants) {
    std::vector<double> u(g.N);
    bool ok = true;
    try {
      for (int i = 0; i < g.N; ++i) {
        u[i] = wave::radial_R(p, w, n, g.r(i), v);
        if (!std::isfinite(u[i])) ok = false;
      }
    } catch (const Error& e) {
      rep.flags.emplace_back(to_string(e.code()));
      ok = false;
    }
    if (!ok) continue;
    const double res = wave::ode_residual(u, W, ebar, g.h);
    if (!std::isfinite(res)) continue;
    if (!rep.ode_residual || res < *rep.ode_residual) {
      rep.ode_residual = res;
      rep.variant = variant_name(v);
      best_values = std::move(u);
    }
  }
  if (!rep.ode_residual) {
    rep.flags.emplace_back("NonFinite");
    return rep;
  }
  try {
    EnergyLevel lv;
    lv.n = n;
    lv.E = E;
    lv.Ebar = ebar;
    best_values = wave::normalize(wave::sample(lv, g.points(), best_values)).values;
  } catch (const Error& e) {
    rep.flags.emplace_back(to_string(e.code()));
  }
  if (!oracle_u.empty()) rep.overlap = wave::overlap(best_values, oracle_u);
  rep.values = std::move(best_values);
  return rep;
}

/// Engine whose level feeds the identity columns: MechanicalNU, Oracle, ImplicitLambda, Eq45Verbatim.
inline std::optional<std::pair<Engine, double>> reference_level(const EngineResults& r) {
  for (Engine e : {Engine::MechanicalNU, Engine::Oracle, Engine::ImplicitLambda, Engine::Eq45Verbatim}) {
    if (auto lv = paper::representative(r.searches[engine_index(e)])) return std::make_pair(e, lv->E);
  }
  return std::nullopt;
}

inline double coeff_scale(const Poly2& q) { return std::max(1.0, q.max_abs_coeff()); }

inline AuditRow build_row(const HylleraasParams& p, int n, const EngineResults& r, const oracle::RadialGrid& g) {
  AuditRow row;
  row.n = n;
  for (Engine e : kAllEngines) {
    const LevelSearch& ls = r.searches[engine_index(e)];
    EngineCell& cell = row.engines[engine_index(e)];
    cell.level_count = static_cast<int>(ls.levels.size());
    Flags f = ls.flags;
    if (auto lv = paper::representative(ls)) {
      cell.E = lv->E;
      cell.residual = lv->residual;
      f.merge(lv->flags);
    }
    cell.flags = f.names();
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      PairDiff d{std::string(to_string(kAllEngines[i])), std::string(to_string(kAllEngines[j])), std::nullopt};
      if (row.engines[i].E && row.engines[j].E) d.value = std::abs(*row.engines[i].E - *row.engines[j].E) / p.M;
      row.diffs.push_back(d);
    }
  }

  const auto ref = reference_level(r);
  std::vector<std::string> ref_flags;
  if (ref) {
    row.reference_engine = std::string(to_string(ref->first));
    row.reference_E = ref->second;
  } else {
    row.reference_engine = "none";
    row.reference_E = 0.0;
    ref_flags.push_back("NoReferenceLevel");
  }
  const double E = row.reference_E;
  const model::AppendixConstants k = model::appendix_constants(p, E);
  auto with_ref_flags = [&](Check& c) { c.flags.insert(c.flags.begin(), ref_flags.begin(), ref_flags.end()); };

  // closed-form identities
  row.eq20_vs_eq23.value = std::abs(k.gamma2_direct - k.gamma2) / std::max(1.0, std::abs(k.gamma2));
  row.delta_a9_vs_eq35.value =
      std::abs(k.delta_A9 * k.delta_A9 - k.delta2) / std::max(1.0, std::abs(k.delta2));

  // mechanical reduction at the same energy
  const nu::NUInput in = paper::build_nu_input(k);
  try {
    const std::vector<nu::KRoot> ks = nu::solve_k(in);
    double best = std::numeric_limits<double>::infinity();
    for (const nu::KRoot& kr : ks) {
      const double sc = coeff_scale(nu::under_root_quadratic(in, kr.k));
      best = std::min(best, kr.residual / (sc * sc));
    }
    row.disc_residual.value = best;
  } catch (const Error& e) {
    row.disc_residual.flags.emplace_back(to_string(e.code()));
  }
  std::vector<std::string> mech_flags;
  const std::optional<nu::NUSolution> mech = steepest_candidate(in, mech_flags);
  const paper::PaperIntermediates pi = paper::paper_intermediates(k, E, n);
  std::vector<std::string> paper_flags;
  if (!pi.real()) paper_flags.emplace_back("NegativeUnderSqrt");
  if (mech) {
    row.tau_prime_sign = mech->tau_prime() < 0.0;
    const double tp = mech->tau_prime();
    row.eq42_vs_derivative.value = std::abs(pi.tau_prime - tp) / std::max(1.0, std::abs(tp));
    const double ln = nu::lambda_n(in, *mech, n);
    row.eq44_vs_eq12.value = std::abs(pi.lambda_n - ln) / std::max(1.0, std::abs(ln));
  }
  for (Check* c : {&row.eq42_vs_derivative, &row.eq44_vs_eq12}) {
    c->flags.insert(c->flags.end(), mech_flags.begin(), mech_flags.end());
    c->flags.insert(c->flags.end(), paper_flags.begin(), paper_flags.end());
  }

  const ClosedFormReport cf = closed_form_check(p, n, E, g, r.oracle_u);
  row.ode_residual_closedform.value = cf.ode_residual;
  row.ode_residual_closedform.flags = cf.flags;
  row.closedform_variant = cf.variant;
  row.closedform_overlap = cf.overlap;

  for (Check* c : {&row.disc_residual, &row.eq42_vs_derivative, &row.eq44_vs_eq12, &row.eq20_vs_eq23,
                   &row.delta_a9_vs_eq35, &row.ode_residual_closedform}) {
    with_ref_flags(*c);
  }
  return row;
}

inline AuditSummary summarize(const std::vector<AuditRow>& rows) {
  AuditSummary s;
  s.rows = static_cast<int>(rows.size());
  for (Engine e : kAllEngines) s.missing_levels[std::string(to_string(e))] = 0;
  for (const char* name : kCheckNames) {
    s.checks_nonzero[name] = 0;
    s.checks_null[name] = 0;
  }
  for (const AuditRow& row : rows) {
    for (Engine e : kAllEngines) {
      if (!row.engines[engine_index(e)].E) ++s.missing_levels[std::string(to_string(e))];
    }
    for (const char* name : kCheckNames) {
      const Check& c = row.check(name);
      if (!c.value) {
        ++s.checks_null[name];
      } else if (*c.value > 1e-8) {
        ++s.checks_nonzero[name];
      }
    }
  }
  return s;
}

/// One row per n in [0, n_max]. Throws ConfigError for invalid parameters or n_max > 10.
inline AuditReport run_audit(const HylleraasParams& p, int n_max, const AuditOptions& o = {}) {
  try {
    model::validate(p);
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.what());
  }
  if (n_max < 0 || n_max > 10) throw Error(Errc::ConfigError, "n_max must be in [0, 10]");
  const oracle::RadialGrid g = [&] {
    try {
      return oracle::RadialGrid::for_params(p, o.r_max, o.N);
    } catch (const Error& e) {
      throw Error(Errc::ConfigError, e.what());
    }
  }();

  AuditReport rep;
  rep.config = {p, n_max, g.r_max, g.N, o.pipeline.intervals};
  rep.rows.resize(n_max + 1);
  auto work = [&](int n) { rep.rows[n] = build_row(p, n, compute_levels(p, n, g, o), g); };
  const int jobs = std::max(1, std::min(o.jobs, n_max + 1));
  if (jobs == 1) {
    for (int n = 0; n <= n_max; ++n) work(n);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (int n = t; n <= n_max; n += jobs) work(n);
      });
    }
    for (auto& th : pool) th.join();
  }
  rep.summary = summarize(rep.rows);
  return rep;
}

/// Identity residuals at arbitrary energies, without root finding.
struct IdentitySample {
  double E = 0.0;
  double beta_split_identity = 0.0;      // beta^2 vs eps^2 - beta'^2, zero by construction
  double eq20_vs_eq23 = 0.0;
  double delta_a9_vs_eq35 = 0.0;
  double tau_prime_vs_tau_slope = 0.0;   // stated tau' against d/ds of the stated tau
  std::optional<double> tau_prime_vs_mech;
  std::optional<double> lambda_n1_vs_mech;
  std::optional<double> lambda_n2_vs_mech;
  std::vector<std::string> flags;
};

inline std::vector<IdentitySample> identity_checks(const HylleraasParams& p, const std::vector<double>& E_samples) {
  model::validate(p);
  std::vector<IdentitySample> out;
  for (double E : E_samples) {
    IdentitySample s;
    s.E = E;
    const model::AppendixConstants k = model::appendix_constants(p, E);
    s.beta_split_identity = std::abs(k.beta2 - (k.eps2 - k.betap2)) / std::max(1.0, std::abs(k.beta2));
    s.eq20_vs_eq23 = std::abs(k.gamma2_direct - k.gamma2) / std::max(1.0, std::abs(k.gamma2));
    s.delta_a9_vs_eq35 = std::abs(k.delta_A9 * k.delta_A9 - k.delta2) / std::max(1.0, std::abs(k.delta2));
    const paper::PaperIntermediates p1 = paper::paper_intermediates(k, E, 1);
    const paper::PaperIntermediates p2 = paper::paper_intermediates(k, E, 2);
    if (!p1.real()) s.flags.emplace_back("NegativeUnderSqrt");
    s.tau_prime_vs_tau_slope = std::abs(p1.tau_prime - p1.tau1) / std::max(1.0, std::abs(p1.tau1));
    const nu::NUInput in = paper::build_nu_input(k);
    if (const auto mech = steepest_candidate(in, s.flags)) {
      const double tp = mech->tau_prime();
      s.tau_prime_vs_mech = std::abs(p1.tau_prime - tp) / std::max(1.0, std::abs(tp));
      const double l1 = nu::lambda_n(in, *mech, 1);
      const double l2 = nu::lambda_n(in, *mech, 2);
      s.lambda_n1_vs_mech = std::abs(p1.lambda_n - l1) / std::max(1.0, std::abs(l1));
      s.lambda_n2_vs_mech = std::abs(p2.lambda_n - l2) / std::max(1.0, std::abs(l2));
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- serialisation

using nlohmann::json;

inline json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

inline void to_json(json& j, const Check& c) { j = json{{"value", opt_to_json(c.value)}, {"flags", c.flags}}; }

inline void from_json(const json& j, Check& c) {
  c.value = opt_from_json(j.at("value"));
  c.flags = j.at("flags").get<std::vector<std::string>>();
}

inline json params_to_json(const HylleraasParams& p) {
  return json{{"K", p.K},   {"k1", p.k1}, {"k2", p.k2}, {"omega", p.omega}, {"D_e", p.D_e},
              {"M", p.M},   {"mu", p.mu}, {"s_sign", std::string(model::to_string(p.s_sign))}};
}

inline HylleraasParams params_from_json(const json& j) {
  HylleraasParams p;
  p.K = j.at("K").get<double>();
  p.k1 = j.at("k1").get<double>();
  p.k2 = j.at("k2").get<double>();
  p.omega = j.at("omega").get<double>();
  p.D_e = j.at("D_e").get<double>();
  p.M = j.at("M").get<double>();
  p.mu = j.at("mu").get<double>();
  p.s_sign = j.at("s_sign").get<std::string>() == "positive" ? model::SSign::PositiveExponent
                                                             : model::SSign::NegativeExponent;
  return p;
}

inline json to_json(const AuditRow& r) {
  json engines = json::object();
  for (Engine e : kAllEngines) {
    const EngineCell& c = r.engines[engine_index(e)];
    engines[std::string(to_string(e))] = json{{"E", opt_to_json(c.E)},
                                              {"residual", opt_to_json(c.residual)},
                                              {"level_count", c.level_count},
                                              {"flags", c.flags}};
  }
  json diffs = json::array();
  for (const PairDiff& d : r.diffs) diffs.push_back(json{{"first", d.first}, {"second", d.second}, {"value", opt_to_json(d.value)}});
  json checks = json::object();
  for (const char* name : kCheckNames) checks[name] = r.check(name);
  return json{{"n", r.n},
              {"engines", engines},
              {"diffs", diffs},
              {"reference_engine", r.reference_engine},
              {"reference_E", r.reference_E},
              {"checks", checks},
              {"tau_prime_sign", r.tau_prime_sign ? json(*r.tau_prime_sign) : json(nullptr)},
              {"closedform_variant", r.closedform_variant ? json(*r.closedform_variant) : json(nullptr)},
              {"closedform_overlap", opt_to_json(r.closedform_overlap)}};
}

inline AuditRow row_from_json(const json& j) {
  AuditRow r;
  r.n = j.at("n").get<int>();
  for (Engine e : kAllEngines) {
    const json& c = j.at("engines").at(std::string(to_string(e)));
    EngineCell& cell = r.engines[engine_index(e)];
    cell.E = opt_from_json(c.at("E"));
    cell.residual = opt_from_json(c.at("residual"));
    cell.level_count = c.at("level_count").get<int>();
    cell.flags = c.at("flags").get<std::vector<std::string>>();
  }
  for (const json& d : j.at("diffs")) {
    r.diffs.push_back({d.at("first").get<std::string>(), d.at("second").get<std::string>(), opt_from_json(d.at("value"))});
  }
  r.reference_engine = j.at("reference_engine").get<std::string>();
  r.reference_E = j.at("reference_E").get<double>();
  const json& checks = j.at("checks");
  checks.at("disc_residual").get_to(r.disc_residual);
  checks.at("eq42_vs_derivative").get_to(r.eq42_vs_derivative);
  checks.at("eq44_vs_eq12").get_to(r.eq44_vs_eq12);
  checks.at("eq20_vs_eq23").get_to(r.eq20_vs_eq23);
  checks.at("delta_a9_vs_eq35").get_to(r.delta_a9_vs_eq35);
  checks.at("ode_residual_closedform").get_to(r.ode_residual_closedform);
  if (!j.at("tau_prime_sign").is_null()) r.tau_prime_sign = j.at("tau_prime_sign").get<bool>();
  if (!j.at("closedform_variant").is_null()) r.closedform_variant = j.at("closedform_variant").get<std::string>();
  r.closedform_overlap = opt_from_json(j.at("closedform_overlap"));
  return r;
}

inline json to_json(const AuditReport& rep) {
  json rows = json::array();
  for (const AuditRow& r : rep.rows) rows.push_back(to_json(r));
  return json{{"version", rep.version},
              {"config",
               json{{"params", params_to_json(rep.config.params)},
                    {"n_max", rep.config.n_max},
                    {"r_max", rep.config.r_max},
                    {"N", rep.config.N},
                    {"intervals", rep.config.intervals}}},
              {"rows", rows},
              {"summary",
               json{{"rows", rep.summary.rows},
                    {"missing_levels", rep.summary.missing_levels},
                    {"checks_nonzero", rep.summary.checks_nonzero},
                    {"checks_null", rep.summary.checks_null}}}};
}

inline AuditReport report_from_json(const json& j) {
  AuditReport rep;
  rep.version = j.at("version").get<std::string>();
  const json& c = j.at("config");
  rep.config.params = params_from_json(c.at("params"));
  rep.config.n_max = c.at("n_max").get<int>();
  rep.config.r_max = c.at("r_max").get<double>();
  rep.config.N = c.at("N").get<int>();
  rep.config.intervals = c.at("intervals").get<int>();
  for (const json& r : j.at("rows")) rep.rows.push_back(row_from_json(r));
  const json& s = j.at("summary");
  rep.summary.rows = s.at("rows").get<int>();
  rep.summary.missing_levels = s.at("missing_levels").get<std::map<std::string, int>>();
  rep.summary.checks_nonzero = s.at("checks_nonzero").get<std::map<std::string, int>>();
  rep.summary.checks_null = s.at("checks_null").get<std::map<std::string, int>>();
  return rep;
}

/// Two-space indented JSON with a trailing LF.
inline std::string dump_json(const AuditReport& rep) { return to_json(rep).dump(2) + "\n"; }

inline std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const std::string& f : flags) {
    if (!s.empty()) s += '|';
    s += f;
  }
  return s;
}

inline std::vector<std::string> csv_header() {
  std::vector<std::string> h{"n"};
  for (Engine e : kAllEngines) h.push_back("E_" + std::string(to_string(e)));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      h.push_back("diff_" + std::string(to_string(kAllEngines[i])) + "_" + std::string(to_string(kAllEngines[j])));
    }
  }
  h.push_back("reference_engine");
  h.push_back("reference_E");
  h.push_back("tau_prime_sign");
  for (const char* name : kCheckNames) h.emplace_back(name);
  h.push_back("closedform_variant");
  h.push_back("closedform_overlap");
  h.push_back("flags");
  return h;
}

/// One line per row; nulls are empty fields; flags are the '|'-joined union tagged by column.
inline std::string dump_csv(const AuditReport& rep) {
  std::string out = io::csv_line(csv_header());
  for (const AuditRow& r : rep.rows) {
    std::vector<std::string> f{std::to_string(r.n)};
    std::vector<std::string> flags;
    for (Engine e : kAllEngines) {
      const EngineCell& c = r.engines[engine_index(e)];
      f.push_back(io::format_optional(c.E));
      for (const std::string& fl : c.flags) flags.push_back(std::string(to_string(e)) + ":" + fl);
    }
    for (const PairDiff& d : r.diffs) f.push_back(io::format_optional(d.value));
    f.push_back(r.reference_engine);
    f.push_back(io::format_double(r.reference_E));
    f.push_back(r.tau_prime_sign ? (*r.tau_prime_sign ? "true" : "false") : "");
    for (const char* name : kCheckNames) {
      const Check& c = r.check(name);
      f.push_back(io::format_optional(c.value));
      for (const std::string& fl : c.flags) flags.push_back(std::string(name) + ":" + fl);
    }
    f.push_back(r.closedform_variant.value_or(""));
    f.push_back(io::format_optional(r.closedform_overlap));
    f.push_back(join_flags(flags));
    out += io::csv_line(f);
  }
  return out;
}

}  // namespace hykg::audit
