#include "hykg/audit.hpp"
#include "test_support.hpp"

using namespace hykg;
using model::HylleraasParams;
using nlohmann::json;

namespace {

const audit::AuditReport& default_report() {
  static const audit::AuditReport rep = audit::run_audit(HylleraasParams::reference(), 3);
  return rep;
}

}  // namespace

TEST(RunAudit, OneRowPerLevelIndex) {
  const audit::AuditReport& rep = default_report();
  ASSERT_EQ(rep.rows.size(), 4u);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(rep.rows[n].n, n);
  EXPECT_EQ(rep.summary.rows, 4);
  EXPECT_EQ(rep.version, kVersion);
  EXPECT_EQ(rep.config.N, 4000);
  EXPECT_DOUBLE_EQ(rep.config.r_max, 40.0);
}

TEST(RunAudit, DeterministicAcrossRunsAndThreadCounts) {
  audit::AuditOptions o;
  o.jobs = 3;
  const audit::AuditReport threaded = audit::run_audit(HylleraasParams::reference(), 3, o);
  EXPECT_EQ(audit::dump_json(threaded), audit::dump_json(default_report()));
  EXPECT_EQ(audit::dump_csv(threaded), audit::dump_csv(default_report()));
}

TEST(RunAudit, IdentityColumnsAreFinite) {
  for (const audit::AuditRow& row : default_report().rows) {
    for (const char* name : {"disc_residual", "eq42_vs_derivative", "eq44_vs_eq12", "eq20_vs_eq23",
                             "delta_a9_vs_eq35"}) {
      const audit::Check& c = row.check(name);
      ASSERT_TRUE(c.value.has_value()) << name << " row " << row.n;
      EXPECT_TRUE(std::isfinite(*c.value)) << name;
    }
    // equal shape roots leave the closed-form function undefined; null with a reason
    EXPECT_FALSE(row.ode_residual_closedform.value.has_value());
    EXPECT_NE(std::find(row.ode_residual_closedform.flags.begin(), row.ode_residual_closedform.flags.end(),
                        "DegenerateAC"),
              row.ode_residual_closedform.flags.end());
  }
}

TEST(RunAudit, ReferenceEnergyComesFromTheOracleAtDefaults) {
  for (const audit::AuditRow& row : default_report().rows) {
    EXPECT_EQ(row.reference_engine, "Oracle");
    EXPECT_EQ(row.tau_prime_sign, std::optional<bool>(false));
  }
}

TEST(RunAudit, CheckNamesMatchTheDocumentedList) {
  const json j = audit::to_json(default_report());
  const json& checks = j.at("rows").at(0).at("checks");
  ASSERT_EQ(checks.size(), std::size(audit::kCheckNames));
  for (const char* name : audit::kCheckNames) EXPECT_TRUE(checks.contains(name)) << name;
}

TEST(RunAudit, FreeCaseStillEmitsAReport) {
  HylleraasParams p = HylleraasParams::reference();
  p.D_e = 0.0;
  const audit::AuditReport rep = audit::run_audit(p, 1);
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const audit::AuditRow& row : rep.rows) {
    for (const audit::EngineCell& cell : row.engines) {
      EXPECT_FALSE(cell.E.has_value());
      EXPECT_NE(std::find(cell.flags.begin(), cell.flags.end(), "NoRoot"), cell.flags.end());
    }
    EXPECT_EQ(row.reference_engine, "none");
  }
  EXPECT_EQ(rep.summary.missing_levels.at("Oracle"), 2);
}

TEST(RunAudit, OnlyConfigurationErrorsAbort) {
  HylleraasParams bad = HylleraasParams::reference();
  bad.M = -1.0;
  try {
    audit::run_audit(bad, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConfigError);
  }
  EXPECT_THROW(audit::run_audit(HylleraasParams::reference(), 11), Error);
  EXPECT_THROW(audit::run_audit(HylleraasParams::reference(), -1), Error);
}

TEST(BuildRow, IdenticalSyntheticLevelsGiveZeroDiffs) {
  const HylleraasParams p = HylleraasParams::reference();
  const oracle::RadialGrid g = oracle::RadialGrid::for_params(p, std::nullopt, 400);
  audit::EngineResults r;
  for (Engine e : kAllEngines) {
    EnergyLevel lv;
    lv.E = -0.95;
    lv.engine = e;
    r.searches[audit::engine_index(e)].levels = {lv};
  }
  const audit::AuditRow row = audit::build_row(p, 0, r, g);
  ASSERT_EQ(row.diffs.size(), 6u);
  for (const audit::PairDiff& d : row.diffs) {
    ASSERT_TRUE(d.value.has_value());
    EXPECT_EQ(*d.value, 0.0);
  }
  EXPECT_EQ(row.reference_engine, "MechanicalNU");
}

TEST(Serialization, JsonRoundTripIsLossless) {
  const audit::AuditReport& rep = default_report();
  const std::string text = audit::dump_json(rep);
  const audit::AuditReport back = audit::report_from_json(json::parse(text));
  EXPECT_TRUE(back == rep);
  EXPECT_EQ(audit::dump_json(back), text);
}

TEST(Serialization, CsvShape) {
  const std::string csv = audit::dump_csv(default_report());
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  for (const std::string& l : lines) EXPECT_EQ(commas(l), commas(lines[0]));
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(lines[0].rfind("n,E_Eq45Verbatim,", 0), 0u);
}

TEST(IdentityChecks, RandomSamplesAreFinite) {
  hykg::testing::Gen g(4);
  std::vector<double> Es;
  for (int i = 0; i < 20; ++i) Es.push_back(g.uniform(-0.999, 0.999));
  for (const HylleraasParams& p : {HylleraasParams::reference()}) {
    for (const audit::IdentitySample& s : audit::identity_checks(p, Es)) {
      EXPECT_EQ(s.beta_split_identity, 0.0);
      EXPECT_TRUE(std::isfinite(s.eq20_vs_eq23));
      EXPECT_TRUE(std::isfinite(s.delta_a9_vs_eq35));
      EXPECT_TRUE(std::isfinite(s.tau_prime_vs_tau_slope));
    }
  }
}

TEST(IdentityChecks, StatedSlopeDiffersFromTheDerivative) {
  // the stated tau' carries 8 alpha1 where d/ds of the stated tau carries 4 alpha1
  const HylleraasParams p = HylleraasParams::reference();
  const auto samples = audit::identity_checks(p, {-0.9});
  ASSERT_EQ(samples.size(), 1u);
  const double tau1 = std::abs(paper::paper_intermediates(p, -0.9, 1).tau1);
  EXPECT_NEAR(samples[0].tau_prime_vs_tau_slope, 4.0 * (5.0 / 3.0) / std::max(1.0, tau1), 1e-12);
}
