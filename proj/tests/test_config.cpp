#include "hykg/config.hpp"
#include "test_support.hpp"

using namespace hykg;

namespace {

Errc code_of(const std::string& text) {
  try {
    config::parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;  // parsed without error
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const config::RunConfig c = config::parse("");
  EXPECT_EQ(c.params.K, 2.0);
  EXPECT_EQ(c.params.s_sign, model::SSign::NegativeExponent);
  EXPECT_EQ(c.n_max, 3);
  EXPECT_EQ(c.engines.size(), 4u);
  EXPECT_TRUE(c.csv && c.json);
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, FullFile) {
  const config::RunConfig c = config::parse(R"(
# comment
[params]
K = 0.5      ; trailing comment
k1 = 0.2
k2 = 0.1
omega = 0.5
D_e = 2
M = 3
mu = 1.5
s_sign = positive
[grid]
r_max = 25
N = 800
[run]
engines = Oracle, MechanicalNU
n_max = 2
out = results
formats = json
intervals = 500
jobs = 2
)");
  EXPECT_EQ(c.params.K, 0.5);
  EXPECT_EQ(c.params.omega, 0.5);
  EXPECT_EQ(c.params.M, 3.0);
  EXPECT_EQ(c.params.s_sign, model::SSign::PositiveExponent);
  EXPECT_EQ(c.r_max, std::optional<double>(25.0));
  EXPECT_EQ(c.N, 800);
  EXPECT_TRUE(c.selected(Engine::Oracle));
  EXPECT_TRUE(c.selected(Engine::MechanicalNU));
  EXPECT_FALSE(c.selected(Engine::Eq45Verbatim));
  EXPECT_EQ(c.n_max, 2);
  EXPECT_EQ(c.out, "results");
  EXPECT_FALSE(c.csv);
  EXPECT_TRUE(c.json);
  EXPECT_EQ(c.intervals, 500);
  EXPECT_EQ(c.jobs, 2);
}

TEST(Config, StrictRejections) {
  EXPECT_EQ(code_of("[params]\nomgea = 1\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[nope]\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("K = 1\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\nK = 1\nK = 2\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\n[params]\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\nK = two\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\nK\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\nK =\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\nomega = -1\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[params]\ns_sign = up\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[grid]\nN = 100\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[run]\nengines = Oracle, Foo\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[run]\nformats = xml\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[run]\nn_max = 11\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[run]\njobs = 0\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[sweep]\nparam = omega\nstart = 1\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[sweep]\nparam = zeta\nstart = 1\nstop = 2\ncount = 3\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[sweep]\nparam = omega\nstart = -1\nstop = 2\ncount = 3\n"), Errc::ConfigError);
  EXPECT_EQ(code_of("[sweep]\nparam = omega\nstart = 0\nstop = 2\ncount = 3\nscale = log\n"),
            Errc::ConfigError);
}

TEST(Config, ErrorsNameTheLine) {
  try {
    config::parse("[params]\n\nK = x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, MissingFileIsAConfigError) {
  try {
    config::load("/nonexistent/hykg.ini");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ConfigError);
  }
}

TEST(Sweep, LinearAndLogPoints) {
  const config::RunConfig c = config::parse("[sweep]\nparam = omega\nstart = 0.1\nstop = 1\ncount = 5\nscale = log\n");
  ASSERT_TRUE(c.sweep.has_value());
  const std::vector<double> v = c.sweep->values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v.front(), 0.1);
  EXPECT_DOUBLE_EQ(v.back(), 1.0);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_NEAR(v[i] / v[i - 1], std::pow(10.0, 0.25), 1e-12);

  config::Sweep lin{"K", 1.0, 2.0, 3, false};
  EXPECT_EQ(lin.values(), (std::vector<double>{1.0, 1.5, 2.0}));
  config::Sweep one{"K", 1.0, 2.0, 1, false};
  EXPECT_EQ(one.values(), std::vector<double>{1.0});
}
