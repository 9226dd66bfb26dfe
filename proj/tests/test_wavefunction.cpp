#include "hykg/wavefunction.hpp"
#include "test_support.hpp"

using namespace hykg;
using hykg::testing::Gen;
using hykg::testing::Near;
using model::HylleraasParams;

namespace {

HylleraasParams distinct_ac() {
  HylleraasParams p = HylleraasParams::reference();
  p.K = 0.5;
  p.k1 = 0.2;
  p.k2 = 0.1;
  return p;
}

}  // namespace

TEST(Jacobi, FrozenValues) {
  // mpmath hypergeometric series
  EXPECT_TRUE(Near(wave::jacobi_P(3, 0.5, -0.3, 0.2), -0.49165200000000000729, 1e-14));
  EXPECT_TRUE(Near(wave::jacobi_P(5, 1.25, 0.4, -0.7), 0.52756445178230702289, 1e-14));
  EXPECT_TRUE(Near(wave::jacobi_P(2, 0.0, 0.0, 0.3), -0.365, 1e-15));
}

TEST(Jacobi, RecurrenceMatchesExplicitSum) {
  Gen g(2);
  for (int t = 0; t < 300; ++t) {
    const int n = g.integer(0, 10);
    const double a = g.uniform(-0.9, 3.0), b = g.uniform(-0.9, 3.0), x = g.uniform(-1.0, 1.0);
    EXPECT_TRUE(Near(wave::jacobi_P(n, a, b, x), wave::jacobi_sum(n, a, b, x), 1e-11));
  }
}

TEST(Jacobi, NonClassicalParametersFallBackToTheSum) {
  // alpha + beta = -2 makes the recurrence denominator vanish at k = 1... the sum still works
  const double v = wave::jacobi_P(3, -1.5, -0.5, 0.4);
  EXPECT_TRUE(Near(v, wave::jacobi_sum(3, -1.5, -0.5, 0.4), 1e-12));
  EXPECT_FALSE(wave::is_classical(-1.5, 0.2));
  EXPECT_THROW(wave::jacobi_P(-1, 0, 0, 0), Error);
}

TEST(Property, JacobiSymmetryAndEndpoints) {
  Gen g(7);
  for (int t = 0; t < 500; ++t) {
    const int n = g.integer(0, 10);
    const double a = g.uniform(-0.9, 3.0), b = g.uniform(-0.9, 3.0), x = g.uniform(-1.0, 1.0);
    const double lhs = wave::jacobi_P(n, a, b, -x);
    const double rhs = (n % 2 ? -1.0 : 1.0) * wave::jacobi_P(n, b, a, x);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(std::abs(rhs), 1e-3));
    EXPECT_TRUE(Near(wave::jacobi_P(n, a, b, 1.0), wave::binom(n + a, n), 1e-12));
  }
}

TEST(Property, RodriguesAgreesWithRecurrence) {
  Gen g(8);
  for (int t = 0; t < 300; ++t) {
    const int n = t % 6;
    const double D = g.uniform(-0.9, 3.0), F = g.uniform(-0.9, 3.0);
    const double a = g.uniform(-0.3, 1.5), c = g.uniform(-0.3, 1.5);
    if (std::abs(c - a) < 0.05) continue;
    const double s = std::max(-a, -c) + 0.01 + g.uniform(0.0, 5.0);
    const double leib = wave::rodrigues_chi(n, D, F, a, c, s);
    const double rec =
        wave::rodrigues_jacobi_constant(n, a, c) * wave::jacobi_P(n, D, F, wave::jacobi_argument(s, a, c));
    EXPECT_LE(std::abs(leib - rec), 1e-8 * std::max(1.0, std::abs(leib)));
  }
}

TEST(Rodrigues, DomainAndRange) {
  EXPECT_THROW(wave::rodrigues_chi(13, 0, 0, 0.1, 0.2, 1.0), Error);
  EXPECT_THROW(wave::rodrigues_chi(2, 0, 0, 0.1, 0.2, -0.15), Error);
  EXPECT_DOUBLE_EQ(wave::rodrigues_chi(0, 0.3, 0.4, 0.1, 0.2, 1.0), 1.0);
  // chi beyond the Leibniz range goes through the recurrence
  EXPECT_TRUE(Near(wave::chi(13, 0.3, 0.4, 0.1, 0.7, 1.0),
                   wave::rodrigues_jacobi_constant(13, 0.1, 0.7) *
                       wave::jacobi_P(13, 0.3, 0.4, wave::jacobi_argument(1.0, 0.1, 0.7)),
                   1e-14));
}

TEST(Exponents, DegenerateAtEqualShapeRoots) {
  try {
    wave::exponents_DF(HylleraasParams::reference(), -0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateAC);
  }
}

TEST(Exponents, NotRepresentableWhenRadicandNegative) {
  // A^2 - B < 0 at the distinct-root set, E = -0.3
  try {
    wave::exponents_DF(distinct_ac(), -0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotRepresentable);
  }
}

TEST(Normalize, IdempotentAndScaleFree) {
  std::vector<double> r, v;
  for (int i = 0; i <= 8000; ++i) {
    r.push_back(i * 1e-3);
    v.push_back(r.back() * std::exp(-r.back() * r.back()));
  }
  const wave::RadialFunction once = wave::normalize(wave::sample({}, r, v));
  const wave::RadialFunction twice = wave::normalize(once);
  EXPECT_NEAR(twice.norm_constant, 1.0, 1e-12);
  std::vector<double> scaled = v;
  for (double& x : scaled) x *= 42.0;
  const wave::RadialFunction s = wave::normalize(wave::sample({}, r, scaled));
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(twice.values[i], once.values[i], 1e-12);
    EXPECT_NEAR(s.values[i], once.values[i], 1e-12);
  }
  // int r^2 e^{-2 r^2} dr over [0, inf) = sqrt(pi/2) / 8
  EXPECT_TRUE(Near(1.0 / (once.norm_constant * once.norm_constant), std::sqrt(M_PI / 2.0) / 8.0, 1e-8));
}

TEST(Normalize, TailNotConverged) {
  std::vector<double> r, v;
  for (int i = 0; i < 100; ++i) {
    r.push_back(i * 0.1);
    v.push_back(std::exp(-0.1 * r.back()));
  }
  try {
    wave::normalize(wave::sample({}, r, v));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TailNotConverged);
  }
}

TEST(Nodes, CountsSignChanges) {
  std::vector<double> r, v;
  for (int i = 0; i < 1000; ++i) {
    r.push_back(i * 0.01);
    v.push_back(std::sin(r.back()));
  }
  EXPECT_EQ(wave::count_nodes(wave::sample({}, r, v)), 3);
}

TEST(Overlap, ParallelAndOrthogonal) {
  const std::vector<double> u{1, 2, 3}, v{-2, -4, -6}, w{3, 0, -1};
  EXPECT_NEAR(wave::overlap(u, v), 1.0, 1e-15);
  EXPECT_NEAR(wave::overlap(u, w), 0.0, 1e-15);
}

TEST(OdeResidual, ExactSolutionIsSmall) {
  // u = sin(r): -u'' = u, so Ebar = 1 with W = 0
  const double h = 1e-3;
  std::vector<double> u, W;
  for (int i = 0; i < 3000; ++i) {
    u.push_back(std::sin(i * h));
    W.push_back(0.0);
  }
  EXPECT_LT(wave::ode_residual(u, W, 1.0, h), 1e-6);
  EXPECT_GT(wave::ode_residual(u, W, 1.5, h), 0.1);
}

TEST(RadialR, AssemblesFactorsOnAValidSet) {
  // synthetic exponents on the distinct-root set; checks the assembly rather than the physics
  const HylleraasParams p = distinct_ac();
  wave::WavefactorParams w;
  w.D = 0.8;
  w.D_symmetric = 0.3;
  w.F = 1.2;
  const model::ABC abc = model::derive_abc(p);
  const double r = 0.7, s = model::s_of_r(r, p);
  const double expected = std::pow(s + abc.a, 0.4) * std::pow(s + abc.c, 0.6) *
                          wave::rodrigues_chi(2, 0.8, 1.2, abc.a, abc.c, s);
  EXPECT_TRUE(Near(wave::radial_R(p, w, 2, r, {wave::DReading::Literal, wave::Placement::DOnA}), expected, 1e-13));
  const double swapped = std::pow(s + abc.a, 0.6) * std::pow(s + abc.c, 0.15) *
                         wave::rodrigues_chi(2, 0.3, 1.2, abc.a, abc.c, s);
  EXPECT_TRUE(
      Near(wave::radial_R(p, w, 2, r, {wave::DReading::Symmetric, wave::Placement::FOnA}), swapped, 1e-13));
}
