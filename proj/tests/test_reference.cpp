#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "enosv/cases.hpp"
#include "enosv/error.hpp"
#include "enosv/reference.hpp"

namespace enosv {
namespace {

constexpr double kGamma = 1.4;

// Textbook pressure function, written independently of the library.
double f_side(double p, const PrimitiveState& w) {
  const double g = kGamma;
  if (p > w.p) {
    const double a = 2.0 / ((g + 1.0) * w.rho);
    const double b = (g - 1.0) / (g + 1.0) * w.p;
    return (p - w.p) * std::sqrt(a / (p + b));
  }
  const double c = std::sqrt(g * w.p / w.rho);
  return 2.0 * c / (g - 1.0) * (std::pow(p / w.p, (g - 1.0) / (2.0 * g)) - 1.0);
}

double bisect_star_pressure(const PrimitiveState& l, const PrimitiveState& r) {
  auto f = [&](double p) { return f_side(p, l) + f_side(p, r) + r.v - l.v; };
  double lo = 1e-12;
  double hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

const PrimitiveState kSodLeft{1.0, 0.0, 1.0};
const PrimitiveState kSodRight{0.125, 0.0, 0.1};

TEST(ExactRiemann, UniformDataIsTrivial) {
  const PrimitiveState w{1.2, 0.3, 0.9};
  const RiemannSolution s = exact_riemann(w, w, kGamma);
  EXPECT_NEAR(s.p_star(), 0.9, 1e-12);
  EXPECT_NEAR(s.v_star(), 0.3, 1e-12);
  for (double xi : {-3.0, 0.0, 0.3, 2.0}) {
    const PrimitiveState out = s.sample(xi);
    EXPECT_NEAR(out.rho, 1.2, 1e-12);
    EXPECT_NEAR(out.v, 0.3, 1e-12);
    EXPECT_NEAR(out.p, 0.9, 1e-12);
  }
}

TEST(ExactRiemann, SodStarStateMatchesBisection) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  EXPECT_NEAR(s.p_star(), bisect_star_pressure(kSodLeft, kSodRight), 1e-11);
  EXPECT_NEAR(s.p_star(), 0.30313, 1e-5);
  EXPECT_NEAR(s.v_star(), 0.92745, 1e-5);
  EXPECT_FALSE(s.left_shock());
  EXPECT_TRUE(s.right_shock());
  EXPECT_NEAR(riemann_pressure_function(s.p_star(), kSodLeft, kSodRight, kGamma), 0.0, 1e-12);
}

TEST(ExactRiemann, LaxStarStateMatchesBisection) {
  const PrimitiveState l{0.445, 0.698, 3.528};
  const PrimitiveState r{0.5, 0.0, 0.571};
  const RiemannSolution s = exact_riemann(l, r, kGamma);
  EXPECT_NEAR(s.p_star(), bisect_star_pressure(l, r), 1e-10);
}

TEST(ExactRiemann, SymmetricCollisionHasZeroStarVelocity) {
  const RiemannSolution s = exact_riemann({1.0, 1.0, 1.0}, {1.0, -1.0, 1.0}, kGamma);
  EXPECT_NEAR(s.v_star(), 0.0, 1e-13);
  EXPECT_TRUE(s.left_shock());
  EXPECT_TRUE(s.right_shock());
}

TEST(ExactRiemann, VacuumGenerationThrows) {
  EXPECT_THROW(exact_riemann({1.0, -10.0, 1.0}, {1.0, 10.0, 1.0}, kGamma), NumericalError);
}

TEST(ExactRiemann, RankineHugoniotAcrossSodShock) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  const ConservedState behind =
      primitive_to_conserved({s.rho_star_right(), s.v_star(), s.p_star()}, kGamma);
  const ConservedState ahead = primitive_to_conserved(kSodRight, kGamma);
  const double speed = s.right_shock_speed();
  const Flux jump = euler_flux(behind, kGamma) - euler_flux(ahead, kGamma);
  const ConservedState du = behind - ahead;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(jump[i], speed * du[i], 1e-8);
}

TEST(ExactRiemann, RankineHugoniotAcrossBothShocks) {
  const RiemannSolution s = exact_riemann({1.0, 2.0, 1.0}, {0.5, -1.0, 0.4}, kGamma);
  ASSERT_TRUE(s.left_shock());
  ASSERT_TRUE(s.right_shock());
  const ConservedState l = primitive_to_conserved(s.left(), kGamma);
  const ConservedState ls =
      primitive_to_conserved({s.rho_star_left(), s.v_star(), s.p_star()}, kGamma);
  const Flux jump = euler_flux(ls, kGamma) - euler_flux(l, kGamma);
  const ConservedState du = ls - l;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(jump[i], s.left_shock_speed() * du[i], 1e-8);
}

TEST(ExactRiemann, WaveSpeedsAscending) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  const auto w = s.wave_speeds();
  for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LE(w[i - 1], w[i]);
  EXPECT_NEAR(w.front(), -std::sqrt(1.4), 1e-14);  // rarefaction head
  EXPECT_NEAR(w.back(), s.right_shock_speed(), 1e-14);
}

TEST(RiemannAverage, SelfSimilar) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  for (double a : {-2.0, -0.5, 0.3, 1.0}) {
    const double b = a + 0.37;
    const ConservedState one = riemann_cell_average(s, 0.0, 1.0, a, b);
    const ConservedState two = riemann_cell_average(s, 0.0, 2.0, 2 * a, 2 * b);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(one[i], two[i], 1e-13);
  }
}

TEST(RiemannAverage, MatchesFineMidpointSampling) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  const double t = 1.0;
  for (double a : {-1.5, -0.2, 0.8, 1.6}) {
    const double b = a + 0.4;
    const int n = 200000;
    ConservedState sum;
    for (int i = 0; i < n; ++i) {
      const double x = a + (i + 0.5) * (b - a) / n;
      sum += primitive_to_conserved(s.sample(x / t), kGamma);
    }
    const ConservedState oracle = (1.0 / n) * sum;
    const ConservedState avg = riemann_cell_average(s, 0.0, t, a, b);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(avg[i], oracle[i], 1e-5);
  }
}

TEST(RiemannAverage, InitialTimeIsPiecewiseConstant) {
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  const ConservedState avg = riemann_cell_average(s, 0.0, 0.0, -0.25, 0.75);
  EXPECT_NEAR(avg.rho, 0.25 * 1.0 + 0.75 * 0.125, 1e-14);
}

TEST(Minmod, Cases) {
  EXPECT_EQ(minmod(1.0, -1.0), 0.0);
  EXPECT_EQ(minmod(1.0, 2.0), 1.0);
  EXPECT_EQ(minmod(0.0, 5.0), 0.0);
  EXPECT_EQ(minmod(-3.0, -2.0), -2.0);
  for (double a : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    for (double b : {-1.0, 0.0, 0.2, 4.0}) {
      EXPECT_EQ(minmod(a, b), minmod(b, a));
      EXPECT_LE(std::abs(minmod(a, b)), std::min(std::abs(a), std::abs(b)));
    }
  }
}

std::vector<ConservedState> sod_cells(int n) {
  const TestCase tc = case_sod();
  std::vector<ConservedState> u(n);
  const double dx = (tc.hi - tc.lo) / n;
  for (int i = 0; i < n; ++i) u[i] = tc.average(tc.lo + i * dx, tc.lo + (i + 1) * dx, 0.0, kGamma);
  return u;
}

TEST(Muscl, UniformStateUnchanged) {
  const ConservedState u = primitive_to_conserved({1.0, 0.5, 1.0}, kGamma);
  const auto out = muscl_solve({0.0, 1.0, 0.1, kGamma, Boundary::kPeriodic},
                               std::vector<ConservedState>(32, u), 0.3);
  for (const auto& c : out) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(c[i], u[i], 1e-14);
  }
}

TEST(Muscl, TotalVariationNonIncreasingForTransportedDensity) {
  // With v = p = 1 everywhere only the density varies and it is advected as a
  // scalar, where the limited scheme is TVD.
  std::vector<ConservedState> u(200);
  for (int i = 0; i < 200; ++i) {
    const double rho = (i > 40 && i < 90) ? 2.0 : (i > 120 && i < 130 ? 0.5 : 1.0);
    u[i] = primitive_to_conserved({rho, 1.0, 1.0}, kGamma);
  }
  auto tv = [](const std::vector<ConservedState>& w) {
    double s = std::abs(w.front().rho - w.back().rho);
    for (std::size_t i = 1; i < w.size(); ++i) s += std::abs(w[i].rho - w[i - 1].rho);
    return s;
  };
  double prev = tv(u);
  (void)muscl_solve({0.0, 1.0, 0.4, kGamma, Boundary::kPeriodic}, u, 0.5,
                    [&](const std::vector<ConservedState>& w) {
                      const double now = tv(w);
                      EXPECT_LE(now, prev + 1e-12);
                      prev = now;
                    });
}

TEST(Muscl, SodConvergesToExactSolution) {
  const TestCase tc = case_sod();
  const RiemannSolution s = exact_riemann(kSodLeft, kSodRight, kGamma);
  std::vector<double> errors;
  for (int n : {256, 1024}) {
    const auto out =
        muscl_solve({tc.lo, tc.hi, 0.1, kGamma, Boundary::kTransmissive}, sod_cells(n), 1.8);
    const double dx = (tc.hi - tc.lo) / n;
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = tc.lo + i * dx;
      l1 += dx * std::abs(out[i].rho - riemann_cell_average(s, 0.0, 1.8, a, a + dx).rho);
    }
    errors.push_back(l1);
  }
  // Discontinuous data: first order at the shock, about one half at the contact.
  EXPECT_GT(std::log(errors[0] / errors[1]) / std::log(4.0), 0.6);
}

TEST(Muscl, RejectsBadInput) {
  const MusclConfig c{0.0, 1.0, 0.1, kGamma, Boundary::kPeriodic};
  EXPECT_THROW(muscl_solve(c, sod_cells(3), 0.1), ConfigError);
  EXPECT_THROW(muscl_solve({0.0, 1.0, 1.5, kGamma, Boundary::kPeriodic}, sod_cells(8), 0.1),
               ConfigError);
}

}  // namespace
}  // namespace enosv
