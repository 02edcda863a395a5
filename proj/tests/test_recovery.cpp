#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "enosv/cases.hpp"
#include "enosv/error.hpp"
#include "enosv/recovery.hpp"
#include "qp_oracle.hpp"

namespace enosv {
namespace {

std::vector<double> static_averages(const std::string& name, std::span<const double> e) {
  const StaticCase s = static_case(name);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) out.push_back(s.average(e[i], e[i + 1]));
  return out;
}

TEST(InterfaceJumps, Differences) {
  EXPECT_EQ(compute_interface_jumps(std::vector<double>{0, 1, 3}), (std::vector<double>{1, 2}));
  EXPECT_EQ(compute_interface_jumps(std::vector<double>{2, 2, 2, 2}),
            (std::vector<double>{0, 0, 0}));
  EXPECT_TRUE(compute_interface_jumps(std::vector<double>{5}).empty());
}

TEST(InterfaceJumps, StepFunctionHasOneDominantJumpAtCentre) {
  const auto e = chebyshev_boundaries(9);
  const auto jumps = compute_interface_jumps(static_averages("u1", e));
  // 10 subcells: edge 5 sits at x = 0.
  for (int i = 0; i < 9; ++i) {
    if (i == 4) {
      EXPECT_DOUBLE_EQ(jumps[i], -2.0);
    } else {
      EXPECT_EQ(jumps[i], 0.0);
    }
  }
}

TEST(SelectJumpEdges, UniqueMaximum) {
  const std::vector<double> jumps{0.1, -5.0, 0.2};
  EXPECT_EQ(select_jump_edges(jumps, 1), (std::vector<JumpSelection>{{2, -1}}));
}

TEST(SelectJumpEdges, AllZeroSelectsNothing) {
  EXPECT_TRUE(select_jump_edges(std::vector<double>{0, 0, 0}, 2).empty());
}

TEST(SelectJumpEdges, LeftmostWinsTies) {
  EXPECT_EQ(select_jump_edges(std::vector<double>{3, -3}, 1),
            (std::vector<JumpSelection>{{1, 1}}));
}

TEST(SelectJumpEdges, OrderedByMagnitudeAndShrinksOnZeros) {
  const std::vector<double> jumps{0.0, 1.0, -4.0, 0.0};
  EXPECT_EQ(select_jump_edges(jumps, 3), (std::vector<JumpSelection>{{3, -1}, {2, 1}}));
  EXPECT_THROW(select_jump_edges(jumps, -1), ConfigError);
}

TEST(Recovery, RejectsOversizedBasis) {
  EXPECT_THROW(Recovery(chebyshev_boundaries(3), 4, 1), ConfigError);
  EXPECT_THROW(Recovery(chebyshev_boundaries(9), 9, 2), ConfigError);
  EXPECT_NO_THROW(Recovery(chebyshev_boundaries(9), 8, 2));
}

TEST(Recovery, RejectsWrongAverageCount) {
  const Recovery r(chebyshev_boundaries(3), 3, 1);
  EXPECT_THROW(r.recover(std::vector<double>{1, 2, 3}), ConfigError);
}

TEST(Recovery, ReproducesPolynomialWithZeroJump) {
  const auto e = chebyshev_boundaries(3);
  const Recovery r(e, 3, 1);
  // 1 + 2x - x^2 averaged exactly.
  auto antider = [](double x) { return x + x * x - x * x * x / 3.0; };
  std::vector<double> avg;
  for (int i = 0; i < 4; ++i) avg.push_back((antider(e[i + 1]) - antider(e[i])) / (e[i + 1] - e[i]));
  const RecoveredFunction fn = r.recover(avg);
  ASSERT_EQ(fn.spec.jumps(), 1);
  EXPECT_NEAR(fn.jump_coefficient(0), 0.0, 1e-10);
  for (double x : {-1.0, -0.4, 0.3, 1.0}) {
    EXPECT_NEAR(fn.evaluate(x, e, Side::kPoint), 1 + 2 * x - x * x, 1e-10);
  }
}

TEST(Recovery, ConstantData) {
  const auto e = chebyshev_boundaries(7);
  const Recovery r(e, 7, 1);
  const RecoveredFunction fn = r.recover(std::vector<double>(8, 2.5));
  EXPECT_EQ(fn.spec.jumps(), 0);
  for (const auto& t : r.traces(fn)) {
    EXPECT_NEAR(t.left, 2.5, 1e-12);
    EXPECT_NEAR(t.right, 2.5, 1e-12);
  }
}

TEST(Recovery, StepFunctionJumpHeight) {
  const auto e = chebyshev_boundaries(9);
  const Recovery r(e, 8, 2);
  const RecoveredFunction fn = r.recover(static_averages("u1", e));
  ASSERT_GE(fn.spec.jumps(), 1);
  EXPECT_EQ(fn.spec.jump_edges[0], 5);
  EXPECT_EQ(fn.spec.jump_signs[0], -1);
  EXPECT_NEAR(fn.jump_coefficient(0), 1.0, 0.05);
}

TEST(Recovery, SineHasNegligibleJumps) {
  const auto e = chebyshev_boundaries(9);
  const Recovery r(e, 8, 2);
  const auto avg = static_averages("u2", e);
  const RecoveredFunction fn = r.recover(avg);
  const double range = std::sin(1.0) - std::sin(-1.0);
  for (int j = 0; j < fn.spec.jumps(); ++j) EXPECT_LE(fn.jump_coefficient(j), 1e-2 * range);
}

TEST(Recovery, MatchesEnumerationOracle) {
  std::mt19937 rng(31);
  std::normal_distribution<double> g;
  for (int q : {3, 7, 9}) {
    const auto e = chebyshev_boundaries(q);
    for (int l = 1; l <= 2; ++l) {
      const Recovery r(e, q + 1 - l, l);
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> avg(q + 1);
        for (auto& a : avg) a = g(rng);
        const RecoveredFunction fn = r.recover(avg);
        QpProblem p{r.averaging(fn.spec), Eigen::Map<Eigen::VectorXd>(avg.data(), q + 1), {}};
        for (int j = 0; j < fn.spec.jumps(); ++j) p.constrained.push_back(fn.spec.continuous + j);
        const Eigen::VectorXd oracle = testing::enumerate_active_sets(p);
        EXPECT_LT((fn.coefficients - oracle).lpNorm<Eigen::Infinity>(), 1e-8);
      }
    }
  }
}

TEST(Recovery, SquareFeasibleSystemHasZeroResidual) {
  const auto e = chebyshev_boundaries(3);
  const Recovery r(e, 3, 1);
  // A quadratic plus a positive multiple of the oriented jump.
  const std::vector<double> avg{1.0, 1.1, 3.0, 3.05};
  const RecoveredFunction fn = r.recover(avg);
  const Eigen::VectorXd res =
      r.averaging(fn.spec) * fn.coefficients - Eigen::Map<const Eigen::VectorXd>(avg.data(), 4);
  if (fn.jump_coefficient(0) > 0.0) EXPECT_LT(res.norm(), 1e-10);
}

TEST(Recovery, ScaleEquivariance) {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  const auto e = chebyshev_boundaries(7);
  const Recovery r(e, 6, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> avg(8);
    for (auto& a : avg) a = g(rng);
    const RecoveredFunction base = r.recover(avg);
    for (double alpha : {2.0, 10.0}) {
      std::vector<double> scaled(avg);
      for (auto& a : scaled) a *= alpha;
      const RecoveredFunction fn = r.recover(scaled);
      ASSERT_EQ(fn.spec, base.spec);
      EXPECT_LT((fn.coefficients - alpha * base.coefficients).lpNorm<Eigen::Infinity>(),
                1e-9 * alpha);
    }
  }
}

TEST(Recovery, TranslationShiftsOnlyMean) {
  std::mt19937 rng(6);
  std::normal_distribution<double> g;
  const auto e = chebyshev_boundaries(3);
  const Recovery r(e, 3, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> avg(4);
    for (auto& a : avg) a = g(rng);
    const RecoveredFunction base = r.recover(avg);
    std::vector<double> shifted(avg);
    for (auto& a : shifted) a += 7.0;
    const RecoveredFunction fn = r.recover(shifted);
    ASSERT_EQ(fn.spec, base.spec);
    EXPECT_NEAR(fn.coefficients(0), base.coefficients(0) + 7.0, 1e-9);
    for (int c = 1; c < fn.coefficients.size(); ++c) {
      EXPECT_NEAR(fn.coefficients(c), base.coefficients(c), 1e-9);
    }
  }
}

TEST(Recovery, WarmStartGivesSameAnswer) {
  std::mt19937 rng(12);
  std::normal_distribution<double> g;
  const auto e = chebyshev_boundaries(7);
  const Recovery r(e, 7, 1);
  std::vector<double> avg(8);
  for (auto& a : avg) a = g(rng);
  const RecoveredFunction cold = r.recover(avg);
  std::vector<double> nudged(avg);
  for (auto& a : nudged) a += 1e-3 * g(rng);
  const RecoveredFunction prev = r.recover(nudged);
  const RecoveredFunction warm = r.recover(avg, &prev);
  if (prev.spec == cold.spec) {
    EXPECT_LT((warm.coefficients - cold.coefficients).lpNorm<Eigen::Infinity>(), 1e-9);
  }
}

TEST(Traces, ContinuousExceptAtJumpEdges) {
  const auto e = chebyshev_boundaries(9);
  const Recovery r(e, 8, 2);
  const RecoveredFunction fn = r.recover(static_averages("u3", e));
  const auto tr = r.traces(fn);
  ASSERT_EQ(tr.size(), 11u);
  for (int edge = 0; edge <= 10; ++edge) {
    bool is_jump = false;
    for (int j = 0; j < fn.spec.jumps(); ++j) is_jump = is_jump || fn.spec.jump_edges[j] == edge;
    if (!is_jump) EXPECT_NEAR(tr[edge].left, tr[edge].right, 1e-13) << edge;
  }
}

TEST(Traces, JumpDifferenceIsTwiceCoefficient) {
  const auto e = chebyshev_boundaries(9);
  const Recovery r(e, 8, 2);
  const auto avg = static_averages("u3", e);
  const RecoveredFunction fn = r.recover(avg);
  const auto tr = r.traces(fn);
  for (int j = 0; j < fn.spec.jumps(); ++j) {
    const int edge = fn.spec.jump_edges[j];
    EXPECT_NEAR(tr[edge].right - tr[edge].left,
                2.0 * fn.jump_coefficient(j) * fn.spec.jump_signs[j], 1e-12);
  }
  EXPECT_EQ(count_sign_violations(fn, tr, avg), 0);
}

TEST(Traces, AgreeWithPointEvaluation) {
  const auto e = chebyshev_boundaries(9);
  const RecoveredFunction fn = recover_macrocell(static_averages("u1", e), 8, 2, e);
  const auto tr = evaluate_traces(fn, e);
  for (int edge = 1; edge <= 9; ++edge) {
    EXPECT_NEAR(tr[edge].left, fn.evaluate(e[edge], e, Side::kLeft), 1e-12);
    EXPECT_NEAR(tr[edge].right, fn.evaluate(e[edge], e, Side::kRight), 1e-12);
  }
  EXPECT_NEAR(tr[0].right, fn.evaluate(-1.0, e, Side::kRight), 1e-12);
  EXPECT_NEAR(tr[10].left, fn.evaluate(1.0, e, Side::kLeft), 1e-12);
}

TEST(Traces, SignPropertyOnRandomData) {
  std::mt19937 rng(77);
  std::normal_distribution<double> g;
  const auto e = chebyshev_boundaries(7);
  const Recovery r(e, 5, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> avg(8);
    for (auto& a : avg) a = g(rng);
    const RecoveredFunction fn = r.recover(avg);
    EXPECT_EQ(count_sign_violations(fn, r.traces(fn), avg), 0);
    for (int j = 0; j < fn.spec.jumps(); ++j) EXPECT_GE(fn.jump_coefficient(j), 0.0);
  }
}

}  // namespace
}  // namespace enosv
