#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "enosv/discretization.hpp"
#include "enosv/error.hpp"
#include "numeric_oracles.hpp"

namespace enosv {
namespace {

using testing::simpson;

TEST(ChebyshevBoundaries, FourSubcells) {
  const auto e = chebyshev_boundaries(3);
  const double r = std::numbers::sqrt2 / 2.0;
  ASSERT_EQ(e.size(), 5u);
  EXPECT_EQ(e[0], -1.0);
  EXPECT_NEAR(e[1], -r, 1e-15);
  EXPECT_EQ(e[2], 0.0);
  EXPECT_NEAR(e[3], r, 1e-15);
  EXPECT_EQ(e[4], 1.0);
}

TEST(ChebyshevBoundaries, MatchesCosineFormula) {
  for (int q = 0; q <= 12; ++q) {
    const auto e = chebyshev_boundaries(q);
    ASSERT_EQ(e.size(), static_cast<std::size_t>(q + 2));
    for (int i = 0; i <= q + 1; ++i) {
      EXPECT_NEAR(e[i], -std::cos(i * std::numbers::pi / (q + 1)), 1e-15);
    }
  }
}

TEST(ChebyshevBoundaries, AscendingSymmetricExactEnds) {
  for (int q = 0; q <= 20; ++q) {
    const auto e = chebyshev_boundaries(q);
    EXPECT_EQ(e.front(), -1.0);
    EXPECT_EQ(e.back(), 1.0);
    for (std::size_t i = 0; i + 1 < e.size(); ++i) EXPECT_LT(e[i], e[i + 1]);
    for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(e[i], -e[e.size() - 1 - i]);
  }
}

TEST(ChebyshevBoundaries, SingleSubcellIsTheInterval) {
  EXPECT_EQ(chebyshev_boundaries(0), (std::vector<double>{-1.0, 1.0}));
  EXPECT_THROW(chebyshev_boundaries(-1), ConfigError);
}

TEST(Legendre, LowOrderClosedForms) {
  for (double x : {-1.0, -0.3, 0.0, 0.45, 1.0}) {
    EXPECT_DOUBLE_EQ(legendre_eval(0, x), 1.0);
    EXPECT_DOUBLE_EQ(legendre_eval(1, x), x);
    EXPECT_NEAR(legendre_eval(2, x), (3 * x * x - 1) / 2, 1e-15);
    EXPECT_NEAR(legendre_eval(3, x), (5 * x * x * x - 3 * x) / 2, 1e-15);
    EXPECT_NEAR(legendre_eval(4, x), (35 * std::pow(x, 4) - 30 * x * x + 3) / 8, 1e-15);
  }
}

TEST(Legendre, EndpointValues) {
  for (int n = 0; n <= 12; ++n) {
    EXPECT_NEAR(legendre_eval(n, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(legendre_eval(n, -1.0), n % 2 ? -1.0 : 1.0, 1e-14);
  }
}

TEST(Legendre, AverageMatchesQuadrature) {
  const double cuts[][2] = {{-1.0, 1.0}, {-1.0, -0.7}, {0.2, 0.25}, {-0.3, 0.9}};
  for (int n = 0; n <= 10; ++n) {
    for (const auto& c : cuts) {
      const double oracle =
          simpson([n](double x) { return legendre_eval(n, x); }, c[0], c[1], 20000) /
          (c[1] - c[0]);
      EXPECT_NEAR(legendre_average(n, c[0], c[1]), oracle, 1e-12) << "n=" << n;
    }
  }
}

TEST(Legendre, AverageOverWholeIntervalIsOrthogonality) {
  EXPECT_DOUBLE_EQ(legendre_average(0, -1.0, 1.0), 1.0);
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(legendre_average(n, -1.0, 1.0), 0.0, 1e-15);
}

TEST(Legendre, AverageRejectsEmptyInterval) {
  EXPECT_THROW(legendre_average(1, 0.5, 0.5), ConfigError);
  EXPECT_THROW(legendre_average(1, 0.5, 0.2), ConfigError);
}

TEST(JumpBasis, ShapeAroundItsEdge) {
  const auto e = chebyshev_boundaries(3);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, e[2], e, Side::kLeft), -1.0);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, e[2], e, Side::kRight), 1.0);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, e[2], e, Side::kPoint), 0.0);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, e[1], e, Side::kRight), 0.0);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, e[3], e, Side::kLeft), 0.0);
  const double mid_left = 0.5 * (e[1] + e[2]);
  EXPECT_NEAR(jump_basis_eval(2, mid_left, e, Side::kPoint), -0.5, 1e-15);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, -0.99, e, Side::kPoint), 0.0);
  EXPECT_DOUBLE_EQ(jump_basis_eval(2, 0.99, e, Side::kPoint), 0.0);
}

TEST(JumpBasis, OutsideMacrocellThrows) {
  const auto e = chebyshev_boundaries(3);
  EXPECT_THROW(jump_basis_eval(2, 1.5, e, Side::kPoint), ConfigError);
  EXPECT_THROW(jump_basis_eval(0, 0.0, e, Side::kPoint), ConfigError);
  EXPECT_THROW(jump_basis_eval(4, 0.0, e, Side::kPoint), ConfigError);
}

TEST(JumpBasis, AveragesByIntegration) {
  for (int q : {3, 7, 9}) {
    const auto e = chebyshev_boundaries(q);
    for (int edge = 1; edge <= q; ++edge) {
      for (int cell = 0; cell <= q; ++cell) {
        // One-sided limits at the cell ends, so an edge at the boundary counts from inside.
        auto inside = [&](double x) {
          const Side s = x == e[cell] ? Side::kRight : x == e[cell + 1] ? Side::kLeft : Side::kPoint;
          return jump_basis_eval(edge, x, e, s);
        };
        const double oracle = simpson(inside, e[cell], e[cell + 1]) / (e[cell + 1] - e[cell]);
        EXPECT_NEAR(jump_basis_average(edge, cell), oracle, 1e-12);
      }
    }
  }
  EXPECT_DOUBLE_EQ(jump_basis_average(3, 2), -0.5);
  EXPECT_DOUBLE_EQ(jump_basis_average(3, 3), 0.5);
  EXPECT_DOUBLE_EQ(jump_basis_average(3, 5), 0.0);
}

TEST(BasisSpec, Validation) {
  BasisSpec ok{3, {2}, {-1}};
  EXPECT_NO_THROW(ok.validate(4));
  EXPECT_EQ(ok.size(), 4);
  EXPECT_THROW((BasisSpec{4, {2}, {1}}.validate(4)), ConfigError);   // k + l > q + 1
  EXPECT_THROW((BasisSpec{2, {0}, {1}}.validate(4)), ConfigError);   // boundary edge
  EXPECT_THROW((BasisSpec{2, {4}, {1}}.validate(4)), ConfigError);
  EXPECT_THROW((BasisSpec{1, {1, 1}, {1, 1}}.validate(4)), ConfigError);
  EXPECT_THROW((BasisSpec{2, {1}, {0}}.validate(4)), ConfigError);
  EXPECT_THROW((BasisSpec{2, {1}, {}}.validate(4)), ConfigError);
}

TEST(BuildOperators, EntriesMatchOneDimensionalPieces) {
  const auto e = chebyshev_boundaries(3);
  const BasisSpec spec{3, {2}, {-1}};
  const auto ops = build_operators(spec, e, e);
  ASSERT_EQ(ops.averaging.rows(), 4);
  ASSERT_EQ(ops.averaging.cols(), 4);
  for (int i = 0; i < 4; ++i) {
    for (int n = 0; n < 3; ++n) {
      EXPECT_NEAR(ops.averaging(i, n), legendre_average(n, e[i], e[i + 1]), 1e-15);
    }
    EXPECT_DOUBLE_EQ(ops.averaging(i, 3), -jump_basis_average(2, i));
  }
  ASSERT_EQ(ops.vandermonde_left.rows(), 5);
  EXPECT_DOUBLE_EQ(ops.vandermonde_left(2, 3), 1.0);    // -1 * (-1)
  EXPECT_DOUBLE_EQ(ops.vandermonde_right(2, 3), -1.0);  // -1 * (+1)
  for (int p = 0; p < 5; ++p) {
    EXPECT_NEAR(ops.vandermonde_left(p, 2), legendre_eval(2, e[p]), 1e-15);
  }
}

TEST(BuildOperators, SquareLayoutsAreWellConditioned) {
  for (int q = 1; q <= 9; ++q) {
    const auto e = chebyshev_boundaries(q);
    for (int edge = 1; edge <= q; ++edge) {
      const BasisSpec spec{q, {edge}, {1}};
      const auto ops = build_operators(spec, e, {});
      EXPECT_LT(condition_number(ops.averaging), kMaxAveragingCondition);
    }
  }
}

TEST(BuildOperators, RankDeficientThrows) {
  // Two equal columns.
  Eigen::MatrixXd m(3, 2);
  m << 1, 1, 2, 2, 3, 3;
  EXPECT_FALSE(condition_number(m) < kMaxAveragingCondition);
}

TEST(Grid, UniformMapping) {
  const Grid g = Grid::uniform(-5.0, 5.0, 25, 4);
  EXPECT_EQ(g.macrocells(), 25u);
  EXPECT_EQ(g.total_subcells(), 100u);
  EXPECT_DOUBLE_EQ(g.lo(), -5.0);
  EXPECT_DOUBLE_EQ(g.hi(), 5.0);
  double total = 0.0;
  for (std::size_t m = 0; m < g.macrocells(); ++m) {
    EXPECT_DOUBLE_EQ(g.subcell_left(m, 0), g.macrocell_edges()[m]);
    EXPECT_DOUBLE_EQ(g.subcell_right(m, 3), g.macrocell_edges()[m + 1]);
    for (int i = 0; i < 4; ++i) total += g.subcell_width(m, i);
  }
  EXPECT_NEAR(total, 10.0, 1e-12);
  // Outermost Chebyshev subcell: (1 - cos(pi/4)) / 2 of the macrocell.
  EXPECT_NEAR(g.min_subcell_width(), 0.4 * (1.0 - std::numbers::sqrt2 / 2.0) / 2.0, 1e-15);
}

TEST(Grid, ReferenceRoundTrip) {
  const Grid g = Grid::uniform(0.0, 10.0, 7, 5);
  for (std::size_t m = 0; m < g.macrocells(); ++m) {
    for (double xi : {-1.0, -0.2, 0.6, 1.0}) {
      EXPECT_NEAR(g.to_reference(m, g.to_physical(m, xi)), xi, 1e-14);
    }
    const auto edges = g.subcell_edges(m);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      EXPECT_NEAR(g.to_reference(m, edges[i]), g.reference_edges()[i], 1e-13);
    }
  }
}

TEST(Grid, RejectsBadInput) {
  EXPECT_THROW(Grid::uniform(1.0, 1.0, 3, 4), ConfigError);
  EXPECT_THROW(Grid::uniform(0.0, 1.0, 0, 4), ConfigError);
  EXPECT_THROW(Grid::uniform(0.0, 1.0, 3, 0), ConfigError);
}

}  // namespace
}  // namespace enosv
