#include "enosv/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "enosv/error.hpp"

namespace enosv {

std::vector<double> chebyshev_boundaries(int q) {
  if (q < 0) throw ConfigError("chebyshev_boundaries: q must be >= 0");
  const int n = q + 1;
  std::vector<double> x(n + 1);
  // -cos(i pi / n) written as a sine so that the ends are exactly +-1 and
  // mirrored nodes are exact negatives of each other.
  for (int i = 0; i <= n; ++i) {
    x[i] = std::sin(std::numbers::pi * (2 * i - n) / (2.0 * n));
  }
  return x;
}

double legendre_eval(int n, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2 * m + 1) * x * cur - m * prev) / (m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double legendre_antiderivative(int n, double x) {
  return (legendre_eval(n + 1, x) - legendre_eval(n - 1, x)) / (2 * n + 1);
}

void check_edges(std::span<const double> edges) {
  if (edges.size() < 2) throw ConfigError("subcell layout needs >= 2 edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ConfigError("subcell edges must be strictly increasing");
    }
  }
}

}  // namespace

double legendre_average(int n, double a, double b) {
  if (!(b > a)) throw ConfigError("legendre_average: need a < b");
  if (n == 0) return 1.0;
  return (legendre_antiderivative(n, b) - legendre_antiderivative(n, a)) /
         (b - a);
}

double jump_basis_eval(int edge, double x, std::span<const double> edges,
                       Side side) {
  const int q = static_cast<int>(edges.size()) - 2;
  if (edge < 1 || edge > q) {
    throw ConfigError("jump edge " + std::to_string(edge) +
                      " is not an interior edge");
  }
  const double slack = 1e-12 * (edges.back() - edges.front());
  if (x < edges.front() - slack || x > edges.back() + slack) {
    throw ConfigError("jump_basis_eval: x outside the macrocell");
  }
  const double left = edges[edge - 1];
  const double mid = edges[edge];
  const double right = edges[edge + 1];
  if (x <= left || x >= right) return 0.0;
  if (x < mid) return -(x - left) / (mid - left);
  if (x > mid) return (right - x) / (right - mid);
  switch (side) {
    case Side::kLeft:
      return -1.0;
    case Side::kRight:
      return 1.0;
    case Side::kPoint:
      break;
  }
  return 0.0;
}

double jump_basis_average(int edge, int subcell) {
  if (subcell == edge - 1) return -0.5;
  if (subcell == edge) return 0.5;
  return 0.0;
}

void BasisSpec::validate(int subcells) const {
  if (continuous < 0) throw ConfigError("negative continuous basis count");
  if (jump_edges.size() != jump_signs.size()) {
    throw ConfigError("jump_edges and jump_signs differ in length");
  }
  if (size() > subcells) {
    throw ConfigError("basis of size " + std::to_string(size()) +
                      " exceeds the " + std::to_string(subcells) +
                      " subcell averages (need k + l <= q + 1)");
  }
  for (std::size_t i = 0; i < jump_edges.size(); ++i) {
    if (jump_edges[i] < 1 || jump_edges[i] > subcells - 1) {
      throw ConfigError("jump edge " + std::to_string(jump_edges[i]) +
                        " is not an interior edge");
    }
    if (jump_signs[i] != 1 && jump_signs[i] != -1) {
      throw ConfigError("jump signs must be +1 or -1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (jump_edges[j] == jump_edges[i]) {
        throw ConfigError("duplicate jump edge");
      }
    }
  }
}

double basis_eval(const BasisSpec& spec, int column, double x,
                  std::span<const double> edges, Side side) {
  if (column < spec.continuous) return legendre_eval(column, x);
  const int j = column - spec.continuous;
  return spec.jump_signs[j] * jump_basis_eval(spec.jump_edges[j], x, edges, side);
}

double condition_number(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() < m.cols() || s(s.size() - 1) == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return s(0) / s(s.size() - 1);
}

OperatorPair build_operators(const BasisSpec& spec,
                             std::span<const double> edges,
                             std::span<const double> eval_points) {
  check_edges(edges);
  const int subcells = static_cast<int>(edges.size()) - 1;
  spec.validate(subcells);
  const int n = spec.size();

  OperatorPair ops;
  ops.averaging.resize(subcells, n);
  for (int i = 0; i < subcells; ++i) {
    for (int c = 0; c < spec.continuous; ++c) {
      ops.averaging(i, c) = legendre_average(c, edges[i], edges[i + 1]);
    }
    for (int j = 0; j < spec.jumps(); ++j) {
      ops.averaging(i, spec.continuous + j) =
          spec.jump_signs[j] * jump_basis_average(spec.jump_edges[j], i);
    }
  }
  if (n > 0) {
    const double cond = condition_number(ops.averaging);
    if (!(cond <= kMaxAveragingCondition)) {
      throw NumericalError("averaging matrix is rank deficient (condition " +
                           std::to_string(cond) + ")");
    }
  }

  const auto points = static_cast<Eigen::Index>(eval_points.size());
  ops.vandermonde_left.resize(points, n);
  ops.vandermonde_right.resize(points, n);
  for (Eigen::Index p = 0; p < points; ++p) {
    for (int c = 0; c < n; ++c) {
      ops.vandermonde_left(p, c) =
          basis_eval(spec, c, eval_points[p], edges, Side::kLeft);
      ops.vandermonde_right(p, c) =
          basis_eval(spec, c, eval_points[p], edges, Side::kRight);
    }
  }
  return ops;
}

Grid::Grid(std::vector<double> macrocell_edges, int subcells_per_macrocell)
    : macrocell_edges_(std::move(macrocell_edges)),
      subcells_(subcells_per_macrocell) {
  if (macrocell_edges_.size() < 2) throw ConfigError("grid needs >= 1 macrocell");
  if (subcells_ < 1) throw ConfigError("need >= 1 subcell per macrocell");
  check_edges(macrocell_edges_);
  reference_edges_ = chebyshev_boundaries(subcells_ - 1);
  subcell_edges_.reserve(macrocells() * (subcells_ + 1));
  for (std::size_t m = 0; m < macrocells(); ++m) {
    const double a = macrocell_edges_[m];
    const double b = macrocell_edges_[m + 1];
    subcell_edges_.push_back(a);
    for (int e = 1; e < subcells_; ++e) {
      subcell_edges_.push_back(0.5 * (a + b) + 0.5 * (b - a) * reference_edges_[e]);
    }
    subcell_edges_.push_back(b);
  }
}

Grid Grid::uniform(double lo, double hi, int macrocells,
                   int subcells_per_macrocell) {
  if (macrocells < 1) throw ConfigError("need >= 1 macrocell");
  if (!(hi > lo)) throw ConfigError("empty domain");
  std::vector<double> edges(macrocells + 1);
  for (int m = 0; m <= macrocells; ++m) {
    edges[m] = lo + (hi - lo) * m / macrocells;
  }
  edges.back() = hi;
  return Grid(std::move(edges), subcells_per_macrocell);
}

std::span<const double> Grid::subcell_edges(std::size_t m) const {
  return std::span<const double>(subcell_edges_).subspan(m * (subcells_ + 1),
                                                         subcells_ + 1);
}

double Grid::subcell_left(std::size_t m, int i) const {
  return subcell_edges_[m * (subcells_ + 1) + i];
}

double Grid::subcell_right(std::size_t m, int i) const {
  return subcell_edges_[m * (subcells_ + 1) + i + 1];
}

double Grid::subcell_width(std::size_t m, int i) const {
  return subcell_right(m, i) - subcell_left(m, i);
}

double Grid::min_subcell_width() const {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < macrocells(); ++m) {
    for (int i = 0; i < subcells_; ++i) h = std::min(h, subcell_width(m, i));
  }
  return h;
}

double Grid::to_reference(std::size_t m, double x) const {
  const double a = macrocell_edges_[m];
  const double b = macrocell_edges_[m + 1];
  return 2.0 * (x - a) / (b - a) - 1.0;
}

double Grid::to_physical(std::size_t m, double xi) const {
  const double a = macrocell_edges_[m];
  const double b = macrocell_edges_[m + 1];
  return 0.5 * (a + b) + 0.5 * (b - a) * xi;
}

}  // namespace enosv
