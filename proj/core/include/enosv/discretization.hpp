#ifndef ENOSV_DISCRETIZATION_HPP_
#define ENOSV_DISCRETIZATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace enosv {

/// Which one-sided limit to take at a discontinuity. kPoint is the mean of
/// both limits (identical to either where the function is continuous).
enum class Side { kLeft, kRight, kPoint };

/// Chebyshev nodes of the second kind on [-1, 1] as q+2 ascending subcell
/// boundaries: -cos(i*pi/(q+1)), i = 0..q+1. Endpoints are exactly -1 and 1
/// and the layout is exactly antisymmetric.
std::vector<double> chebyshev_boundaries(int q);

/// n-th Legendre polynomial via the three-term recurrence.
double legendre_eval(int n, double x);

/// Exact mean of P_n over [a, b], from the antiderivative
/// (P_{n+1} - P_{n-1}) / (2n + 1).
double legendre_average(int n, double a, double b);

/// Jump prototype centred on interior edge `edge` of the subcell layout
/// `edges` (edge indices 1..q, subcells 0..q). Linear from 0 at
/// edges[edge-1] down to -1 at the edge, jumps to +1, linear back to 0 at
/// edges[edge+1]. Throws ConfigError for x outside [edges.front(), edges.back()].
double jump_basis_eval(int edge, double x, std::span<const double> edges,
                       Side side);

/// Mean of the jump prototype over one subcell: -1/2 left of the edge,
/// +1/2 right of it, 0 elsewhere. Independent of the subcell widths.
double jump_basis_average(int edge, int subcell);

/// k continuous Legendre functions plus l sign-oriented jump functions.
/// Jump function i is jump_signs[i] * psi_{jump_edges[i]}, so a non-negative
/// coefficient reproduces the orientation of the detected average jump.
struct BasisSpec {
  int continuous = 0;
  std::vector<int> jump_edges;
  std::vector<int> jump_signs;

  int jumps() const { return static_cast<int>(jump_edges.size()); }
  int size() const { return continuous + jumps(); }

  /// Throws ConfigError unless k + l <= subcells, edges are distinct
  /// interior edges and signs are +-1.
  void validate(int subcells) const;

  bool operator==(const BasisSpec&) const = default;
};

/// Value of basis function `column` of `spec` at reference coordinate x.
double basis_eval(const BasisSpec& spec, int column, double x,
                  std::span<const double> edges, Side side);

struct OperatorPair {
  /// (q+1) x (k+l): exact subcell averages of every basis function.
  Eigen::MatrixXd averaging;
  /// points x (k+l): left and right limits of every basis function.
  Eigen::MatrixXd vandermonde_left;
  Eigen::MatrixXd vandermonde_right;
};

/// Ratio of extreme singular values; infinity for rank-deficient input.
double condition_number(const Eigen::MatrixXd& m);

inline constexpr double kMaxAveragingCondition = 1e12;

/// Assembles the averaging and point-evaluation matrices of `spec` on the
/// reference layout `edges`. Throws ConfigError for an inadmissible spec and
/// NumericalError when the averaging matrix is numerically rank deficient.
OperatorPair build_operators(const BasisSpec& spec,
                             std::span<const double> edges,
                             std::span<const double> eval_points);

/// Macrocells over [lo, hi], each split into subcells with the Chebyshev
/// layout mapped affinely onto the macrocell.
class Grid {
 public:
  Grid(std::vector<double> macrocell_edges, int subcells_per_macrocell);

  static Grid uniform(double lo, double hi, int macrocells,
                      int subcells_per_macrocell);

  std::size_t macrocells() const { return macrocell_edges_.size() - 1; }
  int subcells_per_macrocell() const { return subcells_; }
  std::size_t total_subcells() const { return macrocells() * subcells_; }

  std::span<const double> macrocell_edges() const { return macrocell_edges_; }
  /// Reference layout in [-1, 1], q+2 entries.
  std::span<const double> reference_edges() const { return reference_edges_; }
  /// Physical subcell edges of macrocell m, q+2 entries.
  std::span<const double> subcell_edges(std::size_t m) const;

  double subcell_left(std::size_t m, int i) const;
  double subcell_right(std::size_t m, int i) const;
  double subcell_width(std::size_t m, int i) const;
  double min_subcell_width() const;

  double lo() const { return macrocell_edges_.front(); }
  double hi() const { return macrocell_edges_.back(); }

  /// Physical coordinate to the reference coordinate of macrocell m.
  double to_reference(std::size_t m, double x) const;
  double to_physical(std::size_t m, double xi) const;

 private:
  std::vector<double> macrocell_edges_;
  int subcells_;
  std::vector<double> reference_edges_;
  std::vector<double> subcell_edges_;  // macrocells() * (q+2)
};

}  // namespace enosv

#endif  // ENOSV_DISCRETIZATION_HPP_
