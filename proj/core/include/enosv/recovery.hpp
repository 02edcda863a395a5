#ifndef ENOSV_RECOVERY_HPP_
#define ENOSV_RECOVERY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "enosv/discretization.hpp"
#include "enosv/qp.hpp"

namespace enosv {

/// Differences of consecutive averages; entry e-1 belongs to interior edge e.
std::vector<double> compute_interface_jumps(std::span<const double> averages);

struct JumpSelection {
  int edge = 0;  // interior edge index, 1..q
  int sign = 0;  // sign of the average jump across the edge

  bool operator==(const JumpSelection&) const = default;
};

/// The (at most) l edges with the largest |jump|, in order of decreasing
/// magnitude; ties go to the leftmost edge. Zero jumps are never selected.
std::vector<JumpSelection> select_jump_edges(std::span<const double> jumps,
                                             int l);

/// One recovered macrocell: sum_i c_i P_i + sum_i d_i s_i psi_{e_i} on the
/// reference interval, with every d_i >= 0.
struct RecoveredFunction {
  BasisSpec spec;
  Eigen::VectorXd coefficients;
  std::size_t macrocell_index = 0;
  int qp_iterations = 0;

  /// Coefficient d_i of jump i (sign-normalised, >= 0).
  double jump_coefficient(int i) const {
    return coefficients(spec.continuous + i);
  }

  /// Value at reference coordinate xi; `side` picks the limit at jump edges.
  double evaluate(double xi, std::span<const double> edges, Side side) const;
};

struct EdgeTrace {
  double left = 0.0;
  double right = 0.0;
};

/// Sign-property constrained recovery for a fixed subcell layout and fixed
/// (k, l). Precomputes everything that does not depend on the averages.
class Recovery {
 public:
  /// Throws ConfigError when k + l exceeds the subcell count and
  /// NumericalError when some admissible jump selection would make the
  /// averaging matrix rank deficient.
  Recovery(std::vector<double> reference_edges, int continuous, int jumps);

  int subcells() const { return static_cast<int>(edges_.size()) - 1; }
  int continuous() const { return continuous_; }
  int jumps() const { return jumps_; }
  std::span<const double> edges() const { return edges_; }

  /// `warm_start` is reused as the initial active-set iterate when it was
  /// recovered with the same basis.
  RecoveredFunction recover(std::span<const double> averages,
                            const RecoveredFunction* warm_start = nullptr,
                            std::size_t macrocell_index = 0) const;

  /// Left and right limits at all q+2 subcell edges. At the two macrocell
  /// boundaries both entries hold the interior-side limit.
  std::vector<EdgeTrace> traces(const RecoveredFunction& fn) const;
  void traces(const RecoveredFunction& fn, std::span<EdgeTrace> out) const;

  /// Averaging matrix of the basis selected for `spec`.
  Eigen::MatrixXd averaging(const BasisSpec& spec) const;

 private:
  std::vector<double> edges_;
  int continuous_;
  int jumps_;
  Eigen::MatrixXd continuous_averages_;  // (q+1) x k
  Eigen::MatrixXd continuous_traces_;    // (q+2) x k
};

/// Free-function form of Recovery::recover for one-off use.
RecoveredFunction recover_macrocell(std::span<const double> averages,
                                    int continuous, int jumps,
                                    std::span<const double> edges,
                                    const RecoveredFunction* warm_start = nullptr);

std::vector<EdgeTrace> evaluate_traces(const RecoveredFunction& fn,
                                       std::span<const double> edges);

/// Number of selected jump edges whose recovered trace difference is
/// nonzero with a sign differing from the sign of the average jump there.
int count_sign_violations(const RecoveredFunction& fn,
                          std::span<const EdgeTrace> traces,
                          std::span<const double> averages);

}  // namespace enosv

#endif  // ENOSV_RECOVERY_HPP_
