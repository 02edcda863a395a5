#ifndef ENOSV_QP_HPP_
#define ENOSV_QP_HPP_

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "enosv/error.hpp"

namespace enosv {

/// min ||matrix * x - target||_2  subject to  x_i >= 0 for i in constrained.
struct QpProblem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd target;
  std::vector<int> constrained;

  /// Throws ConfigError on dimension mismatch or bad constrained indices.
  void validate() const;
};

/// Constrained indices currently held at zero. Kept sorted.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(std::vector<int> indices);

  bool contains(int i) const;
  void insert(int i);
  void erase(int i);
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }
  const std::vector<int>& indices() const { return indices_; }

  bool operator==(const ActiveSet&) const = default;

 private:
  std::vector<int> indices_;
};

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Conjugate gradients for an SPD operator given as `apply(v) -> A v`.
/// Stops when ||rhs - A x|| <= tol * ||rhs||. Throws NumericalError when
/// <p, A p> <= 0 (operator not positive definite) or after max_iter
/// iterations without convergence.
template <class Apply>
  requires(!std::is_base_of_v<Eigen::EigenBase<std::decay_t<Apply>>, std::decay_t<Apply>>)
CgResult cg_solve(Apply&& apply, const Eigen::VectorXd& rhs,
                  const Eigen::VectorXd& x0, double tol, int max_iter) {
  CgResult out;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    out.x = Eigen::VectorXd::Zero(rhs.size());
    return out;
  }
  out.x = x0;
  Eigen::VectorXd r = rhs - apply(out.x);
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double threshold = tol * rhs_norm;
  while (std::sqrt(rr) > threshold) {
    if (out.iterations >= max_iter) {
      throw NumericalError("conjugate gradients did not converge: relative residual " +
                           std::to_string(std::sqrt(rr) / rhs_norm) + " after " +
                           std::to_string(max_iter) + " iterations");
    }
    const Eigen::VectorXd ap = apply(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) {
      throw NumericalError("conjugate gradients: operator is not positive definite");
    }
    const double a = rr / pap;
    out.x += a * p;
    r -= a * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    ++out.iterations;
  }
  out.residual_norm = std::sqrt(rr);
  return out;
}

/// Dense-matrix convenience overload.
CgResult cg_solve(const Eigen::MatrixXd& spd, const Eigen::VectorXd& rhs,
                  const Eigen::VectorXd& x0, double tol, int max_iter);

inline constexpr double kCgTolerance = 1e-12;

struct RestrictedSolution {
  Eigen::VectorXd x;
  int cg_iterations = 0;
};

/// Least-squares minimiser with the active coefficients fixed at zero,
/// from the normal equations of the remaining columns. The free part of
/// `warm_start` seeds conjugate gradients.
RestrictedSolution solve_equality_restricted(const QpProblem& problem,
                                             const ActiveSet& active,
                                             const Eigen::VectorXd& warm_start);

struct StepLength {
  double lambda = 1.0;
  /// Position (within the given sub-vectors) of the constraint that stops
  /// the step, when lambda < 1.
  std::optional<std::size_t> blocking;
};

/// Largest lambda in [0, 1] with (1 - lambda) * current + lambda * candidate
/// componentwise >= 0. Only components moving towards zero restrict the
/// step; equal ratios resolve to the lowest position.
StepLength step_length(std::span<const double> d_current,
                       std::span<const double> d_candidate);

/// Adds `blocking` when lambda < 1. Otherwise drops the single active index
/// with the most negative multiplier below -tolerance, if any.
ActiveSet update_active_set(const ActiveSet& active, double lambda,
                            std::optional<int> blocking,
                            std::span<const std::pair<int, double>> multipliers,
                            double tolerance = 0.0);

struct QpOptions {
  double cg_tolerance = kCgTolerance;
  /// Multipliers above -multiplier_tolerance * ||A^T target||_inf count as
  /// non-negative.
  double multiplier_tolerance = 1e-10;
  /// Outer iteration cap; <= 0 selects 10 * (constrained + 1).
  int max_outer_iterations = 0;
  /// Called with every accepted iterate, starting with the initial point.
  std::function<void(const Eigen::VectorXd&)> on_iterate;
};

struct QpSolution {
  Eigen::VectorXd coefficients;
  int iterations = 0;
  int cg_iterations = 0;
  ActiveSet final_active;
};

/// Primal active-set method. `initial` must satisfy the constraints.
QpSolution active_set_solve(const QpProblem& problem,
                            const Eigen::VectorXd& initial,
                            const QpOptions& options = {});

/// Starts from the zero vector.
QpSolution active_set_solve(const QpProblem& problem,
                            const QpOptions& options = {});

/// 0.5 * ||matrix * x - target||^2
double qp_objective(const QpProblem& problem, const Eigen::VectorXd& x);

/// A^T (A x - target): gradient of qp_objective.
Eigen::VectorXd qp_gradient(const QpProblem& problem, const Eigen::VectorXd& x);

}  // namespace enosv

#endif  // ENOSV_QP_HPP_
