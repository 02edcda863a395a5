#include "enosv/qp.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace enosv {

void QpProblem::validate() const {
  if (matrix.rows() != target.size()) {
    throw ConfigError("QpProblem: matrix has " + std::to_string(matrix.rows()) +
                      " rows but target has " + std::to_string(target.size()) +
                      " entries");
  }
  for (std::size_t i = 0; i < constrained.size(); ++i) {
    if (constrained[i] < 0 || constrained[i] >= matrix.cols()) {
      throw ConfigError("QpProblem: constrained index out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (constrained[i] == constrained[j]) {
        throw ConfigError("QpProblem: duplicate constrained index");
      }
    }
  }
}

ActiveSet::ActiveSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool ActiveSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void ActiveSet::insert(int i) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) indices_.insert(it, i);
}

void ActiveSet::erase(int i) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it != indices_.end() && *it == i) indices_.erase(it);
}

CgResult cg_solve(const Eigen::MatrixXd& spd, const Eigen::VectorXd& rhs,
                  const Eigen::VectorXd& x0, double tol, int max_iter) {
  return cg_solve([&spd](const Eigen::VectorXd& v) -> Eigen::VectorXd { return spd * v; },
                  rhs, x0, tol, max_iter);
}

RestrictedSolution solve_equality_restricted(const QpProblem& problem,
                                             const ActiveSet& active,
                                             const Eigen::VectorXd& warm_start) {
  const auto n = problem.matrix.cols();
  std::vector<Eigen::Index> free;
  free.reserve(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!active.contains(static_cast<int>(c))) free.push_back(c);
  }

  RestrictedSolution out;
  out.x = Eigen::VectorXd::Zero(n);
  if (free.empty()) return out;

  const auto f = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd restricted(problem.matrix.rows(), f);
  Eigen::VectorXd x0(f);
  for (Eigen::Index j = 0; j < f; ++j) {
    restricted.col(j) = problem.matrix.col(free[j]);
    x0(j) = warm_start.size() == n ? warm_start(free[j]) : 0.0;
  }
  const Eigen::MatrixXd normal = restricted.transpose() * restricted;
  const Eigen::VectorXd rhs = restricted.transpose() * problem.target;
  const CgResult cg = cg_solve(normal, rhs, x0, kCgTolerance, 4 * static_cast<int>(f));
  for (Eigen::Index j = 0; j < f; ++j) out.x(free[j]) = cg.x(j);
  out.cg_iterations = cg.iterations;
  return out;
}

StepLength step_length(std::span<const double> d_current,
                       std::span<const double> d_candidate) {
  StepLength out;
  for (std::size_t j = 0; j < d_current.size(); ++j) {
    const double delta = d_candidate[j] - d_current[j];
    if (!(delta < 0.0)) continue;
    const double ratio = std::max(0.0, -d_current[j] / delta);
    if (ratio < out.lambda) {
      out.lambda = ratio;
      out.blocking = j;
    }
  }
  return out;
}

ActiveSet update_active_set(const ActiveSet& active, double lambda,
                            std::optional<int> blocking,
                            std::span<const std::pair<int, double>> multipliers,
                            double tolerance) {
  ActiveSet next = active;
  if (lambda < 1.0) {
    if (blocking) next.insert(*blocking);
    return next;
  }
  std::optional<int> drop;
  double most_negative = -tolerance;
  for (const auto& [index, multiplier] : multipliers) {
    if (!active.contains(index)) continue;
    if (multiplier < most_negative) {
      most_negative = multiplier;
      drop = index;
    }
  }
  if (drop) next.erase(*drop);
  return next;
}

double qp_objective(const QpProblem& problem, const Eigen::VectorXd& x) {
  return 0.5 * (problem.matrix * x - problem.target).squaredNorm();
}

Eigen::VectorXd qp_gradient(const QpProblem& problem, const Eigen::VectorXd& x) {
  return problem.matrix.transpose() * (problem.matrix * x - problem.target);
}

QpSolution active_set_solve(const QpProblem& problem,
                            const Eigen::VectorXd& initial,
                            const QpOptions& options) {
  problem.validate();
  const auto n = problem.matrix.cols();
  if (initial.size() != n) {
    throw ConfigError("active_set_solve: initial point has wrong dimension");
  }
  for (int i : problem.constrained) {
    if (initial(i) < 0.0) {
      throw ConfigError("active_set_solve: initial point is infeasible");
    }
  }

  const double multiplier_tol =
      options.multiplier_tolerance *
      (problem.matrix.transpose() * problem.target).lpNorm<Eigen::Infinity>();
  const int max_outer = options.max_outer_iterations > 0
                            ? options.max_outer_iterations
                            : 10 * (static_cast<int>(problem.constrained.size()) + 1);

  QpSolution sol;
  sol.coefficients = initial;
  std::vector<int> active_init;
  for (int i : problem.constrained) {
    if (initial(i) == 0.0) active_init.push_back(i);
  }
  ActiveSet active(std::move(active_init));
  if (options.on_iterate) options.on_iterate(sol.coefficients);

  std::vector<int> inactive;
  std::vector<double> d_cur;
  std::vector<double> d_cand;
  std::optional<int> last_dropped;

  for (int outer = 0; outer < max_outer; ++outer) {
    ++sol.iterations;
    const RestrictedSolution cand =
        solve_equality_restricted(problem, active, sol.coefficients);
    sol.cg_iterations += cand.cg_iterations;

    inactive.clear();
    d_cur.clear();
    d_cand.clear();
    for (int i : problem.constrained) {
      if (active.contains(i)) continue;
      inactive.push_back(i);
      d_cur.push_back(sol.coefficients(i));
      d_cand.push_back(cand.x(i));
    }
    const StepLength step = step_length(d_cur, d_cand);

    // A constraint released on the previous pass that blocks immediately:
    // its multiplier was round-off, the previous iterate is optimal.
    if (step.blocking && step.lambda == 0.0 && last_dropped &&
        inactive[*step.blocking] == *last_dropped) {
      active.insert(*last_dropped);
      sol.final_active = active;
      return sol;
    }

    std::optional<int> blocking;
    if (step.lambda >= 1.0) {
      sol.coefficients = cand.x;
    } else {
      sol.coefficients += step.lambda * (cand.x - sol.coefficients);
      blocking = inactive[*step.blocking];
      sol.coefficients(*blocking) = 0.0;
    }
    // Clamp round-off so the iterate stays exactly feasible.
    for (int i : problem.constrained) {
      if (sol.coefficients(i) < 0.0) sol.coefficients(i) = 0.0;
    }
    if (options.on_iterate) options.on_iterate(sol.coefficients);

    std::vector<std::pair<int, double>> multipliers;
    if (step.lambda >= 1.0 && !active.empty()) {
      const Eigen::VectorXd g = qp_gradient(problem, sol.coefficients);
      for (int i : active.indices()) multipliers.emplace_back(i, g(i));
    }
    const ActiveSet next =
        update_active_set(active, step.lambda, blocking, multipliers, multiplier_tol);
    if (step.lambda >= 1.0 && next == active) {
      sol.final_active = active;
      return sol;
    }
    last_dropped.reset();
    if (next.size() < active.size()) {
      for (int i : active.indices()) {
        if (!next.contains(i)) last_dropped = i;
      }
    }
    active = next;
  }
  throw NumericalError("active_set_solve: no convergence after " +
                       std::to_string(max_outer) +
                       " outer iterations (cycling active set)");
}

QpSolution active_set_solve(const QpProblem& problem, const QpOptions& options) {
  return active_set_solve(problem, Eigen::VectorXd::Zero(problem.matrix.cols()),
                          options);
}

}  // namespace enosv
