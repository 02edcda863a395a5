#include "enosv/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "enosv/error.hpp"

namespace enosv {

std::vector<double> compute_interface_jumps(std::span<const double> averages) {
  std::vector<double> jumps;
  if (averages.size() < 2) return jumps;
  jumps.reserve(averages.size() - 1);
  for (std::size_t i = 1; i < averages.size(); ++i) {
    jumps.push_back(averages[i] - averages[i - 1]);
  }
  return jumps;
}

std::vector<JumpSelection> select_jump_edges(std::span<const double> jumps,
                                             int l) {
  if (l < 0) throw ConfigError("negative jump count");
  std::vector<std::size_t> order(jumps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(jumps[a]) > std::abs(jumps[b]);
  });
  std::vector<JumpSelection> out;
  for (std::size_t idx : order) {
    if (static_cast<int>(out.size()) == l) break;
    if (jumps[idx] == 0.0) break;
    out.push_back({static_cast<int>(idx) + 1, jumps[idx] > 0.0 ? 1 : -1});
  }
  return out;
}

double RecoveredFunction::evaluate(double xi, std::span<const double> edges,
                                   Side side) const {
  double v = 0.0;
  for (int c = 0; c < spec.size(); ++c) {
    v += coefficients(c) * basis_eval(spec, c, xi, edges, side);
  }
  return v;
}

namespace {

// Every size-`count` subset of interior edges 1..q, passed to `fn`.
template <class Fn>
void for_each_edge_subset(int q, int count, std::vector<int>& cur, int next,
                          Fn&& fn) {
  if (static_cast<int>(cur.size()) == count) {
    fn(cur);
    return;
  }
  for (int e = next; e <= q; ++e) {
    cur.push_back(e);
    for_each_edge_subset(q, count, cur, e + 1, fn);
    cur.pop_back();
  }
}

}  // namespace

Recovery::Recovery(std::vector<double> reference_edges, int continuous, int jumps)
    : edges_(std::move(reference_edges)), continuous_(continuous), jumps_(jumps) {
  const int n = subcells();
  if (n < 1) throw ConfigError("recovery needs at least one subcell");
  if (continuous_ < 0 || jumps_ < 0) throw ConfigError("negative basis counts");
  if (continuous_ + jumps_ > n) {
    throw ConfigError("k + l = " + std::to_string(continuous_ + jumps_) +
                      " exceeds q + 1 = " + std::to_string(n));
  }

  const std::vector<double> no_points;
  BasisSpec poly{continuous_, {}, {}};
  continuous_averages_ = build_operators(poly, edges_, no_points).averaging;

  // Rank check over every admissible selection; subsets of a full-rank
  // selection are full rank, so only the largest size matters.
  const int q = n - 1;
  const int count = std::min(jumps_, q);
  std::vector<int> cur;
  for_each_edge_subset(q, count, cur, 1, [&](const std::vector<int>& sel) {
    BasisSpec spec{continuous_, sel, std::vector<int>(sel.size(), 1)};
    (void)build_operators(spec, edges_, no_points);
  });

  continuous_traces_.resize(n + 1, continuous_);
  for (int e = 0; e <= n; ++e) {
    for (int c = 0; c < continuous_; ++c) {
      continuous_traces_(e, c) = legendre_eval(c, edges_[e]);
    }
  }
}

Eigen::MatrixXd Recovery::averaging(const BasisSpec& spec) const {
  const int n = subcells();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, spec.size());
  a.leftCols(continuous_) = continuous_averages_;
  for (int j = 0; j < spec.jumps(); ++j) {
    const int e = spec.jump_edges[j];
    a(e - 1, continuous_ + j) = -0.5 * spec.jump_signs[j];
    a(e, continuous_ + j) = 0.5 * spec.jump_signs[j];
  }
  return a;
}

RecoveredFunction Recovery::recover(std::span<const double> averages,
                                    const RecoveredFunction* warm_start,
                                    std::size_t macrocell_index) const {
  const int n = subcells();
  if (static_cast<int>(averages.size()) != n) {
    throw ConfigError("recover: expected " + std::to_string(n) + " averages, got " +
                      std::to_string(averages.size()));
  }
  const std::vector<double> jumps = compute_interface_jumps(averages);
  const std::vector<JumpSelection> selected = select_jump_edges(jumps, jumps_);

  RecoveredFunction fn;
  fn.macrocell_index = macrocell_index;
  fn.spec.continuous = continuous_;
  for (const auto& s : selected) {
    fn.spec.jump_edges.push_back(s.edge);
    fn.spec.jump_signs.push_back(s.sign);
  }

  // Solve for the deviation from a level carried by the constant mode, so
  // uniform data gives exactly uniform traces.
  double level = 0.0;
  if (continuous_ > 0) {
    const auto [lo, hi] = std::minmax_element(averages.begin(), averages.end());
    level = 0.5 * (*lo + *hi);
  }

  QpProblem problem;
  problem.matrix = averaging(fn.spec);
  problem.target = Eigen::Map<const Eigen::VectorXd>(averages.data(), n).array() - level;
  for (int j = 0; j < fn.spec.jumps(); ++j) problem.constrained.push_back(continuous_ + j);

  const bool reuse = warm_start != nullptr && warm_start->spec == fn.spec &&
                     warm_start->coefficients.size() == fn.spec.size();
  try {
    QpSolution sol;
    if (reuse) {
      Eigen::VectorXd x0 = warm_start->coefficients;
      if (continuous_ > 0) x0(0) -= level;
      sol = active_set_solve(problem, x0);
    } else {
      sol = active_set_solve(problem);
    }
    fn.coefficients = std::move(sol.coefficients);
    if (continuous_ > 0) fn.coefficients(0) += level;
    fn.qp_iterations = sol.iterations;
  } catch (const NumericalError& e) {
    throw NumericalError("recovery of macrocell " + std::to_string(macrocell_index) +
                         ": " + e.what());
  }
  return fn;
}

void Recovery::traces(const RecoveredFunction& fn, std::span<EdgeTrace> out) const {
  const int n = subcells();
  const Eigen::VectorXd poly =
      continuous_traces_ * fn.coefficients.head(fn.spec.continuous);
  for (int e = 0; e <= n; ++e) out[e] = {poly(e), poly(e)};
  for (int j = 0; j < fn.spec.jumps(); ++j) {
    const double d = fn.jump_coefficient(j) * fn.spec.jump_signs[j];
    const int e = fn.spec.jump_edges[j];
    out[e].left -= d;
    out[e].right += d;
  }
}

std::vector<EdgeTrace> Recovery::traces(const RecoveredFunction& fn) const {
  std::vector<EdgeTrace> out(edges_.size());
  traces(fn, out);
  return out;
}

RecoveredFunction recover_macrocell(std::span<const double> averages,
                                    int continuous, int jumps,
                                    std::span<const double> edges,
                                    const RecoveredFunction* warm_start) {
  Recovery rec(std::vector<double>(edges.begin(), edges.end()), continuous, jumps);
  return rec.recover(averages, warm_start);
}

std::vector<EdgeTrace> evaluate_traces(const RecoveredFunction& fn,
                                       std::span<const double> edges) {
  const std::size_t n = edges.size();
  std::vector<EdgeTrace> out(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double left = fn.evaluate(edges[e], edges, Side::kLeft);
    const double right = fn.evaluate(edges[e], edges, Side::kRight);
    out[e] = {left, right};
  }
  return out;
}

int count_sign_violations(const RecoveredFunction& fn,
                          std::span<const EdgeTrace> traces,
                          std::span<const double> averages) {
  int violations = 0;
  for (int j = 0; j < fn.spec.jumps(); ++j) {
    const int e = fn.spec.jump_edges[j];
    const double trace_jump = traces[e].right - traces[e].left;
    const double average_jump = averages[e] - averages[e - 1];
    if (trace_jump == 0.0) continue;
    const bool agree = (trace_jump > 0.0) == (average_jump > 0.0) && average_jump != 0.0;
    if (!agree) ++violations;
  }
  return violations;
}

}  // namespace enosv
