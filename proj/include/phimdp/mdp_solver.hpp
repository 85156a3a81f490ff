#ifndef PHIMDP_MDP_SOLVER_HPP_
#define PHIMDP_MDP_SOLVER_HPP_

#include <iosfwd>
#include <vector>

#include "phimdp/cost.hpp"

namespace phimdp {

/// Estimated MDP: transition probabilities and optimistic expected rewards.
struct MdpModel {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> trans;   // (s, a, s') -> probability
  std::vector<double> reward;  // (s, a, s') -> expected reward

  double t(int s, int a, int s2) const { return trans[idx(s, a, s2)]; }
  double r(int s, int a, int s2) const { return reward[idx(s, a, s2)]; }
  double& t(int s, int a, int s2) { return trans[idx(s, a, s2)]; }
  double& r(int s, int a, int s2) { return reward[idx(s, a, s2)]; }

  size_t idx(int s, int a, int s2) const {
    return (static_cast<size_t>(s) * num_actions + a) * num_states + s2;
  }
};

/// Frequency estimates with the optimistic reward (R_max + r_1 + ... + r_m) /
/// (m + 1). Unvisited (s, a) pairs get a uniform next-state distribution and
/// reward R_max everywhere.
MdpModel estimate_model(const SufficientStats& stats,
                        const std::vector<double>& reward_values, double r_max);
MdpModel estimate_model(const Aoct& tree, const History& h, double r_max);

/// Tabular action values shared by AVI and Q-learning.
struct QTable {
  int num_actions = 0;
  double gamma = 0.0;
  double eta = 0.0;
  std::vector<double> q;  // (s, a) row-major

  QTable() = default;
  QTable(int num_states, int num_actions, double gamma, double eta,
         double init = 0.0);

  int num_states() const {
    return num_actions == 0 ? 0 : static_cast<int>(q.size()) / num_actions;
  }
  double at(int s, int a) const { return q[static_cast<size_t>(s) * num_actions + a]; }
  double& at(int s, int a) { return q[static_cast<size_t>(s) * num_actions + a]; }
  double row_max(int s) const;
  /// Grows the table so state s exists; new rows start at `init`
  /// (optimistic R_max / (1 - gamma) for states unseen at AVI time).
  void ensure_state(int s, double init);
};

struct AviResult {
  QTable q;
  int sweeps = 0;
  bool converged = false;
  double residual = 0.0;
};

/// Synchronous action-value iteration: Q(s,a) <- sum_s' T [R + gamma max Q].
AviResult avi(const MdpModel& model, double gamma, double tolerance = 1e-6,
              int max_sweeps = 10000);

void q_learning_step(QTable& q, int s, int a, double reward, int s_next);

/// argmax_a Q(s, a), ties broken by the lowest action index.
int greedy_action(const QTable& q, int s);

void dump_qtable_csv(const QTable& q, std::ostream& out);

}  // namespace phimdp

#endif  // PHIMDP_MDP_SOLVER_HPP_
