#ifndef PHIMDP_COST_HPP_
#define PHIMDP_COST_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "phimdp/context_tree.hpp"

namespace phimdp {

/// Transition and reward count tensors n over (s, a, s', r') collected from a
/// history under a tree. Dense layout; state/action/reward counts are small
/// at the scales this library targets.
class SufficientStats {
 public:
  SufficientStats(int num_states, int num_actions, int num_rewards);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int num_rewards() const { return num_rewards_; }

  int64_t trans(int s, int a, int s2) const { return trans_[trans_idx(s, a, s2)]; }
  int64_t reward_count(int s, int a, int s2, int r) const {
    return rewards_[reward_idx(s, a, s2, r)];
  }
  int64_t row_total(int s, int a) const { return row_total_[s * num_actions_ + a]; }
  int64_t total() const { return total_; }

  void add(int s, int a, int s2, int r);

 private:
  size_t trans_idx(int s, int a, int s2) const {
    return (static_cast<size_t>(s) * num_actions_ + a) * num_states_ + s2;
  }
  size_t reward_idx(int s, int a, int s2, int r) const {
    return trans_idx(s, a, s2) * num_rewards_ + r;
  }

  int num_states_, num_actions_, num_rewards_;
  std::vector<int64_t> trans_;
  std::vector<int64_t> rewards_;
  std::vector<int64_t> row_total_;
  int64_t total_ = 0;
};

/// One pass over the history: the state sequence under the tree, its visit
/// counts, and the transition/reward statistics. Transitions touching the
/// boundary state are dropped.
struct StatsResult {
  SufficientStats stats;
  std::vector<int64_t> visits;
};

StatsResult collect_stats(const Aoct& tree, const History& h);

/// Data (entropy) and parameter (precision) parts of the two codes; beta
/// weighs only the parameter parts.
struct CodeLengthParts {
  double state_data = 0.0;
  double state_param = 0.0;
  double reward_data = 0.0;
  double reward_param = 0.0;
};

CodeLengthParts code_length_parts(const SufficientStats& stats);

/// CL(s_1:n | a_1:n) in bits: entropy plus (|S|-1)/2 log n per visited row.
double state_code_length(const SufficientStats& stats);
/// CL(r_1:n | s_1:n, a_1:n) in bits with (|R|-1)/2 log n rows.
double reward_code_length(const SufficientStats& stats);

double cost(const SufficientStats& stats, double alpha, double beta);
double cost(const Aoct& tree, const History& h, double alpha, double beta);

/// Debug CSV of per-row code-length contributions.
void dump_code_length_rows(const SufficientStats& stats, std::ostream& out);

}  // namespace phimdp

#endif  // PHIMDP_COST_HPP_
