#include "phimdp/cost.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace phimdp {

SufficientStats::SufficientStats(int num_states, int num_actions, int num_rewards)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_rewards_(num_rewards),
      trans_(static_cast<size_t>(num_states) * num_actions * num_states, 0),
      rewards_(static_cast<size_t>(num_states) * num_actions * num_states * num_rewards, 0),
      row_total_(static_cast<size_t>(num_states) * num_actions, 0) {}

void SufficientStats::add(int s, int a, int s2, int r) {
  ++trans_[trans_idx(s, a, s2)];
  ++rewards_[reward_idx(s, a, s2, r)];
  ++row_total_[s * num_actions_ + a];
  ++total_;
}

StatsResult collect_stats(const Aoct& tree, const History& h) {
  const int n = h.length();
  StatsResult result{
      SufficientStats(tree.num_states(), h.alphabets().num_actions,
                      h.alphabets().num_rewards()),
      std::vector<int64_t>(tree.num_states(), 0)};
  const int boundary = tree.boundary_state();
  int prev = tree.map_history(h, 1);
  if (prev != boundary) ++result.visits[prev];
  for (int t = 1; t <= n; ++t) {
    int next = tree.map_history(h, t + 1);
    if (next != boundary) ++result.visits[next];
    if (prev != boundary && next != boundary)
      result.stats.add(prev, h.action_at(t), next, h.reward_index_at(t + 1));
    prev = next;
  }
  return result;
}

CodeLengthParts code_length_parts(const SufficientStats& stats) {
  CodeLengthParts parts;
  const int S = stats.num_states();
  const int A = stats.num_actions();
  const int R = stats.num_rewards();
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      int64_t row = stats.row_total(s, a);
      if (row == 0) continue;
      double entropy = 0.0;  // n * H(counts/n) = sum c * log2(n/c)
      for (int s2 = 0; s2 < S; ++s2) {
        int64_t c = stats.trans(s, a, s2);
        if (c > 0) entropy += static_cast<double>(c) * (std::log2(static_cast<double>(row)) - std::log2(static_cast<double>(c)));
      }
      parts.state_data += entropy;
      parts.state_param += 0.5 * (S - 1) * std::log2(static_cast<double>(row));
      for (int s2 = 0; s2 < S; ++s2) {
        int64_t cell = stats.trans(s, a, s2);
        if (cell == 0) continue;
        double rew_entropy = 0.0;
        for (int r = 0; r < R; ++r) {
          int64_t c = stats.reward_count(s, a, s2, r);
          if (c > 0)
            rew_entropy += static_cast<double>(c) * (std::log2(static_cast<double>(cell)) - std::log2(static_cast<double>(c)));
        }
        parts.reward_data += rew_entropy;
        parts.reward_param += 0.5 * (R - 1) * std::log2(static_cast<double>(cell));
      }
    }
  }
  return parts;
}

double state_code_length(const SufficientStats& stats) {
  CodeLengthParts p = code_length_parts(stats);
  return p.state_data + p.state_param;
}

double reward_code_length(const SufficientStats& stats) {
  CodeLengthParts p = code_length_parts(stats);
  return p.reward_data + p.reward_param;
}

double cost(const SufficientStats& stats, double alpha, double beta) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("cost: alpha outside [0, 1]");
  if (beta <= 0.0) throw std::invalid_argument("cost: beta must be positive");
  CodeLengthParts p = code_length_parts(stats);
  return alpha * (p.state_data + beta * p.state_param) +
         (1.0 - alpha) * (p.reward_data + beta * p.reward_param);
}

double cost(const Aoct& tree, const History& h, double alpha, double beta) {
  return cost(collect_stats(tree, h).stats, alpha, beta);
}

void dump_code_length_rows(const SufficientStats& stats, std::ostream& out) {
  out << "kind,s,a,s2,total,data_bits,param_bits\n";
  const int S = stats.num_states();
  const int A = stats.num_actions();
  const int R = stats.num_rewards();
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      int64_t row = stats.row_total(s, a);
      if (row == 0) continue;
      double entropy = 0.0;
      for (int s2 = 0; s2 < S; ++s2) {
        int64_t c = stats.trans(s, a, s2);
        if (c > 0) entropy += c * (std::log2((double)row) - std::log2((double)c));
      }
      out << "state," << s << ',' << a << ",-," << row << ',' << entropy << ','
          << 0.5 * (S - 1) * std::log2((double)row) << '\n';
      for (int s2 = 0; s2 < S; ++s2) {
        int64_t cell = stats.trans(s, a, s2);
        if (cell == 0) continue;
        double rew_entropy = 0.0;
        for (int r = 0; r < R; ++r) {
          int64_t c = stats.reward_count(s, a, s2, r);
          if (c > 0) rew_entropy += c * (std::log2((double)cell) - std::log2((double)c));
        }
        out << "reward," << s << ',' << a << ',' << s2 << ',' << cell << ','
            << rew_entropy << ',' << 0.5 * (R - 1) * std::log2((double)cell) << '\n';
      }
    }
  }
}

}  // namespace phimdp
