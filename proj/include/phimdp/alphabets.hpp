#ifndef PHIMDP_ALPHABETS_HPP_
#define PHIMDP_ALPHABETS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace phimdp {

/// Finite action/observation alphabets plus the discrete reward set of an
/// environment. Reward values are kept sorted; rewards elsewhere in the
/// library are indices into this list.
struct Alphabets {
  int num_actions = 1;
  int num_observations = 1;
  std::vector<double> reward_values;

  int num_rewards() const { return static_cast<int>(reward_values.size()); }

  double max_reward() const {
    if (reward_values.empty()) throw std::logic_error("empty reward alphabet");
    return reward_values.back();
  }

  double min_reward() const {
    if (reward_values.empty()) throw std::logic_error("empty reward alphabet");
    return reward_values.front();
  }

  /// Index of reward value 0 when present, otherwise of the lowest reward.
  /// Used as the neutral reward paired with the initial observation.
  int neutral_reward_index() const {
    for (int i = 0; i < num_rewards(); ++i)
      if (reward_values[i] == 0.0) return i;
    return 0;
  }

  int reward_index(double value) const {
    for (int i = 0; i < num_rewards(); ++i)
      if (reward_values[i] == value) return i;
    throw std::invalid_argument("reward value " + std::to_string(value) +
                                " is not in the reward alphabet");
  }

  void validate() const {
    if (num_actions < 1) throw std::invalid_argument("need at least one action");
    if (num_observations < 1)
      throw std::invalid_argument("need at least one observation");
    if (reward_values.empty())
      throw std::invalid_argument("need at least one reward value");
    for (size_t i = 1; i < reward_values.size(); ++i)
      if (!(reward_values[i - 1] < reward_values[i]))
        throw std::invalid_argument("reward values must be strictly increasing");
  }

  bool operator==(const Alphabets&) const = default;
};

}  // namespace phimdp

#endif  // PHIMDP_ALPHABETS_HPP_
