#ifndef PHIMDP_HISTORY_HPP_
#define PHIMDP_HISTORY_HPP_

#include <iosfwd>
#include <vector>

#include "phimdp/alphabets.hpp"

namespace phimdp {

/// One complete experience triple. steps[k] holds (a_{k+1}, o_{k+2}, r_{k+2})
/// in 1-based time; the initial pair (o_1, r_1) lives in the History header.
struct Step {
  int action = 0;
  int observation = 0;
  int reward = 0;  // index into the reward alphabet

  bool operator==(const Step&) const = default;
};

/// Append-only action/observation/reward stream realizing
/// h = o_1 r_1 a_1 o_2 r_2 a_2 ... Readers may share const references across
/// threads; a single writer appends.
class History {
 public:
  History(Alphabets alphabets, int initial_observation, int initial_reward_index);

  void append(int action, int observation, int reward_index);
  /// Spec-level append taking a reward value; rejects values outside the
  /// reward alphabet.
  void append_value(int action, int observation, double reward_value);

  /// Number of complete (a, o, r) triples; the "n" of the cost formulas.
  int length() const { return static_cast<int>(steps_.size()); }

  /// a_t for t in [1, length].
  int action_at(int t) const;
  /// o_t for t in [1, length + 1]; o_1 is the initial observation.
  int observation_at(int t) const;
  /// r_t for t in [1, length + 1].
  int reward_index_at(int t) const;
  double reward_value_at(int t) const;

  int initial_observation() const { return initial_observation_; }
  int initial_reward_index() const { return initial_reward_; }
  const Alphabets& alphabets() const { return alphabets_; }
  const std::vector<Step>& steps() const { return steps_; }

  /// CSV log, one line per step `t,a,o,r_index,r_value`; the initial pair is
  /// written as a t=0 line with a=-1.
  void write_csv(std::ostream& out) const;
  static History read_csv(Alphabets alphabets, std::istream& in);

  bool operator==(const History&) const = default;

 private:
  void check_symbols(int action, int observation, int reward_index) const;

  Alphabets alphabets_;
  int initial_observation_ = 0;
  int initial_reward_ = 0;
  std::vector<Step> steps_;
};

}  // namespace phimdp

#endif  // PHIMDP_HISTORY_HPP_
