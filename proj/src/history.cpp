#include "phimdp/history.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "phimdp/text_io.hpp"

namespace phimdp {

History::History(Alphabets alphabets, int initial_observation,
                 int initial_reward_index)
    : alphabets_(std::move(alphabets)),
      initial_observation_(initial_observation),
      initial_reward_(initial_reward_index) {
  alphabets_.validate();
  if (initial_observation_ < 0 || initial_observation_ >= alphabets_.num_observations)
    throw std::invalid_argument("initial observation out of alphabet");
  if (initial_reward_ < 0 || initial_reward_ >= alphabets_.num_rewards())
    throw std::invalid_argument("initial reward index out of alphabet");
}

void History::check_symbols(int action, int observation, int reward_index) const {
  if (action < 0 || action >= alphabets_.num_actions)
    throw std::invalid_argument("action " + std::to_string(action) +
                                " out of alphabet [0, " +
                                std::to_string(alphabets_.num_actions) + ")");
  if (observation < 0 || observation >= alphabets_.num_observations)
    throw std::invalid_argument("observation " + std::to_string(observation) +
                                " out of alphabet [0, " +
                                std::to_string(alphabets_.num_observations) + ")");
  if (reward_index < 0 || reward_index >= alphabets_.num_rewards())
    throw std::invalid_argument("reward index " + std::to_string(reward_index) +
                                " out of alphabet [0, " +
                                std::to_string(alphabets_.num_rewards()) + ")");
}

void History::append(int action, int observation, int reward_index) {
  check_symbols(action, observation, reward_index);
  steps_.push_back(Step{action, observation, reward_index});
}

void History::append_value(int action, int observation, double reward_value) {
  append(action, observation, alphabets_.reward_index(reward_value));
}

int History::action_at(int t) const {
  if (t < 1 || t > length()) throw std::out_of_range("action time index");
  return steps_[t - 1].action;
}

int History::observation_at(int t) const {
  if (t < 1 || t > length() + 1) throw std::out_of_range("observation time index");
  return t == 1 ? initial_observation_ : steps_[t - 2].observation;
}

int History::reward_index_at(int t) const {
  if (t < 1 || t > length() + 1) throw std::out_of_range("reward time index");
  return t == 1 ? initial_reward_ : steps_[t - 2].reward;
}

double History::reward_value_at(int t) const {
  return alphabets_.reward_values[reward_index_at(t)];
}

void History::write_csv(std::ostream& out) const {
  out << "t,a,o,r_index,r_value\n";
  out << "0,-1," << initial_observation_ << ',' << initial_reward_ << ','
      << fmt_double(alphabets_.reward_values[initial_reward_]) << '\n';
  for (int k = 0; k < length(); ++k) {
    const Step& s = steps_[k];
    out << (k + 1) << ',' << s.action << ',' << s.observation << ',' << s.reward
        << ',' << fmt_double(alphabets_.reward_values[s.reward]) << '\n';
  }
}

History History::read_csv(Alphabets alphabets, std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,a,o,r_index,r_value")
    throw std::runtime_error("history csv: missing or bad header line");
  if (!std::getline(in, line))
    throw std::runtime_error("history csv: missing initial (t=0) line");
  auto first = split_csv_ints(line, 4);  // t,a,o,r_index (value column ignored)
  if (first[0] != 0 || first[1] != -1)
    throw std::runtime_error("history csv: first row must be t=0 with a=-1");
  History h(std::move(alphabets), first[2], first[3]);
  int expected_t = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto v = split_csv_ints(line, 4);
    if (v[0] != expected_t)
      throw std::runtime_error("history csv: unexpected step index at line for t=" +
                               std::to_string(v[0]));
    h.append(v[1], v[2], v[3]);
    ++expected_t;
  }
  return h;
}

}  // namespace phimdp
