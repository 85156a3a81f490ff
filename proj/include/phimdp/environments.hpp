#ifndef PHIMDP_ENVIRONMENTS_HPP_
#define PHIMDP_ENVIRONMENTS_HPP_

#include <array>
#include <functional>
#include <vector>

#include "phimdp/environment.hpp"

namespace phimdp {

/// 4x4 grid world with uninformative observations. Entering the bottom-right
/// cell pays 1 and teleports the agent uniformly to one of the other 15
/// cells; bumping a border leaves the position unchanged.
class GridEnv : public Environment {
 public:
  explicit GridEnv(uint64_t seed);
  const EnvSpec& spec() const override { return spec_; }
  int reset() override;
  Percept step(int action) override;

  int position() const { return pos_; }
  static constexpr int kGoal = 15;

 private:
  EnvSpec spec_;
  Rng rng_;
  int pos_ = 0;
};

/// Tiger behind one of two doors; listening is noisy (0.85 correct) and costs
/// 1, opening pays 10 (gold) or -100 (tiger) and restarts the episode.
class TigerEnv : public Environment {
 public:
  enum Action { kListen = 0, kOpenLeft = 1, kOpenRight = 2 };
  enum Obs { kHearLeft = 0, kHearRight = 1, kStart = 2 };

  explicit TigerEnv(uint64_t seed);
  const EnvSpec& spec() const override { return spec_; }
  int reset() override;
  Percept step(int action) override;

  int tiger_side() const { return tiger_left_ ? 0 : 1; }
  static constexpr double kHearAccuracy = 0.85;

 private:
  EnvSpec spec_;
  Rng rng_;
  bool tiger_left_ = true;
};

/// Eleven-cell cheese maze: open top row of five cells plus three two-cell
/// columns below columns 0, 2 and 4; the cheese sits at the bottom of the
/// middle column. Observations are the cell's wall pattern, remapped to a
/// dense six-symbol alphabet.
class MazeEnv : public Environment {
 public:
  enum Action { kLeft = 0, kRight = 1, kUp = 2, kDown = 3 };

  explicit MazeEnv(uint64_t seed);
  const EnvSpec& spec() const override { return spec_; }
  int reset() override;
  Percept step(int action) override;

  int position() const { return cell_; }  // index into cells()
  static const std::vector<std::pair<int, int>>& cells();  // (row, col)
  /// 4-bit wall pattern (up, left, down, right) for a dense observation
  /// symbol; the distinct codes are {5, 7, 8, 9, 10, 12}.
  static int wall_code(int obs_symbol);
  static int observation_for_cell(int cell);

 private:
  EnvSpec spec_;
  Rng rng_;
  int cell_ = 0;
};

/// Kuhn poker against a fixed stochastic Nash first player. The agent plays
/// second; every episode takes two agent steps: a betting decision, then a
/// settlement step whose action is ignored and which deals the next hand.
class KuhnPokerEnv : public Environment {
 public:
  enum Action { kPass = 0, kBet = 1 };
  static constexpr int kTerminalObs = 6;  // others encode card * 2 + p1_bet

  explicit KuhnPokerEnv(uint64_t seed, double nash_alpha = 1.0 / 3.0);
  const EnvSpec& spec() const override { return spec_; }
  int reset() override;
  Percept step(int action) override;

  double nash_alpha() const { return nash_alpha_; }

 private:
  void deal();
  EnvSpec spec_;
  Rng rng_;
  double nash_alpha_;
  int agent_card_ = 0, p1_card_ = 0;
  bool p1_bet_ = false;
  bool awaiting_decision_ = true;
};

std::unique_ptr<Environment> make_environment(const std::string& name,
                                              uint64_t seed);
const std::vector<std::string>& environment_names();

}  // namespace phimdp

#endif  // PHIMDP_ENVIRONMENTS_HPP_
