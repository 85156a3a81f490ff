#include "phimdp/environments.hpp"

#include <algorithm>
#include <stdexcept>

namespace phimdp {

// ---------------------------------------------------------------- GridEnv

GridEnv::GridEnv(uint64_t seed) : rng_(seed) {
  spec_.alphabets = Alphabets{4, 1, {0.0, 1.0}};
  spec_.r_max = 1.0;
  spec_.name = "grid4x4";
  reset();
}

int GridEnv::reset() {
  pos_ = rand_index(rng_, 15);  // uniform over the non-goal cells
  return 0;
}

Percept GridEnv::step(int action) {
  int row = pos_ / 4, col = pos_ % 4;
  switch (action) {
    case 0: col = std::max(0, col - 1); break;
    case 1: col = std::min(3, col + 1); break;
    case 2: row = std::max(0, row - 1); break;
    case 3: row = std::min(3, row + 1); break;
    default: throw std::invalid_argument("grid action out of range");
  }
  int next = row * 4 + col;
  if (next == kGoal) {
    pos_ = rand_index(rng_, 15);
    return Percept{0, 1};
  }
  pos_ = next;
  return Percept{0, 0};
}

// --------------------------------------------------------------- TigerEnv

TigerEnv::TigerEnv(uint64_t seed) : rng_(seed) {
  spec_.alphabets = Alphabets{3, 3, {-100.0, -1.0, 10.0}};
  spec_.r_max = 10.0;
  spec_.name = "tiger";
  reset();
}

int TigerEnv::reset() {
  tiger_left_ = rand_unit(rng_) < 0.5;
  return kStart;
}

Percept TigerEnv::step(int action) {
  const int r_penalty = 0, r_listen = 1, r_gold = 2;
  switch (action) {
    case kListen: {
      bool correct = rand_unit(rng_) < kHearAccuracy;
      bool hear_left = correct == tiger_left_;
      return Percept{hear_left ? kHearLeft : kHearRight, r_listen};
    }
    case kOpenLeft:
    case kOpenRight: {
      bool opened_tiger = (action == kOpenLeft) == tiger_left_;
      tiger_left_ = rand_unit(rng_) < 0.5;
      return Percept{kStart, opened_tiger ? r_penalty : r_gold};
    }
    default:
      throw std::invalid_argument("tiger action out of range");
  }
}

// ---------------------------------------------------------------- MazeEnv

namespace {
constexpr int kMazeRows = 3, kMazeCols = 5;
constexpr int kCheeseRow = 2, kCheeseCol = 2;

bool maze_open(int row, int col) {
  if (row < 0 || row >= kMazeRows || col < 0 || col >= kMazeCols) return false;
  return row == 0 || col % 2 == 0;
}

int cell_wall_code(int row, int col) {
  int up = maze_open(row - 1, col) ? 0 : 1;
  int left = maze_open(row, col - 1) ? 0 : 1;
  int down = maze_open(row + 1, col) ? 0 : 1;
  int right = maze_open(row, col + 1) ? 0 : 1;
  return up * 8 + left * 4 + down * 2 + right * 1;
}

const std::vector<int>& maze_codes() {  // dense symbol -> wall code
  static const std::vector<int> codes = [] {
    std::vector<int> out;
    for (const auto& [r, c] : MazeEnv::cells()) {
      int code = cell_wall_code(r, c);
      if (std::find(out.begin(), out.end(), code) == out.end()) out.push_back(code);
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return codes;
}
}  // namespace

const std::vector<std::pair<int, int>>& MazeEnv::cells() {
  static const std::vector<std::pair<int, int>> cells = [] {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < kMazeRows; ++r)
      for (int c = 0; c < kMazeCols; ++c)
        if (maze_open(r, c)) out.emplace_back(r, c);
    return out;
  }();
  return cells;
}

int MazeEnv::wall_code(int obs_symbol) { return maze_codes()[obs_symbol]; }

int MazeEnv::observation_for_cell(int cell) {
  const auto& [r, c] = cells()[cell];
  const auto& codes = maze_codes();
  int code = cell_wall_code(r, c);
  return static_cast<int>(std::find(codes.begin(), codes.end(), code) - codes.begin());
}

MazeEnv::MazeEnv(uint64_t seed) : rng_(seed) {
  spec_.alphabets = Alphabets{4, static_cast<int>(maze_codes().size()),
                              {-10.0, -1.0, 10.0}};
  spec_.r_max = 10.0;
  spec_.name = "cheese_maze";
  reset();
}

int MazeEnv::reset() {
  cell_ = rand_index(rng_, static_cast<int>(cells().size()));
  return observation_for_cell(cell_);
}

Percept MazeEnv::step(int action) {
  const int r_bump = 0, r_move = 1, r_cheese = 2;
  auto [row, col] = cells()[cell_];
  int nrow = row, ncol = col;
  switch (action) {
    case kLeft: --ncol; break;
    case kRight: ++ncol; break;
    case kUp: --nrow; break;
    case kDown: ++nrow; break;
    default: throw std::invalid_argument("maze action out of range");
  }
  if (!maze_open(nrow, ncol))
    return Percept{observation_for_cell(cell_), r_bump};
  if (nrow == kCheeseRow && ncol == kCheeseCol) {
    cell_ = rand_index(rng_, static_cast<int>(cells().size()));
    return Percept{observation_for_cell(cell_), r_cheese};
  }
  for (int i = 0; i < static_cast<int>(cells().size()); ++i)
    if (cells()[i] == std::make_pair(nrow, ncol)) { cell_ = i; break; }
  return Percept{observation_for_cell(cell_), r_move};
}

// ----------------------------------------------------------- KuhnPokerEnv

KuhnPokerEnv::KuhnPokerEnv(uint64_t seed, double nash_alpha)
    : rng_(seed), nash_alpha_(nash_alpha) {
  spec_.alphabets = Alphabets{2, 7, {-2.0, -1.0, 0.0, 1.0, 2.0}};
  spec_.r_max = 2.0;
  spec_.name = "kuhn_poker";
  reset();
}

void KuhnPokerEnv::deal() {
  p1_card_ = rand_index(rng_, 3);
  agent_card_ = rand_index(rng_, 2);
  if (agent_card_ >= p1_card_) ++agent_card_;  // without replacement
  // First player bets with J with probability alpha, never with Q, always
  // with K (the alpha = 1/3 member of the Kuhn Nash family).
  double bet_prob = p1_card_ == 0 ? nash_alpha_ : (p1_card_ == 2 ? 1.0 : 0.0);
  p1_bet_ = rand_unit(rng_) < bet_prob;
  awaiting_decision_ = true;
}

int KuhnPokerEnv::reset() {
  deal();
  return agent_card_ * 2 + (p1_bet_ ? 1 : 0);
}

Percept KuhnPokerEnv::step(int action) {
  if (action != kPass && action != kBet)
    throw std::invalid_argument("kuhn action out of range");
  if (!awaiting_decision_) {
    // Settlement step: the action is consumed, the next hand is dealt.
    deal();
    return Percept{agent_card_ * 2 + (p1_bet_ ? 1 : 0),
                   spec_.alphabets.reward_index(0.0)};
  }
  int net;
  bool agent_wins = agent_card_ > p1_card_;
  if (p1_bet_) {
    net = action == kBet ? (agent_wins ? 2 : -2) : -1;
  } else if (action == kPass) {
    net = agent_wins ? 1 : -1;
  } else {
    // Agent bet after a pass; P1 folds with J, calls with K, calls with Q
    // with probability alpha + 1/3.
    bool calls = p1_card_ == 2 ||
                 (p1_card_ == 1 && rand_unit(rng_) < nash_alpha_ + 1.0 / 3.0);
    net = calls ? (agent_wins ? 2 : -2) : 1;
  }
  awaiting_decision_ = false;
  return Percept{kTerminalObs, spec_.alphabets.reward_index(net)};
}

// ------------------------------------------------------------------ names

std::unique_ptr<Environment> make_environment(const std::string& name,
                                              uint64_t seed) {
  if (name == "grid4x4") return std::make_unique<GridEnv>(seed);
  if (name == "tiger") return std::make_unique<TigerEnv>(seed);
  if (name == "cheese_maze") return std::make_unique<MazeEnv>(seed);
  if (name == "kuhn_poker") return std::make_unique<KuhnPokerEnv>(seed);
  throw std::invalid_argument("unknown environment: " + name);
}

const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names{"grid4x4", "tiger", "cheese_maze",
                                              "kuhn_poker"};
  return names;
}

}  // namespace phimdp
