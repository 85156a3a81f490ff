// Test-only oracles, implemented independently of the library code paths
// they check.
#ifndef PHIMDP_TESTS_ORACLES_HPP_
#define PHIMDP_TESTS_ORACLES_HPP_

#include <cstdint>
#include <vector>

#include "phimdp/context_tree.hpp"
#include "phimdp/history.hpp"

namespace phimdp::oracles {

/// Cost recomputed from scratch: states by literal suffix matching against
/// the history, counts in ordered maps, code lengths by the textbook
/// formulas. Shares no code with phimdp::cost.
double cost_direct(const Aoct& tree, const History& h, double alpha, double beta);

/// Number of action-observation context trees of depth <= depth, by explicit
/// construction of every tree shape (cartesian products of child shapes).
int64_t enumerate_aocts(int depth, int num_actions, int num_observations);

/// Explicit MDP for oracle computations; layout independent from MdpModel.
struct ExplicitMdp {
  int num_states = 0;
  int num_actions = 0;
  std::vector<std::vector<std::vector<double>>> t;  // [s][a][s']
  std::vector<std::vector<std::vector<double>>> r;  // [s][a][s']

  ExplicitMdp(int s, int a)
      : num_states(s),
        num_actions(a),
        t(s, std::vector<std::vector<double>>(a, std::vector<double>(s, 0.0))),
        r(s, std::vector<std::vector<double>>(a, std::vector<double>(s, 0.0))) {}
};

/// Optimal long-run average reward via relative value iteration.
double optimal_average_reward(const ExplicitMdp& mdp, double span_tol = 1e-10,
                              int max_iters = 100000);

/// Optimal Q for a discounted MDP by policy iteration with exact linear
/// solves (Gaussian elimination); independent of avi().
std::vector<std::vector<double>> policy_iteration_q(const ExplicitMdp& mdp,
                                                    double gamma);

/// True fully observed models of the benchmark tasks.
ExplicitMdp true_grid_mdp();   // 16 states; transitions into the goal teleport
ExplicitMdp true_maze_mdp();   // 11 cells with episodic reset at the cheese

/// Expected reward per action of the tiger policy that listens twice, opens
/// on agreement, and resolves a disagreement with one more listen (majority).
double tiger_listen_twice_value(double accuracy);

/// Best-response value per episode against the one-parameter Nash first
/// player; per action is half of this (episodes take two agent steps).
double kuhn_best_response_per_episode(double nash_alpha);

}  // namespace phimdp::oracles

#endif  // PHIMDP_TESTS_ORACLES_HPP_
