#ifndef PHIMDP_AGENT_HPP_
#define PHIMDP_AGENT_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "phimdp/environment.hpp"
#include "phimdp/mdp_solver.hpp"
#include "phimdp/search.hpp"

namespace phimdp {

struct AgentConfig {
  int initial_samples = 5000;
  int learning_loops = 1;
  int additional_samples = 5000;
  int pt_iterations = 100;
  int pt_replicas = 10;
  double pt_alpha0 = 0.7;
  double cost_alpha = 0.1;
  double cost_beta = 0.1;
  double gamma = 0.999999;
  double eta = 0.01;
  int max_tree_depth = 12;
  double avi_tolerance = 1e-6;
  int avi_max_sweeps = 10000;
  uint64_t seed = 1;
  std::ostream* search_trace = nullptr;

  PtConfig pt_config(uint64_t search_seed) const;
};

struct GsPhiAResult {
  Aoct tree;
  QTable q;
  History history;
  bool search_exhausted = false;
  bool no_learning_loops = false;
  /// (state, action) pairs fed to Q-learning, for replay checks.
  std::vector<std::pair<int, int>> interaction_log;

  GsPhiAResult(Aoct t, History h) : tree(std::move(t)), history(std::move(h)) {}
};

/// The full agent: act randomly for initial_samples steps, then loop
/// (tree search, optimistic model, AVI, Q-learning interaction) and return
/// the final tree and action values.
GsPhiAResult run_gs_phi_a(Environment& env, const AgentConfig& cfg);

struct EvalResult {
  std::vector<double> run_means;
  double mean = 0.0;
};

/// Frozen evaluation: pure greedy actions, no Q updates; num_runs independent
/// environment seeds of num_actions steps each.
EvalResult evaluate_policy(const EnvFactory& factory, const Aoct& tree,
                           const QTable& q, int num_actions, int num_runs,
                           uint64_t seed);

// Internals shared with the experiment driver.
namespace detail {
History start_history(Environment& env);
void random_phase(Environment& env, History& h, int steps, Rng& rng);
/// One Q-learning step driven by the greedy action; appends to the history.
void interact_step(Environment& env, const Aoct& tree, QTable& q, History& h,
                   std::vector<std::pair<int, int>>* log);
double optimistic_q(const EnvSpec& spec, double gamma);
}  // namespace detail

}  // namespace phimdp

#endif  // PHIMDP_AGENT_HPP_
