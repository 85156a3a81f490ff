#ifndef PHIMDP_EXPERIMENT_HPP_
#define PHIMDP_EXPERIMENT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "phimdp/agent.hpp"

namespace phimdp {

struct ExperimentConfig {
  std::string environment = "grid4x4";
  AgentConfig agent;
  std::vector<int> checkpoints{5000, 10000, 20000, 30000, 40000, 50000};
  int num_eval_runs = 10;
  int eval_actions = 5000;
};

struct CheckpointResult {
  int experience = 0;
  EvalResult eval;
};

struct ExperimentResult {
  Aoct tree;
  QTable q;
  std::vector<CheckpointResult> curve;
  bool search_exhausted = false;
  std::vector<int> skipped_checkpoints;  // before the random phase ends

  explicit ExperimentResult(Aoct t) : tree(std::move(t)) {}
};

/// Runs the agent with frozen evaluations at each checkpoint of cumulative
/// experience. After the last learning loop the run is extended with pure
/// Q-learning up to the final checkpoint.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_curve_csv(const ExperimentResult& result, std::ostream& out);
void write_manifest(const ExperimentConfig& cfg, const ExperimentResult& result,
                    std::ostream& out);

}  // namespace phimdp

#endif  // PHIMDP_EXPERIMENT_HPP_
