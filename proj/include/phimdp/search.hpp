#ifndef PHIMDP_SEARCH_HPP_
#define PHIMDP_SEARCH_HPP_

#include <iosfwd>
#include <optional>
#include <vector>

#include "phimdp/cost.hpp"
#include "phimdp/rng.hpp"

namespace phimdp {

/// One tempered chain: a tree, its cost, a fixed temperature and a private
/// random stream. Visit counts of the current tree are cached so permit sets
/// do not need an extra pass over the history.
struct Replica {
  Aoct tree;
  double cost = 0.0;
  double temperature = 1.0;
  Rng rng;
  std::vector<int64_t> visits;
};

struct PtConfig {
  int num_replicas = 10;
  int iterations = 100;
  double swap_alpha0 = 0.7;       // swap fires with probability 1 - alpha0
  double cost_alpha = 0.1;
  double cost_beta = 0.1;
  int max_tree_depth = 12;
  /// Empty means the default ladder T_i = cost_beta * i * log2(n).
  std::vector<double> temperatures;
  uint64_t seed = 1;
  std::ostream* trace = nullptr;  // optional per-step CSV sink
};

enum class MoveType { kSplit, kMerge };

struct Proposal {
  Aoct candidate;
  double correction = 1.0;
  MoveType move = MoveType::kSplit;
  int node = -1;                  // node id in the source tree
  std::vector<int> path;          // root-to-node labels of the moved node
  double candidate_cost = 0.0;
  std::vector<int64_t> candidate_visits;

  explicit Proposal(Aoct cand) : candidate(std::move(cand)) {}
};

struct StepOutcome {
  bool exhausted = false;
  bool accepted = false;
  MoveType move = MoveType::kSplit;
  /// Set when an accepted split strictly lowered the cost; the path is then
  /// replicated into the other replicas and the node is marked unmergeable.
  std::optional<std::vector<int>> share_path;
};

struct SearchResult {
  Aoct best_tree;
  double best_cost = 0.0;
  bool exhausted = false;
  int iterations_run = 0;

  explicit SearchResult(Aoct tree) : best_tree(std::move(tree)) {}
};

/// min(1, 2^((cost_old - cost_new) / T) * correction). Costs are in bits, so
/// the target distribution is 2^(-cost/T).
double mh_acceptance_probability(double cost_old, double cost_new,
                                 double temperature, double correction);
/// min(1, 2^((1/T_a - 1/T_b) (cost_a - cost_b))).
double swap_acceptance_probability(double temp_a, double temp_b, double cost_a,
                                   double cost_b);

/// Default ladder T_i = beta * i * log2(n) for i = 1..count.
std::vector<double> default_temperature_ladder(double beta, int count,
                                               int history_length);
/// Implied lower-bound swap acceptance per adjacent pair for a typical cost
/// difference: p_a = 2^-((1/T_i - 1/T_{i+1}) |delta|).
std::vector<double> ladder_swap_diagnostic(const std::vector<double>& temps,
                                           double typical_delta);

/// Draws a move from the split/merge proposal distribution. nullopt when both
/// permit sets are empty (search exhausted).
std::optional<Proposal> propose(const Replica& replica, const History& h,
                                const PtConfig& cfg, Rng& rng);

StepOutcome mh_step(Replica& replica, const History& h, const PtConfig& cfg);

struct SwapOutcome {
  int lower = -1;
  bool accepted = false;
};
SwapOutcome swap_step(std::vector<Replica>& replicas, Rng& rng);

/// Replicates a cost-reducing split into every other replica, splitting
/// ancestors along the path as permits allow. Replicas where the path is
/// blocked stay unchanged; changed replicas get recomputed costs and the
/// replicated node marked unmergeable.
void share_split(std::vector<Replica>& replicas, int origin,
                 const std::vector<int>& path, const History& h,
                 const PtConfig& cfg);

/// Splits the tree along a root-to-node label path, markov-splitting the
/// intermediate leaves. Returns false (tree untouched) if any required split
/// lacks a permit. Exposed for tests.
bool apply_path_split(Aoct& tree, const std::vector<int>& path,
                      const History& h, int max_depth);

SearchResult parallel_tempering(const History& h, const PtConfig& cfg);

}  // namespace phimdp

#endif  // PHIMDP_SEARCH_HPP_
