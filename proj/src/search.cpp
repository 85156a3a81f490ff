#include "phimdp/search.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "phimdp/text_io.hpp"

namespace phimdp {

double mh_acceptance_probability(double cost_old, double cost_new,
                                 double temperature, double correction) {
  double ratio = std::exp2((cost_old - cost_new) / temperature) * correction;
  return std::min(1.0, ratio);
}

double swap_acceptance_probability(double temp_a, double temp_b, double cost_a,
                                   double cost_b) {
  double exponent = (1.0 / temp_a - 1.0 / temp_b) * (cost_a - cost_b);
  return std::min(1.0, std::exp2(exponent));
}

std::vector<double> default_temperature_ladder(double beta, int count,
                                               int history_length) {
  std::vector<double> temps(count);
  double scale = beta * std::log2(std::max(2, history_length));
  for (int i = 0; i < count; ++i) temps[i] = scale * (i + 1);
  return temps;
}

std::vector<double> ladder_swap_diagnostic(const std::vector<double>& temps,
                                           double typical_delta) {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < temps.size(); ++i) {
    double gap = 1.0 / temps[i] - 1.0 / temps[i + 1];
    out.push_back(std::exp2(-gap * std::abs(typical_delta)));
  }
  return out;
}

std::optional<Proposal> propose(const Replica& replica, const History& h,
                                const PtConfig& cfg, Rng& rng) {
  const Aoct& tree = replica.tree;
  std::vector<int> splits = tree.split_permits(replica.visits, cfg.max_tree_depth);
  std::vector<int> merges = tree.merge_permits();
  if (splits.empty() && merges.empty()) return std::nullopt;

  bool do_split;
  if (splits.empty()) do_split = false;
  else if (merges.empty()) do_split = true;
  else do_split = rand_unit(rng) < 0.5;

  const std::vector<int>& pool = do_split ? splits : merges;
  int node = pool[rand_index(rng, static_cast<int>(pool.size()))];

  Proposal p(tree);
  p.move = do_split ? MoveType::kSplit : MoveType::kMerge;
  p.node = node;
  p.path = tree.path_labels(node);
  if (do_split) p.candidate.markov_split(node);
  else p.candidate.markov_merge(node);

  StatsResult eval = collect_stats(p.candidate, h);
  p.candidate_cost = cost(eval.stats, cfg.cost_alpha, cfg.cost_beta);
  p.candidate_visits = std::move(eval.visits);
  p.candidate.refresh_split_labels(p.candidate_visits);

  if (do_split) {
    size_t cand_merges = p.candidate.merge_permits().size();
    p.correction = static_cast<double>(cand_merges) / splits.size();
  } else {
    size_t cand_splits =
        p.candidate.split_permits(p.candidate_visits, cfg.max_tree_depth).size();
    p.correction = static_cast<double>(cand_splits) / merges.size();
  }
  return p;
}

StepOutcome mh_step(Replica& replica, const History& h, const PtConfig& cfg) {
  StepOutcome outcome;
  std::optional<Proposal> prop = propose(replica, h, cfg, replica.rng);
  if (!prop) {
    outcome.exhausted = true;
    return outcome;
  }
  outcome.move = prop->move;
  double p_accept = mh_acceptance_probability(replica.cost, prop->candidate_cost,
                                              replica.temperature, prop->correction);
  if (rand_unit(replica.rng) <= p_accept) {
    outcome.accepted = true;
    bool improving_split =
        prop->move == MoveType::kSplit && prop->candidate_cost < replica.cost;
    if (improving_split) {
      int node = prop->candidate.node_at_path(prop->path);
      prop->candidate.set_mergeable(node, false);
      outcome.share_path = prop->path;
    }
    replica.tree = std::move(prop->candidate);
    replica.cost = prop->candidate_cost;
    replica.visits = std::move(prop->candidate_visits);
  }
  return outcome;
}

SwapOutcome swap_step(std::vector<Replica>& replicas, Rng& rng) {
  SwapOutcome outcome;
  if (replicas.size() < 2) return outcome;
  int a = rand_index(rng, static_cast<int>(replicas.size()) - 1);
  outcome.lower = a;
  double p = swap_acceptance_probability(replicas[a].temperature,
                                         replicas[a + 1].temperature,
                                         replicas[a].cost, replicas[a + 1].cost);
  if (rand_unit(rng) <= p) {
    outcome.accepted = true;
    std::swap(replicas[a].tree, replicas[a + 1].tree);
    std::swap(replicas[a].cost, replicas[a + 1].cost);
    std::swap(replicas[a].visits, replicas[a + 1].visits);
    // Temperatures (and rng streams) stay in place.
  }
  return outcome;
}

bool apply_path_split(Aoct& tree, const std::vector<int>& path, const History& h,
                      int max_depth) {
  Aoct work = tree;
  std::vector<int64_t> visits = state_visits(work, h);
  size_t consumed = 0;
  int node = work.root();
  bool changed = false;
  while (true) {
    if (work.is_leaf(node)) {
      std::vector<int> permits = work.split_permits(visits, max_depth);
      if (std::find(permits.begin(), permits.end(), node) == permits.end())
        return false;
      std::vector<int> before = work.path_labels(node);
      work.markov_split(node);
      visits = state_visits(work, h);
      node = work.node_at_path(before);
      changed = true;
      if (consumed == path.size()) break;
    }
    if (consumed == path.size()) break;
    node = work.node(node).children[path[consumed]];
    ++consumed;
  }
  if (!changed) return false;  // path was already present
  tree = std::move(work);
  return true;
}

void share_split(std::vector<Replica>& replicas, int origin,
                 const std::vector<int>& path, const History& h,
                 const PtConfig& cfg) {
  for (int i = 0; i < static_cast<int>(replicas.size()); ++i) {
    if (i == origin) continue;
    Replica& rep = replicas[i];
    if (!apply_path_split(rep.tree, path, h, cfg.max_tree_depth)) continue;
    int node = rep.tree.node_at_path(path);
    rep.tree.set_mergeable(node, false);
    StatsResult eval = collect_stats(rep.tree, h);
    rep.cost = cost(eval.stats, cfg.cost_alpha, cfg.cost_beta);
    rep.visits = std::move(eval.visits);
    rep.tree.refresh_split_labels(rep.visits);
  }
}

namespace {
void write_trace(const PtConfig& cfg, int iter, int replica_idx,
                 const Replica& replica, const StepOutcome& outcome) {
  if (!cfg.trace) return;
  const char* move = outcome.exhausted ? "none"
                     : outcome.move == MoveType::kSplit ? "split" : "merge";
  *cfg.trace << iter << ',' << replica_idx << ',' << fmt_double(replica.temperature)
             << ',' << fmt_double(replica.cost) << ',' << (outcome.accepted ? 1 : 0)
             << ',' << move << ',' << replica.tree.num_states() << '\n';
}
}  // namespace

SearchResult parallel_tempering(const History& h, const PtConfig& cfg) {
  if (cfg.num_replicas < 1) throw std::invalid_argument("need at least one replica");
  if (h.length() < 1) throw std::invalid_argument("history too short to search");
  std::vector<double> temps = cfg.temperatures.empty()
                                  ? default_temperature_ladder(
                                        cfg.cost_beta, cfg.num_replicas, h.length())
                                  : cfg.temperatures;
  if (static_cast<int>(temps.size()) != cfg.num_replicas)
    throw std::invalid_argument("temperature ladder size != replica count");

  std::vector<Replica> replicas;
  replicas.reserve(cfg.num_replicas);
  Aoct root(h.alphabets());
  StatsResult root_eval = collect_stats(root, h);
  double root_cost = cost(root_eval.stats, cfg.cost_alpha, cfg.cost_beta);
  root.refresh_split_labels(root_eval.visits);
  for (int i = 0; i < cfg.num_replicas; ++i) {
    Replica rep{root, root_cost, temps[i], Rng(derive_seed(cfg.seed, i)),
                root_eval.visits};
    replicas.push_back(std::move(rep));
  }
  Rng master(derive_seed(cfg.seed, 0xFFFF));

  SearchResult result(root);
  result.best_cost = root_cost;
  if (cfg.trace) *cfg.trace << "iter,replica,temp,cost,accepted,move_type,num_states\n";

  auto consider = [&result](const Replica& rep) {
    if (rep.cost < result.best_cost) {
      result.best_cost = rep.cost;
      result.best_tree = rep.tree;
    }
  };

  for (int iter = 1; iter <= cfg.iterations; ++iter) {
    result.iterations_run = iter;
    bool all_exhausted = true;
    std::vector<std::pair<int, std::vector<int>>> shares;
    for (int k = 0; k < cfg.num_replicas; ++k) {
      StepOutcome outcome = mh_step(replicas[k], h, cfg);
      if (!outcome.exhausted) all_exhausted = false;
      if (outcome.accepted) consider(replicas[k]);
      if (outcome.share_path) shares.emplace_back(k, *outcome.share_path);
      write_trace(cfg, iter, k, replicas[k], outcome);
    }
    if (all_exhausted) {
      result.exhausted = true;
      return result;
    }
    for (const auto& [origin, path] : shares) {
      share_split(replicas, origin, path, h, cfg);
      for (const Replica& rep : replicas) consider(rep);
    }
    if (rand_unit(master) >= cfg.swap_alpha0) swap_step(replicas, master);
  }
  return result;
}

}  // namespace phimdp
