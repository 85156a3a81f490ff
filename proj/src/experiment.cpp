#include "phimdp/experiment.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "phimdp/environments.hpp"
#include "phimdp/text_io.hpp"

namespace phimdp {

namespace {
constexpr uint64_t kActionStream = 0x0A00;
constexpr uint64_t kSearchStream = 0x5E00;
constexpr uint64_t kEvalSeedTag = 0xEE00;
}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const AgentConfig& agent = cfg.agent;
  std::unique_ptr<Environment> env = make_environment(cfg.environment, agent.seed);
  EnvFactory factory = [&cfg](uint64_t seed) {
    return make_environment(cfg.environment, seed);
  };

  std::vector<int> checkpoints = cfg.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());

  History h = detail::start_history(*env);
  Rng action_rng(derive_seed(agent.seed, kActionStream));
  detail::random_phase(*env, h, agent.initial_samples, action_rng);

  ExperimentResult result{Aoct(env->spec().alphabets)};
  for (int c : checkpoints)
    if (c < agent.initial_samples) result.skipped_checkpoints.push_back(c);

  double opt_init = detail::optimistic_q(env->spec(), agent.gamma);
  result.q = QTable(result.tree.num_states() + 1, env->spec().alphabets.num_actions,
                    agent.gamma, agent.eta, opt_init);

  int loops_done = 0;
  auto relearn = [&] {
    SearchResult search = parallel_tempering(
        h, agent.pt_config(derive_seed(agent.seed, kSearchStream + loops_done)));
    result.tree = search.best_tree;
    result.search_exhausted = search.exhausted;
    MdpModel model = estimate_model(result.tree, h, env->spec().r_max);
    result.q = avi(model, agent.gamma, agent.avi_tolerance, agent.avi_max_sweeps).q;
    result.q.eta = agent.eta;
    result.q.ensure_state(result.tree.boundary_state(), opt_init);
    ++loops_done;
  };
  if (agent.learning_loops > 0) relearn();

  auto evaluate_now = [&](int experience) {
    CheckpointResult cp;
    cp.experience = experience;
    cp.eval = evaluate_policy(factory, result.tree, result.q, cfg.eval_actions,
                              cfg.num_eval_runs,
                              derive_seed(agent.seed, kEvalSeedTag));
    result.curve.push_back(std::move(cp));
  };

  auto is_checkpoint = [&](int len) {
    return std::find(checkpoints.begin(), checkpoints.end(), len) != checkpoints.end();
  };
  if (is_checkpoint(h.length())) evaluate_now(h.length());

  int final_target = agent.initial_samples + agent.learning_loops * agent.additional_samples;
  if (!checkpoints.empty()) final_target = std::max(final_target, checkpoints.back());

  while (h.length() < final_target) {
    int next_stop = final_target;
    for (int c : checkpoints)
      if (c > h.length()) { next_stop = std::min(next_stop, c); break; }
    if (loops_done < agent.learning_loops && !result.search_exhausted) {
      int loop_end = agent.initial_samples + loops_done * agent.additional_samples;
      if (loop_end > h.length()) next_stop = std::min(next_stop, loop_end);
    }
    while (h.length() < next_stop)
      detail::interact_step(*env, result.tree, result.q, h, nullptr);
    if (is_checkpoint(h.length())) evaluate_now(h.length());
    if (loops_done < agent.learning_loops && !result.search_exhausted &&
        h.length() == agent.initial_samples + loops_done * agent.additional_samples)
      relearn();
  }
  return result;
}

void write_curve_csv(const ExperimentResult& result, std::ostream& out) {
  size_t runs = result.curve.empty() ? 0 : result.curve[0].eval.run_means.size();
  out << "checkpoint,mean";
  for (size_t i = 1; i <= runs; ++i) out << ",run_" << i;
  out << '\n';
  for (const CheckpointResult& cp : result.curve) {
    out << cp.experience << ',' << fmt_double(cp.eval.mean);
    for (double m : cp.eval.run_means) out << ',' << fmt_double(m);
    out << '\n';
  }
}

void write_manifest(const ExperimentConfig& cfg, const ExperimentResult& result,
                    std::ostream& out) {
  const AgentConfig& a = cfg.agent;
  out << "environment:" << cfg.environment << '\n';
  out << "seed:" << a.seed << '\n';
  out << "alpha:" << fmt_double(a.cost_alpha) << '\n';
  out << "beta:" << fmt_double(a.cost_beta) << '\n';
  out << "initial_samples:" << a.initial_samples << '\n';
  out << "learning_loops:" << a.learning_loops << '\n';
  out << "additional_samples:" << a.additional_samples << '\n';
  out << "pt_iterations:" << a.pt_iterations << '\n';
  out << "pt_replicas:" << a.pt_replicas << '\n';
  out << "alpha0:" << fmt_double(a.pt_alpha0) << '\n';
  out << "gamma:" << fmt_double(a.gamma) << '\n';
  out << "eta:" << fmt_double(a.eta) << '\n';
  out << "max_tree_depth:" << a.max_tree_depth << '\n';
  out << "avi_tolerance:" << fmt_double(a.avi_tolerance) << '\n';
  out << "avi_max_sweeps:" << a.avi_max_sweeps << '\n';
  out << "eval_runs:" << cfg.num_eval_runs << '\n';
  out << "eval_actions:" << cfg.eval_actions << '\n';
  out << "checkpoints:";
  for (size_t i = 0; i < cfg.checkpoints.size(); ++i)
    out << (i ? ";" : "") << cfg.checkpoints[i];
  out << '\n';
  out << "tree_states:" << result.tree.num_states() << '\n';
  out << "tree_depth:" << result.tree.max_leaf_depth() << '\n';
  out << "search_exhausted:" << (result.search_exhausted ? 1 : 0) << '\n';
  for (const CheckpointResult& cp : result.curve)
    out << "mean_at_" << cp.experience << ':' << fmt_double(cp.eval.mean) << '\n';
}

}  // namespace phimdp
