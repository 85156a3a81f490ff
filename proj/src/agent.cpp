#include "phimdp/agent.hpp"

#include <stdexcept>

namespace phimdp {

namespace {
constexpr uint64_t kActionStream = 0x0A00;
constexpr uint64_t kSearchStream = 0x5E00;
constexpr uint64_t kEvalStream = 0xE000;
}  // namespace

PtConfig AgentConfig::pt_config(uint64_t search_seed) const {
  PtConfig pc;
  pc.num_replicas = pt_replicas;
  pc.iterations = pt_iterations;
  pc.swap_alpha0 = pt_alpha0;
  pc.cost_alpha = cost_alpha;
  pc.cost_beta = cost_beta;
  pc.max_tree_depth = max_tree_depth;
  pc.seed = search_seed;
  pc.trace = search_trace;
  return pc;
}

namespace detail {

History start_history(Environment& env) {
  int o1 = env.reset();
  return History(env.spec().alphabets, o1,
                 env.spec().alphabets.neutral_reward_index());
}

void random_phase(Environment& env, History& h, int steps, Rng& rng) {
  int num_actions = env.spec().alphabets.num_actions;
  for (int i = 0; i < steps; ++i) {
    int a = rand_index(rng, num_actions);
    Percept p = env.step(a);
    h.append(a, p.observation, p.reward);
  }
}

double optimistic_q(const EnvSpec& spec, double gamma) {
  return spec.r_max / (1.0 - gamma);
}

void interact_step(Environment& env, const Aoct& tree, QTable& q, History& h,
                   std::vector<std::pair<int, int>>* log) {
  int t = h.length() + 1;
  int s = tree.map_history(h, t);
  int a = greedy_action(q, s);
  Percept p = env.step(a);
  h.append(a, p.observation, p.reward);
  int s_next = tree.map_history(h, t + 1);
  q_learning_step(q, s, a, h.alphabets().reward_values[p.reward], s_next);
  if (log) log->emplace_back(s, a);
}

}  // namespace detail

GsPhiAResult run_gs_phi_a(Environment& env, const AgentConfig& cfg) {
  History h = detail::start_history(env);
  Rng action_rng(derive_seed(cfg.seed, kActionStream));
  detail::random_phase(env, h, cfg.initial_samples, action_rng);

  GsPhiAResult result(Aoct(env.spec().alphabets), h);
  double opt_init = detail::optimistic_q(env.spec(), cfg.gamma);
  if (cfg.learning_loops <= 0) {
    result.no_learning_loops = true;
    result.q = QTable(result.tree.num_states() + 1, env.spec().alphabets.num_actions,
                      cfg.gamma, cfg.eta, opt_init);
    result.history = std::move(h);
    return result;
  }

  for (int loop = 0; loop < cfg.learning_loops; ++loop) {
    SearchResult search =
        parallel_tempering(h, cfg.pt_config(derive_seed(cfg.seed, kSearchStream + loop)));
    result.tree = search.best_tree;
    result.search_exhausted = search.exhausted;

    MdpModel model = estimate_model(result.tree, h, env.spec().r_max);
    AviResult solved = avi(model, cfg.gamma, cfg.avi_tolerance, cfg.avi_max_sweeps);
    result.q = std::move(solved.q);
    result.q.eta = cfg.eta;
    result.q.ensure_state(result.tree.boundary_state(), opt_init);

    for (int i = 0; i < cfg.additional_samples; ++i)
      detail::interact_step(env, result.tree, result.q, h, &result.interaction_log);

    if (result.search_exhausted) break;
  }
  result.history = std::move(h);
  return result;
}

EvalResult evaluate_policy(const EnvFactory& factory, const Aoct& tree,
                           const QTable& q, int num_actions, int num_runs,
                           uint64_t seed) {
  if (num_actions <= 0) throw std::invalid_argument("evaluate_policy: no actions");
  if (num_runs <= 0) throw std::invalid_argument("evaluate_policy: no runs");
  EvalResult result;
  // The boundary state can occur in the first few steps of a fresh stream;
  // pad a local copy so it has an (optimistic) row. The caller's table is
  // untouched.
  QTable frozen = q;
  for (int run = 0; run < num_runs; ++run) {
    std::unique_ptr<Environment> env = factory(derive_seed(seed, kEvalStream + run));
    if (run == 0)
      frozen.ensure_state(tree.boundary_state(),
                          detail::optimistic_q(env->spec(), q.gamma));
    History h = detail::start_history(*env);
    double total = 0.0;
    for (int i = 0; i < num_actions; ++i) {
      int s = tree.map_history(h, h.length() + 1);
      int a = greedy_action(frozen, s);
      Percept p = env->step(a);
      h.append(a, p.observation, p.reward);
      total += h.alphabets().reward_values[p.reward];
    }
    result.run_means.push_back(total / num_actions);
  }
  for (double m : result.run_means) result.mean += m;
  result.mean /= num_runs;
  return result;
}

}  // namespace phimdp
