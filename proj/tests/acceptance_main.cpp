// Acceptance suite: one line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phimdp/cli.hpp"
#include "phimdp/environments.hpp"
#include "phimdp/experiment.hpp"

using namespace phimdp;

namespace {

struct Harness {
  int failures = 0;

  void report(int id, bool pass, const std::string& detail) {
    std::printf("[criterion %2d] %s  %s\n", id, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", x);
  return buf;
}

ExperimentConfig benchmark_config(const std::string& env, uint64_t seed,
                                  std::vector<int> checkpoints) {
  ExperimentConfig cfg;
  cfg.environment = env;
  cfg.agent.seed = seed;
  cfg.checkpoints = std::move(checkpoints);
  return cfg;  // everything else already carries the benchmark defaults
}

double mean_at(const ExperimentResult& r, int checkpoint) {
  for (const CheckpointResult& cp : r.curve)
    if (cp.experience == checkpoint) return cp.eval.mean;
  throw std::runtime_error("missing checkpoint");
}

History synthetic_history(const Alphabets& a, int steps, uint64_t seed) {
  Rng rng(seed);
  History h(a, rand_index(rng, a.num_observations), 0);
  for (int i = 0; i < steps; ++i)
    h.append(rand_index(rng, a.num_actions), rand_index(rng, a.num_observations),
             rand_index(rng, a.num_rewards()));
  return h;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// 1. Grid: seeds 1-10, frozen evaluation at 10,000 within 5% of the exact
//    optimum of the fully observed grid.
static void criterion_grid(Harness& h, std::vector<ExperimentResult>* keep) {
  auto start = std::chrono::steady_clock::now();
  double optimum = oracles::optimal_average_reward(oracles::true_grid_mdp());
  double total = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    ExperimentConfig cfg = benchmark_config("grid4x4", seed, {5000, 10000});
    ExperimentResult r = run_experiment(cfg);
    total += mean_at(r, 10000);
    if (keep) keep->push_back(std::move(r));
  }
  double mean = total / 10.0;
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 start).count();
  bool pass = mean >= 0.95 * optimum && elapsed < 300.0;
  h.report(1, pass,
           "grid mean@10000 over seeds 1-10 = " + fmt(mean) + ", target 0.95 * " +
               fmt(optimum) + " = " + fmt(0.95 * optimum) + ", " + fmt(elapsed) +
               "s");
}

// 2. Tiger: positive at 10,000 and at least 80% of the listen-twice policy
//    value at 50,000.
static void criterion_tiger(Harness& h, std::vector<ExperimentResult>* keep) {
  double oracle = oracles::tiger_listen_twice_value(TigerEnv::kHearAccuracy);
  ExperimentConfig cfg = benchmark_config(
      "tiger", 1, {5000, 10000, 20000, 30000, 40000, 50000});
  ExperimentResult r = run_experiment(cfg);
  double at10k = mean_at(r, 10000), at50k = mean_at(r, 50000);
  bool pass = at10k > 0.0 && at50k >= 0.8 * oracle;
  h.report(2, pass,
           "tiger mean@10000 = " + fmt(at10k) + " (> 0), mean@50000 = " +
               fmt(at50k) + ", target 0.8 * " + fmt(oracle) + " = " +
               fmt(0.8 * oracle));
  if (keep) keep->push_back(std::move(r));
}

// 3. Cheese maze: within 10% of the exact optimum of the true 11-cell MDP at
//    checkpoint 10,000.
static void criterion_maze(Harness& h, std::vector<ExperimentResult>* keep) {
  double optimum = oracles::optimal_average_reward(oracles::true_maze_mdp());
  ExperimentConfig cfg = benchmark_config("cheese_maze", 1, {5000, 10000});
  ExperimentResult r = run_experiment(cfg);
  double at10k = mean_at(r, 10000);
  bool pass = at10k >= 0.9 * optimum;
  h.report(3, pass,
           "maze mean@10000 = " + fmt(at10k) + ", target 0.9 * " + fmt(optimum) +
               " = " + fmt(0.9 * optimum));
  if (keep) keep->push_back(std::move(r));
}

// 4. Kuhn poker: positive at 50,000 and within 0.02 chips/action of the
//    exhaustive best response.
static void criterion_kuhn(Harness& h, std::vector<ExperimentResult>* keep) {
  double per_action = oracles::kuhn_best_response_per_episode(1.0 / 3.0) / 2.0;
  ExperimentConfig cfg = benchmark_config(
      "kuhn_poker", 1, {5000, 10000, 20000, 30000, 40000, 50000});
  ExperimentResult r = run_experiment(cfg);
  double at50k = mean_at(r, 50000);
  bool pass = at50k > 0.0 && std::abs(at50k - per_action) <= 0.02;
  h.report(4, pass,
           "kuhn mean@50000 = " + fmt(at50k) + ", best response = " +
               fmt(per_action) + " +- 0.02");
  if (keep) keep->push_back(std::move(r));
}

// 5. Learned tree scale: state counts in [10, 200] per domain, and the tiger
//    tree keeps a state remembering two listens.
static void criterion_tree_scale(Harness& h,
                                 const std::vector<ExperimentResult>& grid_runs,
                                 const ExperimentResult& tiger,
                                 const ExperimentResult& maze,
                                 const ExperimentResult& kuhn) {
  std::string detail;
  bool pass = true;
  auto check_band = [&](const char* name, const Aoct& tree) {
    int states = tree.num_states();
    detail += std::string(name) + "=" + std::to_string(states) + " ";
    if (states < 10 || states > 200) pass = false;
  };
  check_band("grid", grid_runs.front().tree);
  check_band("tiger", tiger.tree);
  check_band("maze", maze.tree);
  check_band("kuhn", kuhn.tree);

  bool two_listens = false;
  for (int s = 0; s < tiger.tree.num_states(); ++s) {
    std::vector<int> chrono = tiger.tree.state_suffix(s);
    int listens = 0;
    for (size_t i = 0; i < chrono.size(); ++i) {
      bool is_action = (chrono.size() - 1 - i) % 2 == 1;
      if (is_action && chrono[i] == TigerEnv::kListen) ++listens;
    }
    if (listens >= 2) two_listens = true;
  }
  if (!two_listens) pass = false;
  detail += two_listens ? "(tiger remembers two listens)"
                        : "(tiger lacks a two-listen state)";
  h.report(5, pass, detail);
}

// 6. Cost equals an independent direct-formula evaluation on random pairs.
static void criterion_cost_oracle(Harness& h) {
  std::vector<Alphabets> shapes;
  for (const std::string& name : environment_names())
    shapes.push_back(make_environment(name, 0)->spec().alphabets);
  int checked = 0;
  double worst = 0.0;
  Rng rng(20240817);
  for (int trial = 0; trial < 100; ++trial) {
    const Alphabets& a = shapes[trial % shapes.size()];
    History hist = synthetic_history(a, 40 + rand_index(rng, 161), rng());
    Aoct tree(a);
    for (int split = 0; split < 4; ++split) {
      std::vector<int> permits = tree.split_permits(hist, 6);
      if (permits.empty()) break;
      Aoct cand = tree;
      cand.markov_split(permits[rand_index(rng, (int)permits.size())]);
      if (cand.num_states() > 6) break;
      tree = std::move(cand);
    }
    double got = cost(tree, hist, 0.1, 0.1);
    double want = oracles::cost_direct(tree, hist, 0.1, 0.1);
    double rel = std::abs(got - want) / std::max(1e-12, std::abs(want));
    worst = std::max(worst, rel);
    ++checked;
  }
  bool pass = checked == 100 && worst <= 1e-9;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  h.report(6, pass, "100 random (tree, history) pairs, worst relative error " +
                        std::string(buf));
}

// 7. The tree-count recursion equals exhaustive enumeration.
static void criterion_tree_count(Harness& h) {
  bool pass = true;
  std::string detail;
  for (int a = 1; a <= 2; ++a)
    for (int o = 1; o <= 2; ++o)
      for (int d = 0; d <= 4; ++d) {
        auto closed = count_aocts(d, a, o);
        int64_t brute = oracles::enumerate_aocts(d, a, o);
        if (closed > 10000) continue;
        if (closed != brute) {
          pass = false;
          detail += "(|A|=" + std::to_string(a) + ",|O|=" + std::to_string(o) +
                    ",d=" + std::to_string(d) + ") ";
        }
      }
  h.report(7, pass, pass ? "K(d) matches brute-force enumeration on all 20 cases"
                         : "mismatches at " + detail);
}

// 8. Markov property and correction factors across random accepted steps.
static void criterion_markov_invariance(Harness& h) {
  PtConfig cfg;
  cfg.max_tree_depth = 6;
  long steps_done = 0, factor_mismatches = 0, markov_failures = 0;
  for (const std::string& name : environment_names()) {
    Alphabets a = make_environment(name, 0)->spec().alphabets;
    History hist = synthetic_history(a, 150, 777 + steps_done);
    Replica rep{Aoct(a), 0.0, 1.0, Rng(31), {}};
    StatsResult eval = collect_stats(rep.tree, hist);
    rep.cost = cost(eval.stats, cfg.cost_alpha, cfg.cost_beta);
    rep.visits = std::move(eval.visits);
    Rng rng(1234);
    for (int step = 0; step < 2500; ++step) {
      auto prop = propose(rep, hist, cfg, rng);
      if (!prop) break;
      size_t n_s = rep.tree.split_permits(rep.visits, cfg.max_tree_depth).size();
      size_t n_m = rep.tree.merge_permits().size();
      std::vector<int64_t> cand_visits = state_visits(prop->candidate, hist);
      double want =
          prop->move == MoveType::kSplit
              ? (double)prop->candidate.merge_permits().size() / n_s
              : (double)prop->candidate.split_permits(cand_visits,
                                                      cfg.max_tree_depth).size() / n_m;
      if (std::abs(prop->correction - want) > 1e-12) ++factor_mismatches;
      if (!prop->candidate.is_markov()) ++markov_failures;
      rep.tree = std::move(prop->candidate);
      rep.cost = prop->candidate_cost;
      rep.visits = std::move(prop->candidate_visits);
      ++steps_done;
    }
  }
  bool pass = steps_done == 10000 && factor_mismatches == 0 && markov_failures == 0;
  h.report(8, pass,
           std::to_string(steps_done) + " accepted steps, " +
               std::to_string(markov_failures) + " markov failures, " +
               std::to_string(factor_mismatches) + " correction mismatches");
}

// 9. AVI against an exact linear-algebra fixed point; Q-learning against the
//    geometric series.
static void criterion_solvers(Harness& h) {
  oracles::ExplicitMdp grid = oracles::true_grid_mdp();
  MdpModel m;
  m.num_states = grid.num_states;
  m.num_actions = grid.num_actions;
  m.trans.assign(16 * 4 * 16, 0.0);
  m.reward.assign(16 * 4 * 16, 0.0);
  for (int s = 0; s < 16; ++s)
    for (int a = 0; a < 4; ++a)
      for (int s2 = 0; s2 < 16; ++s2) {
        m.t(s, a, s2) = grid.t[s][a][s2];
        m.r(s, a, s2) = grid.r[s][a][s2];
      }
  AviResult solved = avi(m, 0.95, 1e-12, 200000);
  auto exact = oracles::policy_iteration_q(grid, 0.95);
  double worst = 0.0;
  for (int s = 0; s < 16; ++s)
    for (int a = 0; a < 4; ++a)
      worst = std::max(worst, std::abs(solved.q.at(s, a) - exact[s][a]));

  QTable q(1, 1, 0.9, 0.05);
  for (int i = 0; i < 4000; ++i) q_learning_step(q, 0, 0, 1.0, 0);
  double q_err = std::abs(q.at(0, 0) - 10.0);

  bool pass = worst <= 1e-5 && q_err <= 1e-3;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "AVI max |dQ| = %.2e, q-learning error = %.2e",
                worst, q_err);
  h.report(9, pass, buf);
}

// 10. Full grid runs with the same seed produce byte-identical outputs.
static void criterion_determinism(Harness& h) {
  std::vector<std::string> args{"run",      "--env",     "grid4x4", "--seed",
                                "1",        "--out-dir", ""};
  std::string dir_a = "/tmp/phimdp_accept_a", dir_b = "/tmp/phimdp_accept_b";
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
  args.back() = dir_a;
  int rc_a = cli_main(args);
  args.back() = dir_b;
  int rc_b = cli_main(args);
  bool pass = rc_a == 0 && rc_b == 0 &&
              slurp(dir_a + "/curve.csv") == slurp(dir_b + "/curve.csv") &&
              slurp(dir_a + "/tree.txt") == slurp(dir_b + "/tree.txt") &&
              !slurp(dir_a + "/curve.csv").empty();
  h.report(10, pass, pass ? "curve.csv and tree.txt byte-identical across reruns"
                          : "outputs differ between identical runs");
}

int main() {
  Harness h;
  std::vector<ExperimentResult> grid_runs;
  std::vector<ExperimentResult> single;

  criterion_grid(h, &grid_runs);
  criterion_tiger(h, &single);
  criterion_maze(h, &single);
  criterion_kuhn(h, &single);
  criterion_tree_scale(h, grid_runs, single[0], single[1], single[2]);
  criterion_cost_oracle(h);
  criterion_tree_count(h);
  criterion_markov_invariance(h);
  criterion_solvers(h);
  criterion_determinism(h);

  std::printf("%d of 10 criteria passed\n", 10 - h.failures);
  return h.failures == 0 ? 0 : 1;
}
