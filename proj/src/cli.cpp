#include "phimdp/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phimdp/environments.hpp"
#include "phimdp/experiment.hpp"

namespace phimdp {

namespace {

int cmd_run(const ExperimentConfig& cfg, const std::string& out_dir,
            const std::string& trace_path) {
  std::filesystem::create_directories(out_dir);
  std::ofstream trace;
  ExperimentConfig effective = cfg;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw std::runtime_error("cannot open trace file " + trace_path);
    effective.agent.search_trace = &trace;
  }
  ExperimentResult result = run_experiment(effective);

  std::ofstream curve(out_dir + "/curve.csv");
  write_curve_csv(result, curve);
  std::ofstream tree(out_dir + "/tree.txt");
  result.tree.serialize(tree);
  std::ofstream manifest(out_dir + "/manifest.txt");
  write_manifest(effective, result, manifest);
  if (!curve || !tree || !manifest)
    throw std::runtime_error("failed writing results to " + out_dir);

  std::cout << "environment " << cfg.environment << ": tree with "
            << result.tree.num_states() << " states\n";
  for (const CheckpointResult& cp : result.curve)
    std::cout << "  mean reward per action at " << cp.experience << ": "
              << cp.eval.mean << '\n';
  return 0;
}

int cmd_count_trees(int depth, int num_actions, int num_observations) {
  std::cout << count_aocts(depth, num_actions, num_observations) << '\n';
  return 0;
}

int cmd_inspect_tree(const std::string& path, int num_actions,
                     int num_observations) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  if (num_actions <= 0 || num_observations <= 0) {
    // Infer arities from the branching of internal nodes: children of a node
    // are the following depth+1 lines until the pre-order leaves its subtree.
    int by_parity[2] = {0, 0};
    std::vector<int> depths;
    depths.reserve(lines.size());
    for (const auto& l : lines) depths.push_back(std::atoi(l.c_str()));
    for (size_t i = 0; i < depths.size(); ++i) {
      int nchildren = 0;
      for (size_t j = i + 1; j < depths.size() && depths[j] > depths[i]; ++j)
        if (depths[j] == depths[i] + 1) ++nchildren;
      by_parity[depths[i] % 2] = std::max(by_parity[depths[i] % 2], nchildren);
    }
    if (num_observations <= 0) num_observations = std::max(1, by_parity[0]);
    if (num_actions <= 0) num_actions = std::max(1, by_parity[1]);
  }
  Alphabets alphabets{num_actions, num_observations, {0.0}};
  std::string joined;
  for (const auto& l : lines) joined += l + '\n';
  std::istringstream stream(joined);
  Aoct tree = Aoct::deserialize(alphabets, stream);
  MarkovReport report = tree.markov_check();
  std::cout << tree.num_states() << " states, depth " << tree.max_leaf_depth()
            << ", Markov: " << (report.markov ? "yes" : "no") << '\n';
  std::cout << "suffixes:";
  for (int s = 0; s < tree.num_states(); ++s) {
    std::string suffix = tree.state_suffix_string(s);
    std::cout << ' ' << (suffix.empty() ? "(root)" : suffix);
  }
  std::cout << '\n';
  for (const MarkovViolation& v : report.violations) {
    std::cout << "violation: state " << tree.state_suffix_string(v.state)
              << " with a=" << v.action << " o=" << v.observation << " ->";
    for (int c : v.candidate_states) std::cout << ' ' << tree.state_suffix_string(c);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Feature reinforcement learning agent over Markov context trees"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string out_dir = "results";
  std::string trace_path;
  CLI::App* run = app.add_subcommand("run", "Train and evaluate one experiment");
  run->add_option("--env", cfg.environment, "Environment name")
      ->check(CLI::IsMember(environment_names()))
      ->required();
  run->add_option("--seed", cfg.agent.seed, "Master seed");
  run->add_option("--alpha", cfg.agent.cost_alpha, "State/reward coding weight");
  run->add_option("--beta", cfg.agent.cost_beta, "Parameter penalty weight");
  run->add_option("--replicas", cfg.agent.pt_replicas, "Tempered chains");
  run->add_option("--pt-iters", cfg.agent.pt_iterations, "Search iterations");
  run->add_option("--alpha0", cfg.agent.pt_alpha0, "Swap probability parameter");
  run->add_option("--gamma", cfg.agent.gamma, "Discount factor");
  run->add_option("--eta", cfg.agent.eta, "Q-learning rate");
  run->add_option("--initial-samples", cfg.agent.initial_samples,
                  "Random-action phase length");
  run->add_option("--learning-loops", cfg.agent.learning_loops,
                  "Search/interaction loops");
  run->add_option("--additional-samples", cfg.agent.additional_samples,
                  "Interaction steps per loop");
  run->add_option("--max-tree-depth", cfg.agent.max_tree_depth,
                  "Split permit depth cap");
  run->add_option("--checkpoints", cfg.checkpoints,
                  "Cumulative experience counts to evaluate at");
  run->add_option("--eval-runs", cfg.num_eval_runs, "Evaluation runs per checkpoint");
  run->add_option("--eval-actions", cfg.eval_actions, "Actions per evaluation run");
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_option("--trace", trace_path, "Optional search trace CSV");

  int depth = 0, count_actions = 2, count_obs = 2;
  CLI::App* count = app.add_subcommand("count-trees",
                                       "Number of context trees up to a depth");
  count->add_option("depth", depth, "Maximum depth")->required();
  count->add_option("--actions", count_actions, "Action alphabet size");
  count->add_option("--observations", count_obs, "Observation alphabet size");

  std::string tree_path;
  int inspect_actions = 0, inspect_obs = 0;
  CLI::App* inspect = app.add_subcommand("inspect-tree", "Report on a saved tree");
  inspect->add_option("file", tree_path, "Serialized tree file")->required();
  inspect->add_option("--actions", inspect_actions, "Action alphabet size");
  inspect->add_option("--observations", inspect_obs, "Observation alphabet size");

  std::vector<const char*> argv;
  argv.push_back("phimdp-cli");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(cfg, out_dir, trace_path);
    if (count->parsed()) return cmd_count_trees(depth, count_actions, count_obs);
    if (inspect->parsed())
      return cmd_inspect_tree(tree_path, inspect_actions, inspect_obs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace phimdp
