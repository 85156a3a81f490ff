#include "phimdp/context_tree.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "phimdp/text_io.hpp"

namespace phimdp {

Aoct::Aoct(Alphabets alphabets) : alphabets_(std::move(alphabets)) {
  alphabets_.validate();
  nodes_.push_back(AoctNode{});
  reindex_states();
}

int Aoct::max_leaf_depth() const {
  int d = 0;
  for (const auto& n : nodes_)
    if (n.children.empty()) d = std::max(d, n.depth);
  return d;
}

std::vector<int> Aoct::path_labels(int n) const {
  std::vector<int> labels;
  for (int cur = n; cur != 0; cur = nodes_[cur].parent)
    labels.push_back(nodes_[cur].edge_label);
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::vector<int> Aoct::state_suffix(int sid) const {
  // Chronological order is deepest edge first, so the reversed path.
  std::vector<int> labels = path_labels(state_node_[sid]);
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::string Aoct::state_suffix_string(int sid) const {
  std::vector<int> chrono = state_suffix(sid);
  bool compact = alphabets_.num_actions <= 10 && alphabets_.num_observations <= 10;
  std::string out;
  for (size_t i = 0; i < chrono.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += std::to_string(chrono[i]);
  }
  return out;
}

int Aoct::node_at_path(const std::vector<int>& labels) const {
  int cur = 0;
  for (int l : labels) {
    if (is_leaf(cur)) return -1;
    if (l < 0 || l >= static_cast<int>(nodes_[cur].children.size())) return -1;
    cur = nodes_[cur].children[l];
  }
  return cur;
}

int Aoct::map_history(const History& h, int t) const {
  if (t < 1 || t > h.length() + 1) throw std::out_of_range("map_history time index");
  int cur = 0;
  while (!is_leaf(cur)) {
    int d = nodes_[cur].depth;
    int label;
    if (d % 2 == 0) {
      int time = t - d / 2;
      if (time < 1) return boundary_state();
      label = h.observation_at(time);
    } else {
      int time = t - (d + 1) / 2;
      if (time < 1) return boundary_state();
      label = h.action_at(time);
    }
    cur = nodes_[cur].children[label];
  }
  return leaf_state_[cur];
}

int Aoct::descend_exact(const std::vector<int>& chrono) const {
  int cur = 0;
  for (size_t i = 0; i < chrono.size(); ++i) {
    if (is_leaf(cur)) return -1;
    int label = chrono[chrono.size() - 1 - i];
    if (label < 0 || label >= static_cast<int>(nodes_[cur].children.size()))
      return -1;
    cur = nodes_[cur].children[label];
  }
  return cur;
}

MarkovReport Aoct::markov_check() const {
  MarkovReport report;
  for (int sid = 0; sid < num_states(); ++sid) {
    std::vector<int> chrono = state_suffix(sid);
    for (int a = 0; a < alphabets_.num_actions; ++a) {
      for (int o = 0; o < alphabets_.num_observations; ++o) {
        // Consume newest first: o, a, then the suffix from its newest end.
        int cur = 0;
        size_t consumed = 0;
        const size_t total = chrono.size() + 2;
        while (!is_leaf(cur) && consumed < total) {
          int label;
          if (consumed == 0) label = o;
          else if (consumed == 1) label = a;
          else label = chrono[chrono.size() - (consumed - 1)];
          cur = nodes_[cur].children[label];
          ++consumed;
        }
        if (!is_leaf(cur)) {
          MarkovViolation v;
          v.state = sid;
          v.action = a;
          v.observation = o;
          for (int other = 0; other < num_states(); ++other) {
            // Candidates are the leaves below the ambiguous internal node.
            for (int walk = state_node_[other]; walk != -1; walk = nodes_[walk].parent)
              if (walk == cur) { v.candidate_states.push_back(other); break; }
          }
          report.violations.push_back(std::move(v));
          report.markov = false;
        }
      }
    }
  }
  return report;
}

void Aoct::add_children(int node) {
  int arity = branching_at(nodes_[node].depth);
  for (int label = 0; label < arity; ++label) {
    AoctNode child;
    child.parent = node;
    child.depth = nodes_[node].depth + 1;
    child.edge_label = label;
    nodes_.push_back(child);
    nodes_[node].children.push_back(num_nodes() - 1);
  }
}

void Aoct::split(int leaf) {
  if (!is_leaf(leaf)) throw std::invalid_argument("split: node is not a leaf");
  add_children(leaf);
  canonicalize();
}

void Aoct::merge(int node) {
  if (is_leaf(node)) throw std::invalid_argument("merge: node is a leaf");
  for (int c : nodes_[node].children)
    if (!is_leaf(c)) throw std::invalid_argument("merge: children are not all leaves");
  nodes_[node].children.clear();
  canonicalize();
}

std::vector<int> Aoct::markov_split_chain(int leaf) const {
  if (!is_leaf(leaf)) throw std::invalid_argument("markov_split: node is not a leaf");
  std::vector<int> chain{leaf};
  std::vector<int> chrono = path_labels(leaf);
  std::reverse(chrono.begin(), chrono.end());
  while (chrono.size() >= 2) {
    chrono.resize(chrono.size() - 2);  // drop the newest (a, o) pair
    int nd = descend_exact(chrono);
    if (nd < 0 || !is_leaf(nd)) break;
    chain.push_back(nd);
  }
  return chain;
}

void Aoct::markov_split(int leaf) {
  std::vector<int> chain = markov_split_chain(leaf);
  for (int n : chain) add_children(n);  // append-only, ids stay valid
  canonicalize();
}

MergeClosure Aoct::markov_merge_closure(int node) const {
  MergeClosure closure;
  if (is_leaf(node)) throw std::invalid_argument("markov_merge: node is a leaf");
  std::set<int> merged;
  std::set<int> enqueued{node};
  std::deque<int> queue{node};
  auto sim_leaf = [&](int n) { return is_leaf(n) || merged.count(n) > 0; };
  auto descend_sim = [&](const std::vector<int>& chrono) {
    int cur = 0;
    for (size_t i = 0; i < chrono.size(); ++i) {
      if (sim_leaf(cur)) return -1;
      cur = nodes_[cur].children[chrono[chrono.size() - 1 - i]];
    }
    return cur;
  };
  bool retried = false;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (merged.count(u)) continue;
    bool ready = true;
    for (int c : nodes_[u].children)
      if (!sim_leaf(c)) { ready = false; break; }
    if (!ready) {
      // A forced descendant may still be pending; retry once after the rest.
      if (!retried && queue.size() > 0) {
        queue.push_back(u);
        retried = true;
        continue;
      }
      closure.blocked = true;
      return closure;
    }
    merged.insert(u);
    closure.nodes.push_back(u);
    std::vector<int> chrono = path_labels(u);
    std::reverse(chrono.begin(), chrono.end());
    chrono.push_back(0);
    chrono.push_back(0);
    for (int a = 0; a < alphabets_.num_actions; ++a) {
      for (int o = 0; o < alphabets_.num_observations; ++o) {
        chrono[chrono.size() - 2] = a;
        chrono[chrono.size() - 1] = o;
        int w = descend_sim(chrono);
        if (w >= 0 && !sim_leaf(w) && !enqueued.count(w)) {
          enqueued.insert(w);
          queue.push_back(w);
        }
      }
    }
  }
  return closure;
}

void Aoct::markov_merge(int node) {
  MergeClosure closure = markov_merge_closure(node);
  if (closure.blocked)
    throw std::invalid_argument("markov_merge: closure is blocked");
  for (int n : closure.nodes) nodes_[n].children.clear();
  canonicalize();
}

void Aoct::refresh_split_labels(const std::vector<int64_t>& visits) {
  for (int n = 0; n < num_nodes(); ++n)
    if (is_leaf(n)) nodes_[n].splittable = visits[leaf_state_[n]] > 0;
}

std::vector<int> Aoct::split_permits(const std::vector<int64_t>& visits,
                                     int max_depth) const {
  std::vector<int> permits;
  for (int n = 0; n < num_nodes(); ++n) {
    if (!is_leaf(n)) continue;
    if (nodes_[n].depth >= max_depth) continue;
    bool ok = true;
    for (int member : markov_split_chain(n))
      if (visits[leaf_state_[member]] == 0) { ok = false; break; }
    if (ok) permits.push_back(n);
  }
  return permits;
}

std::vector<int> Aoct::split_permits(const History& h, int max_depth) const {
  return split_permits(state_visits(*this, h), max_depth);
}

std::vector<int> Aoct::merge_permits() const {
  std::vector<int> permits;
  for (int n = 0; n < num_nodes(); ++n) {
    if (is_leaf(n) || !nodes_[n].mergeable) continue;
    bool children_leaves = true;
    for (int c : nodes_[n].children)
      if (!is_leaf(c)) { children_leaves = false; break; }
    if (!children_leaves) continue;
    MergeClosure closure = markov_merge_closure(n);
    if (closure.blocked) continue;
    bool ok = true;
    for (int member : closure.nodes)
      if (!nodes_[member].mergeable) { ok = false; break; }
    if (ok) permits.push_back(n);
  }
  return permits;
}

void Aoct::canonicalize() {
  std::vector<AoctNode> fresh;
  fresh.reserve(nodes_.size());
  // Iterative pre-order rebuild; children visited in label order.
  std::vector<std::pair<int, int>> stack{{0, -1}};  // (old id, new parent id)
  while (!stack.empty()) {
    auto [old_id, new_parent] = stack.back();
    stack.pop_back();
    AoctNode n = nodes_[old_id];
    n.parent = new_parent;
    n.children.clear();
    int new_id = static_cast<int>(fresh.size());
    if (new_parent >= 0) fresh[new_parent].children.push_back(new_id);
    fresh.push_back(std::move(n));
    const auto& old_children = nodes_[old_id].children;
    for (auto it = old_children.rbegin(); it != old_children.rend(); ++it)
      stack.emplace_back(*it, new_id);
  }
  nodes_ = std::move(fresh);
  reindex_states();
}

void Aoct::reindex_states() {
  leaf_state_.assign(nodes_.size(), -1);
  state_node_.clear();
  for (int n = 0; n < num_nodes(); ++n) {
    if (is_leaf(n)) {
      leaf_state_[n] = static_cast<int>(state_node_.size());
      state_node_.push_back(n);
    }
  }
}

void Aoct::serialize(std::ostream& out) const {
  for (const auto& n : nodes_)
    out << n.depth << ',' << n.edge_label << ',' << (n.splittable ? 1 : 0) << ','
        << (n.mergeable ? 1 : 0) << '\n';
}

Aoct Aoct::deserialize(Alphabets alphabets, std::istream& in) {
  Aoct tree(std::move(alphabets));
  tree.nodes_.clear();
  std::string line;
  int line_no = 0;
  std::vector<int> last_at_depth;  // node id of the most recent node per depth
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<int> v;
    try {
      v = split_csv_ints(line, 4);
    } catch (const std::exception& e) {
      throw std::runtime_error("tree file line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    AoctNode n;
    n.depth = v[0];
    n.edge_label = v[1];
    n.splittable = v[2] != 0;
    n.mergeable = v[3] != 0;
    if (tree.nodes_.empty()) {
      if (n.depth != 0 || n.edge_label != -1)
        throw std::runtime_error("tree file line " + std::to_string(line_no) +
                                 ": first node must be `0,-1,...`");
      tree.nodes_.push_back(n);
      last_at_depth.assign(1, 0);
      continue;
    }
    if (n.depth < 1 || n.depth > static_cast<int>(last_at_depth.size()))
      throw std::runtime_error("tree file line " + std::to_string(line_no) +
                               ": depth breaks pre-order");
    n.parent = last_at_depth[n.depth - 1];
    int id = tree.num_nodes();
    AoctNode& parent = tree.nodes_[n.parent];
    if (n.edge_label != static_cast<int>(parent.children.size()))
      throw std::runtime_error("tree file line " + std::to_string(line_no) +
                               ": edge labels must be 0,1,... in order");
    parent.children.push_back(id);
    tree.nodes_.push_back(n);
    last_at_depth.resize(n.depth);
    last_at_depth.push_back(id);
  }
  if (tree.nodes_.empty()) throw std::runtime_error("tree file: empty");
  for (int i = 0; i < tree.num_nodes(); ++i) {
    const AoctNode& n = tree.nodes_[i];
    if (!n.children.empty() &&
        static_cast<int>(n.children.size()) != tree.branching_at(n.depth))
      throw std::runtime_error("tree file: internal node at depth " +
                               std::to_string(n.depth) +
                               " is not fully branched for the alphabets");
  }
  tree.reindex_states();
  return tree;
}

bool Aoct::same_structure(const Aoct& other) const {
  if (!(alphabets_ == other.alphabets_)) return false;
  if (num_nodes() != other.num_nodes()) return false;
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes_[i].depth != other.nodes_[i].depth) return false;
    if (nodes_[i].edge_label != other.nodes_[i].edge_label) return false;
    if (nodes_[i].children.size() != other.nodes_[i].children.size()) return false;
  }
  return true;
}

std::vector<int64_t> state_visits(const Aoct& tree, const History& h) {
  std::vector<int64_t> visits(tree.num_states(), 0);
  for (int t = 1; t <= h.length() + 1; ++t) {
    int s = tree.map_history(h, t);
    if (s != tree.boundary_state()) ++visits[s];
  }
  return visits;
}

boost::multiprecision::cpp_int count_aocts(int depth, int num_actions,
                                           int num_observations) {
  if (depth < 0) throw std::invalid_argument("count_aocts: negative depth");
  using boost::multiprecision::cpp_int;
  if (depth == 0) return 1;
  if (depth == 1) return 2;
  cpp_int below = count_aocts(depth - 2, num_actions, num_observations);
  cpp_int per_child = boost::multiprecision::pow(below, num_actions) + 1;
  return boost::multiprecision::pow(per_child, num_observations) + 1;
}

}  // namespace phimdp
