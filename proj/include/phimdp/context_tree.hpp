#ifndef PHIMDP_CONTEXT_TREE_HPP_
#define PHIMDP_CONTEXT_TREE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "phimdp/history.hpp"

namespace phimdp {

/// Node of an action-observation context tree. Children are indexed by edge
/// label; an internal node at even depth has one child per observation, at
/// odd depth one per action (trees are always full).
struct AoctNode {
  int parent = -1;
  int depth = 0;
  int edge_label = -1;  // label of the edge from parent; -1 for the root
  std::vector<int> children;
  bool splittable = true;
  bool mergeable = true;
};

struct MarkovViolation {
  int state = -1;  // id of the state whose next state is ambiguous
  int action = 0;
  int observation = 0;
  std::vector<int> candidate_states;  // states the next state could be
};

struct MarkovReport {
  bool markov = true;
  std::vector<MarkovViolation> violations;
};

struct MergeClosure {
  bool blocked = false;     // some node in the closure cannot be merged
  std::vector<int> nodes;   // merge order (first = the node asked about)
};

/// Action-observation context tree whose leaf-to-root edge labels are the
/// states of the induced MDP. A value type: search replicas copy and edit
/// their private instances. Node ids are canonical (pre-order) after every
/// edit, and leaf states are numbered in pre-order as well.
class Aoct {
 public:
  explicit Aoct(Alphabets alphabets);

  const Alphabets& alphabets() const { return alphabets_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_states() const { return static_cast<int>(state_node_.size()); }
  /// Reserved state returned by map_history when the history is too short;
  /// excluded from sufficient statistics.
  int boundary_state() const { return num_states(); }
  int root() const { return 0; }
  const AoctNode& node(int n) const { return nodes_[n]; }
  bool is_leaf(int n) const { return nodes_[n].children.empty(); }
  int branching_at(int depth) const {
    return depth % 2 == 0 ? alphabets_.num_observations : alphabets_.num_actions;
  }
  int max_leaf_depth() const;

  bool splittable(int n) const { return nodes_[n].splittable; }
  bool mergeable(int n) const { return nodes_[n].mergeable; }
  void set_splittable(int n, bool v) { nodes_[n].splittable = v; }
  void set_mergeable(int n, bool v) { nodes_[n].mergeable = v; }

  /// State id of a leaf node (-1 for internal nodes).
  int state_of_node(int n) const { return leaf_state_[n]; }
  int node_of_state(int sid) const { return state_node_[sid]; }
  /// Edge labels leaf-to-root read in chronological order: oldest symbol
  /// first, the root-level observation last.
  std::vector<int> state_suffix(int sid) const;
  std::string state_suffix_string(int sid) const;
  /// Root-to-node edge labels (newest symbol first); the share/replication
  /// key for a node across different trees.
  std::vector<int> path_labels(int n) const;
  int node_at_path(const std::vector<int>& labels) const;

  /// State of h_t: descend from the root consuming o_t, a_{t-1}, o_{t-1}, ...
  /// until a leaf; boundary_state() when the history is shorter than the
  /// path requires. t ranges over [1, length + 1].
  int map_history(const History& h, int t) const;

  /// Node whose chronological label string equals `chrono` exactly, or -1.
  int descend_exact(const std::vector<int>& chrono) const;

  /// Markov property: for every state s and pair (a, o) exactly one state is
  /// a suffix of s.a.o.
  MarkovReport markov_check() const;
  bool is_markov() const { return markov_check().markov; }

  /// Adds the full set of children to a leaf. Throws on internal nodes.
  void split(int leaf);
  /// Removes the children of a node whose children are all leaves.
  void merge(int node);

  /// The leaf plus the minimal set of leaves that must also be split to keep
  /// the tree Markov (each forced leaf's suffix is the previous one minus its
  /// newest action-observation pair).
  std::vector<int> markov_split_chain(int leaf) const;
  void markov_split(int leaf);

  MergeClosure markov_merge_closure(int node) const;
  void markov_merge(int node);

  /// Leaf splittable labels from visit counts: a leaf is splittable iff its
  /// state occurs in the current history.
  void refresh_split_labels(const std::vector<int64_t>& state_visits);

  /// Nodes with Markov-split permits: visited leaves below the depth cap
  /// whose whole split chain is visited.
  std::vector<int> split_permits(const std::vector<int64_t>& state_visits,
                                 int max_depth) const;
  std::vector<int> split_permits(const History& h, int max_depth) const;
  /// Nodes with Markov-merge permits: mergeable, children all leaves, and
  /// every node in the merge closure mergeable.
  std::vector<int> merge_permits() const;

  /// Pre-order text form, one node per line `depth,edge_label,splittable,mergeable`.
  void serialize(std::ostream& out) const;
  static Aoct deserialize(Alphabets alphabets, std::istream& in);

  /// Structural equality: same node/edge sets; splittable/mergeable ignored.
  bool same_structure(const Aoct& other) const;

 private:
  void add_children(int node);
  void canonicalize();
  void reindex_states();

  Alphabets alphabets_;
  std::vector<AoctNode> nodes_;
  std::vector<int> leaf_state_;  // node id -> state id, -1 for internal
  std::vector<int> state_node_;  // state id -> node id
};

/// visits[s] = number of times state s occurs over t in [1, length + 1];
/// boundary hits are not counted.
std::vector<int64_t> state_visits(const Aoct& tree, const History& h);

/// Number of action-observation context trees of depth at most `depth`,
/// via K(d) = (K(d-2)^|A| + 1)^|O| + 1 with K(0) = 1, K(1) = 2.
boost::multiprecision::cpp_int count_aocts(int depth, int num_actions,
                                           int num_observations);

}  // namespace phimdp

#endif  // PHIMDP_CONTEXT_TREE_HPP_
