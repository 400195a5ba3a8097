#pragma once

// Node and edge indexing for K_{m,n}, its suspension (root X joined to every
// node) and, for complete-graph inequalities, K_N with an A/B side labelling.
//
// Edge order, shared by every coordinate vector in the library:
//   K_{m,n}:   A_iB_j row-major (i outer, j inner).
//   Susp:      XA_1..XA_m, XB_1..XB_n, then the K_{m,n} edges.
//   K_N:       pairs (u,v), u < v, lexicographic.
// Node order: K_{m,n} A_1..A_m B_1..B_n; the suspension puts X first.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bellcut {

enum class Side { alice, bob, root };

/// Tagged node label; `index` is 0-based (A_1 is {alice, 0}).
struct Node {
  Side side;
  int index = 0;

  static Node alice(int i) { return {Side::alice, i}; }
  static Node bob(int j) { return {Side::bob, j}; }
  static Node root() { return {Side::root, 0}; }

  friend bool operator==(const Node&, const Node&) = default;
};

std::string to_string(const Node& node);

using Edge = std::pair<Node, Node>;

class BipartiteShape {
 public:
  BipartiteShape(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int node_count() const { return m_ + n_; }
  int edge_count() const { return m_ * n_; }

  std::size_t edge_index(const Node& u, const Node& v) const;
  Edge edge(std::size_t index) const;
  std::vector<Node> nodes() const;
  /// Position of `node` in `nodes()`.
  int node_position(const Node& node) const;

  friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;

 private:
  int m_;
  int n_;
};

class SuspensionShape {
 public:
  explicit SuspensionShape(BipartiteShape base) : base_(base) {}
  SuspensionShape(int m, int n) : base_(m, n) {}

  const BipartiteShape& base() const { return base_; }
  int m() const { return base_.m(); }
  int n() const { return base_.n(); }
  int node_count() const { return 1 + base_.node_count(); }
  int edge_count() const { return base_.m() + base_.n() + base_.edge_count(); }
  /// Number of leading root-edge coordinates (m + n).
  int root_edge_count() const { return base_.m() + base_.n(); }

  std::size_t edge_index(const Node& u, const Node& v) const;
  Edge edge(std::size_t index) const;
  std::vector<Node> nodes() const;
  int node_position(const Node& node) const;

  friend bool operator==(const SuspensionShape&, const SuspensionShape&) = default;

 private:
  BipartiteShape base_;
};

/// K_N whose nodes carry A/B side labels, e.g. "AAABB" for the pentagonal
/// inequality on A_1,A_2,A_3,B_1,B_2. Nodes are numbered 0..N-1 in label order.
class CompleteShape {
 public:
  explicit CompleteShape(std::string sides);
  static CompleteShape unlabeled(int n);

  int node_count() const { return static_cast<int>(sides_.size()); }
  int edge_count() const { return node_count() * (node_count() - 1) / 2; }
  const std::string& sides() const { return sides_; }

  std::size_t edge_index(int u, int v) const;
  std::pair<int, int> edge(std::size_t index) const;
  /// Tagged label of node `u`: its side and rank among nodes of that side.
  Node label(int u) const;

  friend bool operator==(const CompleteShape&, const CompleteShape&) = default;

 private:
  std::string sides_;
};

/// Parses "K3,3", "S3,3" (suspension) or "K5". Returns which form was found.
struct GraphSpec {
  enum class Kind { bipartite, suspension, complete } kind;
  int m = 0;
  int n = 0;
};
GraphSpec parse_graph_spec(const std::string& text);

}  // namespace bellcut
