#include "bellcut/graphs.hpp"

#include "bellcut/errors.hpp"

#include <cctype>
#include <string>

namespace bellcut {

std::string to_string(const Node& node) {
  switch (node.side) {
    case Side::alice: return "A" + std::to_string(node.index + 1);
    case Side::bob: return "B" + std::to_string(node.index + 1);
    case Side::root: return "X";
  }
  return "?";
}

namespace {

[[noreturn]] void throw_non_edge(const Node& u, const Node& v) {
  throw NonEdgeError("non-edge: " + to_string(u) + to_string(v));
}

}  // namespace

BipartiteShape::BipartiteShape(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1)
    throw ValidationError("K_{m,n} needs m >= 1 and n >= 1, got " + std::to_string(m) + "," + std::to_string(n));
}

std::size_t BipartiteShape::edge_index(const Node& u, const Node& v) const {
  const Node* a = &u;
  const Node* b = &v;
  if (a->side == Side::bob) std::swap(a, b);
  if (a->side != Side::alice || b->side != Side::bob) throw_non_edge(u, v);
  if (a->index < 0 || a->index >= m_ || b->index < 0 || b->index >= n_) throw_non_edge(u, v);
  return static_cast<std::size_t>(a->index) * n_ + b->index;
}

Edge BipartiteShape::edge(std::size_t index) const {
  if (index >= static_cast<std::size_t>(edge_count())) throw ValidationError("edge index out of range");
  return {Node::alice(static_cast<int>(index) / n_), Node::bob(static_cast<int>(index) % n_)};
}

std::vector<Node> BipartiteShape::nodes() const {
  std::vector<Node> out;
  for (int i = 0; i < m_; ++i) out.push_back(Node::alice(i));
  for (int j = 0; j < n_; ++j) out.push_back(Node::bob(j));
  return out;
}

int BipartiteShape::node_position(const Node& node) const {
  if (node.side == Side::alice && node.index >= 0 && node.index < m_) return node.index;
  if (node.side == Side::bob && node.index >= 0 && node.index < n_) return m_ + node.index;
  throw ValidationError("node " + to_string(node) + " is not in K_{" + std::to_string(m_) + "," + std::to_string(n_) + "}");
}

std::size_t SuspensionShape::edge_index(const Node& u, const Node& v) const {
  if (u.side == Side::root || v.side == Side::root) {
    const Node& other = u.side == Side::root ? v : u;
    if (other.side == Side::alice && other.index >= 0 && other.index < m()) return other.index;
    if (other.side == Side::bob && other.index >= 0 && other.index < n()) return m() + other.index;
    throw_non_edge(u, v);
  }
  return root_edge_count() + base_.edge_index(u, v);
}

Edge SuspensionShape::edge(std::size_t index) const {
  if (index >= static_cast<std::size_t>(edge_count())) throw ValidationError("edge index out of range");
  const int k = static_cast<int>(index);
  if (k < m()) return {Node::root(), Node::alice(k)};
  if (k < root_edge_count()) return {Node::root(), Node::bob(k - m())};
  return base_.edge(index - root_edge_count());
}

std::vector<Node> SuspensionShape::nodes() const {
  std::vector<Node> out{Node::root()};
  for (const Node& v : base_.nodes()) out.push_back(v);
  return out;
}

int SuspensionShape::node_position(const Node& node) const {
  if (node.side == Side::root) return 0;
  return 1 + base_.node_position(node);
}

CompleteShape::CompleteShape(std::string sides) : sides_(std::move(sides)) {
  if (sides_.size() < 2) throw ValidationError("K_N needs at least 2 nodes");
  for (char c : sides_)
    if (c != 'A' && c != 'B') throw ValidationError("node sides must be 'A' or 'B', got '" + sides_ + "'");
}

CompleteShape CompleteShape::unlabeled(int n) {
  if (n < 2) throw ValidationError("K_N needs at least 2 nodes");
  return CompleteShape(std::string(static_cast<std::size_t>(n), 'A'));
}

std::size_t CompleteShape::edge_index(int u, int v) const {
  const int n = node_count();
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n || u == v) throw NonEdgeError("non-edge: " + std::to_string(u) + "," + std::to_string(v));
  // rows 0..u-1 contribute (n-1) + (n-2) + ... + (n-u)
  return static_cast<std::size_t>(u * (2 * n - u - 1) / 2 + (v - u - 1));
}

std::pair<int, int> CompleteShape::edge(std::size_t index) const {
  const int n = node_count();
  int k = static_cast<int>(index);
  for (int u = 0; u < n - 1; ++u) {
    if (k < n - 1 - u) return {u, u + 1 + k};
    k -= n - 1 - u;
  }
  throw ValidationError("edge index out of range");
}

Node CompleteShape::label(int u) const {
  if (u < 0 || u >= node_count()) throw ValidationError("node out of range");
  int rank = 0;
  for (int k = 0; k < u; ++k)
    if (sides_[k] == sides_[u]) ++rank;
  return sides_[u] == 'A' ? Node::alice(rank) : Node::bob(rank);
}

GraphSpec parse_graph_spec(const std::string& text) {
  auto fail = [&]() -> GraphSpec { throw ValidationError("bad graph '" + text + "' (expected K<m>,<n>, S<m>,<n> or K<N>)"); };
  if (text.size() < 2) return fail();
  const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (kind != 'K' && kind != 'S') return fail();
  const std::string rest = text.substr(1);
  const auto comma = rest.find(',');
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.size() > 4) fail();
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    return std::stoi(s);
  };
  if (comma == std::string::npos) {
    if (kind == 'S') return fail();
    return {GraphSpec::Kind::complete, parse_int(rest), 0};
  }
  return {kind == 'K' ? GraphSpec::Kind::bipartite : GraphSpec::Kind::suspension, parse_int(rest.substr(0, comma)),
          parse_int(rest.substr(comma + 1))};
}

}  // namespace bellcut
