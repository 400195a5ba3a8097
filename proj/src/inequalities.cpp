#include "bellcut/inequalities.hpp"

#include "bellcut/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace bellcut {

namespace {

bool is_bipartite(Space s) { return s != Space::complete; }

int node_terms(Space s, int rows, int cols) {
  return s == Space::suspension || s == Space::cor ? rows + cols : 0;
}

std::string pair_label(char side, int a, int b) {
  const bool short_form = a < 9 && b < 9;
  return std::string(1, side) + std::to_string(a + 1) + (short_form ? "" : ",") + std::to_string(b + 1);
}

Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::vector<long long> to_small_integers(const RationalVector& v) {
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (denominator(x) != 1) throw ValidationError("canonicalization needs integer coefficients");
    const Integer n = numerator(x);
    if (n > std::numeric_limits<long long>::max() / 2 || n < std::numeric_limits<long long>::min() / 2)
      throw ValidationError("coefficient too large for canonicalization");
    out.push_back(n.convert_to<long long>());
  }
  return out;
}

RationalVector to_rationals(const std::vector<long long>& v) { return RationalVector(v.begin(), v.end()); }

void require_correlation(const LinearInequality& ineq, const char* what) {
  if (ineq.space != Space::correlation) throw ValidationError(std::string(what) + " needs a correlation inequality");
}

}  // namespace

std::string to_string(Space space) {
  switch (space) {
    case Space::correlation: return "correlation";
    case Space::suspension: return "suspension";
    case Space::cor: return "cor";
    case Space::complete: return "complete";
  }
  return "?";
}

Space parse_space(const std::string& text) {
  if (text == "correlation") return Space::correlation;
  if (text == "suspension") return Space::suspension;
  if (text == "cor") return Space::cor;
  if (text == "complete") return Space::complete;
  throw ValidationError("unknown space '" + text + "'");
}

// ---------------------------------------------------------------------------

int LinearInequality::dimension() const {
  if (space == Space::complete) {
    const int n = static_cast<int>(sides.size());
    return n * (n - 1) / 2;
  }
  return node_terms(space, rows, cols) + rows * cols;
}

void LinearInequality::validate() const {
  if (space == Space::complete) {
    if (sides.size() < 2) throw ValidationError("complete-graph inequality needs at least 2 nodes");
    for (char c : sides)
      if (c != 'A' && c != 'B') throw ValidationError("side labels must be 'A' or 'B'");
  } else if (rows < 0 || cols < 0) {
    throw ValidationError("negative shape");
  }
  if (static_cast<int>(a.size()) != dimension())
    throw ValidationError("expected " + std::to_string(dimension()) + " coefficients for " + to_string(space) +
                          " space, got " + std::to_string(a.size()));
}

const Rational& LinearInequality::at(int i, int j) const {
  if (!is_bipartite(space)) throw ValidationError("at(i,j) needs a bipartite space");
  if (i < 0 || i >= rows || j < 0 || j >= cols) throw ValidationError("coefficient index out of range");
  return a[static_cast<std::size_t>(node_terms(space, rows, cols) + i * cols + j)];
}

Rational& LinearInequality::at(int i, int j) {
  return const_cast<Rational&>(std::as_const(*this).at(i, j));
}

std::vector<RationalVector> LinearInequality::matrix() const {
  validate();
  if (space == Space::complete) {
    const CompleteShape shape(sides);
    const int n = shape.node_count();
    std::vector<RationalVector> m(static_cast<std::size_t>(n), RationalVector(static_cast<std::size_t>(n)));
    for (std::size_t e = 0; e < a.size(); ++e) {
      const auto [u, v] = shape.edge(e);
      m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = a[e];
    }
    return m;
  }
  const int off = space == Space::correlation ? 0 : 1;
  std::vector<RationalVector> m(static_cast<std::size_t>(rows + off),
                                RationalVector(static_cast<std::size_t>(cols + off)));
  if (off) {
    for (int i = 0; i < rows; ++i) m[static_cast<std::size_t>(i + 1)][0] = a[static_cast<std::size_t>(i)];
    for (int j = 0; j < cols; ++j) m[0][static_cast<std::size_t>(j + 1)] = a[static_cast<std::size_t>(rows + j)];
  }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[static_cast<std::size_t>(i + off)][static_cast<std::size_t>(j + off)] = at(i, j);
  return m;
}

LinearInequality LinearInequality::from_matrix(Space space, const std::vector<RationalVector>& m, Rational rhs,
                                               std::string sides) {
  LinearInequality out;
  out.space = space;
  out.rhs = std::move(rhs);
  const std::size_t width = m.empty() ? 0 : m.front().size();
  for (const auto& row : m)
    if (row.size() != width) throw ValidationError("ragged coefficient matrix");

  if (space == Space::complete) {
    if (sides.empty()) sides = std::string(m.size(), 'A');
    if (width != m.size() || sides.size() != m.size())
      throw ValidationError("complete-graph matrix must be N x N with N side labels");
    out.sides = std::move(sides);
    const CompleteShape shape(out.sides);
    out.a.resize(static_cast<std::size_t>(shape.edge_count()));
    for (std::size_t u = 0; u < m.size(); ++u) {
      if (m[u][u] != 0) throw ValidationError("complete-graph matrix has a nonzero diagonal");
      for (std::size_t v = 0; v < u; ++v)
        if (m[u][v] != 0 && m[u][v] != m[v][u])
          throw ValidationError("complete-graph matrix: lower triangle must be empty or mirror the upper one");
    }
    for (std::size_t e = 0; e < out.a.size(); ++e) {
      const auto [u, v] = shape.edge(e);
      out.a[e] = m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
    return out;
  }

  const int off = space == Space::correlation ? 0 : 1;
  if (m.size() < static_cast<std::size_t>(off) || width < static_cast<std::size_t>(off))
    throw ValidationError("matrix lacks the node-term row and column");
  out.rows = static_cast<int>(m.size()) - off;
  out.cols = width == 0 ? 0 : static_cast<int>(width) - off;
  if (off && m[0][0] != 0) throw ValidationError("entry (0,0) of a suspension/cor matrix must be 0");
  out.a.resize(static_cast<std::size_t>(out.dimension()));
  if (off) {
    for (int i = 0; i < out.rows; ++i) out.a[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i + 1)][0];
    for (int j = 0; j < out.cols; ++j)
      out.a[static_cast<std::size_t>(out.rows + j)] = m[0][static_cast<std::size_t>(j + 1)];
  }
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j)
      out.at(i, j) = m[static_cast<std::size_t>(i + off)][static_cast<std::size_t>(j + off)];
  return out;
}

LinearInequality LinearInequality::from_halfspace(Space space, int rows, int cols, const Halfspace& h) {
  if (space == Space::complete) throw ValidationError("use from_matrix for complete-graph inequalities");
  LinearInequality out{space, rows, cols, {}, h.a, h.rhs};
  out.validate();
  return out;
}

LinearInequality normalized(const LinearInequality& ineq) {
  ineq.validate();
  LinearInequality out = ineq;
  const Halfspace h = normalized(ineq.halfspace());
  out.a = h.a;
  out.rhs = h.rhs;
  return out;
}

VRep reference_vertices(const LinearInequality& ineq) {
  ineq.validate();
  switch (ineq.space) {
    case Space::correlation: return cut_vectors(BipartiteShape(ineq.rows, ineq.cols));
    case Space::suspension: return cut_vectors(SuspensionShape(ineq.rows, ineq.cols));
    case Space::cor: return cor_vertices(BipartiteShape(ineq.rows, ineq.cols));
    case Space::complete: return cut_vectors(CompleteShape(ineq.sides));
  }
  throw ValidationError("unknown space");
}

// p_A = (1 - x_XA)/2,  p_AB = (1 - x_XA - x_XB + x_AB)/4
LinearInequality cor_to_suspension(const LinearInequality& ineq) {
  ineq.validate();
  if (ineq.space != Space::cor) throw ValidationError("cor_to_suspension needs a cor-space inequality");
  const int m = ineq.rows, n = ineq.cols;
  LinearInequality out{Space::suspension, m, n, {}, RationalVector(ineq.a.size()), ineq.rhs};
  for (int k = 0; k < m + n; ++k) {
    const Rational& alpha = ineq.a[static_cast<std::size_t>(k)];
    out.a[static_cast<std::size_t>(k)] -= alpha / 2;
    out.rhs -= alpha / 2;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational beta = ineq.at(i, j) / 4;
      out.a[static_cast<std::size_t>(i)] -= beta;
      out.a[static_cast<std::size_t>(m + j)] -= beta;
      out.at(i, j) = beta;
      out.rhs -= beta;
    }
  return normalized(out);
}

// x_XA = 1 - 2 p_A,  x_AB = 1 - 2 p_A - 2 p_B + 4 p_AB
LinearInequality suspension_to_cor(const LinearInequality& ineq) {
  ineq.validate();
  if (ineq.space != Space::suspension) throw ValidationError("suspension_to_cor needs a suspension-space inequality");
  const int m = ineq.rows, n = ineq.cols;
  LinearInequality out{Space::cor, m, n, {}, RationalVector(ineq.a.size()), ineq.rhs};
  for (int k = 0; k < m + n; ++k) {
    const Rational& gamma = ineq.a[static_cast<std::size_t>(k)];
    out.a[static_cast<std::size_t>(k)] -= 2 * gamma;
    out.rhs -= gamma;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& delta = ineq.at(i, j);
      out.a[static_cast<std::size_t>(i)] -= 2 * delta;
      out.a[static_cast<std::size_t>(m + j)] -= 2 * delta;
      out.at(i, j) = 4 * delta;
      out.rhs -= delta;
    }
  return normalized(out);
}

// ---------------------------------------------------------------------------
// Families

LinearInequality family_trivial(int m, int n, int i, int j, int sign) {
  const BipartiteShape shape(m, n);
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  LinearInequality out{Space::correlation, m, n, {}, RationalVector(static_cast<std::size_t>(m * n)), 1};
  out.a[shape.edge_index(Node::alice(i), Node::bob(j))] = sign;
  return out;
}

LinearInequality family_cycle(int m, int n, const std::vector<Node>& cycle, const std::vector<Edge>& negated) {
  const BipartiteShape shape(m, n);
  const std::size_t len = cycle.size();
  if (len < 4 || len % 2 != 0) throw ValidationError("a cycle of K_{m,n} has even length at least 4");
  for (std::size_t k = 0; k < len; ++k) {
    if (cycle[k].side == Side::root) throw ValidationError("cycle contains the root node");
    for (std::size_t l = 0; l < k; ++l)
      if (cycle[k] == cycle[l]) throw ValidationError("cycle repeats node " + to_string(cycle[k]));
  }
  std::vector<std::size_t> edges;
  for (std::size_t k = 0; k < len; ++k) {
    const Node& u = cycle[k];
    const Node& v = cycle[(k + 1) % len];
    if (u.side == v.side) throw ValidationError("cycle is not alternating: " + to_string(u) + to_string(v) + " is not an edge");
    edges.push_back(shape.edge_index(u, v));
  }
  std::vector<std::size_t> neg;
  for (const auto& [u, v] : negated) {
    const std::size_t e = shape.edge_index(u, v);
    if (std::find(edges.begin(), edges.end(), e) == edges.end())
      throw ValidationError("edge " + to_string(u) + to_string(v) + " is not on the cycle");
    if (std::find(neg.begin(), neg.end(), e) != neg.end()) throw ValidationError("negated edge listed twice");
    neg.push_back(e);
  }
  if (neg.size() % 2 == 0) throw ValidationError("the negated edge set must have odd size");
  LinearInequality out{Space::correlation, m, n, {}, RationalVector(static_cast<std::size_t>(m * n)),
                       static_cast<long>(len) - 2};
  for (std::size_t e : edges) out.a[e] = 1;
  for (std::size_t e : neg) out.a[e] = -1;
  return out;
}

namespace {

void check_weights(const HypermetricWeights& b) {
  const long long total = std::accumulate(b.alice.begin(), b.alice.end(), 0LL) +
                          std::accumulate(b.bob.begin(), b.bob.end(), 0LL);
  if (total != 1) throw ValidationError("hypermetric weights must sum to 1 (got " + std::to_string(total) + ")");
}

}  // namespace

LinearInequality family_hypermetric(const HypermetricWeights& b) {
  check_weights(b);
  const int s = static_cast<int>(b.alice.size());
  const int t = static_cast<int>(b.bob.size());
  const int rows = s + t * (t - 1) / 2;
  const int cols = t + s * (s - 1) / 2;
  LinearInequality out{Space::correlation, rows, cols, {}, RationalVector(static_cast<std::size_t>(rows * cols)), 0};
  Integer rhs = 0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) {
      const Integer p = Integer(b.alice[static_cast<std::size_t>(i)]) * b.bob[static_cast<std::size_t>(j)];
      out.at(i, j) = Rational(-p);
      rhs -= p;
    }
  int col = t;
  for (int i = 0; i < s; ++i)
    for (int k = i + 1; k < s; ++k, ++col) {
      const Integer p = Integer(b.alice[static_cast<std::size_t>(i)]) * b.alice[static_cast<std::size_t>(k)];
      out.at(i, col) = Rational(-p);
      out.at(k, col) = Rational(abs(p));
      if (p < 0) rhs -= 2 * p;
    }
  int row = s;
  for (int j = 0; j < t; ++j)
    for (int k = j + 1; k < t; ++k, ++row) {
      const Integer p = Integer(b.bob[static_cast<std::size_t>(j)]) * b.bob[static_cast<std::size_t>(k)];
      out.at(row, j) = Rational(-p);
      out.at(row, k) = Rational(abs(p));
      if (p < 0) rhs -= 2 * p;
    }
  out.rhs = Rational(rhs);
  return normalized(out);
}

LinearInequality hypermetric_complete(const HypermetricWeights& b) {
  check_weights(b);
  std::vector<long long> w = b.alice;
  w.insert(w.end(), b.bob.begin(), b.bob.end());
  const std::string sides = std::string(b.alice.size(), 'A') + std::string(b.bob.size(), 'B');
  const CompleteShape shape(sides);
  LinearInequality out{Space::complete, 0, 0, sides, RationalVector(static_cast<std::size_t>(shape.edge_count())), 0};
  Integer squares = 0;
  for (long long x : w) squares += Integer(x) * x;
  for (std::size_t e = 0; e < out.a.size(); ++e) {
    const auto [u, v] = shape.edge(e);
    out.a[e] = Rational(-(Integer(w[static_cast<std::size_t>(u)]) * w[static_cast<std::size_t>(v)]));
  }
  out.rhs = Rational(squares - 1, 2);
  return normalized(out);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

using Matrix = std::vector<RationalVector>;

struct CatalogItem {
  const char* name;
  LinearInequality (*make)();
};

LinearInequality corr(const Matrix& m, long rhs) { return LinearInequality::from_matrix(Space::correlation, m, rhs); }

const CatalogItem kCatalog[] = {
    {"chsh", [] { return corr({{1, 1}, {1, -1}}, 2); }},
    {"chsh-cor",
     [] {
       return LinearInequality::from_matrix(Space::cor, {{0, -1, 0}, {-1, 1, 1}, {0, 1, -1}}, 0);
     }},
    {"gisin-4a", [] { return corr({{-2, 2, 1, 1}, {1, 2, -2, -1}, {1, 1, 2, -2}, {2, 1, 1, 2}}, 10); }},
    {"gisin-4b", [] { return corr({{2, 1, 1, 0}, {1, -1, -1, -1}, {1, -1, -1, 1}, {0, -1, 1, 0}}, 2); }},
    {"i3322",
     [] {
       return LinearInequality::from_matrix(Space::suspension,
                                            {{0, 1, 1, 0}, {-1, 1, 1, 1}, {-1, 1, 1, -1}, {0, 1, -1, 0}}, 4);
     }},
    {"pentagonal",
     [] {
       return LinearInequality::from_matrix(Space::complete,
                                            {{0, -1, -1, 1, 1},
                                             {0, 0, -1, 1, 1},
                                             {0, 0, 0, 1, 1},
                                             {0, 0, 0, 0, -1},
                                             {0, 0, 0, 0, 0}},
                                            2, "AAABB");
     }},
    {"pentagonal-trielim",
     [] { return corr({{1, 1, -1, -1, 0}, {1, 1, 1, 0, -1}, {1, 1, 0, 1, 1}, {-1, 1, 0, 0, 0}}, 6); }},
    {"appendix-45-1",
     [] { return corr({{1, 0, 0, 0, 1}, {1, 1, 1, 0, -1}, {1, 0, -1, 1, -1}, {-1, 1, 0, 1, 1}}, 6); }},
    {"appendix-45-2",
     [] { return corr({{2, 1, 1, 1, 1}, {0, 1, -1, 1, -1}, {0, -1, 1, 1, -1}, {-2, 1, 1, 1, 1}}, 8); }},
    {"appendix-45-3",
     [] { return corr({{2, 1, 1, 1, 1}, {-1, 1, 2, 1, -1}, {-1, 2, 1, -1, 1}, {0, 2, -2, 1, -1}}, 10); }},
    {"appendix-45-4",
     [] { return corr({{1, 2, 1, 1, -1}, {0, 2, -1, -1, 2}, {1, -1, 1, -2, 1}, {0, -1, 1, 2, 2}}, 10); }},
};

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& item : kCatalog) out.emplace_back(item.name);
  return out;
}

LinearInequality catalog_entry(const std::string& name) {
  for (const auto& item : kCatalog)
    if (name == item.name) return item.make();
  std::string known;
  for (const auto& item : kCatalog) known += std::string(known.empty() ? "" : ", ") + item.name;
  throw ValidationError("unknown catalog entry '" + name + "' (known: " + known + ")");
}

// ---------------------------------------------------------------------------
// Symmetry

namespace {

void check_permutation(const std::vector<int>& p, int n, const char* what) {
  if (static_cast<int>(p.size()) != n) throw ValidationError(std::string(what) + " has the wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n));
  for (int x : p) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) throw ValidationError(std::string(what) + " is not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

void check_signs(const std::vector<int>& s, int n, const char* what) {
  if (static_cast<int>(s.size()) != n) throw ValidationError(std::string(what) + " has the wrong length");
  for (int x : s)
    if (x != 1 && x != -1) throw ValidationError(std::string(what) + " must be +1 or -1");
}

}  // namespace

LinearInequality apply(const SymmetryElement& g, const LinearInequality& ineq) {
  require_correlation(ineq, "a symmetry element");
  ineq.validate();
  if (g.transpose && ineq.rows != ineq.cols) throw ValidationError("party exchange needs a square matrix");
  const int m = ineq.rows, n = ineq.cols;
  check_permutation(g.row_perm, m, "row permutation");
  check_permutation(g.col_perm, n, "column permutation");
  check_signs(g.row_signs, m, "row signs");
  check_signs(g.col_signs, n, "column signs");
  LinearInequality out = ineq;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const int r = g.row_perm[static_cast<std::size_t>(i)];
      const int c = g.col_perm[static_cast<std::size_t>(j)];
      out.at(i, j) = g.row_signs[static_cast<std::size_t>(i)] * g.col_signs[static_cast<std::size_t>(j)] *
                     (g.transpose ? ineq.at(c, r) : ineq.at(r, c));
    }
  return out;
}

SymmetryElement random_symmetry(int rows, int cols, std::mt19937_64& rng) {
  SymmetryElement g;
  g.row_perm.resize(static_cast<std::size_t>(rows));
  g.col_perm.resize(static_cast<std::size_t>(cols));
  std::iota(g.row_perm.begin(), g.row_perm.end(), 0);
  std::iota(g.col_perm.begin(), g.col_perm.end(), 0);
  std::shuffle(g.row_perm.begin(), g.row_perm.end(), rng);
  std::shuffle(g.col_perm.begin(), g.col_perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < rows; ++i) g.row_signs.push_back(coin(rng) ? 1 : -1);
  for (int j = 0; j < cols; ++j) g.col_signs.push_back(coin(rng) ? 1 : -1);
  g.transpose = rows == cols && coin(rng);
  return g;
}

LinearInequality apply(const CompleteSymmetry& g, const LinearInequality& ineq) {
  ineq.validate();
  if (ineq.space != Space::complete) throw ValidationError("a complete-graph symmetry needs a complete-graph inequality");
  const CompleteShape shape(ineq.sides);
  const int n = shape.node_count();
  check_permutation(g.perm, n, "node permutation");
  check_signs(g.signs, n, "switching signs");
  LinearInequality out = ineq;
  for (std::size_t e = 0; e < out.a.size(); ++e) {
    const auto [u, v] = shape.edge(e);
    const int pu = g.perm[static_cast<std::size_t>(u)], pv = g.perm[static_cast<std::size_t>(v)];
    out.a[e] = g.signs[static_cast<std::size_t>(u)] * g.signs[static_cast<std::size_t>(v)] *
               ineq.a[shape.edge_index(std::min(pu, pv), std::max(pu, pv))];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

using Flat = std::vector<long long>;

Integer bipartite_group_size(int m, int n) {
  Integer g = factorial(m) * factorial(n) * (Integer(1) << (m + n));
  if (m == n) g *= 2;
  return g;
}

Flat transposed(const Flat& a, int m, int n) {
  Flat t(a.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j * m + i)] = a[static_cast<std::size_t>(i * n + j)];
  return t;
}

// Row operations shared by both searches: calls visit(B) for each transpose,
// row permutation and row sign vector, B being the m x n row-transformed matrix.
template <class Visit>
void for_each_row_image(const Flat& a, int m, int n, Visit&& visit) {
  std::vector<Flat> bases{a};
  if (m == n) bases.push_back(transposed(a, m, n));
  Flat b(a.size());
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (const Flat& base : bases) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1U << m); ++mask) {
        for (int i = 0; i < m; ++i) {
          const long long s = (mask >> i) & 1U ? -1 : 1;
          const std::size_t src = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] * n);
          for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i * n + j)] = s * base[src + static_cast<std::size_t>(j)];
        }
        visit(b);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

struct Search {
  Flat best;
  Integer stabilizer = 0;
};

Search exhaustive_bipartite(const Flat& a, int m, int n) {
  Search s;
  s.best = a;
  Flat c(a.size());
  std::vector<int> cperm(static_cast<std::size_t>(n));
  for_each_row_image(a, m, n, [&](const Flat& b) {
    std::iota(cperm.begin(), cperm.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1U << n); ++mask) {
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) {
            const long long sg = (mask >> j) & 1U ? -1 : 1;
            c[static_cast<std::size_t>(i * n + j)] = sg * b[static_cast<std::size_t>(i * n + cperm[static_cast<std::size_t>(j)])];
          }
        if (c < s.best) s.best = c;
        if (c == a) ++s.stabilizer;
      }
    } while (std::next_permutation(cperm.begin(), cperm.end()));
  });
  return s;
}

// Columns sign-normalized (first nonzero entry negative) and sorted as
// column vectors. Also returns the number of column operations fixing it.
Flat column_normal_form(const Flat& b, int m, int n, Integer* fixing) {
  std::vector<Flat> columns(static_cast<std::size_t>(n), Flat(static_cast<std::size_t>(m)));
  int zero_columns = 0;
  for (int j = 0; j < n; ++j) {
    Flat& col = columns[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) col[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i * n + j)];
    const auto first = std::find_if(col.begin(), col.end(), [](long long x) { return x != 0; });
    if (first == col.end())
      ++zero_columns;
    else if (*first > 0)
      for (auto& x : col) x = -x;
  }
  std::sort(columns.begin(), columns.end());
  if (fixing) {
    *fixing = Integer(1) << zero_columns;
    for (std::size_t j = 0; j < columns.size();) {
      std::size_t k = j;
      while (k < columns.size() && columns[k] == columns[j]) ++k;
      *fixing *= factorial(static_cast<int>(k - j));
      j = k;
    }
  }
  Flat out(b.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i * n + j)] = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return out;
}

Search pruned_bipartite(const Flat& a, int m, int n) {
  Search s;
  Integer fixing;
  const Flat target = column_normal_form(a, m, n, &fixing);
  s.best = target;
  for_each_row_image(a, m, n, [&](const Flat& b) {
    const Flat c = column_normal_form(b, m, n, nullptr);
    if (c < s.best) s.best = c;
    if (c == target) s.stabilizer += fixing;
  });
  return s;
}

Search exhaustive_complete(const Flat& a, const CompleteShape& shape) {
  const int n = shape.node_count();
  Search s;
  s.best = a;
  Flat c(a.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      for (std::size_t e = 0; e < a.size(); ++e) {
        const auto [u, v] = shape.edge(e);
        const int pu = perm[static_cast<std::size_t>(u)], pv = perm[static_cast<std::size_t>(v)];
        const long long sg = (((mask >> u) ^ (mask >> v)) & 1U) ? -1 : 1;
        c[e] = sg * a[shape.edge_index(std::min(pu, pv), std::max(pu, pv))];
      }
      if (c < s.best) s.best = c;
      if (c == a) ++s.stabilizer;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

}  // namespace

CanonicalResult canonicalize(const LinearInequality& ineq, const CanonicalOptions& options) {
  const LinearInequality base = normalized(ineq);
  const Flat a = to_small_integers(base.a);
  CanonicalResult out;
  out.form = base;
  Search search;

  if (base.space == Space::complete) {
    const CompleteShape shape(base.sides);
    const int n = shape.node_count();
    out.group_size = factorial(n) * (Integer(1) << n);
    if (n > 20 || out.group_size > options.max_group)
      throw GuardError("symmetry group of K_" + std::to_string(n) + " has " + out.group_size.str() +
                       " elements, above the limit of " + std::to_string(options.max_group));
    search = exhaustive_complete(a, shape);
    out.form.sides = std::string(static_cast<std::size_t>(n), 'A');
  } else {
    require_correlation(base, "canonical_form");
    const int m = base.rows, n = base.cols;
    out.group_size = bipartite_group_size(m, n);
    if (m > 20 || n > 20) throw GuardError("canonical form supports at most 20 rows and columns");
    if (options.pruned) {
      const Integer row_part = factorial(m) * (Integer(1) << m) * (m == n ? 2 : 1);
      if (row_part > options.max_group)
        throw GuardError("pruned canonical search needs " + row_part.str() + " row images, above the limit of " +
                         std::to_string(options.max_group));
      search = pruned_bipartite(a, m, n);
    } else {
      if (out.group_size > options.max_group)
        throw GuardError("symmetry group of K_{" + std::to_string(m) + "," + std::to_string(n) + "} has " +
                         out.group_size.str() + " elements, above the limit of " +
                         std::to_string(options.max_group) + "; use the pruned search");
      search = exhaustive_bipartite(a, m, n);
    }
  }
  out.form.a = to_rationals(search.best);
  out.orbit_size = out.group_size / search.stabilizer;
  return out;
}

std::vector<EquivalenceClass> classify(const std::vector<LinearInequality>& ineqs, const CanonicalOptions& options) {
  std::vector<EquivalenceClass> out;
  if (ineqs.empty()) return out;
  const auto& first = ineqs.front();
  std::map<std::pair<RationalVector, Rational>, std::size_t> index;
  for (std::size_t k = 0; k < ineqs.size(); ++k) {
    const auto& q = ineqs[k];
    const bool same = q.space == first.space &&
                      (q.space == Space::complete ? q.sides.size() == first.sides.size()
                                                  : q.rows == first.rows && q.cols == first.cols);
    if (!same) throw ValidationError("classify needs inequalities of one shape (entry " + std::to_string(k) + " differs)");
    auto c = canonicalize(q, options);
    auto key = std::make_pair(c.form.a, c.form.rhs);
    auto [it, inserted] = index.emplace(std::move(key), out.size());
    if (inserted) out.push_back({std::move(c.form), std::move(c.orbit_size), {}});
    out[it->second].members.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting and elimination

LinearInequality zero_lift(const LinearInequality& ineq, int rows, int cols) {
  ineq.validate();
  if (!is_bipartite(ineq.space)) throw ValidationError("zero_lift needs a bipartite space");
  if (rows < ineq.rows || cols < ineq.cols)
    throw ValidationError("zero_lift cannot shrink K_{" + std::to_string(ineq.rows) + "," + std::to_string(ineq.cols) +
                          "} to K_{" + std::to_string(rows) + "," + std::to_string(cols) + "}");
  const int off = ineq.space == Space::correlation ? 0 : 1;
  auto m = ineq.matrix();
  m.resize(static_cast<std::size_t>(rows + off), RationalVector(static_cast<std::size_t>(ineq.cols + off)));
  for (auto& row : m) row.resize(static_cast<std::size_t>(cols + off));
  return LinearInequality::from_matrix(ineq.space, m, ineq.rhs);
}

TrielimResult triangular_eliminate(const LinearInequality& ineq) {
  ineq.validate();
  TrielimResult out;
  if (ineq.space == Space::correlation) {
    out.result = ineq;
    out.unchanged = true;
    for (int i = 0; i < ineq.rows; ++i) out.row_labels.push_back("A" + std::to_string(i + 1));
    for (int j = 0; j < ineq.cols; ++j) out.col_labels.push_back("B" + std::to_string(j + 1));
    return out;
  }
  if (ineq.space != Space::complete)
    throw ValidationError("triangular elimination takes a complete-graph or correlation inequality");

  const CompleteShape shape(ineq.sides);
  out.sides = ineq.sides;
  std::vector<int> alice, bob;  // node ids by side
  for (int u = 0; u < shape.node_count(); ++u) (ineq.sides[static_cast<std::size_t>(u)] == 'A' ? alice : bob).push_back(u);
  const int s = static_cast<int>(alice.size()), t = static_cast<int>(bob.size());
  const auto coef = [&](int u, int v) -> const Rational& {
    return ineq.a[shape.edge_index(std::min(u, v), std::max(u, v))];
  };

  for (int i = 0; i < s; ++i)
    for (int k = i + 1; k < s; ++k)
      if (coef(alice[static_cast<std::size_t>(i)], alice[static_cast<std::size_t>(k)]) != 0) out.col_pairs.emplace_back(i, k);
  for (int j = 0; j < t; ++j)
    for (int k = j + 1; k < t; ++k)
      if (coef(bob[static_cast<std::size_t>(j)], bob[static_cast<std::size_t>(k)]) != 0) out.row_pairs.emplace_back(j, k);
  out.unchanged = out.col_pairs.empty() && out.row_pairs.empty();

  const int rows = s + static_cast<int>(out.row_pairs.size());
  const int cols = t + static_cast<int>(out.col_pairs.size());
  LinearInequality& r = out.result;
  r = {Space::correlation, rows, cols, {}, RationalVector(static_cast<std::size_t>(rows * cols)), ineq.rhs};
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) r.at(i, j) = coef(alice[static_cast<std::size_t>(i)], bob[static_cast<std::size_t>(j)]);
  for (std::size_t k = 0; k < out.col_pairs.size(); ++k) {
    const auto [i, i2] = out.col_pairs[k];
    const Rational& c = coef(alice[static_cast<std::size_t>(i)], alice[static_cast<std::size_t>(i2)]);
    const int col = t + static_cast<int>(k);
    r.at(i, col) = c;
    r.at(i2, col) = abs(c);
    r.rhs += abs(c);
  }
  for (std::size_t k = 0; k < out.row_pairs.size(); ++k) {
    const auto [j, j2] = out.row_pairs[k];
    const Rational& c = coef(bob[static_cast<std::size_t>(j)], bob[static_cast<std::size_t>(j2)]);
    const int row = s + static_cast<int>(k);
    r.at(row, j) = c;
    r.at(row, j2) = abs(c);
    r.rhs += abs(c);
  }

  for (int i = 0; i < s; ++i) out.row_labels.push_back("A" + std::to_string(i + 1));
  for (const auto& [j, j2] : out.row_pairs) out.row_labels.push_back(pair_label('A', j, j2));
  for (int j = 0; j < t; ++j) out.col_labels.push_back("B" + std::to_string(j + 1));
  for (const auto& [i, i2] : out.col_pairs) out.col_labels.push_back(pair_label('B', i, i2));
  return out;
}

LinearInequality restrict_to_original(const TrielimResult& r) {
  if (r.sides.empty()) return r.result;
  const CompleteShape shape(r.sides);
  std::vector<int> alice, bob;
  for (int u = 0; u < shape.node_count(); ++u) (r.sides[static_cast<std::size_t>(u)] == 'A' ? alice : bob).push_back(u);
  const int s = static_cast<int>(alice.size()), t = static_cast<int>(bob.size());
  LinearInequality out{Space::complete, 0, 0, r.sides, RationalVector(static_cast<std::size_t>(shape.edge_count())),
                       r.result.rhs};
  const auto set = [&](int u, int v, const Rational& c) { out.a[shape.edge_index(std::min(u, v), std::max(u, v))] = c; };
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) set(alice[static_cast<std::size_t>(i)], bob[static_cast<std::size_t>(j)], r.result.at(i, j));
  for (std::size_t k = 0; k < r.col_pairs.size(); ++k) {
    const auto [i, i2] = r.col_pairs[k];
    const Rational c = r.result.at(i, t + static_cast<int>(k));
    set(alice[static_cast<std::size_t>(i)], alice[static_cast<std::size_t>(i2)], c);
    out.rhs -= abs(c);
  }
  for (std::size_t k = 0; k < r.row_pairs.size(); ++k) {
    const auto [j, j2] = r.row_pairs[k];
    const Rational c = r.result.at(s + static_cast<int>(k), j);
    set(bob[static_cast<std::size_t>(j)], bob[static_cast<std::size_t>(j2)], c);
    out.rhs -= abs(c);
  }
  return out;
}

}  // namespace bellcut
