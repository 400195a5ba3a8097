#include "bellcut/polyhedra.hpp"

#include "bellcut/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace bellcut {

using IntegerVector = std::vector<Integer>;

namespace {

std::string dims(std::size_t a, std::size_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

/// Positive multiple of `v` with coprime integer entries.
IntegerVector to_integer_row(const RationalVector& v) {
  const Rational s = integer_scaling(v);
  IntegerVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(boost::multiprecision::numerator(Rational(x * s)));
  return out;
}

void reduce_by_gcd(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (!x.is_zero()) g = boost::multiprecision::gcd(g, abs(x));
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : v) x /= g;
}

Integer int_dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool halfspace_less(const Halfspace& x, const Halfspace& y) {
  if (x.a != y.a) return lex_less(x.a, y.a);
  return x.rhs < y.rhs;
}

// Incremental row echelon basis over the integers (fraction-free, gcd-reduced).
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t width) : width_(width) {}

  /// Adds `row` if it is independent of the rows so far. Returns whether it was.
  bool insert(IntegerVector row) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (row[c].is_zero()) continue;
      const Integer f = row[c];
      const Integer p = basis_[k][c];
      for (std::size_t t = 0; t < width_; ++t) row[t] = row[t] * p - basis_[k][t] * f;
      reduce_by_gcd(row);
    }
    for (std::size_t c = 0; c < width_; ++c) {
      if (!row[c].is_zero()) {
        basis_.push_back(std::move(row));
        pivots_.push_back(c);
        return true;
      }
    }
    return false;
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  std::size_t width_;
  std::vector<IntegerVector> basis_;
  std::vector<std::size_t> pivots_;
};

// Same elimination modulo the Mersenne prime 2^61 - 1. The rank it reports is
// a lower bound on the rank over the rationals.
class ModularEchelon {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  explicit ModularEchelon(std::size_t width) : width_(width) {}

  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
  static std::uint64_t inverse(std::uint64_t a) {
    std::uint64_t result = 1;
    std::uint64_t e = kPrime - 2;
    while (e) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }
  static std::uint64_t reduce(const Integer& x) {
    if (x >= 0 && x < kPrime) return x.convert_to<std::uint64_t>();
    Integer r = x % Integer(kPrime);
    if (r < 0) r += kPrime;
    return r.convert_to<std::uint64_t>();
  }

  bool insert(std::vector<std::uint64_t> row) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (row[c] == 0) continue;
      const std::uint64_t f = row[c];  // basis rows are scaled to pivot 1
      for (std::size_t t = c; t < width_; ++t)
        if (basis_[k][t]) row[t] = sub(row[t], mul(f, basis_[k][t]));
    }
    for (std::size_t c = 0; c < width_; ++c) {
      if (row[c] != 0) {
        const std::uint64_t inv = inverse(row[c]);
        for (std::size_t t = c; t < width_; ++t) row[t] = mul(row[t], inv);
        basis_.push_back(std::move(row));
        pivots_.push_back(c);
        return true;
      }
    }
    return false;
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  std::size_t width_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Rank of integer rows; uses the modular lower bound when it is already maximal.
std::size_t integer_rank(const std::vector<IntegerVector>& rows, std::size_t width) {
  if (rows.empty()) return 0;
  const std::size_t cap = std::min(rows.size(), width);
  ModularEchelon mod(width);
  for (const auto& r : rows) {
    std::vector<std::uint64_t> rr(width);
    for (std::size_t t = 0; t < width; ++t) rr[t] = ModularEchelon::reduce(r[t]);
    mod.insert(std::move(rr));
    if (mod.rank() == cap) return cap;
  }
  IntegerEchelon exact(width);
  for (const auto& r : rows) {
    exact.insert(r);
    if (exact.rank() == cap) break;
  }
  return exact.rank();
}

std::vector<IntegerVector> homogenized_rows(const std::vector<RationalVector>& points) {
  std::vector<IntegerVector> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    RationalVector r = p;
    r.push_back(1);
    rows.push_back(to_integer_row(r));
  }
  return rows;
}

// Exact Gauss-Jordan on rationals: returns a basis of {y : M y = 0}.
std::vector<RationalVector> null_space(std::vector<RationalVector> mat, std::size_t width) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < width && row < mat.size(); ++c) {
    std::size_t pr = row;
    while (pr < mat.size() && mat[pr][c].is_zero()) ++pr;
    if (pr == mat.size()) continue;
    std::swap(mat[row], mat[pr]);
    const Rational inv = 1 / mat[row][c];
    for (auto& x : mat[row]) x *= inv;
    for (std::size_t r = 0; r < mat.size(); ++r) {
      if (r == row || mat[r][c].is_zero()) continue;
      const Rational f = mat[r][c];
      for (std::size_t t = 0; t < width; ++t) mat[r][t] -= f * mat[row][t];
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    RationalVector y(width, Rational(0));
    y[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) y[pivot_cols[k]] = -mat[k][free];
    basis.push_back(std::move(y));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Double description: extreme rays of the pointed cone {y : R y >= 0}.

struct Ray {
  IntegerVector v;
  boost::dynamic_bitset<> zeros;
};

std::vector<IntegerVector> extreme_rays(const std::vector<IntegerVector>& rows, std::size_t dim) {
  const std::size_t count = rows.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto nonzeros = [&](std::size_t k) {
    return std::count_if(rows[k].begin(), rows[k].end(), [](const Integer& x) { return !x.is_zero(); });
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto na = nonzeros(a);
    const auto nb = nonzeros(b);
    if (na != nb) return na < nb;
    return std::lexicographical_compare(rows[a].begin(), rows[a].end(), rows[b].begin(), rows[b].end());
  });

  // Initial simplicial cone from the first `dim` independent rows in order.
  std::vector<std::size_t> initial;
  {
    IntegerEchelon ech(dim);
    for (std::size_t k : order) {
      if (ech.insert(rows[k])) initial.push_back(k);
      if (initial.size() == dim) break;
    }
  }
  if (initial.size() < dim) throw ValidationError("cone is not pointed (constraint matrix is rank deficient)");

  // Rays of the initial cone are the columns of the inverse of its rows.
  std::vector<RationalVector> aug(dim, RationalVector(2 * dim, Rational(0)));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) aug[r][c] = Rational(rows[initial[r]][c]);
    aug[r][dim + r] = 1;
  }
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t pr = c;
    while (aug[pr][c].is_zero()) ++pr;
    std::swap(aug[c], aug[pr]);
    const Rational inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == c || aug[r][c].is_zero()) continue;
      const Rational f = aug[r][c];
      for (std::size_t t = 0; t < 2 * dim; ++t) aug[r][t] -= f * aug[c][t];
    }
  }

  boost::dynamic_bitset<> processed(count);
  for (std::size_t k : initial) processed.set(k);

  std::vector<Ray> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    RationalVector col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = aug[r][dim + k];
    Ray ray{to_integer_row(col), boost::dynamic_bitset<>(count)};
    for (std::size_t t = 0; t < dim; ++t)
      if (t != k) ray.zeros.set(initial[t]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t k : order) {
    if (processed.test(k)) continue;
    const IntegerVector& row = rows[k];
    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = int_dot(row, rays[r].v);
      const int s = value[r].sign();
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    processed.set(k);
    if (neg.empty()) {
      for (std::size_t r : zero) rays[r].zeros.set(k);
      continue;
    }

    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size());
    for (std::size_t r : pos) next.push_back(rays[r]);
    for (std::size_t r : zero) {
      next.push_back(rays[r]);
      next.back().zeros.set(k);
    }

    // Candidates for adjacency must share dim-2 tight constraints.
    const std::size_t need = dim >= 2 ? dim - 2 : 0;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        boost::dynamic_bitset<> common = rays[p].zeros & rays[n].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t q = 0; q < rays.size() && adjacent; ++q) {
          if (q == p || q == n) continue;
          if (common.is_subset_of(rays[q].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntegerVector v(dim);
        for (std::size_t t = 0; t < dim; ++t) v[t] = value[p] * rays[n].v[t] - value[n] * rays[p].v[t];
        reduce_by_gcd(v);
        common.set(k);
        next.push_back(Ray{std::move(v), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<IntegerVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

void check_guard(int dimension, std::size_t inputs, const DDOptions& options) {
  if (options.force) return;
  if (dimension > options.max_dimension)
    throw GuardError("double description guard: dimension " + std::to_string(dimension) + " exceeds " +
                     std::to_string(options.max_dimension) + " (use force to override)");
  if (inputs > options.max_inputs)
    throw GuardError("double description guard: " + std::to_string(inputs) + " inputs exceed " +
                     std::to_string(options.max_inputs) + " (use force to override)");
}

}  // namespace

// ---------------------------------------------------------------------------

Halfspace normalized(const Halfspace& h) {
  RationalVector all = h.a;
  all.push_back(h.rhs);
  const Rational s = integer_scaling(all);
  Halfspace out{h.a, h.rhs * s};
  for (auto& x : out.a) x *= s;
  return out;
}

Halfspace normalized_equation(const Halfspace& h) {
  Halfspace out = normalized(h);
  auto first = std::find_if(out.a.begin(), out.a.end(), [](const Rational& x) { return !x.is_zero(); });
  if (first != out.a.end() && *first < 0) {
    for (auto& x : out.a) x = -x;
    out.rhs = -out.rhs;
  }
  return out;
}

void VRep::validate() const {
  if (dimension < 0) throw ValidationError("negative dimension");
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != dimension)
      throw ValidationError("vertex dimension mismatch: " + dims(v.size(), static_cast<std::size_t>(dimension)));
}

void HRep::validate() const {
  for (const auto* list : {&inequalities, &equations}) {
    for (const auto& h : *list) {
      if (static_cast<int>(h.a.size()) != dimension)
        throw ValidationError("constraint dimension mismatch: " + dims(h.a.size(), static_cast<std::size_t>(dimension)));
    }
  }
  for (const auto& h : inequalities)
    if (std::all_of(h.a.begin(), h.a.end(), [](const Rational& x) { return x.is_zero(); }))
      throw ValidationError("inequality with all-zero coefficients");
}

bool HRep::contains(const RationalVector& x) const {
  for (const auto& h : inequalities)
    if (dot(h.a, x) > h.rhs) return false;
  for (const auto& h : equations)
    if (dot(h.a, x) != h.rhs) return false;
  return true;
}

std::vector<int> cut_signs(int nodes, std::size_t k) {
  std::vector<int> c(static_cast<std::size_t>(nodes), 1);
  for (int t = 1; t < nodes; ++t)
    if ((k >> (t - 1)) & 1U) c[static_cast<std::size_t>(t)] = -1;
  return c;
}

namespace {

void guard_nodes(int nodes) {
  if (nodes > kMaxEnumerationNodes)
    throw GuardError("too large to enumerate: " + std::to_string(nodes) + " nodes (limit " +
                     std::to_string(kMaxEnumerationNodes) + ")");
}

template <class EdgeFn>
VRep cuts_from_edges(int nodes, int edges, EdgeFn endpoints) {
  guard_nodes(nodes);
  VRep out{edges, {}};
  const std::size_t total = std::size_t{1} << (nodes - 1);
  out.vertices.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    const auto c = cut_signs(nodes, k);
    RationalVector x(static_cast<std::size_t>(edges));
    for (int e = 0; e < edges; ++e) {
      const auto [u, v] = endpoints(static_cast<std::size_t>(e));
      x[static_cast<std::size_t>(e)] = c[static_cast<std::size_t>(u)] * c[static_cast<std::size_t>(v)];
    }
    out.vertices.push_back(std::move(x));
  }
  return out;
}

}  // namespace

VRep cut_vectors(const BipartiteShape& shape) {
  return cuts_from_edges(shape.node_count(), shape.edge_count(), [&](std::size_t e) {
    const auto [u, v] = shape.edge(e);
    return std::pair{shape.node_position(u), shape.node_position(v)};
  });
}

VRep cut_vectors(const SuspensionShape& shape) {
  return cuts_from_edges(shape.node_count(), shape.edge_count(), [&](std::size_t e) {
    const auto [u, v] = shape.edge(e);
    return std::pair{shape.node_position(u), shape.node_position(v)};
  });
}

VRep cut_vectors(const CompleteShape& shape) {
  return cuts_from_edges(shape.node_count(), shape.edge_count(), [&](std::size_t e) { return shape.edge(e); });
}

VRep cor_vertices(const BipartiteShape& shape) {
  const int nodes = shape.node_count();
  guard_nodes(nodes);
  VRep out{nodes + shape.edge_count(), {}};
  for (std::size_t k = 0; k < (std::size_t{1} << nodes); ++k) {
    RationalVector p;
    p.reserve(static_cast<std::size_t>(out.dimension));
    for (int t = 0; t < nodes; ++t) p.emplace_back(static_cast<int>((k >> t) & 1U));
    for (int i = 0; i < shape.m(); ++i)
      for (int j = 0; j < shape.n(); ++j) p.push_back(p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(shape.m() + j)]);
    out.vertices.push_back(std::move(p));
  }
  return out;
}

HRep rcmet_hrep(const BipartiteShape& shape) {
  const int m = shape.m();
  const int d = shape.node_count() + shape.edge_count();
  HRep h{d, {}, {}};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < shape.n(); ++j) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(m + j);
      const auto e = static_cast<std::size_t>(shape.node_count()) + shape.edge_index(Node::alice(i), Node::bob(j));
      auto row = [&](int ca, int cb, int ce, int rhs) {
        Halfspace s{RationalVector(static_cast<std::size_t>(d), Rational(0)), Rational(rhs)};
        s.a[a] = ca;
        s.a[b] = cb;
        s.a[e] = ce;
        h.inequalities.push_back(std::move(s));
      };
      row(0, 0, -1, 0);  // p_ab >= 0
      row(-1, 0, 1, 0);  // p_a - p_ab >= 0
      row(0, -1, 1, 0);  // p_b - p_ab >= 0
      row(1, 1, -1, 1);  // 1 - p_a - p_b + p_ab >= 0
    }
  }
  return h;
}

HRep rmet_hrep(const SuspensionShape& shape) {
  const int d = shape.edge_count();
  HRep h{d, {}, {}};
  for (int i = 0; i < shape.m(); ++i) {
    for (int j = 0; j < shape.n(); ++j) {
      const auto a = shape.edge_index(Node::root(), Node::alice(i));
      const auto b = shape.edge_index(Node::root(), Node::bob(j));
      const auto e = shape.edge_index(Node::alice(i), Node::bob(j));
      // sa*x_XA + sb*x_XB + se*x_AB >= -1, written as <= 1 after negation
      for (auto [sa, sb, se] : {std::array{1, 1, 1}, std::array{-1, -1, 1}, std::array{1, -1, -1}, std::array{-1, 1, -1}}) {
        Halfspace s{RationalVector(static_cast<std::size_t>(d), Rational(0)), Rational(1)};
        s.a[a] = -sa;
        s.a[b] = -sb;
        s.a[e] = -se;
        h.inequalities.push_back(std::move(s));
      }
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Hull membership

MembershipCertificate hull_membership(const RationalVector& point, const VRep& vrep, const MembershipOptions& options) {
  vrep.validate();
  if (static_cast<int>(point.size()) != vrep.dimension)
    throw ValidationError("dimension mismatch: point " + dims(point.size(), static_cast<std::size_t>(vrep.dimension)));
  if (vrep.vertices.size() > options.max_vertices)
    throw GuardError("hull membership guard: " + std::to_string(vrep.vertices.size()) + " vertices exceed " +
                     std::to_string(options.max_vertices));
  if (vrep.vertices.empty()) throw ValidationError("hull membership needs at least one vertex");

  const std::size_t d = point.size();
  const std::size_t rows = d + 1;
  const std::size_t nv = vrep.vertices.size();
  const std::size_t cols = nv + rows;  // lambda columns, then artificials; rhs kept apart

  std::vector<RationalVector> t(rows, RationalVector(cols, Rational(0)));
  RationalVector rhs(rows);
  std::vector<int> flip(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) {
    rhs[r] = r < d ? point[r] : Rational(1);
    if (rhs[r] < 0) flip[r] = -1;
    for (std::size_t j = 0; j < nv; ++j) t[r][j] = (r < d ? vrep.vertices[j][r] : Rational(1)) * flip[r];
    rhs[r] *= flip[r];
    t[r][nv + r] = 1;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = nv + r;

  // Reduced costs for min sum(artificials).
  RationalVector z(cols, Rational(0));
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t r = 0; r < rows; ++r) z[j] -= t[r][j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = rhs[r] / t[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) throw std::logic_error("phase-I simplex is bounded; unbounded ray is impossible");
    const Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave])
      if (!x.is_zero()) x *= inv;
    rhs[leave] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter].is_zero()) continue;
      const Rational f = t[r][enter];
      for (std::size_t j = 0; j < cols; ++j)
        if (!t[leave][j].is_zero()) t[r][j] -= f * t[leave][j];
      rhs[r] -= f * rhs[leave];
    }
    if (!z[enter].is_zero()) {
      const Rational f = z[enter];
      for (std::size_t j = 0; j < cols; ++j)
        if (!t[leave][j].is_zero()) z[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Rational infeasibility = 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] >= nv) infeasibility += rhs[r];

  MembershipCertificate cert;
  if (infeasibility.is_zero()) {
    cert.inside = true;
    for (std::size_t r = 0; r < rows; ++r)
      if (basis[r] < nv && !rhs[r].is_zero()) cert.weights.emplace_back(basis[r], rhs[r]);
    std::sort(cert.weights.begin(), cert.weights.end());
  } else {
    // Duals of the flipped rows: y_k = 1 - (reduced cost of artificial k).
    RationalVector y(rows);
    for (std::size_t r = 0; r < rows; ++r) y[r] = (1 - z[nv + r]) * flip[r];
    Halfspace sep{RationalVector(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(d)), -y[d]};
    cert.separator = normalized(sep);
  }
  if (!verify_certificate(cert, point, vrep)) throw std::logic_error("hull membership produced an invalid certificate");
  return cert;
}

bool verify_certificate(const MembershipCertificate& cert, const RationalVector& point, const VRep& vrep) {
  if (cert.inside) {
    Rational total = 0;
    RationalVector sum(point.size(), Rational(0));
    for (const auto& [idx, w] : cert.weights) {
      if (idx >= vrep.vertices.size() || w < 0) return false;
      total += w;
      for (std::size_t k = 0; k < point.size(); ++k) sum[k] += w * vrep.vertices[idx][k];
    }
    return total == 1 && sum == point;
  }
  if (!cert.separator) return false;
  for (const auto& v : vrep.vertices)
    if (dot(cert.separator->a, v) > cert.separator->rhs) return false;
  return dot(cert.separator->a, point) > cert.separator->rhs;
}

// ---------------------------------------------------------------------------
// Rank, affine hull and facet checks

int affine_rank(const std::vector<RationalVector>& points) {
  if (points.empty()) return -1;
  const std::size_t width = points.front().size() + 1;
  return static_cast<int>(integer_rank(homogenized_rows(points), width)) - 1;
}

std::vector<Halfspace> affine_hull_equations(const std::vector<RationalVector>& points, int dimension) {
  const std::size_t width = static_cast<std::size_t>(dimension) + 1;
  std::vector<RationalVector> mat;
  for (const auto& p : points) {
    RationalVector r = p;
    r.push_back(-1);
    mat.push_back(std::move(r));
  }
  // Rows (v, -1) . (a, a0) = 0  <=>  a.v = a0
  std::vector<Halfspace> eqs;
  for (auto& y : null_space(std::move(mat), width)) {
    Halfspace h{RationalVector(y.begin(), y.end() - 1), y.back()};
    eqs.push_back(normalized_equation(h));
  }
  std::sort(eqs.begin(), eqs.end(), halfspace_less);
  return eqs;
}

FacetReport facet_check(const Halfspace& h, const VRep& vrep) {
  vrep.validate();
  if (static_cast<int>(h.a.size()) != vrep.dimension)
    throw ValidationError("dimension mismatch: inequality " + dims(h.a.size(), static_cast<std::size_t>(vrep.dimension)));
  if (vrep.vertices.empty()) throw ValidationError("facet check needs at least one vertex");

  FacetReport report;
  std::vector<RationalVector> roots;
  bool first = true;
  for (const auto& v : vrep.vertices) {
    const Rational value = dot(h.a, v);
    if (first || value > report.tight_value) report.tight_value = value;
    first = false;
    if (value == h.rhs) roots.push_back(v);
  }
  report.valid = report.tight_value <= h.rhs;
  report.root_count = roots.size();
  report.affine_rank = affine_rank(roots);
  report.is_facet = report.valid && report.affine_rank == vrep.dimension - 1;
  return report;
}

// ---------------------------------------------------------------------------
// Double description front ends

HRep dd_convert(const VRep& input, const DDOptions& options) {
  input.validate();
  check_guard(input.dimension, input.vertices.size(), options);
  const int d = input.dimension;
  if (input.vertices.empty()) throw ValidationError("cannot convert an empty vertex set");

  auto rows_last = homogenized_rows(input.vertices);  // (v, 1)
  std::vector<IntegerVector> rows;
  rows.reserve(rows_last.size());
  for (auto& r : rows_last) {
    IntegerVector s;
    s.reserve(r.size());
    s.push_back(r.back());
    s.insert(s.end(), r.begin(), r.end() - 1);
    rows.push_back(std::move(s));  // (1, v) scaled
  }
  const std::size_t width = static_cast<std::size_t>(d) + 1;
  if (integer_rank(rows, width) < width) {
    auto eqs = affine_hull_equations(input.vertices, d);
    std::vector<std::string> text;
    for (const auto& e : eqs) text.push_back(format_halfspace(e, "=="));
    throw DegenerateInputError("vertex set is not full-dimensional (affine hull has " + std::to_string(eqs.size()) +
                                   " equations)",
                               std::move(text));
  }

  HRep out{d, {}, {}};
  for (const auto& ray : extreme_rays(rows, width)) {
    // b0 + b.x >= 0  <=>  -b.x <= b0
    Halfspace h{RationalVector(static_cast<std::size_t>(d)), Rational(ray[0])};
    for (int k = 0; k < d; ++k) h.a[static_cast<std::size_t>(k)] = Rational(-ray[static_cast<std::size_t>(k) + 1]);
    out.inequalities.push_back(normalized(h));
  }
  std::sort(out.inequalities.begin(), out.inequalities.end(), halfspace_less);
  for (const auto& f : out.inequalities) {
    const auto report = facet_check(f, input);
    if (!report.is_facet) throw std::logic_error("double description produced a non-facet: " + format_halfspace(f));
  }
  return out;
}

VRep dd_convert(const HRep& input, const DDOptions& options) {
  input.validate();
  check_guard(input.dimension, input.inequalities.size() + 2 * input.equations.size(), options);
  const int d = input.dimension;
  const std::size_t width = static_cast<std::size_t>(d) + 1;

  // (t, x) with a0 t - a.x >= 0 and t >= 0.
  std::vector<IntegerVector> rows;
  auto add = [&](const Halfspace& h, int sign) {
    RationalVector r;
    r.reserve(width);
    r.push_back(h.rhs * sign);
    for (const auto& x : h.a) r.push_back(-x * sign);
    rows.push_back(to_integer_row(r));
  };
  for (const auto& h : input.inequalities) add(h, 1);
  for (const auto& h : input.equations) {
    add(h, 1);
    add(h, -1);
  }
  IntegerVector t_row(width, Integer(0));
  t_row[0] = 1;
  rows.push_back(t_row);

  if (integer_rank(rows, width) < width) throw ValidationError("polyhedron is unbounded (has a lineality space)");

  VRep out{d, {}};
  for (const auto& ray : extreme_rays(rows, width)) {
    if (ray[0].is_zero()) throw ValidationError("polyhedron is unbounded (recession direction found)");
    RationalVector v(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) v[static_cast<std::size_t>(k)] = Rational(ray[static_cast<std::size_t>(k) + 1], ray[0]);
    out.vertices.push_back(std::move(v));
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);

  for (const auto& v : out.vertices) {
    if (!input.contains(v)) throw std::logic_error("double description produced an infeasible vertex");
    std::vector<IntegerVector> tight;
    for (const auto& h : input.inequalities)
      if (dot(h.a, v) == h.rhs) tight.push_back(to_integer_row(h.a));
    for (const auto& h : input.equations) tight.push_back(to_integer_row(h.a));
    if (integer_rank(tight, static_cast<std::size_t>(d)) != static_cast<std::size_t>(d))
      throw std::logic_error("double description produced a point that is not a vertex");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_halfspace(const Halfspace& h, const char* relation) {
  std::ostringstream s;
  for (const auto& x : h.a) s << to_string(x) << ' ';
  s << relation << ' ' << to_string(h.rhs);
  return s.str();
}

void write_vrep(std::ostream& out, const VRep& v) {
  out << "V " << v.dimension << ' ' << v.vertices.size() << '\n';
  for (const auto& x : v.vertices) {
    for (std::size_t k = 0; k < x.size(); ++k) out << (k ? " " : "") << to_string(x[k]);
    out << '\n';
  }
}

void write_hrep(std::ostream& out, const HRep& h) {
  out << "H " << h.dimension << ' ' << h.inequalities.size() + h.equations.size() << '\n';
  for (const auto& e : h.equations) out << format_halfspace(e, "==") << '\n';
  for (const auto& s : h.inequalities) out << format_halfspace(s) << '\n';
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::pair<int, std::size_t> read_header(std::istream& in, char tag) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError(std::string("missing '") + tag + "' header");
  std::istringstream s(line);
  std::string kind;
  long long dim = -1;
  long long count = -1;
  s >> kind >> dim >> count;
  if (!s || kind != std::string(1, tag) || dim < 0 || count < 0)
    throw ValidationError(std::string("malformed header, expected '") + tag + " <dim> <count>': " + line);
  return {static_cast<int>(dim), static_cast<std::size_t>(count)};
}

}  // namespace

VRep read_vrep(std::istream& in) {
  const auto [dim, count] = read_header(in, 'V');
  VRep v{dim, {}};
  std::string line;
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_content_line(in, line)) throw ValidationError("V-representation ends early");
    std::istringstream s(line);
    RationalVector x;
    std::string tok;
    while (s >> tok) x.push_back(parse_rational(tok));
    if (static_cast<int>(x.size()) != dim) throw ValidationError("vertex line has wrong length: " + line);
    v.vertices.push_back(std::move(x));
  }
  return v;
}

HRep read_hrep(std::istream& in) {
  const auto [dim, count] = read_header(in, 'H');
  HRep h{dim, {}, {}};
  std::string line;
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_content_line(in, line)) throw ValidationError("H-representation ends early");
    std::istringstream s(line);
    Halfspace hs;
    std::string tok;
    std::string relation;
    while (s >> tok) {
      if (tok == "<=" || tok == "==") {
        relation = tok;
        break;
      }
      hs.a.push_back(parse_rational(tok));
    }
    if (relation.empty() || !(s >> tok)) throw ValidationError("inequality line needs '<= a0' or '== a0': " + line);
    hs.rhs = parse_rational(tok);
    if (static_cast<int>(hs.a.size()) != dim) throw ValidationError("inequality line has wrong length: " + line);
    (relation == "<=" ? h.inequalities : h.equations).push_back(std::move(hs));
  }
  h.validate();
  return h;
}

}  // namespace bellcut
