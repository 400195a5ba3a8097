#include "bellcut/mappings.hpp"

#include "bellcut/errors.hpp"

#include <cmath>
#include <string>

namespace bellcut {

namespace {

bool same(const Rational& a, const Rational& b, double) { return a == b; }
bool same(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool nonnegative(const Rational& a, double) { return a >= 0; }
bool nonnegative(double a, double tol) { return a >= -tol; }

template <class T>
T half() {
  return T(1) / T(2);
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw ValidationError(std::string(what) + ": expected " + std::to_string(want) + " coordinates, got " +
                          std::to_string(got));
}

}  // namespace

template <class T>
BehaviorVector<T>::BehaviorVector(BipartiteShape shape)
    : shape_(shape), q_(static_cast<std::size_t>(4 * shape.edge_count())) {}

template <class T>
BehaviorVector<T>::BehaviorVector(BipartiteShape shape, std::vector<T> flat) : shape_(shape), q_(std::move(flat)) {
  require_size(q_.size(), static_cast<std::size_t>(4 * shape_.edge_count()), "behavior");
}

template <class T>
T& BehaviorVector<T>::at(int a, int b, int i, int j) {
  return q_[static_cast<std::size_t>(4 * (i * shape_.n() + j)) + slot(a, b)];
}

template <class T>
const T& BehaviorVector<T>::at(int a, int b, int i, int j) const {
  return q_[static_cast<std::size_t>(4 * (i * shape_.n() + j)) + slot(a, b)];
}

template <class T>
bool BehaviorVector<T>::is_behavior(double tol) const {
  for (const T& v : q_)
    if (!nonnegative(v, tol)) return false;
  const int m = shape_.m();
  const int n = shape_.n();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (!same(at(1, 1, i, j) + at(1, -1, i, j) + at(-1, 1, i, j) + at(-1, -1, i, j), T(1), tol)) return false;
  for (int i = 0; i < m; ++i)
    for (int j = 1; j < n; ++j)
      if (!same(alice_marginal(-1, i, j), alice_marginal(-1, i, 0), tol)) return false;
  for (int j = 0; j < n; ++j)
    for (int i = 1; i < m; ++i)
      if (!same(bob_marginal(-1, i, j), bob_marginal(-1, 0, j), tol)) return false;
  return true;
}

template <class T>
CorVector<T>::CorVector(BipartiteShape s, std::vector<T> nodes, std::vector<T> edges)
    : shape(s), node(std::move(nodes)), edge(std::move(edges)) {
  require_size(node.size(), static_cast<std::size_t>(s.node_count()), "cor vector nodes");
  require_size(edge.size(), static_cast<std::size_t>(s.edge_count()), "cor vector edges");
}

template <class T>
CorVector<T> CorVector<T>::from_coords(BipartiteShape s, const std::vector<T>& coords) {
  require_size(coords.size(), static_cast<std::size_t>(s.node_count() + s.edge_count()), "cor vector");
  const auto split = coords.begin() + s.node_count();
  return CorVector(s, std::vector<T>(coords.begin(), split), std::vector<T>(split, coords.end()));
}

template <class T>
std::vector<T> CorVector<T>::coords() const {
  std::vector<T> out = node;
  out.insert(out.end(), edge.begin(), edge.end());
  return out;
}

template <class T>
SuspensionVector<T>::SuspensionVector(SuspensionShape s, std::vector<T> values) : shape(s), x(std::move(values)) {
  require_size(x.size(), static_cast<std::size_t>(s.edge_count()), "suspension vector");
}

template <class T>
CorrelationVector<T>::CorrelationVector(BipartiteShape s, std::vector<T> values) : shape(s), x(std::move(values)) {
  require_size(x.size(), static_cast<std::size_t>(s.edge_count()), "correlation vector");
}

template <class T>
BehaviorVector<T> iota(const CorVector<T>& p) {
  BehaviorVector<T> q(p.shape);
  for (int i = 0; i < p.shape.m(); ++i) {
    for (int j = 0; j < p.shape.n(); ++j) {
      const T& pa = p.alice(i);
      const T& pb = p.bob(j);
      const T& pab = p.pair(i, j);
      q.at(-1, -1, i, j) = pab;
      q.at(-1, 1, i, j) = pa - pab;
      q.at(1, -1, i, j) = pb - pab;
      q.at(1, 1, i, j) = T(1) - pa - pb + pab;
    }
  }
  return q;
}

template <class T>
CorVector<T> iota_inv(const BehaviorVector<T>& q) {
  const auto& s = q.shape();
  const int m = s.m();
  const int n = s.n();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      T total = q.at(1, 1, i, j) + q.at(1, -1, i, j) + q.at(-1, 1, i, j) + q.at(-1, -1, i, j);
      if (!same(total, T(1), kFloatIdentityTol))
        throw NotInImageError("not in iota's image: q(.,.|" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") does not sum to 1");
    }
  for (int i = 0; i < m; ++i)
    for (int j = 1; j < n; ++j)
      if (!same(q.alice_marginal(-1, i, j), q.alice_marginal(-1, i, 0), kFloatIdentityTol))
        throw NotInImageError("not in iota's image: Alice marginal of A" + std::to_string(i + 1) +
                              " differs between B1 and B" + std::to_string(j + 1) + " (i,j,j')=(" +
                              std::to_string(i + 1) + ",1," + std::to_string(j + 1) + ")");
  for (int j = 0; j < n; ++j)
    for (int i = 1; i < m; ++i)
      if (!same(q.bob_marginal(-1, i, j), q.bob_marginal(-1, 0, j), kFloatIdentityTol))
        throw NotInImageError("not in iota's image: Bob marginal of B" + std::to_string(j + 1) +
                              " differs between A1 and A" + std::to_string(i + 1) + " (i,i',j)=(1," +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");

  CorVector<T> p(s);
  for (int i = 0; i < m; ++i) p.alice(i) = q.alice_marginal(-1, i, 0);
  for (int j = 0; j < n; ++j) p.bob(j) = q.bob_marginal(-1, 0, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) p.pair(i, j) = q.at(-1, -1, i, j);
  return p;
}

template <class T>
SuspensionVector<T> covariance(const CorVector<T>& p) {
  SuspensionVector<T> x(SuspensionShape(p.shape));
  for (int i = 0; i < p.shape.m(); ++i) x.root_alice(i) = T(1) - T(2) * p.alice(i);
  for (int j = 0; j < p.shape.n(); ++j) x.root_bob(j) = T(1) - T(2) * p.bob(j);
  for (int i = 0; i < p.shape.m(); ++i)
    for (int j = 0; j < p.shape.n(); ++j)
      x.pair(i, j) = T(1) - T(2) * p.alice(i) - T(2) * p.bob(j) + T(4) * p.pair(i, j);
  return x;
}

template <class T>
CorVector<T> covariance_inv(const SuspensionVector<T>& x) {
  const auto& base = x.shape.base();
  CorVector<T> p(base);
  for (int i = 0; i < base.m(); ++i) p.alice(i) = (T(1) - x.root_alice(i)) / T(2);
  for (int j = 0; j < base.n(); ++j) p.bob(j) = (T(1) - x.root_bob(j)) / T(2);
  for (int i = 0; i < base.m(); ++i)
    for (int j = 0; j < base.n(); ++j)
      p.pair(i, j) = (x.pair(i, j) + T(1) - x.root_alice(i) - x.root_bob(j)) / T(4);
  return p;
}

template <class T>
CorrelationVector<T> project_correlations(const SuspensionVector<T>& x) {
  const auto offset = static_cast<std::ptrdiff_t>(x.shape.root_edge_count());
  return CorrelationVector<T>(x.shape.base(), std::vector<T>(x.x.begin() + offset, x.x.end()));
}

template <class T>
SuspensionVector<T> lift_zero_roots(const CorrelationVector<T>& x) {
  SuspensionVector<T> out(SuspensionShape(x.shape));
  std::copy(x.x.begin(), x.x.end(), out.x.begin() + x.shape.m() + x.shape.n());
  return out;
}

template <class T>
CorVector<T> center_marginals(const CorVector<T>& p) {
  CorVector<T> out(p.shape);
  for (auto& v : out.node) v = half<T>();
  for (int i = 0; i < p.shape.m(); ++i)
    for (int j = 0; j < p.shape.n(); ++j)
      out.pair(i, j) = p.pair(i, j) - half<T>() * p.alice(i) - half<T>() * p.bob(j) + half<T>();
  return out;
}

BehaviorVector<Rational> deterministic_behavior(const BipartiteShape& shape, const std::vector<int>& alice,
                                                const std::vector<int>& bob) {
  require_size(alice.size(), static_cast<std::size_t>(shape.m()), "Alice assignment");
  require_size(bob.size(), static_cast<std::size_t>(shape.n()), "Bob assignment");
  BehaviorVector<Rational> q(shape);
  for (int i = 0; i < shape.m(); ++i)
    for (int j = 0; j < shape.n(); ++j) q.at(alice[static_cast<std::size_t>(i)], bob[static_cast<std::size_t>(j)], i, j) = 1;
  return q;
}

#define BELLCUT_INSTANTIATE(T)                                                  \
  template class BehaviorVector<T>;                                             \
  template struct CorVector<T>;                                                 \
  template struct SuspensionVector<T>;                                          \
  template struct CorrelationVector<T>;                                         \
  template BehaviorVector<T> iota(const CorVector<T>&);                         \
  template CorVector<T> iota_inv(const BehaviorVector<T>&);                     \
  template SuspensionVector<T> covariance(const CorVector<T>&);                 \
  template CorVector<T> covariance_inv(const SuspensionVector<T>&);             \
  template CorrelationVector<T> project_correlations(const SuspensionVector<T>&); \
  template SuspensionVector<T> lift_zero_roots(const CorrelationVector<T>&);    \
  template CorVector<T> center_marginals(const CorVector<T>&);

BELLCUT_INSTANTIATE(Rational)
BELLCUT_INSTANTIATE(double)
#undef BELLCUT_INSTANTIATE

// ---------------------------------------------------------------------------
// Gram realizations

namespace {

constexpr double kUnitNormTol = 1e-9;

void check_unit_rows(const Eigen::MatrixXd& v) {
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double norm = v.row(r).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormTol)
      throw ValidationError("Gram realization vector " + std::to_string(r) + " has norm " + std::to_string(norm) +
                            ", expected 1");
  }
}

}  // namespace

GramRealization::GramRealization(BipartiteShape shape, Eigen::MatrixXd vectors)
    : kind_(Kind::bipartite), m_(shape.m()), n_(shape.n()), vectors_(std::move(vectors)) {
  if (vectors_.rows() != shape.node_count())
    throw ValidationError("Gram realization needs one vector per node of K_{m,n}");
  check_unit_rows(vectors_);
}

GramRealization::GramRealization(SuspensionShape shape, Eigen::MatrixXd vectors)
    : kind_(Kind::suspension), m_(shape.m()), n_(shape.n()), vectors_(std::move(vectors)) {
  if (vectors_.rows() != shape.node_count())
    throw ValidationError("Gram realization needs one vector per node of the suspension graph");
  check_unit_rows(vectors_);
}

Eigen::VectorXd GramRealization::root() const {
  if (kind_ != Kind::suspension) throw ValidationError("realization has no root vector");
  return vectors_.row(0).transpose();
}

Eigen::VectorXd GramRealization::alice(int i) const {
  const int offset = kind_ == Kind::suspension ? 1 : 0;
  return vectors_.row(offset + i).transpose();
}

Eigen::VectorXd GramRealization::bob(int j) const {
  const int offset = kind_ == Kind::suspension ? 1 : 0;
  return vectors_.row(offset + m_ + j).transpose();
}

std::vector<double> GramRealization::edge_values() const {
  std::vector<double> out;
  if (kind_ == Kind::suspension) {
    const Eigen::VectorXd w = root();
    for (int i = 0; i < m_; ++i) out.push_back(w.dot(alice(i)));
    for (int j = 0; j < n_; ++j) out.push_back(w.dot(bob(j)));
  }
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) out.push_back(alice(i).dot(bob(j)));
  return out;
}

double GramRealization::max_norm_defect() const {
  double worst = 0;
  for (Eigen::Index r = 0; r < vectors_.rows(); ++r) worst = std::max(worst, std::abs(vectors_.row(r).norm() - 1.0));
  return worst;
}

GramRealization lift_to_bipartite_gram(const GramRealization& g) {
  if (g.kind() != GramRealization::Kind::suspension)
    throw ValidationError("lift_to_bipartite_gram needs a realization of the suspension graph");
  const int m = g.m();
  const int n = g.n();
  const int count = 2 * m + 2 * n;
  const int dim = g.ambient_dimension();
  const Eigen::VectorXd w = g.root();

  // Half-sum vectors, each padded with a private coordinate up to unit length.
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(count, dim + count);
  auto place = [&](int row, const Eigen::VectorXd& base, int sign) {
    const Eigen::VectorXd half_sum = 0.5 * (w + sign * base);
    double sq = half_sum.squaredNorm();
    if (sq > 1.0 + 1e-12) {
      if (std::sqrt(sq) > 1.0 + kUnitNormTol)
        throw NumericalDegeneracyError("half-sum vector has norm " + std::to_string(std::sqrt(sq)) +
                                       " > 1; the input realization is not unit-norm");
    }
    if (sq > 1.0) sq = 1.0;
    padded.row(row).head(dim) = half_sum.transpose();
    padded(row, dim + row) = std::sqrt(1.0 - sq);
  };
  for (int i = 0; i < m; ++i) {
    place(2 * i, g.alice(i), 1);
    place(2 * i + 1, g.alice(i), -1);
  }
  for (int j = 0; j < n; ++j) {
    place(2 * m + 2 * j, g.bob(j), 1);
    place(2 * m + 2 * j + 1, g.bob(j), -1);
  }

  // Restrict to the span of the rows: orthonormal coordinates via the SVD.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded, Eigen::ComputeThinU);
  Eigen::MatrixXd reduced = svd.matrixU() * svd.singularValues().asDiagonal();
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(count, count);
  vectors.leftCols(std::min<Eigen::Index>(count, reduced.cols())) =
      reduced.leftCols(std::min<Eigen::Index>(count, reduced.cols()));
  for (int r = 0; r < count; ++r) vectors.row(r).normalize();
  return GramRealization(BipartiteShape(2 * m, 2 * n), std::move(vectors));
}

BehaviorVector<double> behavior_from_lifted(const GramRealization& lifted) {
  if (lifted.kind() != GramRealization::Kind::bipartite || lifted.m() % 2 != 0 || lifted.n() % 2 != 0)
    throw ValidationError("expected a realization of K_{2m,2n}");
  const int m = lifted.m() / 2;
  const int n = lifted.n() / 2;
  BehaviorVector<double> q(BipartiteShape(m, n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1})
          q.at(a, b, i, j) = lifted.alice(2 * i + (a == 1 ? 0 : 1)).dot(lifted.bob(2 * j + (b == 1 ? 0 : 1)));
  return q;
}

}  // namespace bellcut
