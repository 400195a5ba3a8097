#pragma once

// Affine maps between the coordinate systems of a two-party, two-outcome
// correlation experiment:
//
//   BehaviorVector  q_{ab|ij}                    (4mn, probability table)
//   CorVector       p_{A_i}, p_{B_j}, p_{A_iB_j}  (m+n+mn, "probability of -1")
//   SuspensionVector x_{XA_i}, x_{XB_j}, x_{A_iB_j} (m+n+mn, expectations)
//   CorrelationVector x_{A_iB_j}                  (mn, correlation functions)
//
// Every map is templated on the scalar: Rational for the exact backend,
// double for the floating backend. Only those two are instantiated.

#include "bellcut/graphs.hpp"
#include "bellcut/number.hpp"

#include <Eigen/Dense>

#include <vector>

namespace bellcut {

/// Tolerance used by the floating backend when checking affine identities.
inline constexpr double kFloatIdentityTol = 1e-9;

template <class T>
class BehaviorVector {
 public:
  explicit BehaviorVector(BipartiteShape shape);
  BehaviorVector(BipartiteShape shape, std::vector<T> flat);

  const BipartiteShape& shape() const { return shape_; }

  /// a, b in {+1, -1}; i, j 0-based.
  T& at(int a, int b, int i, int j);
  const T& at(int a, int b, int i, int j) const;

  T alice_marginal(int a, int i, int j) const { return at(a, 1, i, j) + at(a, -1, i, j); }
  T bob_marginal(int b, int i, int j) const { return at(1, b, i, j) + at(-1, b, i, j); }

  /// Flat layout: (i, j) row-major, then outcomes (+,+), (+,-), (-,+), (-,-).
  const std::vector<T>& flat() const { return q_; }

  /// Nonnegativity, normalization and no-signaling, with `tol` ignored in the exact backend.
  bool is_behavior(double tol = kFloatIdentityTol) const;

  friend bool operator==(const BehaviorVector&, const BehaviorVector&) = default;

 private:
  static std::size_t slot(int a, int b) { return (a == 1 ? 0 : 2) + (b == 1 ? 0 : 1); }

  BipartiteShape shape_;
  std::vector<T> q_;
};

template <class T>
struct CorVector {
  BipartiteShape shape;
  std::vector<T> node;  ///< p_{A_1..A_m}, p_{B_1..B_n}
  std::vector<T> edge;  ///< p_{A_iB_j} in EdgeIndex order

  explicit CorVector(BipartiteShape s)
      : shape(s), node(static_cast<std::size_t>(s.node_count())), edge(static_cast<std::size_t>(s.edge_count())) {}
  CorVector(BipartiteShape s, std::vector<T> nodes, std::vector<T> edges);
  /// Node coordinates followed by edge coordinates.
  static CorVector from_coords(BipartiteShape s, const std::vector<T>& coords);

  T& alice(int i) { return node[static_cast<std::size_t>(i)]; }
  T& bob(int j) { return node[static_cast<std::size_t>(shape.m() + j)]; }
  T& pair(int i, int j) { return edge[static_cast<std::size_t>(i * shape.n() + j)]; }
  const T& alice(int i) const { return node[static_cast<std::size_t>(i)]; }
  const T& bob(int j) const { return node[static_cast<std::size_t>(shape.m() + j)]; }
  const T& pair(int i, int j) const { return edge[static_cast<std::size_t>(i * shape.n() + j)]; }

  std::vector<T> coords() const;

  friend bool operator==(const CorVector&, const CorVector&) = default;
};

template <class T>
struct SuspensionVector {
  SuspensionShape shape;
  std::vector<T> x;  ///< EdgeIndex order: XA_i, XB_j, A_iB_j

  explicit SuspensionVector(SuspensionShape s) : shape(s), x(static_cast<std::size_t>(s.edge_count())) {}
  SuspensionVector(SuspensionShape s, std::vector<T> values);

  T& root_alice(int i) { return x[static_cast<std::size_t>(i)]; }
  T& root_bob(int j) { return x[static_cast<std::size_t>(shape.m() + j)]; }
  T& pair(int i, int j) { return x[static_cast<std::size_t>(shape.root_edge_count() + i * shape.n() + j)]; }
  const T& root_alice(int i) const { return x[static_cast<std::size_t>(i)]; }
  const T& root_bob(int j) const { return x[static_cast<std::size_t>(shape.m() + j)]; }
  const T& pair(int i, int j) const { return x[static_cast<std::size_t>(shape.root_edge_count() + i * shape.n() + j)]; }

  friend bool operator==(const SuspensionVector&, const SuspensionVector&) = default;
};

template <class T>
struct CorrelationVector {
  BipartiteShape shape;
  std::vector<T> x;  ///< A_iB_j row-major

  explicit CorrelationVector(BipartiteShape s) : shape(s), x(static_cast<std::size_t>(s.edge_count())) {}
  CorrelationVector(BipartiteShape s, std::vector<T> values);

  T& pair(int i, int j) { return x[static_cast<std::size_t>(i * shape.n() + j)]; }
  const T& pair(int i, int j) const { return x[static_cast<std::size_t>(i * shape.n() + j)]; }

  friend bool operator==(const CorrelationVector&, const CorrelationVector&) = default;
};

template <class T>
BehaviorVector<T> iota(const CorVector<T>& p);

/// Throws NotInImageError when a marginal depends on the partner's setting
/// (exact equality for Rational, kFloatIdentityTol for double).
template <class T>
CorVector<T> iota_inv(const BehaviorVector<T>& q);

template <class T>
SuspensionVector<T> covariance(const CorVector<T>& p);

template <class T>
CorVector<T> covariance_inv(const SuspensionVector<T>& x);

template <class T>
CorrelationVector<T> project_correlations(const SuspensionVector<T>& x);

/// Inverse of the projection on the zero-root slice: root coordinates set to 0.
template <class T>
SuspensionVector<T> lift_zero_roots(const CorrelationVector<T>& x);

/// Sets every marginal to 1/2 and shifts the joint terms so that the
/// correlation functions are unchanged.
template <class T>
CorVector<T> center_marginals(const CorVector<T>& p);

/// Behavior of the deterministic strategy A_i = alice[i], B_j = bob[j] (entries +1/-1).
BehaviorVector<Rational> deterministic_behavior(const BipartiteShape& shape, const std::vector<int>& alice,
                                                const std::vector<int>& bob);

/// Unit vectors, one per node (rows, in the shape's node order).
class GramRealization {
 public:
  enum class Kind { bipartite, suspension };

  GramRealization(BipartiteShape shape, Eigen::MatrixXd vectors);
  GramRealization(SuspensionShape shape, Eigen::MatrixXd vectors);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int ambient_dimension() const { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  /// Root vector w (suspension only).
  Eigen::VectorXd root() const;
  Eigen::VectorXd alice(int i) const;
  Eigen::VectorXd bob(int j) const;

  /// Inner products on the realized graph's edges, in EdgeIndex order.
  std::vector<double> edge_values() const;
  Eigen::MatrixXd gram_matrix() const { return vectors_ * vectors_.transpose(); }

  /// Largest | |v| - 1 | over all stored vectors.
  double max_norm_defect() const;

 private:
  Kind kind_;
  int m_;
  int n_;
  Eigen::MatrixXd vectors_;
};

/// Realization of K_{2m,2n} whose cross inner products are the behavior
/// q_{ab|ij} = (1 + a w.u_i + b w.v_j + ab u_i.v_j) / 4. Alice node A_{a,i}
/// sits at row 2i + (a == +1 ? 0 : 1), Bob likewise, so the K_{2m,2n} edge
/// values in EdgeIndex order are a permutation of BehaviorVector::flat().
/// Throws NumericalDegeneracyError if a half-sum vector has norm > 1 + 1e-9.
GramRealization lift_to_bipartite_gram(const GramRealization& suspension);

/// Reads the behavior off a realization produced by lift_to_bipartite_gram.
BehaviorVector<double> behavior_from_lifted(const GramRealization& lifted);

}  // namespace bellcut
