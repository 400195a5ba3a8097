#pragma once

// Linear inequalities in the coordinate systems of the library, the families
// and named inequalities used for Bell experiments, symmetry canonicalization,
// zero-lifting and triangular elimination.

#include "bellcut/graphs.hpp"
#include "bellcut/number.hpp"
#include "bellcut/polyhedra.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace bellcut {

enum class Space {
  correlation,  ///< x_{A_iB_j}, rows x cols
  suspension,   ///< x_{XA_i}, x_{XB_j}, x_{A_iB_j}
  cor,          ///< p_{A_i}, p_{B_j}, p_{A_iB_j}
  complete,     ///< x_{uv} on K_N with side labels
};

std::string to_string(Space space);
Space parse_space(const std::string& text);

/// a.x <= rhs. For the three bipartite spaces `a` follows the library's
/// coordinate order; for the complete space it is indexed by CompleteShape.
struct LinearInequality {
  Space space = Space::correlation;
  int rows = 0;       ///< m (bipartite spaces)
  int cols = 0;       ///< n (bipartite spaces)
  std::string sides;  ///< complete space only
  RationalVector a;
  Rational rhs;

  int dimension() const;
  void validate() const;

  /// Correlation coefficient on A_iB_j (0-based); valid in every bipartite space.
  const Rational& at(int i, int j) const;
  Rational& at(int i, int j);

  /// Bipartite spaces: (rows+1) x (cols+1) for suspension and cor, with entry
  /// (0, j+1) on the B_j node term and (i+1, 0) on the A_i node term; rows x cols
  /// for correlation. Complete space: N x N upper triangle.
  std::vector<RationalVector> matrix() const;
  static LinearInequality from_matrix(Space space, const std::vector<RationalVector>& m, Rational rhs,
                                      std::string sides = {});

  Halfspace halfspace() const { return {a, rhs}; }
  static LinearInequality from_halfspace(Space space, int rows, int cols, const Halfspace& h);

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// Positive scaling to coprime integers.
LinearInequality normalized(const LinearInequality& ineq);

/// Vertex set the inequality should be checked against: cut vectors for the
/// correlation, suspension and complete spaces, COR vertices for cor.
VRep reference_vertices(const LinearInequality& ineq);

/// Rewrites a cor-space inequality in suspension coordinates (and back) via
/// the covariance map. The results are normalized.
LinearInequality cor_to_suspension(const LinearInequality& ineq);
LinearInequality suspension_to_cor(const LinearInequality& ineq);

// ---------------------------------------------------------------------------
// Families

/// sign * x_{A_iB_j} <= 1 on K_{m,n}; i, j 0-based.
LinearInequality family_trivial(int m, int n, int i, int j, int sign);

/// -sum_{e in F} x_e + sum_{e in C \ F} x_e <= |C| - 2. `cycle` lists the
/// nodes in order; `negated` holds edges of the cycle, |F| odd.
LinearInequality family_cycle(int m, int n, const std::vector<Node>& cycle, const std::vector<Edge>& negated);

struct HypermetricWeights {
  std::vector<long long> alice;
  std::vector<long long> bob;
};

/// Bipartite hypermetric correlation inequality on K_{s+C(t,2), t+C(s,2)}.
/// Extra columns B_{ii'} follow B_1..B_t, extra rows A_{jj'} follow
/// A_1..A_s, both in lexicographic pair order.
LinearInequality family_hypermetric(const HypermetricWeights& b);

/// -sum_{u<v} b_u b_v x_uv <= (sum b_u^2 - 1)/2 on K_N, with the A weights
/// first. Sides are labelled accordingly.
LinearInequality hypermetric_complete(const HypermetricWeights& b);

/// Names in catalog order.
std::vector<std::string> catalog_names();
LinearInequality catalog_entry(const std::string& name);

// ---------------------------------------------------------------------------
// Symmetry

/// a_{ij} -> row_signs[i] col_signs[j] a_{row_perm[i], col_perm[j]}, applied
/// after transposing when `transpose` is set (square matrices only).
struct SymmetryElement {
  bool transpose = false;
  std::vector<int> row_perm;
  std::vector<int> col_perm;
  std::vector<int> row_signs;
  std::vector<int> col_signs;
};

LinearInequality apply(const SymmetryElement& g, const LinearInequality& ineq);
SymmetryElement random_symmetry(int rows, int cols, std::mt19937_64& rng);

/// Permutation and switching on K_N: x_uv -> s_u s_v x_{perm[u] perm[v]}.
struct CompleteSymmetry {
  std::vector<int> perm;
  std::vector<int> signs;
};
LinearInequality apply(const CompleteSymmetry& g, const LinearInequality& ineq);

struct CanonicalOptions {
  /// Exhaustive search: refuse groups larger than this.
  std::uint64_t max_group = 10'000'000;
  /// Enumerate row operations only and resolve columns by sorting.
  bool pruned = false;
};

struct CanonicalResult {
  LinearInequality form;
  Integer orbit_size;
  Integer group_size;
};

/// Lexicographically least coefficient matrix over the orbit (row-major).
/// Correlation space uses row/column permutations, sign flips and (when
/// square) transposition; the complete space uses node permutations and
/// switching and ignores side labels.
CanonicalResult canonicalize(const LinearInequality& ineq, const CanonicalOptions& options = {});
inline LinearInequality canonical_form(const LinearInequality& ineq, const CanonicalOptions& options = {}) {
  return canonicalize(ineq, options).form;
}

struct EquivalenceClass {
  LinearInequality representative;  ///< canonical form
  Integer orbit_size;
  std::vector<std::size_t> members;  ///< input positions
};

/// Groups by canonical form, classes in order of first appearance.
std::vector<EquivalenceClass> classify(const std::vector<LinearInequality>& ineqs,
                                       const CanonicalOptions& options = {});

// ---------------------------------------------------------------------------
// Lifting and elimination

/// Pads with zero coefficients to K_{m',n'}; works in every bipartite space.
LinearInequality zero_lift(const LinearInequality& ineq, int rows, int cols);

struct TrielimResult {
  LinearInequality result;  ///< correlation space
  bool unchanged = false;   ///< the input had no same-side terms
  std::string sides;        ///< of the input
  /// New column k came from the A-side pair col_pairs[k] (ranks among A nodes);
  /// new row k from the B-side pair row_pairs[k].
  std::vector<std::pair<int, int>> col_pairs;
  std::vector<std::pair<int, int>> row_pairs;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

/// Eliminates each same-side term c x_{uu'} (u before u') with |c| copies of a
/// triangle inequality on a new node W of the opposite side:
///   c < 0:  x_{uu'} - x_{uW} + x_{u'W} <= 1
///   c > 0: -x_{uu'} + x_{uW} + x_{u'W} <= 1
/// so the coefficient on x_{uW} is c in both cases. Correlation-space input is
/// returned unchanged and flagged.
TrielimResult triangular_eliminate(const LinearInequality& ineq);

/// Inverse of triangular_eliminate on complete-space input: reads each
/// eliminated coefficient back off its new node and removes the added RHS.
LinearInequality restrict_to_original(const TrielimResult& r);

}  // namespace bellcut
