#pragma once

// Dense semidefinite programming over elliptopes: linear objectives over
// E(G), over E(suspension) intersected with RMet, elliptope membership, and
// the arcsin cut condition.

#include "bellcut/graphs.hpp"
#include "bellcut/inequalities.hpp"
#include "bellcut/mappings.hpp"
#include "bellcut/polyhedra.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellcut {

// ---------------------------------------------------------------------------
// Generic block-diagonal solver
//
//   maximize <C, X>  s.t.  <A_k, X> = b_k,  X = diag(X_1, ..., X_r) >= 0
//   minimize b.y     s.t.  sum_k y_k A_k - C = Z >= 0

/// Symmetric sparse entry: contributes `value` at (row, col) and (col, row).
struct SparseEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0;
};

struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<SparseEntry> objective;
  std::vector<std::vector<SparseEntry>> constraints;
  std::vector<double> rhs;
};

struct SdpOptions {
  int max_iterations = 200;
  double feasibility_tol = 1e-9;
  double gap_tol = 1e-7;
  double step_fraction = 0.95;
};

struct SdpResult {
  std::vector<Eigen::MatrixXd> X;
  std::vector<Eigen::MatrixXd> Z;
  Eigen::VectorXd y;
  double primal_objective = 0;
  double dual_objective = 0;
  int iterations = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  double relative_gap = 0;
};

/// Primal-dual path following (HKM direction, Mehrotra predictor-corrector)
/// from X = I. Throws ConvergenceError carrying the primal/dual bracket when
/// the tolerances are not met within the iteration cap.
SdpResult solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

// ---------------------------------------------------------------------------
// Elliptope problems

/// Nodes are ordered as in BipartiteShape::nodes() / SuspensionShape::nodes().
struct EdgeWeightedObjective {
  bool suspended = false;
  int m = 0;
  int n = 0;
  std::vector<double> weights;  ///< one per edge, library edge order
  double offset = 0;

  int node_count() const { return (suspended ? 1 : 0) + m + n; }
  /// Node pair (as positions) of each edge coordinate.
  std::vector<std::pair<int, int>> edge_nodes() const;
  void validate() const;

  /// Correlation or suspension inequalities; the RHS is not part of the objective.
  static EdgeWeightedObjective from_inequality(const LinearInequality& ineq);
};

inline constexpr int kMaxSdpNodes = 64;

struct SdpSolution {
  double value = 0;                 ///< objective at the primal solution, offset included
  double dual_bound = 0;            ///< dual objective, offset included
  Eigen::MatrixXd gram;             ///< unit-diagonal PSD matrix over all nodes
  Eigen::MatrixXd vectors;          ///< unit rows with vectors * vectors^T ~ gram
  std::vector<double> edge_values;  ///< gram entries in edge order
  std::vector<int> active_constraints;  ///< RMet rows tight at the optimum (rmet_hrep order)
  int iterations = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
  double relative_gap = 0;

  double min_eigenvalue() const;
  double max_diagonal_defect() const;
};

/// max sum_e w_e H_e over {H >= 0, diag H = 1}.
SdpSolution elliptope_max(const EdgeWeightedObjective& objective, const SdpOptions& options = {});

/// Same, restricted to edge values satisfying the 4mn RMet inequalities of the
/// suspension. Correlation objectives are lifted with zero root weights.
SdpSolution elliptope_rmet_max(const EdgeWeightedObjective& objective, const SdpOptions& options = {});

/// Realization for the shape of the objective.
GramRealization realization(const SdpSolution& s, const EdgeWeightedObjective& objective);

inline constexpr double kMembershipThreshold = -1e-8;
/// Width of the t* bracket accepted from a solve that stopped short of its tolerances.
inline constexpr double kMembershipBracket = 1e-6;

struct MembershipResult {
  bool member = false;
  bool boundary = false;  ///< t* in (-1e-8, 0)
  /// t*, the largest t with a completion H >= t I, as its dual upper bound.
  double margin = 0;
  /// Smallest eigenvalue of the reported completion; t* lies in [lower_bound, margin].
  double lower_bound = 0;
  /// Member: a completion H with unit diagonal and the given edge values, min eigenvalue lower_bound.
  Eigen::MatrixXd completion;
  /// Non-member: sum_e w_e H_e <= 1 holds on the elliptope but fails at x.
  std::vector<double> separator;
  double separator_value = 0;  ///< sum_e w_e x_e
  int iterations = 0;
};

/// Elliptope membership of edge values on a graph with `nodes` nodes.
MembershipResult elliptope_membership(int nodes, const std::vector<std::pair<int, int>>& edges,
                                      const std::vector<double>& values, const SdpOptions& options = {});
MembershipResult elliptope_membership(const CorrelationVector<double>& x, const SdpOptions& options = {});
MembershipResult elliptope_membership(const SuspensionVector<double>& x, const SdpOptions& options = {});

inline constexpr long long kCutConditionDenominator = 1'000'000'000'000LL;
inline constexpr double kCutConditionTol = 1e-9;

struct CutConditionResult {
  bool passes = false;
  std::vector<double> y;  ///< (2/pi) arcsin x
  RationalVector y_rational;
  MembershipCertificate certificate;
  /// Outside: violation of the separator at y_rational, scaled by the
  /// separator's largest coefficient. Zero when inside.
  double violation = 0;
};

CutConditionResult cut_condition(const CorrelationVector<double>& x);

// ---------------------------------------------------------------------------
// Points of RMet outside the elliptope whose correlations are in E(K_{m,n})

struct GapSearchOptions {
  int samples = 1000;
  std::uint64_t seed = 1;
  /// Report a point only when its margin is below -threshold.
  double threshold = 1e-6;
  /// Dimension of the random unit vectors realizing the correlations; 0 means m + n.
  int dimension = 0;
};

struct GapSearchResult {
  int samples = 0;
  int in_rmet = 0;    ///< samples placed on RMet
  int undecided = 0;  ///< membership solves that did not converge
  std::vector<SuspensionVector<double>> found;
  std::vector<double> margins;  ///< membership margin of each found point
};

/// Random search: correlations are Gram entries of random unit vectors (so the
/// projection lies in E(K_{m,n})); a random root direction in [-1, 1]^{m+n} is
/// scaled to the RMet boundary. Each point is tested for membership of E(suspension).
GapSearchResult rmet_gap_search(const BipartiteShape& shape, const GapSearchOptions& options = {});

}  // namespace bellcut
