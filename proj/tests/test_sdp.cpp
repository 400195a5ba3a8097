#include "bellcut/sdp.hpp"

#include "bellcut/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bellcut;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

EdgeWeightedObjective chsh_objective() { return {false, 2, 2, {1, 1, 1, -1}, 0}; }

// Largest objective value over the cut vectors of the objective's graph.
double cut_max(const EdgeWeightedObjective& obj) {
  double best = -1e300;
  for (const auto& c : oracle::sign_labellings(obj.node_count())) {
    const auto x = obj.suspended ? oracle::suspension_cut(obj.m, obj.n, c) : oracle::bipartite_cut(obj.m, obj.n, c);
    double s = 0;
    for (std::size_t e = 0; e < x.size(); ++e) s += obj.weights[e] * x[e];
    best = std::max(best, s);
  }
  return best + obj.offset;
}

EdgeWeightedObjective random_objective(std::mt19937& rng, bool suspended, int m, int n) {
  std::uniform_real_distribution<double> w(-1, 1);
  EdgeWeightedObjective obj{suspended, m, n, {}, 0};
  const int count = (suspended ? m + n : 0) + m * n;
  for (int e = 0; e < count; ++e) obj.weights.push_back(w(rng));
  return obj;
}

void expect_solution_invariants(const SdpSolution& s, const EdgeWeightedObjective& obj) {
  const Eigen::MatrixXd& h = s.gram;
  EXPECT_EQ(h, h.transpose());
  EXPECT_LE(s.max_diagonal_defect(), 1e-8);
  EXPECT_GE(s.min_eigenvalue(), -1e-8);
  double recomputed = obj.offset;
  const auto edges = obj.edge_nodes();
  for (std::size_t e = 0; e < edges.size(); ++e) recomputed += obj.weights[e] * h(edges[e].first, edges[e].second);
  EXPECT_LE(std::abs(recomputed - s.value), 1e-7 * std::max(1.0, std::abs(s.value)));
}

}  // namespace

TEST(Solver, TinyLinearProgramThroughOneByOneBlocks) {
  // max x1 + 2 x2 s.t. x1 + x2 = 1, x >= 0
  SdpProblem p;
  p.block_sizes = {1, 1};
  p.objective = {{0, 0, 0, 1}, {1, 0, 0, 2}};
  p.constraints = {{{0, 0, 0, 1}, {1, 0, 0, 1}}};
  p.rhs = {1};
  const SdpResult r = solve_sdp(p);
  EXPECT_NEAR(r.primal_objective, 2, 1e-7);
  EXPECT_NEAR(r.X[1](0, 0), 1, 1e-6);
}

TEST(Solver, RejectsMalformedProblems) {
  SdpProblem p;
  p.block_sizes = {2};
  p.constraints = {{{0, 2, 0, 1}}};
  p.rhs = {1};
  EXPECT_THROW(solve_sdp(p), ValidationError);
  p.constraints = {{{0, 1, 0, 1}}};
  p.rhs = {};
  EXPECT_THROW(solve_sdp(p), ValidationError);
}

TEST(Solver, IterationCapReportsBracket) {
  SdpOptions opts;
  opts.max_iterations = 2;
  try {
    elliptope_max(chsh_objective(), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.lower_bound()));
    EXPECT_TRUE(std::isfinite(e.upper_bound()));
  }
}

TEST(ElliptopeMax, ChshReachesTsirelsonBound) {
  const auto obj = chsh_objective();
  const SdpSolution s = elliptope_max(obj);
  EXPECT_NEAR(s.value, 2 * kSqrt2, 1e-6);
  expect_solution_invariants(s, obj);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_NEAR(std::abs(s.edge_values[e]), 1 / kSqrt2, 1e-5);
}

TEST(ElliptopeMax, ChshMatchesPlanarGrid) {
  // unit vectors in the plane at angles a1, a2, b1, b2 (a1 = 0 by rotation)
  const int steps = 720;
  double best = -10;
  const double d = 2 * std::numbers::pi / steps;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const double a2 = i * d, b1 = j * d;
      // for fixed a1, a2, b1 the best b2 aligns with u1 - u2
      const double s = std::cos(b1) + std::cos(a2 - b1) + std::sqrt(2 - 2 * std::cos(a2));
      best = std::max(best, s);
    }
  EXPECT_NEAR(elliptope_max(chsh_objective()).value, best, 1e-4);
}

TEST(ElliptopeMax, SingleEdge) {
  const EdgeWeightedObjective obj{false, 1, 1, {1}, 0};
  const SdpSolution s = elliptope_max(obj);
  EXPECT_NEAR(s.value, 1, 1e-7);
  EXPECT_NEAR(s.gram(0, 1), 1, 1e-6);
}

TEST(ElliptopeMax, OffsetIsAdded) {
  auto obj = chsh_objective();
  obj.offset = -2;
  EXPECT_NEAR(elliptope_max(obj).value, 2 * kSqrt2 - 2, 1e-6);
}

TEST(ElliptopeMax, DominatesCutsOnK33) {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto obj = random_objective(rng, false, 3, 3);
    const SdpSolution s = elliptope_max(obj);
    // integral optima are approached from inside within the relative gap tolerance
    const double cut = cut_max(obj);
    EXPECT_GE(s.value, cut - 1e-7 * (1 + 2 * std::abs(cut)));
    EXPECT_GE(s.dual_bound, cut - 1e-8);
    expect_solution_invariants(s, obj);
  }
}

TEST(ElliptopeMax, Guards) {
  EdgeWeightedObjective big{false, 40, 40, std::vector<double>(1600, 1.0), 0};
  EXPECT_THROW(elliptope_max(big), GuardError);
  EdgeWeightedObjective wrong{false, 2, 2, {1, 1}, 0};
  EXPECT_THROW(elliptope_max(wrong), ValidationError);
  EdgeWeightedObjective nan{false, 1, 1, {std::nan("")}, 0};
  EXPECT_THROW(elliptope_max(nan), ValidationError);
}

TEST(ElliptopeRmetMax, I3322Value) {
  const auto obj = EdgeWeightedObjective::from_inequality(catalog_entry("i3322"));
  EXPECT_TRUE(obj.suspended);
  const SdpSolution s = elliptope_rmet_max(obj);
  EXPECT_NEAR(s.value, 2 * (kSqrt3 + 1), 1e-4);
  EXPECT_NEAR(s.value, 5.4641, 1e-4);
  expect_solution_invariants(s, obj);
  EXPECT_FALSE(s.active_constraints.empty());
  // without RMet the bound is weaker
  EXPECT_GT(elliptope_max(obj).value, s.value + 1e-3);
}

TEST(ElliptopeRmetMax, I3322OptimizerMatchesKnownVectors) {
  const auto obj = EdgeWeightedObjective::from_inequality(catalog_entry("i3322"));
  const SdpSolution s = elliptope_rmet_max(obj);
  const double k = 1 / (2 * kSqrt3);
  Eigen::MatrixXd v(7, 4);
  v << 1, 0, 0, 0,                                  //
      k * (1 - kSqrt3), 0, 2 * k, k * (kSqrt3 + 1),   //
      k * (1 - kSqrt3), 0, -2 * k, k * (kSqrt3 + 1),  //
      0, 1, 0, 0,                                     //
      k * (kSqrt3 - 1), 2 * k, 0, k * (kSqrt3 + 1),   //
      k * (kSqrt3 - 1), -2 * k, 0, k * (kSqrt3 + 1),  //
      0, 0, 1, 0;
  const Eigen::MatrixXd expected = v * v.transpose();
  EXPECT_LE((s.gram - expected).cwiseAbs().maxCoeff(), 1e-4);
  const GramRealization g = realization(s, obj);
  EXPECT_EQ(g.kind(), GramRealization::Kind::suspension);
  EXPECT_LE((g.gram_matrix() - expected).cwiseAbs().maxCoeff(), 1e-4);
  EXPECT_LE(g.max_norm_defect(), 1e-9);
}

TEST(ElliptopeRmetMax, I3322ClassicalBoundIsBelow) {
  const auto obj = EdgeWeightedObjective::from_inequality(catalog_entry("i3322"));
  EXPECT_DOUBLE_EQ(cut_max(obj), 4);
}

TEST(ElliptopeRmetMax, ChshWithZeroRoots) {
  const auto obj = chsh_objective();
  const SdpSolution s = elliptope_rmet_max(obj);
  EXPECT_NEAR(s.value, 2 * kSqrt2, 1e-6);
  EXPECT_EQ(s.edge_values.size(), 4U);
  EXPECT_TRUE(s.active_constraints.empty());
}

TEST(ElliptopeRmetMax, ZeroObjective) {
  const EdgeWeightedObjective obj{true, 2, 2, std::vector<double>(8, 0.0), 0};
  const SdpSolution s = elliptope_rmet_max(obj);
  EXPECT_NEAR(s.value, 0, 1e-9);
  EXPECT_LE((s.gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(ElliptopeRmetMax, RelaxationChain) {
  std::mt19937 rng(5);
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
  for (const auto& [m, n] : shapes)
    for (int t = 0; t < 100; ++t) {
      const auto obj = random_objective(rng, true, m, n);
      const double cut = cut_max(obj);
      const SdpSolution r = elliptope_rmet_max(obj);
      const SdpSolution e = elliptope_max(obj);
      const double slack = 1e-7 * (1 + 2 * std::abs(cut));
      EXPECT_LE(cut, r.value + slack) << m << "x" << n << " #" << t;
      EXPECT_LE(r.value, e.value + slack) << m << "x" << n << " #" << t;
    }
}

TEST(ElliptopeRmetMax, OptimizerSatisfiesRmet) {
  std::mt19937 rng(9);
  const SuspensionShape shape(2, 3);
  const HRep rmet = rmet_hrep(shape);
  for (int t = 0; t < 20; ++t) {
    const auto obj = random_objective(rng, true, 2, 3);
    const SdpSolution s = elliptope_rmet_max(obj);
    for (const auto& h : rmet.inequalities) {
      double lhs = 0;
      for (std::size_t e = 0; e < h.a.size(); ++e) lhs += to_double(h.a[e]) * s.edge_values[e];
      EXPECT_LE(lhs, to_double(h.rhs) + 1e-7);
    }
  }
}

TEST(ElliptopeRmetMax, LiftedOptimizerIsBehavior) {
  std::mt19937 rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto obj = random_objective(rng, true, 2, 2);
    const SdpSolution s = elliptope_rmet_max(obj);
    const auto lifted = lift_to_bipartite_gram(realization(s, obj));
    EXPECT_TRUE(behavior_from_lifted(lifted).is_behavior(1e-8)) << t;
  }
  const auto obj = EdgeWeightedObjective::from_inequality(catalog_entry("i3322"));
  const auto lifted = lift_to_bipartite_gram(realization(elliptope_rmet_max(obj), obj));
  EXPECT_TRUE(behavior_from_lifted(lifted).is_behavior(1e-8));
}

TEST(ElliptopeRmetMax, CenteringKeepsMembership) {
  std::mt19937 rng(33);
  for (int t = 0; t < 20; ++t) {
    const auto obj = random_objective(rng, true, 2, 3);
    const SdpSolution s = elliptope_rmet_max(obj);
    SuspensionVector<double> x(SuspensionShape(2, 3));
    x.x = realization(s, obj).edge_values();
    for (int i = 0; i < x.shape.root_edge_count(); ++i) x.x[static_cast<std::size_t>(i)] = 0;
    EXPECT_TRUE(elliptope_membership(x).member) << t;
  }
}

TEST(Membership, ZeroPointHasUnitMargin) {
  const CorrelationVector<double> x(BipartiteShape(3, 3));
  const MembershipResult r = elliptope_membership(x);
  EXPECT_TRUE(r.member);
  EXPECT_FALSE(r.boundary);
  EXPECT_NEAR(r.margin, 1, 1e-7);
  EXPECT_LE((r.completion - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Membership, TsirelsonPointOnBoundary) {
  CorrelationVector<double> x(BipartiteShape(2, 2));
  x.x = {1 / kSqrt2, 1 / kSqrt2, 1 / kSqrt2, -1 / kSqrt2};
  const MembershipResult r = elliptope_membership(x);
  ASSERT_TRUE(r.member);
  EXPECT_NEAR(r.margin, 0, 1e-6);
  EXPECT_NEAR(r.completion(0, 0), 1, 1e-6);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r.completion).eigenvalues().minCoeff(), -1e-7);
}

TEST(Membership, QuarterPointOnSuspension) {
  SuspensionVector<double> x(SuspensionShape(2, 2));
  x.x.assign(8, -0.25);
  const MembershipResult r = elliptope_membership(x);
  EXPECT_TRUE(r.member);
  EXPECT_GT(r.margin, 0);
  // every RMet form stays within its bound at this point
  const HRep rmet = rmet_hrep(SuspensionShape(2, 2));
  for (const auto& h : rmet.inequalities) EXPECT_LE(dot(h.a, RationalVector(8, Rational(-1, 4))), h.rhs);
}

TEST(Membership, NonMemberSeparator) {
  CorrelationVector<double> x(BipartiteShape(2, 2));
  x.x = {0.9, 0.9, 0.9, -0.9};
  const MembershipResult r = elliptope_membership(x);
  EXPECT_FALSE(r.member);
  EXPECT_LT(r.margin, -1e-3);
  ASSERT_EQ(r.separator.size(), 4U);
  EXPECT_GT(r.separator_value, 1 + 1e-4);
  // the separator is bounded by 1 on the elliptope
  const EdgeWeightedObjective obj{false, 2, 2, r.separator, 0};
  EXPECT_LE(elliptope_max(obj).value, 1 + 1e-6);
}

TEST(Membership, RejectsOutOfRange) {
  CorrelationVector<double> x(BipartiteShape(1, 1));
  x.x = {1.5};
  EXPECT_THROW(elliptope_membership(x), ValidationError);
  EXPECT_THROW(elliptope_membership(3, {{0, 0}}, {0.5}), ValidationError);
}

TEST(CutCondition, Examples) {
  CorrelationVector<double> x(BipartiteShape(2, 2));
  auto r = cut_condition(x);
  EXPECT_TRUE(r.passes);
  for (double y : r.y) EXPECT_EQ(y, 0);

  x.x = {1 / kSqrt2, 1 / kSqrt2, 1 / kSqrt2, -1 / kSqrt2};
  r = cut_condition(x);
  EXPECT_TRUE(r.passes);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_NEAR(std::abs(r.y[e]), 0.5, 1e-12);

  x.x = {0.9, 0.9, 0.9, -0.9};
  r = cut_condition(x);
  EXPECT_FALSE(r.passes);
  EXPECT_NEAR(r.y[0] + r.y[1] + r.y[2] - r.y[3], 4 * 2 / std::numbers::pi * std::asin(0.9), 1e-12);
  EXPECT_GT(r.y[0] + r.y[1] + r.y[2] - r.y[3], 2.85);
  ASSERT_TRUE(r.certificate.separator.has_value());
  EXPECT_GT(r.violation, 0.1);
  EXPECT_TRUE(verify_certificate(r.certificate, r.y_rational, cut_vectors(BipartiteShape(2, 2))));
}

TEST(CutCondition, AgreesWithMembershipOnK22) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1);
  int compared = 0;
  for (int t = 0; t < 500; ++t) {
    CorrelationVector<double> x(BipartiteShape(2, 2));
    for (auto& v : x.x) v = u(rng);
    const MembershipResult m = elliptope_membership(x);
    if (std::abs(m.margin) < 1e-6) continue;
    EXPECT_EQ(m.member, cut_condition(x).passes) << t;
    ++compared;
  }
  EXPECT_GT(compared, 450);
}

TEST(GapSearch, PointsLieOnRmetWithCorrelationsInTheElliptope) {
  GapSearchOptions opts;
  opts.samples = 60;
  opts.seed = 11;
  const GapSearchResult r = rmet_gap_search(BipartiteShape(2, 3), opts);
  EXPECT_EQ(r.samples, 60);
  EXPECT_EQ(r.in_rmet + r.undecided, 60);
  ASSERT_EQ(r.found.size(), r.margins.size());
  for (double margin : r.margins) EXPECT_LT(margin, -opts.threshold);
  const GapSearchResult again = rmet_gap_search(BipartiteShape(2, 3), opts);
  EXPECT_EQ(again.found.size(), r.found.size());
  EXPECT_EQ(again.in_rmet, r.in_rmet);
}
