#include "bellcut/errors.hpp"
#include "bellcut/mappings.hpp"
#include "bellcut/polyhedra.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace bellcut;

namespace {

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

// Facets of conv(points) with coefficients in {-1,0,1}, found by brute force and
// a floating-point rank test. Only usable on small integer point sets.
std::set<RationalVector> small_coefficient_facets(const std::vector<std::vector<int>>& points) {
  const int d = static_cast<int>(points.front().size());
  std::set<RationalVector> out;
  int total = 1;
  for (int k = 0; k < d; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<int> a(static_cast<std::size_t>(d));
    for (int k = 0, c = code; k < d; ++k, c /= 3) a[static_cast<std::size_t>(k)] = c % 3 - 1;
    if (std::all_of(a.begin(), a.end(), [](int c) { return c == 0; })) continue;
    long best = LONG_MIN;
    for (const auto& p : points) {
      long s = 0;
      for (int k = 0; k < d; ++k) s += a[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
      best = std::max(best, s);
    }
    std::vector<const std::vector<int>*> roots;
    for (const auto& p : points) {
      long s = 0;
      for (int k = 0; k < d; ++k) s += a[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
      if (s == best) roots.push_back(&p);
    }
    if (static_cast<int>(roots.size()) < d) continue;
    Eigen::MatrixXd diff(static_cast<Eigen::Index>(roots.size() - 1), d);
    for (std::size_t r = 1; r < roots.size(); ++r)
      for (int k = 0; k < d; ++k)
        diff(static_cast<Eigen::Index>(r - 1), k) = (*roots[r])[static_cast<std::size_t>(k)] - (*roots[0])[static_cast<std::size_t>(k)];
    if (Eigen::FullPivLU<Eigen::MatrixXd>(diff).rank() != d - 1) continue;
    RationalVector key(a.begin(), a.end());
    key.push_back(best);
    out.insert(key);
  }
  return out;
}

std::set<RationalVector> as_keys(const HRep& h) {
  std::set<RationalVector> out;
  for (const auto& f : h.inequalities) {
    const auto n = normalized(f);
    RationalVector key = n.a;
    key.push_back(n.rhs);
    out.insert(key);
  }
  return out;
}

std::vector<std::vector<int>> as_ints(const VRep& v) {
  std::vector<std::vector<int>> out;
  for (const auto& x : v.vertices) {
    std::vector<int> p;
    for (const auto& c : x) p.push_back(static_cast<int>(c.convert_to<long>()));
    out.push_back(p);
  }
  return out;
}

const Halfspace kChsh{rv({1, 1, 1, -1}), 2};

}  // namespace

TEST(CutVectors, Counts) {
  EXPECT_EQ(cut_vectors(BipartiteShape(1, 1)).vertices, (std::vector<RationalVector>{rv({1}), rv({-1})}));
  const auto k22 = cut_vectors(BipartiteShape(2, 2));
  EXPECT_EQ(k22.vertices.size(), 8U);
  EXPECT_EQ(k22.dimension, 4);
  EXPECT_EQ(cut_vectors(SuspensionShape(2, 2)).vertices.size(), 16U);
  EXPECT_EQ(cut_vectors(SuspensionShape(3, 3)).vertices.size(), 64U);
  EXPECT_EQ(cut_vectors(CompleteShape::unlabeled(5)).vertices.size(), 16U);
  EXPECT_THROW(cut_vectors(BipartiteShape(13, 12)), GuardError);
  EXPECT_THROW(cor_vertices(BipartiteShape(13, 12)), GuardError);
}

TEST(CutVectors, MatchOracleInOrder) {
  for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    const auto cuts = cut_vectors(BipartiteShape(m, n));
    std::set<RationalVector> seen(cuts.vertices.begin(), cuts.vertices.end());
    EXPECT_EQ(seen.size(), cuts.vertices.size());
    for (std::size_t k = 0; k < cuts.vertices.size(); ++k)
      EXPECT_EQ(cuts.vertices[k], oracle::to_rational(oracle::bipartite_cut(m, n, cut_signs(m + n, k))));
    const auto scuts = cut_vectors(SuspensionShape(m, n));
    for (std::size_t k = 0; k < scuts.vertices.size(); ++k)
      EXPECT_EQ(scuts.vertices[k], oracle::to_rational(oracle::suspension_cut(m, n, cut_signs(1 + m + n, k))));
  }
}

TEST(CutVectors, SuspensionCutsWithPositiveRootAreCovarianceImages) {
  const BipartiteShape s(2, 2);
  std::set<RationalVector> images;
  for (const auto& v : cor_vertices(s).vertices) images.insert(covariance(CorVector<Rational>::from_coords(s, v)).x);
  const auto cuts = cut_vectors(SuspensionShape(s));
  EXPECT_EQ(std::set<RationalVector>(cuts.vertices.begin(), cuts.vertices.end()), images);
}

TEST(CorVertices, ZeroOneAndInsideNoSignaling) {
  EXPECT_EQ(cor_vertices(BipartiteShape(1, 1)).vertices.size(), 4U);
  const auto v22 = cor_vertices(BipartiteShape(2, 2));
  EXPECT_EQ(v22.vertices.size(), 16U);
  for (const auto& v : v22.vertices)
    for (const auto& c : v) EXPECT_TRUE(c == 0 || c == 1);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const BipartiteShape s(m, n);
      const auto h = rcmet_hrep(s);
      for (const auto& v : cor_vertices(s).vertices) EXPECT_TRUE(h.contains(v));
    }
}

TEST(HReps, Sizes) {
  const auto r11 = rmet_hrep(SuspensionShape(1, 1));
  EXPECT_EQ(r11.dimension, 3);
  EXPECT_EQ(r11.inequalities.size(), 4U);
  const auto c22 = rcmet_hrep(BipartiteShape(2, 2));
  EXPECT_EQ(c22.dimension, 8);
  EXPECT_EQ(c22.inequalities.size(), 16U);
  const auto r23 = rmet_hrep(SuspensionShape(2, 3));
  EXPECT_EQ(r23.inequalities.size(), 24U);
  for (const auto& f : r23.inequalities) EXPECT_LT(Rational(0), f.rhs);
}

TEST(HReps, RmetIsHypercubeOverZeroRoots) {
  std::mt19937 rng(17);
  const SuspensionShape s(3, 3);
  const auto h = rmet_hrep(s);
  const auto cube_point = [&] {
    CorrelationVector<Rational> x{BipartiteShape(3, 3)};
    std::uniform_int_distribution<int> d(-8, 8);
    for (auto& v : x.x) v = Rational(d(rng), 8);
    return x;
  };
  for (int trial = 0; trial < 1000; ++trial) EXPECT_TRUE(h.contains(lift_zero_roots(cube_point()).x));
  // conversely: random points of RMet project into the cube
  int accepted = 0;
  std::uniform_int_distribution<int> d(-8, 8);
  while (accepted < 300) {
    SuspensionVector<Rational> x{s};
    for (auto& v : x.x) v = Rational(d(rng), 8);
    if (!h.contains(x.x)) continue;
    ++accepted;
    for (const auto& v : project_correlations(x).x) {
      EXPECT_LE(v, 1);
      EXPECT_GE(v, -1);
    }
  }
}

TEST(Membership, CentroidIsInside) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  const auto cert = hull_membership(rv({0, 0, 0, 0}), cuts);
  ASSERT_TRUE(cert.inside);
  EXPECT_TRUE(verify_certificate(cert, rv({0, 0, 0, 0}), cuts));
  Rational total = 0;
  for (const auto& [idx, w] : cert.weights) {
    EXPECT_LT(idx, cuts.vertices.size());
    EXPECT_GT(w, 0);
    total += w;
  }
  EXPECT_EQ(total, 1);
  // the simplex returns a basic solution; uniform weights are an equally valid certificate
  MembershipCertificate uniform{true, {}, std::nullopt};
  for (std::size_t k = 0; k < cuts.vertices.size(); ++k) uniform.weights.emplace_back(k, Rational(1, 8));
  EXPECT_TRUE(verify_certificate(uniform, rv({0, 0, 0, 0}), cuts));
  uniform.weights.pop_back();
  EXPECT_FALSE(verify_certificate(uniform, rv({0, 0, 0, 0}), cuts));
}

TEST(Membership, ChshViolationIsSeparated) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  const Rational f(4, 5);
  const auto point = rv({f, f, f, -f});
  const auto cert = hull_membership(point, cuts);
  ASSERT_FALSE(cert.inside);
  ASSERT_TRUE(cert.separator.has_value());
  EXPECT_TRUE(verify_certificate(cert, point, cuts));
  EXPECT_EQ(normalized(*cert.separator), kChsh);
}

TEST(Membership, ArcsinPointLiesOnChshFacet) {
  const double y = 2.0 / std::numbers::pi * std::asin(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(y, 0.5, 1e-15);
  const Rational h = rational_from_double(y, 1 << 20);
  ASSERT_EQ(h, Rational(1, 2));
  const auto point = rv({h, h, h, -h});
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  const auto cert = hull_membership(point, cuts);
  EXPECT_TRUE(cert.inside);
  EXPECT_EQ(dot(kChsh.a, point), 2);
  for (const auto& [idx, w] : cert.weights) EXPECT_EQ(dot(kChsh.a, cuts.vertices[idx]), 2);
}

TEST(Membership, RandomPointsAgreeWithFacets) {
  std::mt19937 rng(23);
  const auto cuts = cut_vectors(BipartiteShape(2, 3));
  const auto facets = dd_convert(cuts);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 150; ++trial) {
    RationalVector x(6);
    for (auto& v : x) v = Rational(d(rng), 6);
    const auto cert = hull_membership(x, cuts);
    EXPECT_TRUE(verify_certificate(cert, x, cuts));
    EXPECT_EQ(cert.inside, facets.contains(x));
  }
}

TEST(Membership, Guards) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  EXPECT_THROW(hull_membership(rv({0, 0}), cuts), ValidationError);
  EXPECT_THROW(hull_membership(rv({0, 0, 0, 0}), cuts, {.max_vertices = 4}), GuardError);
}

TEST(DoubleDescription, ChshPolytope) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  const auto h = dd_convert(cuts);
  ASSERT_EQ(h.inequalities.size(), 16U);
  EXPECT_EQ(as_keys(h), small_coefficient_facets(as_ints(cuts)));
  int trivial = 0, chsh = 0;
  for (const auto& f : h.inequalities) {
    int nonzero = 0;
    for (const auto& c : f.a) nonzero += c != 0;
    if (nonzero == 1 && f.rhs == 1) ++trivial;
    if (nonzero == 4 && f.rhs == 2) ++chsh;
    EXPECT_TRUE(facet_check(f, cuts).is_facet);
  }
  EXPECT_EQ(trivial, 8);
  EXPECT_EQ(chsh, 8);
  EXPECT_EQ(h.inequalities, dd_convert(cuts).inequalities);
}

TEST(DoubleDescription, CompleteGraphK5) {
  const auto cuts = cut_vectors(CompleteShape::unlabeled(5));
  const auto h = dd_convert(cuts);
  ASSERT_EQ(h.inequalities.size(), 56U);
  EXPECT_EQ(as_keys(h), small_coefficient_facets(as_ints(cuts)));
  int triangle = 0, pentagonal = 0;
  for (const auto& f : h.inequalities) {
    int nonzero = 0;
    for (const auto& c : f.a) nonzero += c != 0;
    triangle += nonzero == 3 && f.rhs == 1;
    pentagonal += nonzero == 10 && f.rhs == 2;
  }
  EXPECT_EQ(triangle, 40);
  EXPECT_EQ(pentagonal, 16);
}

TEST(DoubleDescription, K33FacetCounts) {
  const auto h = dd_convert(cut_vectors(BipartiteShape(3, 3)));
  EXPECT_EQ(h.inequalities.size(), 90U);
}

TEST(DoubleDescription, NoSignalingVerticesAreHalfIntegral) {
  for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}}) {
    const BipartiteShape s(m, n);
    const auto h = rcmet_hrep(s);
    const auto v = dd_convert(h);
    ASSERT_FALSE(v.vertices.empty());
    for (const auto& x : v.vertices) {
      EXPECT_TRUE(h.contains(x));
      for (const auto& c : x) EXPECT_TRUE(c == 0 || c == 1 || c == Rational(1, 2));
    }
    // integral vertices are exactly the COR vertices
    std::set<RationalVector> integral;
    for (const auto& x : v.vertices)
      if (std::all_of(x.begin(), x.end(), [](const Rational& c) { return c != Rational(1, 2); })) integral.insert(x);
    const auto cor = cor_vertices(s);
    EXPECT_EQ(integral, std::set<RationalVector>(cor.vertices.begin(), cor.vertices.end()));
    if (m == 2 && n == 2) EXPECT_EQ(v.vertices.size(), 24U);
  }
}

TEST(DoubleDescription, RoundTrip) {
  const auto cuts = cut_vectors(BipartiteShape(2, 3));
  const auto back = dd_convert(dd_convert(cuts));
  std::set<RationalVector> a(cuts.vertices.begin(), cuts.vertices.end());
  std::set<RationalVector> b(back.vertices.begin(), back.vertices.end());
  EXPECT_EQ(a, b);
}

TEST(DoubleDescription, DegenerateInputReportsAffineHull) {
  VRep v{3, {rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1}), rv({1, 1, 1})}};
  try {
    dd_convert(v);
    FAIL() << "expected DegenerateInputError";
  } catch (const DegenerateInputError& e) {
    ASSERT_EQ(e.equations().size(), 1U);
    EXPECT_EQ(e.equations()[0], "0 0 1 == 1");
  }
  const auto eq = affine_hull_equations(cor_vertices(BipartiteShape(1, 1)).vertices, 3);
  EXPECT_TRUE(eq.empty());
}

TEST(DoubleDescription, GuardsAndUnbounded) {
  EXPECT_THROW(dd_convert(cut_vectors(BipartiteShape(4, 4))), GuardError);
  HRep ray{2, {{rv({-1, 0}), 0}, {rv({0, -1}), 0}}, {}};
  EXPECT_THROW(dd_convert(ray), ValidationError);
}

TEST(FacetCheck, Examples) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  const auto chsh = facet_check(kChsh, cuts);
  EXPECT_TRUE(chsh.valid);
  EXPECT_TRUE(chsh.is_facet);
  EXPECT_EQ(chsh.tight_value, 2);
  EXPECT_EQ(chsh.root_count, 4U);
  EXPECT_EQ(chsh.affine_rank, 3);

  const auto slack = facet_check({rv({1, 0, 0, 0}), 2}, cuts);
  EXPECT_TRUE(slack.valid);
  EXPECT_FALSE(slack.is_facet);
  EXPECT_EQ(slack.root_count, 0U);

  const auto invalid = facet_check({rv({1, 1, 1, -1}), 1}, cuts);
  EXPECT_FALSE(invalid.valid);
  EXPECT_FALSE(invalid.is_facet);
  EXPECT_THROW(facet_check({rv({1}), 1}, cuts), ValidationError);
}

TEST(AffineRank, Basics) {
  EXPECT_EQ(affine_rank({}), -1);
  EXPECT_EQ(affine_rank({rv({1, 2})}), 0);
  EXPECT_EQ(affine_rank({rv({1, 2}), rv({2, 4}), rv({3, 6})}), 1);
  EXPECT_EQ(affine_rank(cut_vectors(BipartiteShape(2, 2)).vertices), 4);
}

TEST(Normalization, PositiveScalingOnly) {
  const auto n = normalized({rv({Rational(-2, 3), Rational(4, 3)}), Rational(2, 3)});
  EXPECT_EQ(n.a, rv({-1, 2}));
  EXPECT_EQ(n.rhs, 1);
  const auto e = normalized_equation({rv({-2, 4}), 6});
  EXPECT_EQ(e.a, rv({1, -2}));
  EXPECT_EQ(e.rhs, -3);
}

TEST(TextFormat, RoundTrip) {
  const auto cuts = cut_vectors(BipartiteShape(2, 2));
  std::stringstream vs;
  write_vrep(vs, cuts);
  const auto v2 = read_vrep(vs);
  EXPECT_EQ(v2.vertices, cuts.vertices);

  HRep h = dd_convert(cuts);
  h.equations.push_back({rv({1, 0, 0, Rational(1, 2)}), Rational(-3, 7)});
  std::stringstream hs;
  write_hrep(hs, h);
  const auto h2 = read_hrep(hs);
  EXPECT_EQ(h2.inequalities, h.inequalities);
  EXPECT_EQ(h2.equations, h.equations);

  std::stringstream commented("# header\nV 2 1\n\n1/2 -3\n");
  EXPECT_EQ(read_vrep(commented).vertices, (std::vector<RationalVector>{rv({Rational(1, 2), -3})}));
  std::stringstream broken("V 2 2\n1 2\n");
  EXPECT_THROW(read_vrep(broken), ValidationError);
  EXPECT_EQ(format_halfspace(kChsh), "1 1 1 -1 <= 2");
}
