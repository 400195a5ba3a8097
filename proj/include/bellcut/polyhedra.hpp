#pragma once

// Exact rational polyhedral computation: the vertex sets and H-representations
// of the cut, correlation and rooted semimetric polytopes, hull membership by
// an exact simplex method with certificates, double-description conversion in
// both directions, and facet checks.

#include "bellcut/graphs.hpp"
#include "bellcut/number.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bellcut {

/// a.x <= rhs (or a.x == rhs when used as an equation).
struct Halfspace {
  RationalVector a;
  Rational rhs;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Scales by a positive factor to coprime integers. Direction is preserved.
Halfspace normalized(const Halfspace& h);

/// Equation normalization: coprime integers and first nonzero coefficient positive.
Halfspace normalized_equation(const Halfspace& h);

struct VRep {
  int dimension = 0;
  std::vector<RationalVector> vertices;

  void validate() const;
};

struct HRep {
  int dimension = 0;
  std::vector<Halfspace> inequalities;
  std::vector<Halfspace> equations;

  void validate() const;
  bool contains(const RationalVector& x) const;
};

/// Node-count limit for exhaustive cut/COR enumeration.
inline constexpr int kMaxEnumerationNodes = 24;

/// Cut vectors x_uv = c_u c_v with the first node's sign fixed to +1 and the
/// remaining signs in binary order (node t is -1 when bit t-1 is set).
VRep cut_vectors(const BipartiteShape& shape);
VRep cut_vectors(const SuspensionShape& shape);
VRep cut_vectors(const CompleteShape& shape);

/// The sign labelling behind cut_vectors(...)[k] for a graph with `nodes` nodes.
std::vector<int> cut_signs(int nodes, std::size_t k);

/// The 2^{m+n} 0/1 vertices of the correlation polytope, node coordinates first.
VRep cor_vertices(const BipartiteShape& shape);

/// Rooted correlation semimetric polytope of K_{m,n} in cor coordinates (4mn inequalities).
HRep rcmet_hrep(const BipartiteShape& shape);
/// Rooted semimetric polytope of the suspension in edge coordinates (4mn inequalities).
HRep rmet_hrep(const SuspensionShape& shape);

struct MembershipCertificate {
  bool inside = false;
  /// inside: (vertex index, weight) pairs with positive weight.
  std::vector<std::pair<std::size_t, Rational>> weights;
  /// outside: valid for every vertex, violated by the query point.
  std::optional<Halfspace> separator;
};

struct MembershipOptions {
  std::size_t max_vertices = 5000;
};

/// Exact phase-I simplex (Bland's rule). The certificate is checked before return.
MembershipCertificate hull_membership(const RationalVector& point, const VRep& vrep,
                                      const MembershipOptions& options = {});

/// True when the certificate is consistent with `point` and `vrep`.
bool verify_certificate(const MembershipCertificate& cert, const RationalVector& point, const VRep& vrep);

struct DDOptions {
  int max_dimension = 16;
  std::size_t max_inputs = 100;
  /// Skip both guards.
  bool force = false;
};

/// Facets of conv(vertices). Rejects input that is not full-dimensional with
/// DegenerateInputError carrying the affine hull.
HRep dd_convert(const VRep& input, const DDOptions& options = {});
/// Vertices of a bounded polyhedron; sorted lexicographically.
VRep dd_convert(const HRep& input, const DDOptions& options = {});

struct FacetReport {
  bool valid = false;
  Rational tight_value;  ///< max of a.v over the vertices
  std::size_t root_count = 0;
  int affine_rank = -1;  ///< of the roots; -1 when there are none
  bool is_facet = false;
};

/// Assumes conv(vrep) is full-dimensional.
FacetReport facet_check(const Halfspace& h, const VRep& vrep);

/// Dimension of the affine hull (-1 for an empty set).
int affine_rank(const std::vector<RationalVector>& points);

/// Equations describing the affine hull of `points`, normalized.
std::vector<Halfspace> affine_hull_equations(const std::vector<RationalVector>& points, int dimension);

// Line-oriented text format:
//   V <dim> <count>            H <dim> <count>
//   x_1 ... x_d                a_1 ... a_d <= a0     (or == a0 for equations)
// Blank lines and lines starting with '#' are ignored.
void write_vrep(std::ostream& out, const VRep& v);
void write_hrep(std::ostream& out, const HRep& h);
VRep read_vrep(std::istream& in);
HRep read_hrep(std::istream& in);
std::string format_halfspace(const Halfspace& h, const char* relation = "<=");

}  // namespace bellcut
