#pragma once

// JSON forms of points, inequalities and solver results, plus the bracket
// layout used to print coefficient matrices.
//
//   point:       {"space": "behavior"|"cor"|"suspension"|"correlation",
//                 "shape": {"m": m, "n": n, "suspended": bool}, "coords": [...]}
//   inequality:  {"space": ..., "rows": m, "cols": n, "a": [[...]], "rhs": r}
//                with "sides" for the complete space.
// Rationals are written as "num/den" strings; on input, JSON numbers are read
// through their decimal text, so 0.1 means exactly 1/10.

#include "bellcut/inequalities.hpp"
#include "bellcut/number.hpp"
#include "bellcut/polyhedra.hpp"
#include "bellcut/sdp.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bellcut {

using Json = nlohmann::json;

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json rational_vector_json(const RationalVector& v);
RationalVector rational_vector_from_json(const Json& j);

Json inequality_json(const LinearInequality& ineq);
/// Unknown keys are ignored, so decorated outputs of other commands parse.
LinearInequality inequality_from_json(const Json& j);

/// Rows in parentheses with aligned columns and "<= rhs" after the last row.
/// Bipartite spaces use the matrix() layout; the complete space prints its
/// upper triangle with blanks below the diagonal.
std::string format_inequality(const LinearInequality& ineq);

enum class PointSpace { behavior, cor, suspension, correlation };
std::string to_string(PointSpace s);
PointSpace parse_point_space(const std::string& text);

struct Point {
  PointSpace space = PointSpace::correlation;
  int m = 0;
  int n = 0;
  RationalVector coords;

  /// Coordinate count implied by space and shape.
  int expected_size() const;
  void validate() const;
  std::vector<double> approx() const;
};

Json point_json(const Point& p);
/// Float backend: coordinates written as JSON numbers.
Json point_json(PointSpace space, int m, int n, const std::vector<double>& coords);
Point point_from_json(const Json& j);

Json halfspace_json(const Halfspace& h);
Json certificate_json(const MembershipCertificate& c);
Json matrix_json(const Eigen::MatrixXd& m);
Json realization_json(const GramRealization& g);

/// One document, a JSON array (its elements), or JSON lines. Objects carrying
/// only a "provenance" key are dropped.
std::vector<Json> read_json_documents(std::istream& in);

}  // namespace bellcut
