#include "bellcut/io.hpp"

#include "bellcut/errors.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <sstream>

namespace bellcut {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw ValidationError("expected a number or a rational string, got " + j.dump());
}

Json rational_vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

// ---------------------------------------------------------------------------

Json inequality_json(const LinearInequality& ineq) {
  Json out;
  out["space"] = to_string(ineq.space);
  const auto m = ineq.matrix();
  if (ineq.space == Space::complete) {
    out["rows"] = m.size();
    out["cols"] = m.size();
    out["sides"] = ineq.sides;
  } else {
    out["rows"] = ineq.rows;
    out["cols"] = ineq.cols;
  }
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(rational_vector_json(r));
  out["a"] = rows;
  out["rhs"] = rational_json(ineq.rhs);
  return out;
}

LinearInequality inequality_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("inequality must be a JSON object");
  for (const char* key : {"space", "a", "rhs"})
    if (!j.contains(key)) throw ValidationError(std::string("inequality is missing \"") + key + "\"");
  const Space space = parse_space(j.at("space").get<std::string>());
  std::vector<RationalVector> m;
  if (!j.at("a").is_array()) throw ValidationError("\"a\" must be a matrix");
  for (const auto& row : j.at("a")) m.push_back(rational_vector_from_json(row));
  const std::string sides = j.contains("sides") ? j.at("sides").get<std::string>() : std::string();
  LinearInequality out = LinearInequality::from_matrix(space, m, rational_from_json(j.at("rhs")), sides);
  if (space != Space::complete) {
    if (j.contains("rows") && j.at("rows").get<int>() != out.rows) throw ValidationError("\"rows\" disagrees with \"a\"");
    if (j.contains("cols") && j.at("cols").get<int>() != out.cols) throw ValidationError("\"cols\" disagrees with \"a\"");
  }
  out.validate();
  return out;
}

std::string format_inequality(const LinearInequality& ineq) {
  const auto m = ineq.matrix();
  const bool triangle = ineq.space == Space::complete;
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto& row = cells.emplace_back();
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      row.push_back(triangle && j <= i ? std::string() : to_string(m[i][j]));
      width = std::max(width, row.back().size());
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << "(";
    for (const auto& c : cells[i]) out << ' ' << std::string(width - c.size(), ' ') << c;
    out << " )";
    if (i + 1 == cells.size()) out << " <= " << to_string(ineq.rhs);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::string to_string(PointSpace s) {
  switch (s) {
    case PointSpace::behavior: return "behavior";
    case PointSpace::cor: return "cor";
    case PointSpace::suspension: return "suspension";
    case PointSpace::correlation: return "correlation";
  }
  return {};
}

PointSpace parse_point_space(const std::string& text) {
  for (PointSpace s : {PointSpace::behavior, PointSpace::cor, PointSpace::suspension, PointSpace::correlation})
    if (text == to_string(s)) return s;
  throw ValidationError("unknown point space \"" + text + "\" (behavior, cor, suspension, correlation)");
}

int Point::expected_size() const {
  switch (space) {
    case PointSpace::behavior: return 4 * m * n;
    case PointSpace::cor:
    case PointSpace::suspension: return m + n + m * n;
    case PointSpace::correlation: return m * n;
  }
  return 0;
}

void Point::validate() const {
  if (m < 1 || n < 1) throw ValidationError("point shape needs m, n >= 1");
  if (static_cast<int>(coords.size()) != expected_size())
    throw ValidationError(to_string(space) + " point on (" + std::to_string(m) + "," + std::to_string(n) + ") needs " +
                          std::to_string(expected_size()) + " coordinates, got " + std::to_string(coords.size()));
}

std::vector<double> Point::approx() const {
  std::vector<double> out;
  for (const auto& c : coords) out.push_back(to_double(c));
  return out;
}

namespace {

Json shape_json(PointSpace space, int m, int n) {
  return {{"m", m}, {"n", n}, {"suspended", space == PointSpace::suspension}};
}

}  // namespace

Json point_json(const Point& p) {
  p.validate();
  return {{"space", to_string(p.space)}, {"shape", shape_json(p.space, p.m, p.n)}, {"coords", rational_vector_json(p.coords)}};
}

Json point_json(PointSpace space, int m, int n, const std::vector<double>& coords) {
  return {{"space", to_string(space)}, {"shape", shape_json(space, m, n)}, {"coords", coords}};
}

Point point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("coords"))
    throw ValidationError("point must be an object with \"shape\" and \"coords\"");
  const Json& shape = j.at("shape");
  Point p;
  p.m = shape.at("m").get<int>();
  p.n = shape.at("n").get<int>();
  const bool suspended = shape.value("suspended", false);
  if (j.contains("space")) {
    p.space = parse_point_space(j.at("space").get<std::string>());
    if (suspended != (p.space == PointSpace::suspension))
      throw ValidationError("\"suspended\" disagrees with \"space\"");
  } else {
    // without a space tag the coordinate count decides where it can
    const std::size_t size = j.at("coords").size();
    const auto mn = static_cast<std::size_t>(p.m * p.n);
    if (suspended) p.space = PointSpace::suspension;
    else if (size == mn) p.space = PointSpace::correlation;
    else if (size == 4 * mn) p.space = PointSpace::behavior;
    else throw ValidationError("point without \"space\" is ambiguous; add \"space\"");
  }
  p.coords = rational_vector_from_json(j.at("coords"));
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------

Json halfspace_json(const Halfspace& h) { return {{"a", rational_vector_json(h.a)}, {"rhs", rational_json(h.rhs)}}; }

Json certificate_json(const MembershipCertificate& c) {
  Json out{{"inside", c.inside}};
  if (c.inside) {
    Json w = Json::array();
    for (const auto& [k, weight] : c.weights) w.push_back({{"vertex", k}, {"weight", rational_json(weight)}});
    out["weights"] = w;
  } else if (c.separator) {
    out["separator"] = halfspace_json(*c.separator);
  }
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Json realization_json(const GramRealization& g) {
  Json out{{"kind", g.kind() == GramRealization::Kind::suspension ? "suspension" : "bipartite"},
           {"m", g.m()},
           {"n", g.n()},
           {"dimension", g.ambient_dimension()}};
  const auto row = [&](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  if (g.kind() == GramRealization::Kind::suspension) out["root"] = row(g.root());
  Json alice = Json::array(), bob = Json::array();
  for (int i = 0; i < g.m(); ++i) alice.push_back(row(g.alice(i)));
  for (int j = 0; j < g.n(); ++j) bob.push_back(row(g.bob(j)));
  out["alice"] = alice;
  out["bob"] = bob;
  return out;
}

std::vector<Json> read_json_documents(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Json> docs;
  Json whole = Json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    if (whole.is_array()) docs.assign(whole.begin(), whole.end());
    else docs.push_back(std::move(whole));
  } else {
    std::istringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
      ++number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Json doc = Json::parse(line, nullptr, false);
      if (doc.is_discarded()) throw ValidationError("malformed JSON on input line " + std::to_string(number));
      docs.push_back(std::move(doc));
    }
  }
  std::erase_if(docs, [](const Json& d) { return d.is_object() && d.size() == 1 && d.contains("provenance"); });
  return docs;
}

}  // namespace bellcut
