#include "bellcut/cli.hpp"

#include "bellcut/errors.hpp"
#include "bellcut/inequalities.hpp"
#include "bellcut/io.hpp"
#include "bellcut/mappings.hpp"
#include "bellcut/polyhedra.hpp"
#include "bellcut/sdp.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef BELLCUT_VERSION
#define BELLCUT_VERSION "0.0.0"
#endif

namespace bellcut::cli {

namespace {

struct Common {
  std::string input = "-";
  bool force = false;
  bool no_timestamp = false;
  bool pretty = false;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, const Common& common, std::string command)
      : in_(in), out_(out), common_(common), command_(std::move(command)) {}

  std::istream& input() {
    if (common_.input == "-") return in_;
    file_.open(common_.input);
    if (!file_) throw ValidationError("cannot open input file " + common_.input);
    return file_;
  }

  std::vector<Json> documents() { return read_json_documents(input()); }

  Json document() {
    auto docs = documents();
    if (docs.size() != 1) throw ValidationError("expected one JSON document on input, got " + std::to_string(docs.size()));
    return docs.front();
  }

  void set(const std::string& key, Json value) { config_[key] = std::move(value); }

  Json provenance() const {
    Json p{{"tool", "bellcut"}, {"version", BELLCUT_VERSION}, {"command", command_}, {"config", config_}};
    if (!forced_.empty()) p["forced"] = forced_;
    if (!common_.no_timestamp && !std::getenv("BELLCUT_NO_TIMESTAMP")) {
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      std::ostringstream ts;
      ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
      p["timestamp"] = ts.str();
    }
    return p;
  }

  void emit(Json doc) {
    doc["provenance"] = provenance();
    out_ << doc.dump(2) << '\n';
  }

  /// JSON lines: a provenance header, then one compact document per line.
  void emit_header() { out_ << Json{{"provenance", provenance()}}.dump() << '\n'; }
  void emit_line(const Json& doc) { out_ << doc.dump() << '\n'; }

  void emit_text(const std::string& text) { out_ << text; }

  bool pretty() const { return common_.pretty; }

  /// Runs `f(force)`; on a guard refusal retries with the guard lifted when
  /// --force was given and records the refusal.
  template <class F>
  auto guarded(F&& f) {
    try {
      return f(false);
    } catch (const GuardError& e) {
      if (!common_.force) throw;
      forced_.push_back(e.what());
      return f(true);
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  const Common& common_;
  std::string command_;
  std::ifstream file_;
  Json config_ = Json::object();
  std::vector<std::string> forced_;
};

double default_gap_tol() {
  if (const char* env = std::getenv("BELLCUT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) return v;
    throw ValidationError(std::string("BELLCUT_TOL is not a positive number: ") + env);
  }
  return SdpOptions{}.gap_tol;
}

// ---------------------------------------------------------------------------
// map

template <class T>
std::vector<T> convert_point(PointSpace from, PointSpace to, bool center, const BipartiteShape& shape,
                             std::vector<T> coords) {
  const auto rank = [](PointSpace s) { return static_cast<int>(s); };
  const auto step = [&](PointSpace s, bool forward) {
    switch (s) {
      case PointSpace::behavior:
        return CorVector<T>(iota_inv(BehaviorVector<T>(shape, coords))).coords();
      case PointSpace::cor: {
        const auto p = CorVector<T>::from_coords(shape, coords);
        return forward ? covariance(p).x : iota(p).flat();
      }
      case PointSpace::suspension: {
        const SuspensionVector<T> x(SuspensionShape(shape), coords);
        return forward ? project_correlations(x).x : covariance_inv(x).coords();
      }
      case PointSpace::correlation:
        return lift_zero_roots(CorrelationVector<T>(shape, coords)).x;
    }
    return coords;
  };
  const auto walk = [&](PointSpace& at, PointSpace target) {
    while (at != target) {
      const bool forward = rank(target) > rank(at);
      coords = step(at, forward);
      at = static_cast<PointSpace>(rank(at) + (forward ? 1 : -1));
    }
  };
  PointSpace at = from;
  if (center) {
    walk(at, PointSpace::cor);
    coords = center_marginals(CorVector<T>::from_coords(shape, coords)).coords();
  }
  walk(at, to);
  return coords;
}

void cmd_map(Context& ctx, const std::string& to_text, const std::string& backend, bool center) {
  const Point p = point_from_json(ctx.document());
  const PointSpace to = parse_point_space(to_text);
  if (backend != "exact" && backend != "float") throw ValidationError("--backend must be exact or float");
  ctx.set("to", to_text);
  ctx.set("backend", backend);
  ctx.set("center", center);
  const BipartiteShape shape(p.m, p.n);
  if (backend == "exact") {
    Point q{to, p.m, p.n, convert_point<Rational>(p.space, to, center, shape, p.coords)};
    ctx.emit(point_json(q));
  } else {
    ctx.emit(point_json(to, p.m, p.n, convert_point<double>(p.space, to, center, shape, p.approx())));
  }
}

// ---------------------------------------------------------------------------
// validity and facets

LinearInequality lift_roots_into(const LinearInequality& correlation) {
  LinearInequality out = correlation;
  out.space = Space::suspension;
  out.a.insert(out.a.begin(), static_cast<std::size_t>(correlation.rows + correlation.cols), Rational(0));
  return out;
}

/// Zero-lifts `ineq` onto --graph; correlation inequalities gain zero root
/// terms when the graph is a suspension.
LinearInequality fit_to_graph(const LinearInequality& ineq, const std::string& graph) {
  if (graph.empty()) return ineq;
  const GraphSpec g = parse_graph_spec(graph);
  switch (g.kind) {
    case GraphSpec::Kind::complete:
      if (ineq.space != Space::complete || static_cast<int>(ineq.sides.size()) != g.m)
        throw ValidationError("inequality does not live on " + graph);
      return ineq;
    case GraphSpec::Kind::bipartite:
      if (ineq.space != Space::correlation && ineq.space != Space::cor)
        throw ValidationError(to_string(ineq.space) + " inequality cannot be checked on " + graph);
      return zero_lift(ineq, g.m, g.n);
    case GraphSpec::Kind::suspension:
      if (ineq.space == Space::correlation) return zero_lift(lift_roots_into(ineq), g.m, g.n);
      if (ineq.space != Space::suspension)
        throw ValidationError(to_string(ineq.space) + " inequality cannot be checked on " + graph);
      return zero_lift(ineq, g.m, g.n);
  }
  return ineq;
}

void cmd_check(Context& ctx, const std::string& graph, bool facet) {
  ctx.set("graph", graph);
  const LinearInequality fitted = fit_to_graph(inequality_from_json(ctx.document()), graph);
  const VRep vertices = reference_vertices(fitted);
  const FacetReport r = facet_check(fitted.halfspace(), vertices);
  Json out{{"valid", r.valid}, {"tight_value", rational_json(r.tight_value)}, {"vertices", vertices.vertices.size()}};
  if (facet) {
    out["is_facet"] = r.is_facet;
    out["root_count"] = r.root_count;
    out["affine_rank"] = r.affine_rank;
  } else if (!r.valid) {
    for (std::size_t k = 0; k < vertices.vertices.size(); ++k)
      if (dot(fitted.a, vertices.vertices[k]) > fitted.rhs) {
        out["violating_vertex"] = rational_vector_json(vertices.vertices[k]);
        break;
      }
  }
  ctx.emit(out);
}

void emit_inequality(Context& ctx, const LinearInequality& ineq, Json extra = Json::object()) {
  if (ctx.pretty()) {
    ctx.emit_text(format_inequality(ineq));
    return;
  }
  Json out = inequality_json(ineq);
  for (auto& [k, v] : extra.items()) out[k] = v;
  ctx.emit(out);
}

CanonicalOptions canonical_options(Context& ctx, bool pruned, std::uint64_t max_group, bool force) {
  CanonicalOptions o;
  o.pruned = pruned;
  o.max_group = force ? std::numeric_limits<std::uint64_t>::max() : max_group;
  ctx.set("pruned", pruned);
  ctx.set("max_group", max_group);
  return o;
}

void cmd_canonicalize(Context& ctx, bool pruned, std::uint64_t max_group) {
  const LinearInequality ineq = inequality_from_json(ctx.document());
  const CanonicalResult r = ctx.guarded([&](bool force) { return canonicalize(ineq, canonical_options(ctx, pruned, max_group, force)); });
  emit_inequality(ctx, r.form, {{"orbit_size", r.orbit_size.str()}, {"group_size", r.group_size.str()}});
}

void cmd_classify(Context& ctx, bool pruned, std::uint64_t max_group) {
  std::vector<LinearInequality> ineqs;
  for (const auto& doc : ctx.documents()) ineqs.push_back(inequality_from_json(doc));
  const auto classes = ctx.guarded([&](bool force) { return classify(ineqs, canonical_options(ctx, pruned, max_group, force)); });
  Json list = Json::array();
  for (const auto& c : classes) {
    Json entry = inequality_json(c.representative);
    entry["orbit_size"] = c.orbit_size.str();
    entry["members"] = c.members;
    list.push_back(entry);
  }
  ctx.emit({{"inputs", ineqs.size()}, {"class_count", classes.size()}, {"classes", list}});
}

// ---------------------------------------------------------------------------
// enumeration

struct GraphVertices {
  GraphSpec spec;
  VRep vrep;
};

GraphVertices graph_vertices(const std::string& graph) {
  GraphVertices g{parse_graph_spec(graph), {}};
  switch (g.spec.kind) {
    case GraphSpec::Kind::bipartite: g.vrep = cut_vectors(BipartiteShape(g.spec.m, g.spec.n)); break;
    case GraphSpec::Kind::suspension: g.vrep = cut_vectors(SuspensionShape(g.spec.m, g.spec.n)); break;
    case GraphSpec::Kind::complete: g.vrep = cut_vectors(CompleteShape::unlabeled(g.spec.m)); break;
  }
  return g;
}

LinearInequality facet_on(const GraphSpec& g, const Halfspace& h) {
  switch (g.kind) {
    case GraphSpec::Kind::bipartite: return LinearInequality::from_halfspace(Space::correlation, g.m, g.n, h);
    case GraphSpec::Kind::suspension: return LinearInequality::from_halfspace(Space::suspension, g.m, g.n, h);
    case GraphSpec::Kind::complete: {
      LinearInequality out{Space::complete, 0, 0, std::string(static_cast<std::size_t>(g.m), 'A'), h.a, h.rhs};
      out.validate();
      return out;
    }
  }
  return {};
}

DDOptions dd_options(bool force) {
  DDOptions o;
  o.force = force;
  return o;
}

void cmd_enumerate_facets(Context& ctx, const std::string& graph, const std::string& format) {
  if (format != "json" && format != "hrep") throw ValidationError("--format must be json or hrep");
  ctx.set("graph", graph);
  ctx.set("format", format);
  std::optional<GraphSpec> spec;
  VRep vrep;
  if (graph.empty()) {
    vrep = read_vrep(ctx.input());
  } else {
    auto g = graph_vertices(graph);
    spec = g.spec;
    vrep = std::move(g.vrep);
  }
  const HRep h = ctx.guarded([&](bool force) { return dd_convert(vrep, dd_options(force)); });
  if (format == "hrep") {
    std::ostringstream text;
    write_hrep(text, h);
    ctx.emit_text(text.str());
    return;
  }
  ctx.emit_header();
  for (const auto& f : h.inequalities)
    ctx.emit_line(spec ? inequality_json(facet_on(*spec, f)) : halfspace_json(f));
}

void cmd_enumerate_vertices(Context& ctx, const std::string& polytope, const std::string& graph, const std::string& format) {
  if (format != "json" && format != "vrep") throw ValidationError("--format must be json or vrep");
  ctx.set("polytope", polytope);
  ctx.set("graph", graph);
  ctx.set("format", format);
  HRep h;
  if (polytope == "hrep") {
    h = read_hrep(ctx.input());
  } else {
    if (graph.empty()) throw ValidationError("--polytope " + polytope + " needs --graph");
    const GraphSpec g = parse_graph_spec(graph);
    if (polytope == "rcmet" && g.kind == GraphSpec::Kind::bipartite) h = rcmet_hrep(BipartiteShape(g.m, g.n));
    else if (polytope == "rmet" && g.kind == GraphSpec::Kind::suspension) h = rmet_hrep(SuspensionShape(g.m, g.n));
    else throw ValidationError("--polytope rcmet takes K<m>,<n> and rmet takes S<m>,<n>");
  }
  const VRep v = ctx.guarded([&](bool force) { return dd_convert(h, dd_options(force)); });
  if (format == "vrep") {
    std::ostringstream text;
    write_vrep(text, v);
    ctx.emit_text(text.str());
    return;
  }
  Json vertices = Json::array();
  for (const auto& x : v.vertices) vertices.push_back(rational_vector_json(x));
  ctx.emit({{"dimension", v.dimension}, {"count", v.vertices.size()}, {"vertices", vertices}});
}

// ---------------------------------------------------------------------------
// SDP

void cmd_sdp_max(Context& ctx, const std::string& constraints, std::optional<double> tol, int max_iter) {
  if (constraints != "rmet" && constraints != "none") throw ValidationError("--constraints must be rmet or none");
  LinearInequality ineq = inequality_from_json(ctx.document());
  // cor inequalities are rewritten in suspension coordinates (normalized, so the value scales with it)
  if (ineq.space == Space::cor) {
    ineq = cor_to_suspension(ineq);
    ctx.set("rewritten", inequality_json(ineq));
  }
  const EdgeWeightedObjective obj = EdgeWeightedObjective::from_inequality(ineq);
  SdpOptions opts;
  opts.gap_tol = tol.value_or(default_gap_tol());
  opts.max_iterations = max_iter;
  ctx.set("constraints", constraints);
  ctx.set("tol", opts.gap_tol);
  ctx.set("max_iter", max_iter);
  const SdpSolution s = constraints == "rmet" ? elliptope_rmet_max(obj, opts) : elliptope_max(obj, opts);
  const EdgeWeightedObjective shape_of = constraints == "rmet" && !obj.suspended
                                             ? EdgeWeightedObjective{true, obj.m, obj.n, {}, 0}
                                             : obj;
  ctx.emit({{"value", s.value},
            {"dual_bound", s.dual_bound},
            {"rhs", rational_json(ineq.rhs)},
            {"exceeds_rhs", s.value > to_double(ineq.rhs) + 1e-7},
            {"edge_values", s.edge_values},
            {"matrix", matrix_json(s.gram)},
            {"realization", realization_json(realization(s, shape_of))},
            {"active_constraints", s.active_constraints},
            {"iterations", s.iterations},
            {"residuals",
             {{"primal", s.primal_infeasibility}, {"dual", s.dual_infeasibility}, {"gap", s.relative_gap}}}});
}

void cmd_membership(Context& ctx, std::optional<double> tol, int max_iter) {
  const Point p = point_from_json(ctx.document());
  SdpOptions opts;
  opts.gap_tol = tol.value_or(default_gap_tol());
  opts.max_iterations = max_iter;
  ctx.set("tol", opts.gap_tol);
  ctx.set("max_iter", max_iter);
  MembershipResult r;
  if (p.space == PointSpace::correlation) r = elliptope_membership(CorrelationVector<double>(BipartiteShape(p.m, p.n), p.approx()), opts);
  else if (p.space == PointSpace::suspension) r = elliptope_membership(SuspensionVector<double>(SuspensionShape(p.m, p.n), p.approx()), opts);
  else throw ValidationError("membership takes correlation or suspension points; convert with `map` first");
  Json out{{"member", r.member}, {"boundary", r.boundary}, {"margin", r.margin}, {"lower_bound", r.lower_bound},
           {"iterations", r.iterations}};
  if (r.member) out["completion"] = matrix_json(r.completion);
  else out["separator"] = {{"weights", r.separator}, {"value_at_point", r.separator_value}, {"bound", 1}};
  ctx.emit(out);
}

void cmd_cut_condition(Context& ctx) {
  const Point p = point_from_json(ctx.document());
  if (p.space != PointSpace::correlation) throw ValidationError("cut-condition takes a correlation point");
  const CutConditionResult r = cut_condition(CorrelationVector<double>(BipartiteShape(p.m, p.n), p.approx()));
  ctx.emit({{"passes", r.passes},
            {"y", r.y},
            {"y_rational", rational_vector_json(r.y_rational)},
            {"violation", r.violation},
            {"certificate", certificate_json(r.certificate)}});
}

void cmd_gap_search(Context& ctx, int rows, int cols, const GapSearchOptions& opts) {
  ctx.set("rows", rows);
  ctx.set("cols", cols);
  ctx.set("samples", opts.samples);
  ctx.set("seed", opts.seed);
  ctx.set("dimension", opts.dimension);
  const GapSearchResult r = rmet_gap_search(BipartiteShape(rows, cols), opts);
  Json found = Json::array();
  for (std::size_t k = 0; k < r.found.size(); ++k) {
    Json p = point_json(PointSpace::suspension, rows, cols, r.found[k].x);
    p["margin"] = r.margins[k];
    found.push_back(p);
  }
  ctx.emit({{"samples", r.samples}, {"in_rmet", r.in_rmet}, {"undecided", r.undecided}, {"found", found}});
}

// ---------------------------------------------------------------------------
// transformations

void cmd_trielim(Context& ctx) {
  const TrielimResult r = triangular_eliminate(inequality_from_json(ctx.document()));
  emit_inequality(ctx, r.result,
                  {{"unchanged", r.unchanged}, {"row_labels", r.row_labels}, {"col_labels", r.col_labels}});
}

void cmd_zero_lift(Context& ctx, int rows, int cols) {
  ctx.set("rows", rows);
  ctx.set("cols", cols);
  emit_inequality(ctx, zero_lift(inequality_from_json(ctx.document()), rows, cols));
}

void cmd_catalog(Context& ctx, const std::string& name) {
  if (name.empty()) {
    ctx.emit({{"names", catalog_names()}});
    return;
  }
  ctx.set("name", name);
  emit_inequality(ctx, catalog_entry(name), {{"name", name}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell inequalities, cut polytopes and elliptope relaxations", "bellcut"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BELLCUT_VERSION);
  Common common;
  app.add_option("-i,--input", common.input, "input file, - for standard input");
  app.add_flag("--force", common.force, "lift size guards, recording the refusal in the provenance");
  app.add_flag("--no-timestamp", common.no_timestamp, "omit the provenance timestamp");
  app.add_flag("--pretty", common.pretty, "print inequalities in bracket layout instead of JSON");

  std::function<void(Context&)> action;
  const auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string to = "correlation", backend = "exact", graph, format = "json", polytope = "hrep", name, constraints = "rmet";
  bool center = false, pruned = false;
  std::uint64_t max_group = CanonicalOptions{}.max_group;
  std::optional<double> tol;
  int max_iter = SdpOptions{}.max_iterations, rows = 0, cols = 0;

  auto* map = sub("map", "convert a point between behavior, cor, suspension and correlation spaces");
  map->add_option("--to", to, "target space")->required();
  map->add_option("--backend", backend, "exact or float");
  map->add_flag("--center", center, "set marginals to 1/2 (through cor space)");
  map->callback([&] { action = [&](Context& c) { cmd_map(c, to, backend, center); }; });

  auto* valid = sub("check-valid", "maximum of an inequality over the cut vectors");
  valid->add_option("--graph", graph, "K<m>,<n>, S<m>,<n> or K<N>; zero-lifts when larger");
  valid->callback([&] { action = [&](Context& c) { cmd_check(c, graph, false); }; });

  auto* facet = sub("check-facet", "validity plus affine rank of the tight cut vectors");
  facet->add_option("--graph", graph, "K<m>,<n>, S<m>,<n> or K<N>; zero-lifts when larger");
  facet->callback([&] { action = [&](Context& c) { cmd_check(c, graph, true); }; });

  auto* canon = sub("canonicalize", "canonical representative and orbit size under relabelling and switching");
  canon->add_flag("--pruned", pruned, "row-operation search with column sorting");
  canon->add_option("--max-group", max_group, "refuse larger symmetry groups");
  canon->callback([&] { action = [&](Context& c) { cmd_canonicalize(c, pruned, max_group); }; });

  auto* cls = sub("classify", "group inequalities (array or JSON lines) into symmetry classes");
  cls->add_flag("--pruned", pruned, "row-operation search with column sorting");
  cls->add_option("--max-group", max_group, "refuse larger symmetry groups");
  cls->callback([&] { action = [&](Context& c) { cmd_classify(c, pruned, max_group); }; });

  auto* facets = sub("enumerate-facets", "facets of the cut polytope of a graph, or of a V-representation on input");
  facets->add_option("--graph", graph, "K<m>,<n>, S<m>,<n> or K<N>; read a V-rep when omitted");
  facets->add_option("--format", format, "json (JSON lines) or hrep");
  facets->callback([&] { action = [&](Context& c) { cmd_enumerate_facets(c, graph, format); }; });

  auto* verts = sub("enumerate-vertices", "vertices of a bounded H-representation");
  verts->add_option("--polytope", polytope, "hrep (read input), rcmet or rmet");
  verts->add_option("--graph", graph, "K<m>,<n> for rcmet, S<m>,<n> for rmet");
  verts->add_option("--format", format, "json or vrep");
  verts->callback([&] { action = [&](Context& c) { cmd_enumerate_vertices(c, polytope, graph, format); }; });

  auto* sdp = sub("sdp-max", "maximize an inequality's left side over the elliptope");
  sdp->add_option("--constraints", constraints, "rmet or none");
  sdp->add_option("--tol", tol, "relative gap tolerance (default $BELLCUT_TOL or 1e-7)");
  sdp->add_option("--max-iter", max_iter, "iteration cap");
  sdp->callback([&] { action = [&](Context& c) { cmd_sdp_max(c, constraints, tol, max_iter); }; });

  auto* member = sub("membership", "elliptope membership of a correlation or suspension point");
  member->add_option("--tol", tol, "relative gap tolerance (default $BELLCUT_TOL or 1e-7)");
  member->add_option("--max-iter", max_iter, "iteration cap");
  member->callback([&] { action = [&](Context& c) { cmd_membership(c, tol, max_iter); }; });

  auto* cutc = sub("cut-condition", "test (2/pi) arcsin x against the cut polytope");
  cutc->callback([&] { action = [&](Context& c) { cmd_cut_condition(c); }; });

  GapSearchOptions gap;
  auto* search = sub("gap-search", "random search for RMet points outside the elliptope with correlations inside E(K)");
  search->add_option("--rows", rows, "m")->required();
  search->add_option("--cols", cols, "n")->required();
  search->add_option("--samples", gap.samples, "number of random points");
  search->add_option("--seed", gap.seed, "random seed");
  search->add_option("--dimension", gap.dimension, "dimension of the unit vectors (default m + n)");
  search->callback([&] { action = [&](Context& c) { cmd_gap_search(c, rows, cols, gap); }; });

  auto* tri = sub("trielim", "triangular elimination of a complete-graph inequality");
  tri->callback([&] { action = [&](Context& c) { cmd_trielim(c); }; });

  auto* lift = sub("zero-lift", "pad an inequality with zero coefficients");
  lift->add_option("--rows", rows, "target rows")->required();
  lift->add_option("--cols", cols, "target columns")->required();
  lift->callback([&] { action = [&](Context& c) { cmd_zero_lift(c, rows, cols); }; });

  auto* cat = sub("catalog", "named inequalities; lists names without an argument");
  cat->add_option("name", name, "entry name");
  cat->callback([&] { action = [&](Context& c) { cmd_catalog(c, name); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << BELLCUT_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << "usage error: no subcommand\n";
    return kUsage;
  }

  Context ctx(in, out, common, app.get_subcommands().front()->get_name());
  try {
    action(ctx);
    return kOk;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << " [" << e.lower_bound() << ", " << e.upper_bound() << "]\n";
    return kNonConvergence;
  } catch (const NumericalDegeneracyError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const DegenerateInputError& e) {
    err << "invalid input: " << e.what() << '\n';
    for (const auto& eq : e.equations()) err << "  " << eq << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace bellcut::cli
