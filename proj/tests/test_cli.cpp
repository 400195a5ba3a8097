#include "bellcut/cli.hpp"

#include "bellcut/inequalities.hpp"
#include "bellcut/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace bellcut;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "--no-timestamp");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

// `first | second`, requiring the first stage to succeed.
Outcome pipe(const std::vector<std::string>& first, const std::vector<std::string>& second,
             const std::string& input = {}) {
  const Outcome a = run(first, input);
  EXPECT_EQ(a.code, 0) << a.err;
  return run(second, a.out);
}

std::string point(const std::string& space, int m, int n, const std::string& coords) {
  return R"({"space":")" + space + R"(","shape":{"m":)" + std::to_string(m) + R"(,"n":)" + std::to_string(n) +
         R"(,"suspended":)" + (space == "suspension" ? "true" : "false") + R"(},"coords":)" + coords + "}";
}

TEST(Cli, GisinEquationThreeIsAFacetOfK44) {
  const auto r = pipe({"catalog", "gisin-4a"}, {"check-facet", "--graph", "K4,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_TRUE(j.at("valid").get<bool>());
  EXPECT_TRUE(j.at("is_facet").get<bool>());
  EXPECT_EQ(j.at("tight_value"), "10");
  EXPECT_EQ(j.at("vertices"), 128);
}

TEST(Cli, I3322OverRmetElliptope) {
  const auto r = pipe({"catalog", "i3322"}, {"sdp-max", "--constraints", "rmet"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_NEAR(j.at("value").get<double>(), 2 * (std::sqrt(3.0) + 1), 1e-4);
  for (const char* key : {"matrix", "realization", "active_constraints", "iterations", "dual_bound"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j.at("exceeds_rhs").get<bool>());
}

TEST(Cli, ChshWithoutConstraints) {
  const auto r = pipe({"catalog", "chsh"}, {"sdp-max", "--constraints", "none"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json().at("value").get<double>(), 2 * std::sqrt(2.0), 1e-6);
}

TEST(Cli, PentagonalTrielimMatchesCatalog) {
  const auto r = pipe({"catalog", "pentagonal"}, {"trielim"});
  ASSERT_EQ(r.code, 0) << r.err;
  const LinearInequality got = inequality_from_json(r.json());
  EXPECT_EQ(got, catalog_entry("pentagonal-trielim"));
  EXPECT_EQ(r.json().at("row_labels").size(), 4u);

  const auto pretty = pipe({"catalog", "pentagonal"}, {"--pretty", "trielim"});
  EXPECT_EQ(pretty.out, format_inequality(catalog_entry("pentagonal-trielim")));

  const auto facet = pipe({"catalog", "pentagonal"}, {"trielim"});
  const auto check = run({"check-facet", "--graph", "K4,5"}, facet.out);
  ASSERT_EQ(check.code, 0) << check.err;
  EXPECT_TRUE(check.json().at("is_facet").get<bool>());
}

TEST(Cli, CatalogListsEveryName) {
  const auto r = run({"catalog"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json().at("names").get<std::vector<std::string>>(), catalog_names());
}

TEST(Cli, EveryRunCarriesProvenance) {
  const auto r = run({"catalog", "chsh"});
  const Json p = r.json().at("provenance");
  EXPECT_EQ(p.at("tool"), "bellcut");
  EXPECT_EQ(p.at("command"), "catalog");
  EXPECT_EQ(p.at("config").at("name"), "chsh");
  EXPECT_FALSE(p.contains("timestamp"));

  std::istringstream in;
  std::ostringstream out, err;
  ASSERT_EQ(cli::run({"catalog", "chsh"}, in, out, err), 0);
  if (!std::getenv("BELLCUT_NO_TIMESTAMP")) EXPECT_TRUE(Json::parse(out.str()).at("provenance").contains("timestamp"));
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"enumerate-facets", "--graph", "K2,2"},
      {"enumerate-vertices", "--polytope", "rcmet", "--graph", "K2,2"},
      {"catalog", "appendix-45-3"},
  };
  for (const auto& c : commands) EXPECT_EQ(run(c).out, run(c).out);
  const auto a = pipe({"catalog", "i3322"}, {"sdp-max"});
  const auto b = pipe({"catalog", "i3322"}, {"sdp-max"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, FacetsOfK22AsJsonLines) {
  const auto r = run({"enumerate-facets", "--graph", "K2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_TRUE(Json::parse(line).contains("provenance"));
  std::vector<LinearInequality> facets;
  while (std::getline(lines, line)) facets.push_back(inequality_from_json(Json::parse(line)));
  EXPECT_EQ(facets.size(), 16u);

  // the stream feeds classify directly
  const auto cls = run({"classify"}, r.out);
  ASSERT_EQ(cls.code, 0) << cls.err;
  EXPECT_EQ(cls.json().at("class_count"), 2);
  EXPECT_EQ(cls.json().at("inputs"), 16);
}

TEST(Cli, TextFormatsRoundTrip) {
  const auto v = run({"enumerate-vertices", "--polytope", "rcmet", "--graph", "K2,2", "--format", "vrep"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(v.out.rfind("V 8 24", 0), 0u) << v.out.substr(0, 20);

  const auto h = run({"enumerate-facets", "--format", "hrep"}, v.out);
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(h.out.rfind("H 8 ", 0), 0u);
  const auto back = run({"enumerate-vertices", "--format", "vrep"}, h.out);
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(back.out, v.out);
}

TEST(Cli, MapRoundTripsExactly) {
  const std::string x = point("correlation", 2, 2, R"(["1/2","1/3","-1/5","0"])");
  const auto behavior = run({"map", "--to", "behavior"}, x);
  ASSERT_EQ(behavior.code, 0) << behavior.err;
  EXPECT_EQ(behavior.json().at("coords").size(), 16u);
  const auto back = run({"map", "--to", "correlation"}, behavior.out);
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(back.json().at("coords"), Json::parse(x).at("coords"));

  const auto susp = run({"map", "--to", "suspension"}, x);
  EXPECT_EQ(susp.json().at("coords"), Json::parse(R"(["0","0","0","0","1/2","1/3","-1/5","0"])"));

  const auto flt = run({"map", "--to", "cor", "--backend", "float"}, x);
  ASSERT_EQ(flt.code, 0) << flt.err;
  EXPECT_TRUE(flt.json().at("coords").at(0).is_number());
}

TEST(Cli, MapCentersMarginals) {
  // deterministic behavior A=B=+1 centred keeps the correlations at 1
  const std::string cor = point("cor", 1, 1, R"(["1","1","1"])");
  const auto r = run({"map", "--to", "cor", "--center"}, cor);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("coords"), Json::parse(R"(["1/2","1/2","1/2"])"));
}

TEST(Cli, MembershipAndCutCondition) {
  const double t = 1 / std::sqrt(2.0);
  std::ostringstream coords;
  coords.precision(17);
  coords << "[" << t << "," << t << "," << t << "," << -t << "]";
  const auto tsirelson = run({"membership"}, point("correlation", 2, 2, coords.str()));
  ASSERT_EQ(tsirelson.code, 0) << tsirelson.err;
  EXPECT_TRUE(tsirelson.json().at("member").get<bool>());

  const auto outside = run({"membership"}, point("correlation", 2, 2, "[1,1,1,-1]"));
  ASSERT_EQ(outside.code, 0) << outside.err;
  const Json j = outside.json();
  EXPECT_FALSE(j.at("member").get<bool>());
  EXPECT_GT(j.at("separator").at("value_at_point").get<double>(), 1);

  const auto cut = run({"cut-condition"}, point("correlation", 2, 2, coords.str()));
  ASSERT_EQ(cut.code, 0) << cut.err;
  EXPECT_TRUE(cut.json().at("passes").get<bool>());
  EXPECT_TRUE(cut.json().at("certificate").at("inside").get<bool>());
}

TEST(Cli, CheckValidReportsAViolatingVertex) {
  const std::string bad = R"({"space":"correlation","a":[[1,1],[1,-1]],"rhs":1})";
  const auto r = run({"check-valid"}, bad);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.json().at("valid").get<bool>());
  EXPECT_EQ(r.json().at("tight_value"), "2");
  EXPECT_TRUE(r.json().contains("violating_vertex"));
}

TEST(Cli, ZeroLiftThenCanonicalize) {
  const auto lifted = pipe({"catalog", "chsh"}, {"zero-lift", "--rows", "3", "--cols", "4"});
  ASSERT_EQ(lifted.code, 0) << lifted.err;
  EXPECT_EQ(lifted.json().at("rows"), 3);
  EXPECT_EQ(lifted.json().at("cols"), 4);
  const auto facet = run({"check-facet", "--graph", "K3,4"}, lifted.out);
  EXPECT_TRUE(facet.json().at("is_facet").get<bool>());

  const auto canon = run({"canonicalize"}, lifted.out);
  ASSERT_EQ(canon.code, 0) << canon.err;
  EXPECT_EQ(canon.json().at("group_size"), std::to_string(6 * 24 * 8 * 16));
}

TEST(Cli, InputFileOption) {
  const std::string path = testing::TempDir() + "bellcut_cli_input.json";
  std::ofstream(path) << run({"catalog", "chsh"}).out;
  const auto r = run({"-i", path, "check-facet", "--graph", "K2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json().at("is_facet").get<bool>());
  std::remove(path.c_str());
  EXPECT_EQ(run({"-i", path, "check-valid"}).code, cli::kValidation);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"zero-lift", "--rows", "3"}, "{}").code, cli::kUsage);

  const auto malformed = run({"canonicalize"}, "{\"space\": ");
  EXPECT_EQ(malformed.code, cli::kValidation);
  EXPECT_NE(malformed.err.find("malformed JSON"), std::string::npos);
  EXPECT_EQ(run({"catalog", "nope"}).code, cli::kValidation);
  EXPECT_EQ(run({"check-valid"}, R"({"space":"correlation","a":[[1,1],[1]],"rhs":2})").code, cli::kValidation);
  EXPECT_EQ(run({"map", "--to", "sideways"}, point("correlation", 1, 1, "[0]")).code, cli::kValidation);
  EXPECT_EQ(run({"map", "--to", "behavior"}, point("correlation", 1, 2, "[0]")).code, cli::kValidation);
  // signaling table: Alice's marginal depends on Bob's setting
  const std::string signaling = point("behavior", 1, 2, R"([1,0,0,0, 0,0,1,0])");
  EXPECT_EQ(run({"map", "--to", "cor"}, signaling).code, cli::kValidation);

  const auto guard = run({"enumerate-facets", "--graph", "K4,4"});
  EXPECT_EQ(guard.code, cli::kGuard);
  EXPECT_NE(guard.err.find("guard"), std::string::npos);
  EXPECT_EQ(pipe({"catalog", "gisin-4a"}, {"canonicalize", "--max-group", "10"}).code, cli::kGuard);

  EXPECT_EQ(pipe({"catalog", "chsh"}, {"sdp-max", "--max-iter", "2"}).code, cli::kNonConvergence);
}

TEST(Cli, ForceRecordsTheRefusal) {
  const auto r = pipe({"catalog", "chsh"}, {"--force", "canonicalize", "--max-group", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json forced = r.json().at("provenance").at("forced");
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_NE(forced[0].get<std::string>().find("group"), std::string::npos);
}

TEST(Cli, ToleranceFromEnvironment) {
  ::setenv("BELLCUT_TOL", "1e-5", 1);
  const auto r = pipe({"catalog", "chsh"}, {"sdp-max"});
  ::unsetenv("BELLCUT_TOL");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(r.json().at("provenance").at("config").at("tol").get<double>(), 1e-5);
  ::setenv("BELLCUT_TOL", "fast", 1);
  const auto bad = pipe({"catalog", "chsh"}, {"sdp-max"});
  ::unsetenv("BELLCUT_TOL");
  EXPECT_EQ(bad.code, cli::kValidation);
}

}  // namespace

TEST(CliSdp, CorInequalityIsRewritten) {
  const auto r = pipe({"catalog", "chsh-cor"}, {"sdp-max"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json().at("value").get<double>(), 2 * std::sqrt(2.0), 1e-6);
  EXPECT_EQ(r.json().at("provenance").at("config").at("rewritten").at("space"), "suspension");
}

TEST(CliSdp, GapSearchReportsCounts) {
  const auto r = run({"gap-search", "--rows", "2", "--cols", "2", "--samples", "20", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("samples"), 20);
  EXPECT_TRUE(r.json().at("found").is_array());
  EXPECT_EQ(r.out, run({"gap-search", "--rows", "2", "--cols", "2", "--samples", "20", "--seed", "3"}).out);
}
