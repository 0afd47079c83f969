#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "schemeforge/cli.hpp"

using namespace schemeforge;

namespace {

struct RunResult {
  int code = 0;
  std::string text;
  json report;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  int code = run_command(args, out);
  RunResult res{code, out.str(), json()};
  if (!res.text.empty() && res.text[0] == '{') res.report = json::parse(res.text);
  return res;
}

}  // namespace

TEST_CASE("info reports spectral data for a catalog descriptor") {
  RunResult r = run({"info", R"({"catalog":"johnson:8,4"})"});
  REQUIRE(r.code == 0);
  CHECK(r.report["command"] == "info");
  CHECK(r.report["axioms_ok"] == true);
  CHECK(r.report["n"] == "70");
  CHECK(r.report["d"] == 4);
  CHECK(r.report["source"] == "relations");
  CHECK(r.report["k"][1] == "16");
  CHECK(r.report["m"][4] == "14");
  CHECK(r.report["P"][2][2] == "-6");
  CHECK(r.report["flags"]["q_bipartite"] == true);
  CHECK(r.report["flags"]["q_antipodal"] == false);
  CHECK(r.report["flags"]["non_integral_multiplicity"] == false);
  CHECK_FALSE(r.report.contains("metadata"));

  auto it = r.report.begin();
  CHECK(it.key() == "command");
  ++it;
  CHECK(it.key() == "descriptor");
}

TEST_CASE("info renders approximations on request") {
  RunResult r = run({"info", R"({"catalog":"octagon:2,4"})", "--approx"});
  REQUIRE(r.code == 0);
  CHECK(r.report["n"] == "1755");
  CHECK(r.report["source"] == "eigenmatrix");
  CHECK_FALSE(r.report.contains("axioms_ok"));
  REQUIRE(r.report.contains("k_approx"));
  CHECK(r.report["k_approx"][1].get<double>() == 10.0);

  RunResult t = run({"info", R"({"catalog":"taylor:5,2"})", "--approx"});
  REQUIRE(t.code == 0);
  CHECK(t.report["P"][1][1] == "0+1*sqrt(5)");
  double v = t.report["P_approx"][1][1].get<double>();
  CHECK(v > 2.23);
  CHECK(v < 2.24);
}

TEST_CASE("info flags irrational multiplicities") {
  RunResult r = run({"info", R"({"catalog":"octagon:2,6"})"});
  REQUIRE(r.code == 0);
  CHECK(r.report["flags"]["non_integral_multiplicity"] == true);
  CHECK(r.report["flags"].contains("non_integral_indices"));
}

TEST_CASE("dual polar descriptors carry the formal-parameter note") {
  RunResult r = run({"info", R"({"catalog":"dualpolar:DQ6,2"})"});
  REQUIRE(r.code == 0);
  CHECK(r.report["n"] == "135");
  REQUIRE(r.report.contains("metadata"));
  std::string note = r.report["metadata"]["formal_parameter_note"];
  CHECK(note.find("formal") != std::string::npos);
}

TEST_CASE("krein subcommand emits the tensor and its zeros") {
  RunResult r = run({"krein", R"({"catalog":"pg:2,2,1"})"});
  REQUIRE(r.code == 0);
  CHECK(r.report["krein"][1][1][1] == "39/8");
  CHECK(r.report["reduced_diagonal"][1] == "65/72");
  CHECK(r.report["vanishing"].empty());

  RunResult o = run({"krein", R"({"catalog":"octagon:2,4"})"});
  REQUIRE(o.code == 0);
  REQUIRE(o.report["vanishing"].size() == 1);
  CHECK(o.report["vanishing"][0] == json({2, 2, 2}));
}

TEST_CASE("orderings subcommand lists cometric data") {
  RunResult r = run({"orderings", R"({"catalog":"taylor:5,2"})"});
  REQUIRE(r.code == 0);
  REQUIRE(r.report["cometric"].size() == 2);
  CHECK(r.report["cometric"][0] == json({1, 2, 3}));
  CHECK(r.report["metric"].size() == 2);
  CHECK(r.report["q_bipartite"] == true);
  CHECK(r.report["krein_arrays"][0]["b"][0] == "3");
}

TEST_CASE("design subcommand with an explicit subset") {
  J84Examples ex = j84_examples();
  std::string subset;
  for (std::size_t i = 0; i < ex.planes.members.size(); ++i) {
    if (i) subset += ",";
    subset += std::to_string(ex.planes.members[i]);
  }
  RunResult r =
      run({"design", R"({"catalog":"johnson:8,4"})", "--subset", subset});
  REQUIRE(r.code == 0);
  CHECK(r.report["a"] == json({"1", "0", "12", "0", "1"}));
  CHECK(r.report["aQ"] == json({"14", "0", "0", "0", "56"}));
  CHECK(r.report["S"] == json({4}));
  CHECK(r.report["size"] == "14");
  CHECK(r.report["half_size"] == false);
  CHECK(r.report["support_matches_transform"] == true);
  CHECK(r.report["constraint"]["trace"].empty());
  CHECK(r.report["conclusion"] == "no reduction available");
}

TEST_CASE("design subcommand with a distribution") {
  RunResult r = run({"design", R"({"catalog":"johnson:8,4"})",
                     "--distribution", "1,12,18,4,0"});
  REQUIRE(r.code == 0);
  CHECK(r.report["aQ"] == json({"35", "35", "0", "0", "0"}));
  CHECK(r.report["size"] == "35");
  CHECK(r.report["half_size"] == true);
  CHECK(r.report["S"] == json({1}));
}

TEST_CASE("design subcommand with an abstract support") {
  RunResult r =
      run({"design", R"({"catalog":"johnson:8,4"})", "--support", "1,4"});
  REQUIRE(r.code == 0);
  CHECK(r.report["constraint"]["initial_support"] == json({1, 4}));
  REQUIRE(r.report["constraint"]["trace"].size() == 1);
  CHECK(r.report["constraint"]["trace"][0]["h"] == 1);
  CHECK(r.report["constraint"]["trace"][0]["dichotomy"] ==
        "removable-or-half");
  CHECK(r.report["constraint"]["final_support"] == json({4}));
  CHECK(r.report["constraint"]["forced_half_size"] == false);
  CHECK(r.report["conclusion"] ==
        "the subset is a {1,2,3}-design or has exactly half the vertices");

  RunResult s = run({"design", R"({"catalog":"johnson:8,4"})", "--support",
                     "1,4", "--size", "14"});
  REQUIRE(s.code == 0);
  CHECK(s.report["constraint"]["trace"][0]["dichotomy"] == "removable");
  CHECK(s.report["conclusion"] == "the subset is a {1,2,3}-design");

  RunResult t =
      run({"design", R"({"catalog":"taylor:5,2"})", "--support", "1,3"});
  REQUIRE(t.code == 0);
  CHECK(t.report["constraint"]["forced_half_size"] == true);
  CHECK(t.report["conclusion"] ==
        "nontrivial subsets with this support have exactly half the "
        "vertices");
}

TEST_CASE("design subcommand on the quadric scheme") {
  RunResult r = run({"design", R"({"catalog":"genpw:3,3"})", "--distribution",
                     "1,0,0,2,0"});
  REQUIRE(r.code == 0);
  CHECK(r.report["aQ"] == json({"3", "0", "24", "36", "9"}));
  CHECK(r.report["T"] == json({1}));
  CHECK(r.report["S"] == json({2, 3, 4}));
  CHECK(r.report["size"] == "3");
  CHECK(r.report["conclusion"] == "no reduction available");

  RunResult s =
      run({"design", R"({"catalog":"genpw:3,3"})", "--support", "1,4"});
  REQUIRE(s.code == 0);
  REQUIRE(s.report["constraint"]["trace"].size() == 1);
  CHECK(s.report["constraint"]["trace"][0]["h"] == 1);
  CHECK(s.report["constraint"]["final_support"] == json({4}));
  CHECK(s.report["conclusion"] ==
        "the subset is a {1,2,3}-design or has exactly half the vertices");
}

TEST_CASE("design options are mutually exclusive") {
  RunResult r = run({"design", R"({"catalog":"johnson:8,4"})"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["type"] == "ParseError");
  RunResult r2 = run({"design", R"({"catalog":"johnson:8,4"})", "--support",
                      "1", "--distribution", "1,0"});
  CHECK(r2.code == 2);
}

TEST_CASE("eigenmatrix and intersection-array descriptors") {
  RunResult k4 = run({"info", R"({"P": [["1", "3"], ["1", "-1"]]})"});
  REQUIRE(k4.code == 0);
  CHECK(k4.report["n"] == "4");
  CHECK(k4.report["source"] == "eigenmatrix");
  CHECK(k4.report["m"] == json({"1", "3"}));

  RunResult ico = run(
      {"info", R"({"intersection_array": {"b": [5, 2, 1], "c": [1, 2, 5]}})"});
  REQUIRE(ico.code == 0);
  CHECK(ico.report["n"] == "12");
  CHECK(ico.report["m"] == json({"1", "3", "5", "3"}));
}

TEST_CASE("relations descriptor round-trips through the hex codec") {
  Scheme j52 = johnson(5, 2);
  json desc;
  desc["relations"] = encode_relations(j52.relations());
  RunResult r = run({"info", desc.dump()});
  REQUIRE(r.code == 0);
  CHECK(r.report["n"] == "10");
  CHECK(r.report["axioms_ok"] == true);
  CHECK(r.report["k"] == json({"1", "6", "3"}));

  // decode(encode(x)) == x at the matrix level.
  std::vector<RelationMatrix> rels = j52.relations();
  std::vector<RelationMatrix> back = decode_relations(encode_relations(rels));
  REQUIRE(back.size() == rels.size());
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (int x = 0; x < 10; ++x)
      for (int y = 0; y < 10; ++y)
        CHECK(back[i].get(x, y) == rels[i].get(x, y));
}

TEST_CASE("broken relation encodings are rejected") {
  Scheme j52 = johnson(5, 2);
  std::vector<RelationMatrix> rels = j52.relations();

  json good = encode_relations(rels);
  CHECK_THROWS_AS(decode_relations(json::array()), ParseError);

  // Wrong row width.
  json bad = good;
  bad[0][0] = bad[0][0].get<std::string>() + "0";
  CHECK_THROWS_AS(decode_relations(bad), ParseError);

  // Unbalanced coverage: drop a pair from one relation without adding it
  // elsewhere.
  std::vector<RelationMatrix> torn = rels;
  torn[1].clear(0, 1);
  CHECK_THROWS_AS(decode_relations(encode_relations(torn)), ParseError);
}

TEST_CASE("axiom violations surface as exit code 4") {
  Scheme j52 = johnson(5, 2);
  std::vector<RelationMatrix> rels = j52.relations();
  rels[1].clear(0, 1);
  rels[2].set(0, 1);
  json desc;
  desc["relations"] = encode_relations(rels);
  RunResult r = run({"info", desc.dump()});
  CHECK(r.code == 4);
  CHECK(r.report["error"]["type"] == "AxiomViolation");
  CHECK(r.report["error"]["code"] == 4);
}

TEST_CASE("pg-scan subcommand tabulates the sweep") {
  RunResult r = run({"pg-scan", "10", "100"});
  REQUIRE(r.code == 0);
  REQUIRE(r.report["rows"].size() == 16);
  CHECK(r.report["rows"][0]["s"] == 2);
  CHECK(r.report["rows"][0]["t"] == 4);
  CHECK(r.report["rows"][0]["alpha"] == 1);
  CHECK(r.report["rows"][0]["n"] == "27");
  int alpha2 = 0, alpha3 = 0;
  for (const json& row : r.report["rows"]) {
    if (row["alpha"] == 2) ++alpha2;
    if (row["alpha"] == 3) ++alpha3;
  }
  CHECK(alpha2 == 3);
  CHECK(alpha3 == 4);
}

TEST_CASE("reproduce subcommand runs the named checks") {
  RunResult oct = run({"reproduce", "octagon-no-movoid"});
  REQUIRE(oct.code == 0);
  CHECK(oct.report["pass"] == true);
  CHECK(oct.report["details"]["q222"] == "0");
  CHECK(oct.report["details"]["conclusion"] == "no nontrivial m-ovoid");

  RunResult gen = run({"reproduce", "genpw-appendices"});
  REQUIRE(gen.code == 0);
  CHECK(gen.report["pass"] == true);
  CHECK(gen.report["details"]["explicit_q3_n3_ok"] == true);
  CHECK(gen.report["details"]["closed_forms"].size() == 6);

  RunResult bad = run({"reproduce", "no-such-check"});
  CHECK(bad.code == 2);
  CHECK(bad.report["error"]["type"] == "ParseError");
}

TEST_CASE("catalog list names the seven families") {
  RunResult r = run({"catalog", "list"});
  REQUIRE(r.code == 0);
  REQUIRE(r.report["families"].size() == 7);
  CHECK(r.report["families"][0]["name"] == "johnson");
  CHECK(r.report["families"][0]["grammar"] == "johnson:v,k");
}

TEST_CASE("error reports carry category exit codes") {
  RunResult infeasible = run({"info", R"({"catalog":"srg:16,6,3,2"})"});
  CHECK(infeasible.code == 3);
  CHECK(infeasible.report["error"]["type"] == "InfeasibleParameters");
  CHECK(infeasible.report["error"]["code"] == 3);

  RunResult badjson = run({"info", "{not json"});
  CHECK(badjson.code == 2);
  CHECK(badjson.report["error"]["type"] == "ParseError");

  RunResult unknown = run({"info", R"({"catalog":"nosuch:1"})"});
  CHECK(unknown.code == 2);

  RunResult twokeys = run({"info", R"({"catalog":"johnson:8,4","P":[]})"});
  CHECK(twokeys.code == 2);

  RunResult missing = run({"info", "/tmp/missing-descriptor-file.json"});
  CHECK(missing.code == 2);

  RunResult nosub = run({});
  CHECK(nosub.code == 2);
}

TEST_CASE("help goes to the stream with exit 0") {
  RunResult h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.text.find("schemeforge") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
  RunResult a = run({"krein", R"({"catalog":"genpw:3,3"})"});
  RunResult b = run({"krein", R"({"catalog":"genpw:3,3"})"});
  REQUIRE(a.code == 0);
  CHECK(a.text == b.text);
}

TEST_CASE("descriptors load from files") {
  const char* path = "/tmp/schemeforge-test-desc.json";
  {
    std::ofstream f(path);
    f << R"({"catalog":"pg:2,2,1"})";
  }
  RunResult r = run({"info", path});
  REQUIRE(r.code == 0);
  CHECK(r.report["n"] == "15");
}
