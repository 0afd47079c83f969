#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "schemeforge/designs.hpp"
#include "schemeforge/geometry.hpp"

using namespace schemeforge;

namespace {

Scalar rat(long long num, long long den) { return Scalar(Rational(num, den)); }

void check_vec(const std::vector<Scalar>& got,
               const std::vector<Scalar>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("index " << i << ": got " << to_string(got[i]) << " want "
                  << to_string(want[i]));
    CHECK(got[i] == want[i]);
  }
}

}  // namespace

TEST_CASE("J(8,4) worked subsets reproduce their certificates") {
  J84Examples ex = j84_examples();
  SpectralData spec = spectral(ex.scheme);

  SECTION("planes of AG(3,2)") {
    CHECK(ex.planes.members.size() == 14);
    auto a = inner_distribution(ex.scheme, ex.planes.members);
    check_vec(a, {Scalar(1), Scalar(0), Scalar(12), Scalar(0), Scalar(1)});
    auto cert = mac_williams(a, spec);
    check_vec(cert.aQ,
              {Scalar(14), Scalar(0), Scalar(0), Scalar(0), Scalar(56)});
    CHECK(cert.T == std::set<int>{1, 2, 3});
    CHECK(cert.S == std::set<int>{4});
    CHECK_FALSE(cert.half_size);
    CHECK(to_string(cert.size) == "14");
  }

  SECTION("42-point orbit is the unique 3-design orbit of its kind") {
    CHECK(ex.orbit_design.members.size() == 42);
    CHECK_FALSE(ex.orbit_design_others_exist);
    auto a = inner_distribution(ex.scheme, ex.orbit_design.members);
    check_vec(a, {Scalar(1), Scalar(8), Scalar(24), Scalar(8), Scalar(1)});
    auto cert = mac_williams(a, spec);
    check_vec(cert.aQ,
              {Scalar(42), Scalar(0), Scalar(0), Scalar(0), Scalar(28)});
    CHECK(cert.S == std::set<int>{4});
  }

  SECTION("star of a point is a half-size example") {
    CHECK(ex.star.members.size() == 35);
    auto a = inner_distribution(ex.scheme, ex.star.members);
    check_vec(a, {Scalar(1), Scalar(12), Scalar(18), Scalar(4), Scalar(0)});
    auto cert = mac_williams(a, spec);
    check_vec(cert.aQ,
              {Scalar(35), Scalar(35), Scalar(0), Scalar(0), Scalar(0)});
    CHECK(cert.T == std::set<int>{2, 3, 4});
    CHECK(cert.S == std::set<int>{1});
    CHECK(cert.half_size);
  }

  SECTION("two-orbit extension with fractional inner distribution") {
    CHECK(ex.footnote.members.size() == 35);
    auto a = inner_distribution(ex.scheme, ex.footnote.members);
    check_vec(a, {Scalar(1), rat(60, 7), rat(138, 7), rat(36, 7), rat(4, 7)});
    auto cert = mac_williams(a, spec);
    check_vec(cert.aQ,
              {Scalar(35), Scalar(15), Scalar(0), Scalar(0), Scalar(20)});
    CHECK(cert.T == std::set<int>{2, 3});
    CHECK(cert.S == std::set<int>{1, 4});
  }

  SECTION("transform support equals idempotent support") {
    for (const SubsetDesign* dd :
         {&ex.planes, &ex.orbit_design, &ex.star, &ex.footnote}) {
      auto cert =
          mac_williams(inner_distribution(ex.scheme, dd->members), spec);
      CHECK(cert.S == eigenspace_support(ex.scheme, spec, dd->members));
    }
  }

  SECTION("complements share the eigenspace support") {
    std::set<int> inside(ex.star.members.begin(), ex.star.members.end());
    std::vector<int> complement;
    for (int x = 0; x < ex.scheme.n(); ++x)
      if (!inside.count(x)) complement.push_back(x);
    CHECK(eigenspace_support(ex.scheme, spec, complement) ==
          eigenspace_support(ex.scheme, spec, ex.star.members));
  }
}

TEST_CASE("constraint chains on J(8,4)") {
  SpectralData spec = spectral(johnson(8, 4));
  KreinTensor krein = krein_parameters(spec);

  ConstraintReport rep = constrain_design(spec, krein, {1, 4});
  REQUIRE(rep.trace.size() == 1);
  CHECK(rep.trace[0].h == 1);
  CHECK(rep.trace[0].dichotomy == "removable-or-half");
  CHECK(rep.final_support == std::set<int>{4});
  CHECK_FALSE(rep.forced_half_size);

  ConstraintReport with_half = constrain_design(spec, krein, {1, 4},
                                                Rational(35));
  REQUIRE(with_half.trace.size() == 1);
  CHECK(with_half.trace[0].dichotomy == "half-size-holds");

  ConstraintReport with_size = constrain_design(spec, krein, {1, 4},
                                                Rational(14));
  REQUIRE(with_size.trace.size() == 1);
  CHECK(with_size.trace[0].dichotomy == "removable");

  // Removal never grows the support.
  CHECK(std::includes(rep.initial_support.begin(), rep.initial_support.end(),
                      rep.final_support.begin(), rep.final_support.end()));

  CHECK_THROWS_AS(constrain_design(spec, krein, {0}), PreconditionViolated);
  CHECK_THROWS_AS(constrain_design(spec, krein, {5}), PreconditionViolated);
}

TEST_CASE("intriguing set verdicts") {
  SpectralData spec = spectral(johnson(8, 4));
  KreinTensor krein = krein_parameters(spec);
  CHECK(intriguing_set_verdict(spec, krein, 1) ==
        "nontrivial type-1 intriguing sets have size n/2");
  CHECK(intriguing_set_verdict(spec, krein, 2) == "no conclusion");
  CHECK_THROWS_AS(intriguing_set_verdict(spec, krein, 0),
                  PreconditionViolated);
  CHECK_THROWS_AS(intriguing_set_verdict(spec, krein, 5),
                  PreconditionViolated);
}

TEST_CASE("icosahedron support empties out, forcing half size") {
  SpectralData tay = spectral(taylor_scheme(5, 2));
  KreinTensor krein = krein_parameters(tay);
  ConstraintReport rep = constrain_design(tay, krein, {1, 3});
  CHECK(rep.trace.size() == 2);
  CHECK(rep.final_support.empty());
  CHECK(rep.forced_half_size);
}

TEST_CASE("octagon line-clique chains") {
  LineCliqueReport oct = line_clique_analysis_octagon(2, 4);
  check_vec(oct.clique_a,
            {Scalar(1), Scalar(2), Scalar(0), Scalar(0), Scalar(0)});
  check_vec(oct.clique_aQ,
            {Scalar(3), Scalar(780), Scalar(0), Scalar(702), Scalar(270)});
  CHECK(oct.clique_design_set == std::set<int>{2});
  CHECK(oct.movoid_support == std::set<int>{2});
  REQUIRE(oct.constraint.trace.size() == 1);
  CHECK(oct.constraint.trace[0].h == 2);
  CHECK(oct.forced_half);
  CHECK(oct.conclusion == "no nontrivial m-ovoid");

  LineCliqueReport oct22 = line_clique_analysis_octagon(2, 2);
  CHECK_FALSE(oct22.forced_half);
  CHECK(oct22.conclusion == "no conclusion");

  LineCliqueReport oct39 = line_clique_analysis_octagon(3, 9);
  CHECK(oct39.forced_half);
  CHECK(oct39.conclusion == "every nontrivial m-ovoid is a hemisystem");
}

TEST_CASE("quadric generator-clique chains") {
  LineCliqueReport gp33 = line_clique_analysis_genpw(3, 3);
  check_vec(gp33.clique_a,
            {Scalar(1), Scalar(0), Scalar(0), Scalar(2), Scalar(0)});
  check_vec(gp33.clique_aQ,
            {Scalar(3), Scalar(0), Scalar(24), Scalar(36), Scalar(9)});
  CHECK(gp33.movoid_support == std::set<int>{1});
  CHECK(gp33.forced_half);
  CHECK(gp33.conclusion ==
        "no relative m-ovoid; a relative hemisystem requires even q");

  LineCliqueReport gp43 = line_clique_analysis_genpw(4, 3);
  check_vec(gp43.clique_aQ,
            {Scalar(4), Scalar(0), Scalar(100), Scalar(120), Scalar(16)});
  CHECK(gp43.forced_half);
  CHECK(gp43.conclusion == "every relative m-ovoid is a relative hemisystem");

  LineCliqueReport gp54 = line_clique_analysis_genpw(5, 4);
  check_vec(gp54.clique_aQ,
            {Scalar(25), Scalar(0), Scalar(6975), Scalar(7750), Scalar(750)});
  CHECK(gp54.forced_half);
}

TEST_CASE("relative m-ovoid counting on the enumerated geometry") {
  EllipticQuadric quad(3, 3);
  AmbientSplit split = ambient_split(quad, default_base_point(quad));
  GeneratorsReport gens = generators_off_hyperplane(quad, split);
  CHECK(gens.total_lines == 280);
  CHECK(gens.omega_traces.size() == 240);

  std::vector<int> omega_all(split.omega.size());
  for (std::size_t i = 0; i < omega_all.size(); ++i)
    omega_all[i] = static_cast<int>(i);
  CHECK(relative_movoid_check(gens, omega_all, 3));
  CHECK(relative_movoid_check(gens, {}, 0));
  CHECK_FALSE(relative_movoid_check(gens, {}, 1));
  std::vector<int> prefix(omega_all.begin(), omega_all.begin() + 35);
  CHECK_FALSE(relative_movoid_check(gens, prefix, 3));
}

TEST_CASE("design-layer error paths") {
  Scheme j84 = johnson(8, 4);
  SpectralData spec = spectral(j84);
  CHECK_THROWS_AS(inner_distribution(j84, {}), EmptySubset);
  CHECK_THROWS_AS(
      mac_williams({Scalar(1), Scalar(16), Scalar(0), Scalar(0), Scalar(0)},
                   spec),
      NegativeTransformEntry);
  CHECK_THROWS_AS(mac_williams({Scalar(1), Scalar(2)}, spec),
                  PreconditionViolated);
  CHECK_THROWS_AS(eigenspace_support(j84, spec, {}), EmptySubset);
}

TEST_CASE("singleton subsets are valid designs of empty strength") {
  Scheme j52 = johnson(5, 2);
  SpectralData spec = spectral(j52);
  auto a = inner_distribution(j52, {0});
  check_vec(a, {Scalar(1), Scalar(0), Scalar(0)});
  auto cert = mac_williams(a, spec);
  CHECK(to_string(cert.size) == "1");
  CHECK(cert.T.empty());
  CHECK(cert.S == std::set<int>{1, 2});
  for (const Scalar& v : cert.aQ) CHECK(v.sign() > 0);
}
