#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "schemeforge/catalog.hpp"
#include "schemeforge/scheme.hpp"

using namespace schemeforge;

namespace {

// Shared identity suite: every spectral/Krein computation must satisfy these
// regardless of which scheme produced it.
void check_spectral_identities(const SpectralData& sd) {
  int d = sd.d;
  ExactMatrix prod = sd.P * sd.Q;
  ExactMatrix expect = scale(Scalar(Integer(sd.n)),
                             ExactMatrix::identity(d + 1));
  CHECK(prod == expect);
  CHECK(sd.Q * sd.P == expect);
  Scalar ksum(0), msum(0);
  for (int i = 0; i <= d; ++i) {
    ksum += sd.k[i];
    msum += sd.m[i];
  }
  CHECK(sub(ksum, Scalar(Integer(sd.n))).is_zero());
  CHECK(sub(msum, Scalar(Integer(sd.n))).is_zero());
}

void check_krein_identities(const SpectralData& sd, const KreinTensor& kt) {
  int d = sd.d;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      // Slice h=0 is diagonal with the multiplicities.
      Scalar expect = (i == j) ? sd.m[j] : Scalar(0);
      CHECK(sub(kt.at(i, j, 0), expect).is_zero());
      // Row sums weighted by multiplicities.
      Scalar sum(0);
      for (int h = 0; h <= d; ++h) sum += mul(kt.at(i, j, h), sd.m[h]);
      CHECK(sub(sum, mul(sd.m[i], sd.m[j])).is_zero());
      for (int h = 0; h <= d; ++h) {
        CHECK(kt.at(i, j, h).sign() >= 0);
        CHECK(sub(mul(sd.m[h], kt.at(i, j, h)),
                  mul(sd.m[j], kt.at(i, h, j))).is_zero());
      }
    }
}

}  // namespace

TEST_CASE("one-class scheme from explicit relations") {
  std::vector<RelationMatrix> rels(2, RelationMatrix(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) (x == y ? rels[0] : rels[1]).set(x, y);
  Scheme s = Scheme::from_relations(rels);
  ValidationReport rep = validate_axioms(s);
  CHECK(rep.ok);
  CHECK(rep.n == 4);
  CHECK(rep.d == 1);
  CHECK(rep.valencies == std::vector<long long>{1, 3});
  CHECK(s.relation_of(0, 0) == 0);
  CHECK(s.relation_of(0, 3) == 1);

  SpectralData sd = spectral(s);
  CHECK(to_string(sd.P.at(0, 1)) == "3");
  CHECK(to_string(sd.P.at(1, 1)) == "-1");
  CHECK(to_string(sd.m[1]) == "3");
  check_spectral_identities(sd);

  KreinTensor kt = krein_parameters(sd);
  CHECK(to_string(kt.at(1, 1, 1)) == "2");
  CHECK(vanishing_krein(kt).empty());
  CHECK_FALSE(is_Q_bipartite(kt));
  check_krein_identities(sd, kt);

  IntersectionTensor pt = intersection_tensor(sd);
  CHECK(to_string(pt.at(1, 1, 1)) == "2");
}

TEST_CASE("axiom violations carry a witness") {
  std::vector<RelationMatrix> rels(2, RelationMatrix(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) (x == y ? rels[0] : rels[1]).set(x, y);
  // Break symmetry at the pair (1,2).
  rels[1].clear(1, 2);
  rels[0].set(1, 2);
  Scheme s = Scheme::from_relations(rels);
  try {
    validate_axioms(s);
    FAIL("expected AxiomViolation");
  } catch (const AxiomViolation& e) {
    CHECK(e.exit_code() == 4);
    CHECK(std::string(e.what()).find("AxiomViolation") == 0);
  }

  // A non-constant diagonal breaks the identity-relation axiom.
  std::vector<RelationMatrix> rels2(2, RelationMatrix(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) (x == y ? rels2[0] : rels2[1]).set(x, y);
  rels2[0].clear(2, 2);
  rels2[1].set(2, 2);
  CHECK_THROWS_AS(validate_axioms(Scheme::from_relations(rels2)),
                  AxiomViolation);
}

TEST_CASE("J(8,4) spectral data matches the worked values") {
  Scheme s = johnson(8, 4);
  ValidationReport rep = validate_axioms(s);
  CHECK(rep.ok);
  CHECK(rep.valencies == std::vector<long long>{1, 16, 36, 16, 1});

  SpectralData sd = spectral(s);
  long long expP[5][5] = {{1, 16, 36, 16, 1},
                          {1, 8, 0, -8, -1},
                          {1, 2, -6, 2, 1},
                          {1, -2, 0, 2, -1},
                          {1, -4, 6, -4, 1}};
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      CHECK(sub(sd.P.at(r, c), Scalar(expP[r][c])).is_zero());
  long long expm[5] = {1, 7, 20, 28, 14};
  for (int j = 0; j < 5; ++j) CHECK(sub(sd.m[j], Scalar(expm[j])).is_zero());
  check_spectral_identities(sd);

  KreinTensor kt = krein_parameters(sd);
  CHECK(to_string(kt.at(1, 1, 2)) == "21/10");
  CHECK(to_string(kt.at(2, 2, 2)) == "65/6");
  CHECK(to_string(kt.at(3, 3, 2)) == "231/10");
  CHECK(to_string(kt.at(4, 4, 4)) == "14/3");
  check_krein_identities(sd, kt);

  auto vk = vanishing_krein(kt);
  CHECK(vk.size() == 35);
  CHECK(vk.count({1, 1, 1}) == 1);
  CHECK(vk.count({1, 4, 1}) == 1);
  CHECK(vk.count({2, 3, 4}) == 1);
  CHECK(vk.count({4, 4, 3}) == 1);
  CHECK(vk.count({2, 2, 2}) == 0);
  // The vanishing set is closed under permuting (i,j,h).
  for (const auto& t : vk) {
    CHECK(vk.count({t[1], t[0], t[2]}) == 1);
    CHECK(vk.count({t[2], t[1], t[0]}) == 1);
    CHECK(vk.count({t[0], t[2], t[1]}) == 1);
  }

  // The intersection numbers from the sorted eigenmatrix match brute force.
  IntersectionTensor pt = intersection_tensor(sd);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j)
      for (int h = 0; h <= 4; ++h)
        CHECK(sub(pt.at(i, j, h), rep.p.at(i, j, h)).is_zero());
}

TEST_CASE("J(8,4) orderings and Krein array") {
  SpectralData sd = spectral(johnson(8, 4));
  KreinTensor kt = krein_parameters(sd);
  auto com = find_cometric_orderings(kt);
  REQUIRE(com.size() == 1);
  CHECK(com[0] == std::vector<int>{1, 2, 3, 4});
  auto met = find_metric_orderings(intersection_tensor(sd));
  REQUIRE(met.size() == 1);
  CHECK(met[0] == std::vector<int>{1, 2, 3, 4});
  CHECK(is_Q_bipartite(kt));
  CHECK_FALSE(is_Q_antipodal(kt, com[0]));

  KreinArray ka = krein_array(kt, com[0]);
  CHECK(to_string(ka.b[0]) == "7");
  CHECK(to_string(ka.c[3]) == "7/2");
  for (int i = 0; i <= 4; ++i) {
    Scalar sum = ka.a[i];
    if (i < 4) sum += ka.b[i];
    if (i >= 1) sum += ka.c[i];
    CHECK(sub(sum, sd.m[1]).is_zero());
  }
}

TEST_CASE("J(8,4) idempotents and projections") {
  Scheme s = johnson(8, 4);
  SpectralData sd = spectral(s);
  KreinTensor kt = krein_parameters(sd);
  IdempotentBasis basis = build_idempotent_basis(s, sd);
  CHECK(idempotents_orthogonal(basis));
  CHECK(idempotents_resolve_relations(sd));

  CHECK(schur_projection_check(s, sd, kt, 1, 1, 1));
  CHECK(schur_projection_check(s, sd, kt, 1, 4, 1));
  CHECK(schur_projection_check(s, sd, kt, 4, 4, 3));
  CHECK_THROWS_AS(schur_projection_check(s, sd, kt, 2, 2, 2),
                  PreconditionViolated);

  TripleSamplePolicy pol;
  pol.exhaustive = true;
  CHECK(triple_intersection_check(s, sd, kt, 1, 4, 1, pol));
  CHECK(triple_intersection_check(s, sd, kt, 1, 1, 1, pol));
  TripleSamplePolicy sampled;
  sampled.exhaustive = false;
  sampled.samples = 500;
  CHECK(triple_intersection_check(s, sd, kt, 2, 3, 4, sampled));
}

TEST_CASE("icosahedron from its intersection array") {
  SpectralData ico = spectral_from_intersection_array({5, 2, 1}, {1, 2, 5});
  CHECK(ico.n == 12);
  CHECK(to_string(ico.P.at(1, 1)) == "0+1*sqrt(5)");
  CHECK(to_string(ico.m[1]) == "3");
  CHECK(to_string(ico.m[2]) == "5");
  CHECK_FALSE(ico.non_integral_multiplicity);
  check_spectral_identities(ico);
  KreinTensor kt = krein_parameters(ico);
  check_krein_identities(ico, kt);
  CHECK(is_Q_bipartite(kt));
  CHECK(find_cometric_orderings(kt).size() == 2);
}

TEST_CASE("eigenmatrix round-trips through the scheme constructor") {
  SpectralData sd = spectral(johnson(8, 4));
  Scheme rebuilt = Scheme::from_eigenmatrix(sd.P);
  SpectralData sd2 = spectral(rebuilt);
  CHECK(sd2.P == sd.P);
  CHECK(sd2.Q == sd.Q);
  CHECK(rebuilt.source() == SchemeSource::Eigenmatrix);
  CHECK_THROWS_AS(rebuilt.relations(), Error);
}

TEST_CASE("intersection-matrix construction agrees with relations") {
  Scheme s = johnson(5, 2);
  ValidationReport rep = validate_axioms(s);
  // (L_i) row l, column h holds p_{i,h}^l.
  std::vector<ExactMatrix> bmats;
  for (int i = 0; i <= 2; ++i) {
    ExactMatrix b(3, 3);
    for (int l = 0; l <= 2; ++l)
      for (int h = 0; h <= 2; ++h) b.at(l, h) = rep.p.at(i, h, l);
    bmats.push_back(b);
  }
  Scheme viaB = Scheme::from_intersection_matrices(bmats);
  CHECK(viaB.source() == SchemeSource::IntersectionMatrices);
  SpectralData sd = spectral(viaB);
  CHECK(sd.n == 10);
  CHECK(to_string(sd.m[1]) == "4");
  CHECK(to_string(sd.m[2]) == "5");
  CHECK(sd.P == spectral(s).P);
}

TEST_CASE("reduced Krein diagonal uses the unnormalized transform") {
  SpectralData gq = spectral(pg_scheme({2, 2, 1}));
  CHECK(to_string(reduced_krein_diagonal(gq, 1)) == "65/72");
  KreinTensor kt = krein_parameters(gq);
  CHECK(to_string(kt.at(1, 1, 1)) == "39/8");
  // The two differ exactly by n * m_1 / (m_1 * m_1) ... check the ratio.
  Scalar ratio = div(kt.at(1, 1, 1), reduced_krein_diagonal(gq, 1));
  Scalar expect = div(mul(gq.m[1], gq.m[1]), Scalar(Integer(gq.n)));
  CHECK(sub(ratio, expect).is_zero());
}

TEST_CASE("identity checks hold across the catalog") {
  std::vector<SpectralData> specs;
  specs.push_back(spectral(pg_scheme({2, 2, 1})));
  specs.push_back(spectral(pg_scheme({4, 27, 2})));
  specs.push_back(spectral(srg_scheme(16, 10, 6, 6)));
  specs.push_back(spectral(dual_polar_scheme(DualPolarFamily::DH5, 2)));
  specs.push_back(spectral(octagon_scheme(2, 4)));
  specs.push_back(spectral(genpw_param(3, 3)));
  specs.push_back(spectral(taylor_scheme(5, 2)));
  for (const SpectralData& sd : specs) {
    check_spectral_identities(sd);
    check_krein_identities(sd, krein_parameters(sd));
  }
}
