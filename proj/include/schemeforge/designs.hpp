#ifndef SCHEMEFORGE_DESIGNS_HPP
#define SCHEMEFORGE_DESIGNS_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schemeforge/catalog.hpp"

namespace schemeforge {

// ---------------------------------------------------------------------------
// Inner distributions and the MacWilliams transform

// Subset of the vertex set of an explicit scheme, as sorted indices.
struct SubsetDesign {
  std::string label;
  std::vector<int> members;
};

// a_i = (number of ordered member pairs in relation i) / |theta|; a_0 = 1.
inline std::vector<Scalar> inner_distribution(const Scheme& scheme,
                                              const std::vector<int>& members) {
  if (members.empty()) throw EmptySubset("inner distribution of an empty set");
  int d = scheme.classes();
  std::vector<long long> counts(d + 1);
  for (int x : members)
    for (int y : members) ++counts[scheme.relation_of(x, y)];
  std::vector<Scalar> a(d + 1);
  Rational size(static_cast<long long>(members.size()));
  for (int i = 0; i <= d; ++i) a[i] = Scalar(Rational(counts[i]) / size);
  return a;
}

// Transform certificate: the design index set T collects the exact zeros of
// aQ, the eigenspace support S is its complement, and half_size records
// whether the subset size (aQ)_0 equals n/2.
struct DesignCertificate {
  std::vector<Scalar> aQ;
  std::set<int> T;
  std::set<int> S;
  Scalar size;
  bool half_size = false;
};

inline DesignCertificate mac_williams(const std::vector<Scalar>& a,
                                      const SpectralData& spec) {
  int d = spec.d;
  if (static_cast<int>(a.size()) != d + 1)
    throw PreconditionViolated("inner distribution has the wrong length");
  DesignCertificate cert;
  cert.aQ.resize(d + 1);
  for (int j = 0; j <= d; ++j) {
    Scalar entry;
    for (int i = 0; i <= d; ++i) entry += a[i] * spec.Q.at(i, j);
    if (entry.sign() < 0)
      throw NegativeTransformEntry("aQ entry " + std::to_string(j) +
                                   " is negative");
    cert.aQ[j] = entry;
  }
  cert.size = cert.aQ[0];
  cert.half_size = sub(mul(Scalar(2), cert.size), Scalar(Rational(spec.n))).is_zero();
  for (int j = 1; j <= d; ++j) {
    if (cert.aQ[j].is_zero())
      cert.T.insert(j);
    else
      cert.S.insert(j);
  }
  return cert;
}

// S = { j >= 1 : E_j chi != 0 }, evaluated exactly on the integerized
// idempotents of an explicit scheme.
inline std::set<int> eigenspace_support(const Scheme& scheme,
                                        const SpectralData& spec,
                                        const std::vector<int>& members) {
  if (members.empty()) throw EmptySubset("support of an empty set");
  IdempotentBasis basis = build_idempotent_basis(scheme, spec);
  int n = basis.n;
  std::set<int> support;
  for (int j = 1; j <= basis.d; ++j) {
    bool nonzero = false;
    for (int x = 0; x < n && !nonzero; ++x) {
      long long acc = 0;
      const long long* row = basis.ehat[j].data() + static_cast<std::size_t>(x) * n;
      for (int y : members) acc += row[y];
      nonzero = acc != 0;
    }
    if (nonzero) support.insert(j);
  }
  return support;
}

// ---------------------------------------------------------------------------
// The support-constraint engine

struct ConstraintStep {
  int h = 0;
  std::string dichotomy;
};

struct ConstraintReport {
  std::set<int> initial_support;
  std::vector<ConstraintStep> trace;
  std::set<int> final_support;
  bool forced_half_size = false;
};

// Iterates the removal dichotomy: whenever some h in the support has
// q_ij^h = 0 for all i, j in the support, either h leaves the support or
// the subset has exactly half the points. A known size other than n/2
// resolves every dichotomy toward removal; an emptied support with no such
// size information forces the half-size branch for nontrivial subsets.
inline ConstraintReport constrain_design(const SpectralData& spec,
                                         const KreinTensor& krein,
                                         const std::set<int>& support,
                                         std::optional<Rational> size = {}) {
  for (int h : support)
    if (h < 1 || h > spec.d)
      throw PreconditionViolated("support indices must lie in 1..d");
  ConstraintReport report;
  report.initial_support = support;
  std::set<int> current = support;

  bool size_known = size.has_value();
  bool size_is_half = size_known && Rational(spec.n) == *size * 2;

  while (true) {
    int removable = -1;
    for (int h : current) {
      bool all_zero = true;
      for (int i : current) {
        for (int j : current)
          if (!krein.at(i, j, h).is_zero()) {
            all_zero = false;
            break;
          }
        if (!all_zero) break;
      }
      if (all_zero) {
        removable = h;
        break;
      }
    }
    if (removable < 0) break;
    ConstraintStep step;
    step.h = removable;
    if (!size_known)
      step.dichotomy = "removable-or-half";
    else if (size_is_half)
      step.dichotomy = "half-size-holds";
    else
      step.dichotomy = "removable";
    report.trace.push_back(step);
    current.erase(removable);
  }
  report.final_support = current;
  report.forced_half_size = current.empty() && (!size_known || size_is_half) &&
                            !report.trace.empty();
  return report;
}

// Corollary for a single eigenspace: q_hh^h = 0 pins nontrivial type-h
// intriguing sets to exactly half the vertices.
inline std::string intriguing_set_verdict(const SpectralData& spec,
                                          const KreinTensor& krein, int h) {
  if (h < 1 || h > spec.d)
    throw PreconditionViolated("eigenspace index out of range");
  if (krein.at(h, h, h).is_zero())
    return "nontrivial type-" + std::to_string(h) +
           " intriguing sets have size n/2";
  return "no conclusion";
}

// ---------------------------------------------------------------------------
// Line-clique analysis for octagons and the quadric schemes

struct LineCliqueReport {
  std::vector<Scalar> clique_a;
  std::vector<Scalar> clique_aQ;
  std::set<int> clique_design_set;
  std::set<int> movoid_support;
  ConstraintReport constraint;
  bool forced_half = false;
  std::string conclusion;
};

// Chain for a generalised octagon: a line is a clique with inner
// distribution (1, s, 0, 0, 0); its single design index makes an m-ovoid a
// design on the other indices, so its support is that one index, and the
// constraint engine plus the parity of (s+1)/2 settles existence.
inline LineCliqueReport line_clique_analysis_octagon(long long s, long long t) {
  SpectralData spec = spectral(octagon_scheme(s, t));
  KreinTensor krein = krein_parameters(spec);

  LineCliqueReport report;
  report.clique_a = {Scalar(1), Scalar(s), Scalar(0), Scalar(0), Scalar(0)};
  DesignCertificate cert = mac_williams(report.clique_a, spec);
  report.clique_aQ = cert.aQ;
  report.clique_design_set = cert.T;
  report.movoid_support = cert.T;
  report.constraint = constrain_design(spec, krein, report.movoid_support);
  report.forced_half = report.constraint.forced_half_size;
  if (!report.forced_half)
    report.conclusion = "no conclusion";
  else if (s % 2 == 0)
    report.conclusion = "no nontrivial m-ovoid";
  else
    report.conclusion = "every nontrivial m-ovoid is a hemisystem";
  return report;
}

// Chain for the quadric scheme: a generator clique has inner distribution
// (1, 0, 0, q^(n-2)-1, 0); the same support argument forces a relative
// m-ovoid to half of Omega, so it meets each generator in q^(n-2)/2 points,
// which is integral only for even q.
inline LineCliqueReport line_clique_analysis_genpw(long long q, int n) {
  SpectralData spec = spectral(genpw_param(q, n));
  KreinTensor krein = krein_parameters(spec);

  Integer clique = 1;
  for (int i = 0; i < n - 2; ++i) clique *= q;
  Integer interior = clique - 1;
  LineCliqueReport report;
  report.clique_a = {Scalar(1), Scalar(0), Scalar(0), Scalar(interior),
                     Scalar(0)};
  DesignCertificate cert = mac_williams(report.clique_a, spec);
  report.clique_aQ = cert.aQ;
  report.clique_design_set = cert.T;
  report.movoid_support = cert.T;
  report.constraint = constrain_design(spec, krein, report.movoid_support);
  report.forced_half = report.constraint.forced_half_size;
  if (!report.forced_half)
    report.conclusion = "no conclusion";
  else if (q % 2 == 0)
    report.conclusion = "every relative m-ovoid is a relative hemisystem";
  else
    report.conclusion = "no relative m-ovoid; a relative hemisystem requires even q";
  return report;
}

// ---------------------------------------------------------------------------
// The four reference designs in J(8,4)

namespace detail {

using Perm8 = std::array<int, 8>;

inline int pow_mod(int base, int e, int mod) {
  int result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  for (; e > 0; e >>= 1) {
    if (e & 1) result = result * base % mod;
    base = base * base % mod;
  }
  return result;
}

// Moebius map x -> (ax+b)/(cx+d) on PG(1,7), with 7 the point at infinity.
inline Perm8 moebius7(int a, int b, int c, int d) {
  auto norm = [](int v) { return ((v % 7) + 7) % 7; };
  Perm8 f{};
  for (int x = 0; x < 7; ++x) {
    int den = norm(c * x + d);
    f[x] = den == 0 ? 7 : norm(a * x + b) * pow_mod(den, 5, 7) % 7;
  }
  f[7] = norm(c) == 0 ? 7 : norm(a) * pow_mod(norm(c), 5, 7) % 7;
  return f;
}

// Linear map of F_2^3 acting on 0..7 via little-endian bit coordinates.
inline Perm8 linear_f2(const std::array<std::array<int, 3>, 3>& mat) {
  Perm8 f{};
  for (int x = 0; x < 8; ++x) {
    int y = 0;
    for (int i = 0; i < 3; ++i) {
      int bit = 0;
      for (int j = 0; j < 3; ++j) bit ^= mat[i][j] & (x >> j);
      y |= (bit & 1) << i;
    }
    f[x] = y;
  }
  return f;
}

// GF(8) multiplication with modulus x^3 + x + 1 on 3-bit field elements.
inline int f8mul(int a, int b) {
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if ((b >> i) & 1) r ^= a << i;
  for (int i = 5; i >= 3; --i)
    if ((r >> i) & 1) r ^= 0b1011 << (i - 3);
  return r & 7;
}

inline int apply_mask(const Perm8& f, int mask) {
  int out = 0;
  for (int i = 0; i < 8; ++i)
    if ((mask >> i) & 1) out |= 1 << f[i];
  return out;
}

inline std::vector<int> mask_elements(int mask, int width) {
  std::vector<int> out;
  for (int i = 0; i < width; ++i)
    if ((mask >> i) & 1) out.push_back(i);
  return out;
}

// Orbits of the generated group on the given masks, each orbit sorted by
// member element lists, orbits ordered by their smallest member.
inline std::vector<std::vector<int>> mask_orbits(
    const std::vector<Perm8>& gens, const std::vector<int>& masks, int width) {
  std::set<int> todo(masks.begin(), masks.end());
  std::vector<std::vector<int>> orbits;
  while (!todo.empty()) {
    int start = *todo.begin();
    std::set<int> orbit;
    std::vector<int> frontier = {start};
    orbit.insert(start);
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int m : frontier)
        for (const Perm8& g : gens) {
          int image = apply_mask(g, m);
          if (orbit.insert(image).second) next.push_back(image);
        }
      frontier = std::move(next);
    }
    for (int m : orbit) todo.erase(m);
    orbits.emplace_back(orbit.begin(), orbit.end());
  }
  auto key = [width](const std::vector<int>& orbit) {
    std::vector<std::vector<int>> lists;
    for (int m : orbit) lists.push_back(mask_elements(m, width));
    std::sort(lists.begin(), lists.end());
    return lists;
  };
  std::sort(orbits.begin(), orbits.end(),
            [&key](const std::vector<int>& a, const std::vector<int>& b) {
              return key(a) < key(b);
            });
  return orbits;
}

// Coverage multiset of 3-subsets by a block list; a 3-design covers each
// 3-subset equally often.
inline bool is_three_design(const std::vector<int>& blocks, int* lambda) {
  std::map<int, int> cover;
  for (int block : blocks)
    for (int t = 0; t < 256; ++t)
      if (__builtin_popcount(t) == 3 && (block & t) == t) ++cover[t];
  if (cover.size() != 56) return false;
  int first = cover.begin()->second;
  for (const auto& [mask, count] : cover)
    if (count != first) return false;
  if (lambda) *lambda = first;
  return true;
}

}  // namespace detail

struct J84Examples {
  Scheme scheme;
  SubsetDesign planes;
  SubsetDesign orbit_design;
  SubsetDesign star;
  SubsetDesign footnote;
  bool orbit_design_others_exist = false;
};

// The four reference subsets of J(8,4): the planes of AG(3,2), a 42-block
// 3-(8,4,3) design found by orbit search over transitive groups of degree
// 8, the star of a point, and the PG(1,5)-based 35-block construction.
inline J84Examples j84_examples() {
  using detail::Perm8;
  J84Examples out{johnson(8, 4)};
  SpectralData spec = spectral(out.scheme);

  std::vector<int> vert_masks;
  std::map<int, int> index_of;
  for (int mask = 0; mask < 256; ++mask)
    if (__builtin_popcount(mask) == 4) {
      index_of[mask] = static_cast<int>(vert_masks.size());
      vert_masks.push_back(mask);
    }
  auto to_members = [&](const std::vector<int>& blocks) {
    std::vector<int> members;
    for (int b : blocks) members.push_back(index_of.at(b));
    std::sort(members.begin(), members.end());
    return members;
  };

  // (a) planes of AG(3,2): 4-subsets of F_2^3 with zero XOR.
  std::vector<int> plane_blocks;
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    int acc = 0;
    for (int i = 0; i < 8; ++i)
      if ((mask >> i) & 1) acc ^= i;
    if (acc == 0) plane_blocks.push_back(mask);
  }
  out.planes = {"planes-of-AG(3,2)", to_members(plane_blocks)};

  // (b) orbit search over PSL(2,7), PGL(2,7), AGL(3,2), AGammaL(1,8).
  std::vector<Perm8> psl = {detail::moebius7(1, 1, 0, 1),
                            detail::moebius7(0, -1, 1, 0)};
  std::vector<Perm8> pgl = psl;
  pgl.push_back(detail::moebius7(3, 0, 0, 1));
  Perm8 translate{};
  for (int x = 0; x < 8; ++x) translate[x] = x ^ 1;
  std::vector<Perm8> agl = {
      translate, detail::linear_f2({{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}),
      detail::linear_f2({{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}})};
  Perm8 frobenius{}, primitive{};
  for (int x = 0; x < 8; ++x) {
    frobenius[x] = detail::f8mul(x, x);
    primitive[x] = detail::f8mul(2, x);
  }
  std::vector<Perm8> agammal = {frobenius, primitive, translate};

  std::set<std::vector<int>> qualifying;
  for (const std::vector<Perm8>& gens : {psl, pgl, agl, agammal}) {
    for (const std::vector<int>& orbit :
         detail::mask_orbits(gens, vert_masks, 8)) {
      if (orbit.size() != 42) continue;
      int lambda = 0;
      if (!detail::is_three_design(orbit, &lambda) || lambda != 3) continue;
      std::vector<int> members = to_members(orbit);
      if (eigenspace_support(out.scheme, spec, members) !=
          std::set<int>{4})
        continue;
      qualifying.insert(members);
    }
  }
  if (qualifying.empty())
    throw SearchFailed("no 42-block orbit design found");
  out.orbit_design = {"orbit-3-(8,4,3)", *qualifying.begin()};
  out.orbit_design_others_exist = qualifying.size() > 1;

  // (c) star of element 0.
  std::vector<int> star_blocks;
  for (int mask : vert_masks)
    if (mask & 1) star_blocks.push_back(mask);
  out.star = {"star-of-a-point", to_members(star_blocks)};

  // (d) two PSL(2,5) orbits on 3-subsets of PG(1,5) = {0..5}, extended by
  // the elements 6 and 7, together with all 4-subsets of {0..5}.
  auto moebius5 = [](int a, int b, int c, int d) {
    auto norm = [](int v) { return ((v % 5) + 5) % 5; };
    Perm8 f{};
    for (int x = 0; x < 5; ++x) {
      int den = norm(c * x + d);
      f[x] = den == 0 ? 5 : norm(a * x + b) * detail::pow_mod(den, 3, 5) % 5;
    }
    f[5] = norm(c) == 0 ? 5 : norm(a) * detail::pow_mod(norm(c), 3, 5) % 5;
    f[6] = 6;
    f[7] = 7;
    return f;
  };
  std::vector<Perm8> psl5 = {moebius5(1, 1, 0, 1), moebius5(0, -1, 1, 0)};
  std::vector<int> triples;
  for (int mask = 0; mask < 64; ++mask)
    if (__builtin_popcount(mask) == 3) triples.push_back(mask);
  std::vector<std::vector<int>> triple_orbits =
      detail::mask_orbits(psl5, triples, 6);
  if (triple_orbits.size() != 2 || triple_orbits[0].size() != 10 ||
      triple_orbits[1].size() != 10)
    throw SearchFailed("unexpected PSL(2,5) orbit structure");

  std::vector<int> footnote_blocks;
  for (int mask = 0; mask < 64; ++mask)
    if (__builtin_popcount(mask) == 4) footnote_blocks.push_back(mask);
  for (int t : triple_orbits[0]) footnote_blocks.push_back(t | (1 << 6));
  for (int t : triple_orbits[1]) footnote_blocks.push_back(t | (1 << 7));
  out.footnote = {"two-orbit-extension", to_members(footnote_blocks)};
  return out;
}

// ---------------------------------------------------------------------------
// Relative m-ovoids against enumerated generators

// True iff every generator off the hyperplane meets the subset in exactly m
// of its Omega points.
inline bool relative_movoid_check(const GeneratorsReport& generators,
                                  const std::vector<int>& subset, long long m) {
  std::set<int> members(subset.begin(), subset.end());
  for (const std::vector<int>& trace : generators.omega_traces) {
    long long hits = 0;
    for (int pt : trace) hits += members.count(pt) ? 1 : 0;
    if (hits != m) return false;
  }
  return true;
}

}  // namespace schemeforge

#endif
