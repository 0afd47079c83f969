#ifndef SCHEMEFORGE_SCHEME_HPP
#define SCHEMEFORGE_SCHEME_HPP

#include <array>
#include <cstdint>
#include <exception>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "schemeforge/matrix.hpp"
#include "schemeforge/relation.hpp"

namespace schemeforge {

// ---------------------------------------------------------------------------
// Tensors

// Cube of scalars indexed by three relation/eigenspace indices in {0..d}.
class Tensor3 {
public:
  Tensor3() : d_(0) {}
  explicit Tensor3(int d)
      : d_(d), data_(static_cast<std::size_t>(d + 1) * (d + 1) * (d + 1)) {}

  int classes() const { return d_; }

  Scalar& at(int i, int j, int h) {
    return data_[(static_cast<std::size_t>(i) * (d_ + 1) + j) * (d_ + 1) + h];
  }
  const Scalar& at(int i, int j, int h) const {
    return data_[(static_cast<std::size_t>(i) * (d_ + 1) + j) * (d_ + 1) + h];
  }

private:
  int d_;
  std::vector<Scalar> data_;
};

// q_ij^h, normalized so that q_ij^0 = delta_ij * m_j.
struct KreinTensor : Tensor3 {
  using Tensor3::Tensor3;
};

// p_ij^h, the ordinary intersection numbers.
struct IntersectionTensor : Tensor3 {
  using Tensor3::Tensor3;
};

// ---------------------------------------------------------------------------
// Scheme

enum class SchemeSource { ExplicitRelations, IntersectionMatrices, Eigenmatrix };

// Association scheme with one of three interchangeable descriptions: the
// relations themselves, their intersection matrices, or the eigenmatrix P.
class Scheme {
public:
  static Scheme from_relations(std::vector<RelationMatrix> rels) {
    if (rels.empty())
      throw Error(ErrorCategory::MathDomain, "no relations supplied");
    Scheme s;
    s.source_ = SchemeSource::ExplicitRelations;
    s.d_ = static_cast<int>(rels.size()) - 1;
    s.n_ = rels[0].size();
    s.relations_ = std::move(rels);
    s.build_classifier();
    return s;
  }

  static Scheme from_intersection_matrices(std::vector<ExactMatrix> ls) {
    if (ls.empty())
      throw Error(ErrorCategory::MathDomain, "no intersection matrices");
    Scheme s;
    s.source_ = SchemeSource::IntersectionMatrices;
    s.d_ = static_cast<int>(ls.size()) - 1;
    Scalar total;
    for (int i = 0; i <= s.d_; ++i) total += ls[i].at(0, i);
    if (!total.is_whole())
      throw Error(ErrorCategory::MathDomain, "valency sum is not an integer");
    s.n_ = checked_count(total.as_whole());
    s.lmats_ = std::move(ls);
    return s;
  }

  static Scheme from_eigenmatrix(ExactMatrix p) {
    if (p.rows() != p.cols() || p.rows() == 0)
      throw Error(ErrorCategory::MathDomain, "eigenmatrix must be square");
    Scheme s;
    s.source_ = SchemeSource::Eigenmatrix;
    s.d_ = p.rows() - 1;
    Scalar total;
    for (int i = 0; i <= s.d_; ++i) {
      if (p.at(i, 0) != Scalar(1))
        throw Error(ErrorCategory::MathDomain,
                    "eigenmatrix column 0 must be all ones");
      total += p.at(0, i);
    }
    if (!total.is_whole())
      throw Error(ErrorCategory::MathDomain, "valency sum is not an integer");
    s.n_ = checked_count(total.as_whole());
    s.pmat_ = std::move(p);
    return s;
  }

  SchemeSource source() const { return source_; }
  int classes() const { return d_; }
  long long n() const { return n_; }

  const std::vector<RelationMatrix>& relations() const {
    require(SchemeSource::ExplicitRelations);
    return relations_;
  }
  const std::vector<ExactMatrix>& intersection_matrices() const {
    require(SchemeSource::IntersectionMatrices);
    return lmats_;
  }
  const ExactMatrix& eigenmatrix() const {
    require(SchemeSource::Eigenmatrix);
    return pmat_;
  }

  // Relation index of the pair (x, y); -1 when no relation covers the pair.
  int relation_of(int x, int y) const {
    require(SchemeSource::ExplicitRelations);
    return classifier_[static_cast<std::size_t>(x) * n_ + y];
  }

private:
  Scheme() = default;

  static long long checked_count(const Integer& total) {
    if (total <= 0 || total > Integer(1) << 62)
      throw TooLarge("vertex count out of range");
    return total.convert_to<long long>();
  }

  void require(SchemeSource expected) const {
    if (source_ != expected)
      throw Error(ErrorCategory::MathDomain,
                  "operation requires a different scheme source");
  }

  void build_classifier() {
    classifier_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int i = 0; i <= d_; ++i)
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          if (relations_[i].get(x, y)) {
            std::size_t pos = static_cast<std::size_t>(x) * n_ + y;
            if (classifier_[pos] < 0) classifier_[pos] = i;
          }
  }

  SchemeSource source_ = SchemeSource::Eigenmatrix;
  int d_ = 0;
  long long n_ = 0;
  std::vector<RelationMatrix> relations_;
  std::vector<ExactMatrix> lmats_;
  ExactMatrix pmat_;
  std::vector<int> classifier_;
};

// ---------------------------------------------------------------------------
// Axiom validation

struct ValidationReport {
  bool ok = false;
  long long n = 0;
  int d = 0;
  std::vector<long long> valencies;
  IntersectionTensor p;
};

// Brute-force verification that the relation list is an association scheme:
// the relations partition the point pairs, relation 0 is the identity, each
// relation is symmetric, and every p_ij^h is independent of the witness pair.
inline ValidationReport validate_axioms(const Scheme& scheme) {
  const std::vector<RelationMatrix>& rels = scheme.relations();
  int n = static_cast<int>(scheme.n());
  int d = scheme.classes();
  if (n > 500) throw TooLarge("axiom validation capped at 500 points");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int hits = 0;
      for (int i = 0; i <= d; ++i) hits += rels[i].get(x, y) ? 1 : 0;
      if (hits != 1) throw AxiomViolation("partition", x, y);
      if (rels[0].get(x, y) != (x == y)) throw AxiomViolation("identity", x, y);
    }
  for (int i = 0; i <= d; ++i)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rels[i].get(x, y) != rels[i].get(y, x))
          throw AxiomViolation("symmetry", x, y);

  ValidationReport report;
  report.n = n;
  report.d = d;
  report.p = IntersectionTensor(d);

  std::vector<std::vector<long long>> reference(
      d + 1, std::vector<long long>((d + 1) * (d + 1), -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int h = scheme.relation_of(x, y);
      for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
          long long count = rels[i].and_popcount(x, rels[j], y);
          long long& ref = reference[h][i * (d + 1) + j];
          if (ref < 0) {
            ref = count;
          } else if (ref != count) {
            throw AxiomViolation("intersection-number", x, y);
          }
        }
    }
  for (int h = 0; h <= d; ++h)
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        report.p.at(i, j, h) = Scalar(reference[h][i * (d + 1) + j]);

  report.valencies.resize(d + 1);
  for (int i = 0; i <= d; ++i)
    report.valencies[i] = report.p.at(i, i, 0).as_whole().convert_to<long long>();
  report.ok = true;
  return report;
}

// ---------------------------------------------------------------------------
// Spectral data

struct SpectralData {
  int d = 0;
  Integer n = 0;
  ExactMatrix P;
  ExactMatrix Q;
  std::vector<Scalar> k;
  std::vector<Scalar> m;
  bool non_integral_multiplicity = false;
  std::vector<int> non_integral_indices;
};

namespace detail {

// Intersection matrices (L_i)_{l,h} = p_{i,h}^l read off a witness pair per
// relation, using symmetry of the relations.
inline std::vector<ExactMatrix> intersection_matrices_of(const Scheme& scheme) {
  if (scheme.source() == SchemeSource::IntersectionMatrices)
    return scheme.intersection_matrices();
  const std::vector<RelationMatrix>& rels = scheme.relations();
  int n = static_cast<int>(scheme.n());
  int d = scheme.classes();
  std::vector<ExactMatrix> ls(d + 1, ExactMatrix(d + 1, d + 1));
  for (int l = 0; l <= d; ++l) {
    int wx = -1, wy = -1;
    for (int x = 0; x < n && wx < 0; ++x)
      for (int y = 0; y < n; ++y)
        if (rels[l].get(x, y)) {
          wx = x;
          wy = y;
          break;
        }
    if (wx < 0)
      throw Error(ErrorCategory::MathDomain,
                  "relation " + std::to_string(l) + " is empty");
    for (int i = 0; i <= d; ++i)
      for (int h = 0; h <= d; ++h)
        ls[i].at(l, h) = Scalar(rels[i].and_popcount(wx, rels[h], wy));
  }
  return ls;
}

inline void finish_spectral(SpectralData& data) {
  int d = data.d;
  Scalar n_scalar{Rational(data.n)};
  data.Q = scale(n_scalar, inverse(data.P));
  data.k.resize(d + 1);
  data.m.resize(d + 1);
  for (int i = 0; i <= d; ++i) {
    data.k[i] = data.P.at(0, i);
    data.m[i] = data.Q.at(0, i);
  }
  for (int j = 0; j <= d; ++j) {
    const Scalar& mj = data.m[j];
    if (!mj.is_whole() || mj.sign() <= 0) {
      data.non_integral_multiplicity = true;
      data.non_integral_indices.push_back(j);
    }
  }
}

}  // namespace detail

// Eigenmatrix and all first-row data for the scheme. For matrix-backed
// sources, P rows are recovered as left eigenvectors of a generic integer
// combination sum_i w_i L_i with deterministic weights w_i = (i+1)^e; the
// seed e is advanced when a combination fails to separate the eigenspaces.
inline SpectralData spectral(const Scheme& scheme) {
  SpectralData data;
  data.d = scheme.classes();
  data.n = scheme.n();

  if (scheme.source() == SchemeSource::Eigenmatrix) {
    data.P = scheme.eigenmatrix();
    detail::finish_spectral(data);
    return data;
  }

  std::vector<ExactMatrix> ls = detail::intersection_matrices_of(scheme);
  int d = data.d;
  std::vector<Scalar> valencies(d + 1);
  for (int i = 0; i <= d; ++i) valencies[i] = ls[i].at(0, i);

  std::exception_ptr last_error;
  for (int seed = 1; seed <= 6; ++seed) {
    ExactMatrix combo(d + 1, d + 1);
    std::vector<Scalar> weights(d + 1);
    for (int i = 0; i <= d; ++i) {
      Integer w = 1;
      for (int e = 0; e < seed; ++e) w *= (i + 1);
      weights[i] = Scalar(w);
      combo = combo + scale(weights[i], ls[i]);
    }
    Scalar valency_eigenvalue;
    for (int i = 0; i <= d; ++i) valency_eigenvalue += weights[i] * valencies[i];

    std::vector<Scalar> eigs;
    try {
      eigs = eigenvalues_quadratic(combo);
    } catch (const Error&) {
      last_error = std::current_exception();
      continue;
    }
    bool distinct = true;
    for (std::size_t a = 0; a < eigs.size() && distinct; ++a)
      for (std::size_t b = a + 1; b < eigs.size(); ++b)
        if (sub(eigs[a], eigs[b]).is_zero()) {
          distinct = false;
          break;
        }
    if (!distinct) {
      last_error = std::make_exception_ptr(DegenerateSplitting(
          "combination seed " + std::to_string(seed) +
          " has repeated eigenvalues"));
      continue;
    }

    int valency_pos = -1;
    for (std::size_t a = 0; a < eigs.size(); ++a)
      if (sub(eigs[a], valency_eigenvalue).is_zero()) {
        valency_pos = static_cast<int>(a);
        break;
      }
    if (valency_pos < 0) {
      last_error = std::make_exception_ptr(
          DegenerateSplitting("valency eigenvalue missing"));
      continue;
    }
    eigs.erase(eigs.begin() + valency_pos);

    try {
      std::vector<std::vector<Scalar>> rows;
      for (const Scalar& lambda : eigs) {
        std::vector<Scalar> v = left_eigenvector_for(combo, lambda);
        std::vector<Scalar> row(d + 1);
        for (int i = 0; i <= d; ++i)
          for (int l = 0; l <= d; ++l) row[i] += v[l] * ls[i].at(l, 0);
        rows.push_back(std::move(row));
      }
      // Rows below the valency row are ordered by eigenvalue sequence,
      // largest first, comparing later columns only to break ties.
      std::sort(rows.begin(), rows.end(),
                [d](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
                  for (int i = 1; i <= d; ++i) {
                    int c = compare(x[i], y[i]);
                    if (c != 0) return c > 0;
                  }
                  return false;
                });
      data.P = ExactMatrix(d + 1, d + 1);
      for (int i = 0; i <= d; ++i) data.P.at(0, i) = valencies[i];
      for (int j = 1; j <= d; ++j)
        for (int i = 0; i <= d; ++i) data.P.at(j, i) = rows[j - 1][i];
    } catch (const Error&) {
      last_error = std::current_exception();
      continue;
    }
    detail::finish_spectral(data);
    return data;
  }
  if (last_error) std::rethrow_exception(last_error);
  throw DegenerateSplitting("no combination seed succeeded");
}

// Spectral data of a distance-regular graph given its intersection array
// {b_0..b_{d-1}; c_1..c_d}. P rows come from the standard sequences and the
// multiplicities from the Biggs quotient; a fractional or irrational
// multiplicity only sets the feasibility flag.
inline SpectralData spectral_from_intersection_array(
    const std::vector<long long>& b, const std::vector<long long>& c) {
  int d = static_cast<int>(b.size());
  if (static_cast<int>(c.size()) != d || d == 0)
    throw PreconditionViolated("intersection array halves must share a length");
  for (long long v : b)
    if (v <= 0) throw PreconditionViolated("b entries must be positive");
  for (long long v : c)
    if (v <= 0) throw PreconditionViolated("c entries must be positive");

  // b_i for i=0..d-1; c_i for i=1..d (c[0] in the input vector is c_1).
  auto bi = [&](int i) { return i < d ? Scalar(b[i]) : Scalar(0); };
  auto ci = [&](int i) { return i >= 1 ? Scalar(c[i - 1]) : Scalar(0); };
  auto ai = [&](int i) { return sub(sub(Scalar(b[0]), bi(i)), ci(i)); };

  std::vector<Scalar> k(d + 1);
  k[0] = Scalar(1);
  for (int i = 1; i <= d; ++i) k[i] = div(k[i - 1] * bi(i - 1), ci(i));
  Scalar n_scalar;
  for (int i = 0; i <= d; ++i) n_scalar += k[i];
  if (!n_scalar.is_whole())
    throw PreconditionViolated("vertex count is not an integer");

  ExactMatrix tridiag(d + 1, d + 1);
  for (int l = 0; l <= d; ++l) {
    tridiag.at(l, l) = ai(l);
    if (l >= 1) tridiag.at(l, l - 1) = ci(l);
    if (l < d) tridiag.at(l, l + 1) = bi(l);
  }
  std::vector<Scalar> eigs = eigenvalues_quadratic(tridiag);
  for (std::size_t x = 0; x < eigs.size(); ++x)
    for (std::size_t y = x + 1; y < eigs.size(); ++y)
      if (sub(eigs[x], eigs[y]).is_zero())
        throw DegenerateSplitting("intersection array has repeated eigenvalues");
  std::sort(eigs.begin(), eigs.end(),
            [](const Scalar& x, const Scalar& y) { return compare(x, y) > 0; });

  SpectralData data;
  data.d = d;
  data.n = n_scalar.as_whole();
  data.P = ExactMatrix(d + 1, d + 1);
  for (int j = 0; j <= d; ++j) {
    const Scalar& theta = eigs[j];
    std::vector<Scalar> u(d + 1);
    u[0] = Scalar(1);
    u[1] = div(theta, Scalar(b[0]));
    for (int i = 1; i < d; ++i)
      u[i + 1] = div(sub(mul(sub(theta, ai(i)), u[i]), ci(i) * u[i - 1]), bi(i));
    for (int i = 0; i <= d; ++i) data.P.at(j, i) = k[i] * u[i];
  }
  detail::finish_spectral(data);
  return data;
}

// ---------------------------------------------------------------------------
// Krein and intersection tensors

// q_ij^h = (1/(n m_h)) sum_l k_l Q_li Q_lj Q_lh, cross-checked entrywise
// against (m_i m_j / n) sum_l P_il P_jl P_hl / k_l^2. Both routes must agree
// exactly or the data is internally inconsistent.
inline KreinTensor krein_parameters(const SpectralData& spec) {
  int d = spec.d;
  Scalar n_scalar{Rational(spec.n)};
  KreinTensor t(d);
  for (int i = 0; i <= d; ++i)
    for (int j = i; j <= d; ++j)
      for (int h = 0; h <= d; ++h) {
        Scalar first;
        for (int l = 0; l <= d; ++l)
          first += spec.k[l] * spec.Q.at(l, i) * spec.Q.at(l, j) * spec.Q.at(l, h);
        first = div(first, n_scalar * spec.m[h]);
        Scalar second;
        for (int l = 0; l <= d; ++l)
          second += div(spec.P.at(i, l) * spec.P.at(j, l) * spec.P.at(h, l),
                        spec.k[l] * spec.k[l]);
        second = div(mul(second, spec.m[i] * spec.m[j]), n_scalar);
        if (!sub(first, second).is_zero())
          throw FormulaMismatch("Krein entry (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(h) +
                                ") differs between routes");
        t.at(i, j, h) = first;
        t.at(j, i, h) = first;
      }
  return t;
}

// p_ij^h = (1/(n k_h)) sum_l m_l P_li P_lj P_lh, cross-checked against the
// dual route (k_i k_j / n) sum_l Q_il Q_jl Q_hl / m_l^2.
inline IntersectionTensor intersection_tensor(const SpectralData& spec) {
  int d = spec.d;
  Scalar n_scalar{Rational(spec.n)};
  IntersectionTensor t(d);
  for (int i = 0; i <= d; ++i)
    for (int j = i; j <= d; ++j)
      for (int h = 0; h <= d; ++h) {
        Scalar first;
        for (int l = 0; l <= d; ++l)
          first += spec.m[l] * spec.P.at(l, i) * spec.P.at(l, j) * spec.P.at(l, h);
        first = div(first, n_scalar * spec.k[h]);
        Scalar second;
        for (int l = 0; l <= d; ++l)
          second += div(spec.Q.at(i, l) * spec.Q.at(j, l) * spec.Q.at(h, l),
                        spec.m[l] * spec.m[l]);
        second = div(mul(second, spec.k[i] * spec.k[j]), n_scalar);
        if (!sub(first, second).is_zero())
          throw FormulaMismatch("intersection entry (" + std::to_string(i) +
                                "," + std::to_string(j) + "," +
                                std::to_string(h) + ") differs between routes");
        t.at(i, j, h) = first;
        t.at(j, i, h) = first;
      }
  return t;
}

// Scale-free diagonal Krein value sum_l P_il^3 / k_l^2. Differs from the
// normalized q_ii^i by the factor m_i^2 / n; some sources quote this form.
inline Scalar reduced_krein_diagonal(const SpectralData& spec, int i) {
  Scalar total;
  for (int l = 0; l <= spec.d; ++l)
    total += div(spec.P.at(i, l) * spec.P.at(i, l) * spec.P.at(i, l),
                 spec.k[l] * spec.k[l]);
  return total;
}

// All triples over positive indices whose Krein parameter is exactly zero.
inline std::set<std::array<int, 3>> vanishing_krein(const KreinTensor& t) {
  std::set<std::array<int, 3>> out;
  for (int i = 1; i <= t.classes(); ++i)
    for (int j = 1; j <= t.classes(); ++j)
      for (int h = 1; h <= t.classes(); ++h)
        if (t.at(i, j, h).is_zero()) out.insert({i, j, h});
  return out;
}

// ---------------------------------------------------------------------------
// Orderings and polynomial-structure predicates

namespace detail {

// Band test shared by the cometric and metric searches: under the candidate
// ordering, entries outside the triangle band vanish and the boundary
// entries q_{i,j}^{i+j} are nonzero.
inline bool ordering_is_polynomial(const Tensor3& t,
                                   const std::vector<int>& order) {
  int d = t.classes();
  std::vector<int> s(d + 1);
  s[0] = 0;
  for (int i = 1; i <= d; ++i) s[i] = order[i - 1];
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      for (int h = 0; h <= d; ++h)
        if ((i + j < h || h < std::abs(i - j)) &&
            !t.at(s[i], s[j], s[h]).is_zero())
          return false;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      if (i + j <= d && t.at(s[i], s[j], s[i + j]).is_zero()) return false;
  return true;
}

inline std::vector<std::vector<int>> polynomial_orderings(const Tensor3& t) {
  int d = t.classes();
  if (d > 8) throw TooLarge("ordering search capped at 8 classes");
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 1);
  std::vector<std::vector<int>> found;
  do {
    if (ordering_is_polynomial(t, order)) found.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return found;
}

}  // namespace detail

inline std::vector<std::vector<int>> find_cometric_orderings(
    const KreinTensor& t) {
  return detail::polynomial_orderings(t);
}

inline std::vector<std::vector<int>> find_metric_orderings(
    const IntersectionTensor& p) {
  return detail::polynomial_orderings(p);
}

// Q-bipartite in the given indexing: q_ij^h = 0 whenever i+j+h is odd.
inline bool is_Q_bipartite(const KreinTensor& t) {
  int d = t.classes();
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      for (int h = 0; h <= d; ++h)
        if ((i + j + h) % 2 == 1 && !t.at(i, j, h).is_zero()) return false;
  return true;
}

struct KreinArray {
  // a[i] for i=0..d; b[i] meaningful for i=0..d-1; c[i] for i=1..d.
  std::vector<Scalar> a;
  std::vector<Scalar> b;
  std::vector<Scalar> c;
};

namespace detail {

inline void require_cometric(const Tensor3& t, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != t.classes() ||
      !ordering_is_polynomial(t, order))
    throw PreconditionViolated("not a cometric ordering");
}

}  // namespace detail

// Krein array {b*_0..b*_{d-1}; c*_1..c*_d} plus the diagonal a*_i, read off
// the reordered tensor.
inline KreinArray krein_array(const KreinTensor& t,
                              const std::vector<int>& order) {
  detail::require_cometric(t, order);
  int d = t.classes();
  std::vector<int> s(d + 1);
  s[0] = 0;
  for (int i = 1; i <= d; ++i) s[i] = order[i - 1];
  KreinArray ka;
  ka.a.resize(d + 1);
  ka.b.resize(d + 1);
  ka.c.resize(d + 1);
  for (int i = 0; i <= d; ++i) {
    ka.a[i] = t.at(s[1], s[i], s[i]);
    if (i < d) ka.b[i] = t.at(s[1], s[i + 1], s[i]);
    if (i >= 1) ka.c[i] = t.at(s[1], s[i - 1], s[i]);
  }
  return ka;
}

// Q-antipodal under a cometric ordering: b*_j = c*_{d-j} for all j except
// the exempt middle index floor(d/2).
inline bool is_Q_antipodal(const KreinTensor& t, const std::vector<int>& order) {
  detail::require_cometric(t, order);
  KreinArray ka = krein_array(t, order);
  int d = t.classes();
  for (int j = 0; j < d; ++j) {
    if (j == d / 2) continue;
    if (!sub(ka.b[j], ka.c[d - j]).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Idempotents and the two spectral checks on explicit schemes

// Idempotents E_j = (1/n) sum_i Q_ij A_i, stored as integer matrices
// ehat[j] = n * D_j * E_j with D_j the common denominator of Q column j.
struct IdempotentBasis {
  int d = 0;
  int n = 0;
  std::vector<long long> scale;
  std::vector<std::vector<long long>> ehat;
};

inline IdempotentBasis build_idempotent_basis(const Scheme& scheme,
                                              const SpectralData& spec) {
  scheme.relations();  // idempotents are only defined for explicit schemes
  int n = static_cast<int>(scheme.n());
  int d = scheme.classes();
  if (n > 500) throw TooLarge("idempotent basis capped at 500 points");
  if (!spec.Q.all_rational())
    throw PreconditionViolated("idempotent checks require a rational Q");

  IdempotentBasis basis;
  basis.d = d;
  basis.n = n;
  basis.scale.resize(d + 1);
  basis.ehat.assign(d + 1,
                    std::vector<long long>(static_cast<std::size_t>(n) * n));
  for (int j = 0; j <= d; ++j) {
    Integer den = 1;
    for (int l = 0; l <= d; ++l)
      den = lcm(den, denominator(spec.Q.at(l, j).as_rational()));
    basis.scale[j] = den.convert_to<long long>();
    std::vector<long long> column(d + 1);
    for (int l = 0; l <= d; ++l)
      column[l] = numerator(spec.Q.at(l, j).as_rational() * den)
                      .convert_to<long long>();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        basis.ehat[j][static_cast<std::size_t>(x) * n + y] =
            column[scheme.relation_of(x, y)];
  }
  return basis;
}

// E_i E_j = delta_ij E_i, verified on the integerized matrices.
inline bool idempotents_orthogonal(const IdempotentBasis& basis) {
  int n = basis.n;
  int d = basis.d;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      const std::vector<long long>& a = basis.ehat[i];
      const std::vector<long long>& b = basis.ehat[j];
      long long target_scale =
          i == j ? static_cast<long long>(n) * basis.scale[j] : 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          long long acc = 0;
          const long long* row = a.data() + static_cast<std::size_t>(x) * n;
          for (int z = 0; z < n; ++z)
            acc += row[z] * b[static_cast<std::size_t>(z) * n + y];
          long long expect =
              target_scale == 0
                  ? 0
                  : target_scale * a[static_cast<std::size_t>(x) * n + y];
          if (acc != expect) return false;
        }
    }
  return true;
}

// A_i = sum_j P_ji E_j holds entrywise iff sum_j P_ji Q_rj = n delta_ri for
// every relation r, which is the QP = nI identity specialized per class.
inline bool idempotents_resolve_relations(const SpectralData& spec) {
  int d = spec.d;
  Scalar n_scalar{Rational(spec.n)};
  for (int r = 0; r <= d; ++r)
    for (int i = 0; i <= d; ++i) {
      Scalar total;
      for (int j = 0; j <= d; ++j) total += spec.P.at(j, i) * spec.Q.at(r, j);
      Scalar expect = r == i ? n_scalar : Scalar(0);
      if (!sub(total, expect).is_zero()) return false;
    }
  return true;
}

// Entrywise product of projections has no component in V_h when q_ij^h = 0.
// Verified exactly for basis vectors x, y drawn from a deterministic battery.
inline bool schur_projection_check(const Scheme& scheme,
                                   const SpectralData& spec,
                                   const KreinTensor& krein, int i, int j,
                                   int h) {
  if (!krein.at(i, j, h).is_zero())
    throw PreconditionViolated("Krein parameter is nonzero");
  int n = static_cast<int>(scheme.n());
  if (n > 500) throw TooLarge("projection check capped at 500 points");
  IdempotentBasis basis = build_idempotent_basis(scheme, spec);

  std::vector<int> battery = {0, 1, n / 2, n - 1};
  std::sort(battery.begin(), battery.end());
  battery.erase(std::unique(battery.begin(), battery.end()), battery.end());

  const std::vector<long long>& ei = basis.ehat[i];
  const std::vector<long long>& ej = basis.ehat[j];
  const std::vector<long long>& eh = basis.ehat[h];
  std::vector<long long> prod(n);
  for (int x : battery)
    for (int y : battery) {
      // prod = (E_i e_x) o (E_j e_y), scaled by n^2 D_i D_j.
      for (int z = 0; z < n; ++z)
        prod[z] = ei[static_cast<std::size_t>(z) * n + x] *
                  ej[static_cast<std::size_t>(z) * n + y];
      for (int t = 0; t < n; ++t) {
        long long acc = 0;
        const long long* row = eh.data() + static_cast<std::size_t>(t) * n;
        for (int z = 0; z < n; ++z) acc += row[z] * prod[z];
        if (acc != 0) return false;
      }
    }
  return true;
}

struct TripleSamplePolicy {
  bool exhaustive = true;
  long long samples = 10000;
  std::uint64_t seed = 12345;
  int threads = 1;
};

namespace detail {

inline bool triple_sum_vanishes(const IdempotentBasis& basis, int i, int j,
                                int h, int x, int y, int z) {
  int n = basis.n;
  const long long* a = basis.ehat[i].data() + static_cast<std::size_t>(x) * n;
  const long long* b = basis.ehat[j].data() + static_cast<std::size_t>(y) * n;
  const long long* c = basis.ehat[h].data() + static_cast<std::size_t>(z) * n;
  long long acc = 0;
  for (int w = 0; w < n; ++w) acc += a[w] * b[w] * c[w];
  return acc == 0;
}

}  // namespace detail

// Vanishing of sum_w (E_i)_{xw} (E_j)_{yw} (E_h)_{zw} over vertex triples,
// which is the triple-intersection criterion written with rows of the
// idempotents. Exhaustive mode covers all ordered triples; sampled mode
// draws a fixed-seed pseudorandom batch.
inline bool triple_intersection_check(const Scheme& scheme,
                                      const SpectralData& spec,
                                      const KreinTensor& krein, int i, int j,
                                      int h, const TripleSamplePolicy& policy) {
  if (!krein.at(i, j, h).is_zero())
    throw PreconditionViolated("Krein parameter is nonzero");
  int n = static_cast<int>(scheme.n());
  if (policy.exhaustive && n > 100)
    throw TooLarge("exhaustive triple check capped at 100 points");
  IdempotentBasis basis = build_idempotent_basis(scheme, spec);

  if (!policy.exhaustive) {
    std::mt19937_64 rng(policy.seed);
    for (long long s = 0; s < policy.samples; ++s) {
      int x = static_cast<int>(rng() % n);
      int y = static_cast<int>(rng() % n);
      int z = static_cast<int>(rng() % n);
      if (!detail::triple_sum_vanishes(basis, i, j, h, x, y, z)) return false;
    }
    return true;
  }

  int threads = std::max(1, policy.threads);
  if (threads == 1) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (!detail::triple_sum_vanishes(basis, i, j, h, x, y, z))
            return false;
    return true;
  }
  std::vector<char> ok(threads, 1);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w]() {
      for (int x = w; x < n; x += threads)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (!detail::triple_sum_vanishes(basis, i, j, h, x, y, z)) {
              ok[w] = 0;
              return;
            }
    });
  for (std::thread& t : pool) t.join();
  for (char flag : ok)
    if (!flag) return false;
  return true;
}

}  // namespace schemeforge

#endif
