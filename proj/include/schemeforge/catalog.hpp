#ifndef SCHEMEFORGE_CATALOG_HPP
#define SCHEMEFORGE_CATALOG_HPP

#include <array>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "schemeforge/geometry.hpp"
#include "schemeforge/scheme.hpp"

namespace schemeforge {

// ---------------------------------------------------------------------------
// Johnson scheme J(v, k)

// Vertices are the k-subsets of a v-set; relation i joins subsets meeting
// in k - i points.
inline Scheme johnson(int v, int k) {
  if (k < 2 || 2 * k > v)
    throw InadmissibleParameters("need 2 <= k <= v/2");
  Integer count = binomial(v, k);
  if (count > 500) throw TooLarge("Johnson scheme capped at 500 vertices");
  if (v > 62) throw TooLarge("ground set capped at 62 elements");

  std::vector<std::uint64_t> verts;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << i;
    verts.push_back(mask);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == v - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }

  int n = static_cast<int>(verts.size());
  std::vector<RelationMatrix> rels(k + 1, RelationMatrix(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int meet = std::popcount(verts[x] & verts[y]);
      rels[k - meet].set(x, y);
    }
  return Scheme::from_relations(std::move(rels));
}

// ---------------------------------------------------------------------------
// Partial geometries

struct PgParameters {
  long long s = 0;
  long long t = 0;
  long long alpha = 0;
};

// Collinearity-graph scheme of a pg(s,t,alpha):
//   P = [[1, s(t+1), st(s+1-a)/a], [1, s-a, a-s-1], [1, -t-1, t]].
inline Scheme pg_scheme(const PgParameters& params) {
  long long s = params.s, t = params.t, a = params.alpha;
  if (s < 1 || t < 1 || a < 1)
    throw InadmissibleParameters("pg parameters must be positive");
  if (a > std::min(s + 1, t + 1))
    throw InadmissibleParameters("alpha exceeds min(s+1, t+1)");
  Rational third(Integer(s) * t * (s + 1 - a), Integer(a));
  Rational n(Integer(s + 1) * (Integer(s) * t + a), Integer(a));
  if (!is_integer(third) || !is_integer(n))
    throw InadmissibleParameters("pg counts are not integral");

  ExactMatrix p(3, 3);
  p.at(0, 0) = Scalar(1);
  p.at(0, 1) = Scalar(Integer(s) * (t + 1));
  p.at(0, 2) = Scalar(third);
  p.at(1, 0) = Scalar(1);
  p.at(1, 1) = Scalar(s - a);
  p.at(1, 2) = Scalar(a - s - 1);
  p.at(2, 0) = Scalar(1);
  p.at(2, 1) = Scalar(-t - 1);
  p.at(2, 2) = Scalar(t);
  return Scheme::from_eigenmatrix(p);
}

// ---------------------------------------------------------------------------
// Strongly regular graphs

// Scheme of an SRG(v, k, lambda, mu) from its spectrum. Requires the basic
// counting identity and positive integral multiplicities.
inline Scheme srg_scheme(long long v, long long k, long long lambda,
                         long long mu) {
  if (v < 4 || k < 1 || k >= v - 1 || lambda < 0 || mu < 0)
    throw InadmissibleParameters("srg parameters out of range");
  if (Integer(k) * (k - lambda - 1) != Integer(v - k - 1) * mu)
    throw InfeasibleParameters("edge count identity fails");

  Integer delta = Integer(lambda - mu) * (lambda - mu) + 4 * (k - mu);
  if (delta <= 0) throw InfeasibleParameters("spectrum is not real and simple");
  Scalar root = sqrt_integer(delta);
  Scalar r = div(add(Scalar(lambda - mu), root), Scalar(2));
  Scalar s = div(sub(Scalar(lambda - mu), root), Scalar(2));

  ExactMatrix p(3, 3);
  p.at(0, 0) = Scalar(1);
  p.at(0, 1) = Scalar(k);
  p.at(0, 2) = Scalar(v - 1 - k);
  p.at(1, 0) = Scalar(1);
  p.at(1, 1) = r;
  p.at(1, 2) = sub(Scalar(-1), r);
  p.at(2, 0) = Scalar(1);
  p.at(2, 1) = s;
  p.at(2, 2) = sub(Scalar(-1), s);
  Scheme scheme = Scheme::from_eigenmatrix(p);
  SpectralData sd = spectral(scheme);
  if (sd.non_integral_multiplicity)
    throw InfeasibleParameters("eigenvalue multiplicities are not integers");
  return scheme;
}

// ---------------------------------------------------------------------------
// Dual polar schemes on rank-3 spaces

enum class DualPolarFamily { DH5, DQ6, DW5 };

// Eigenmatrices of the dual polar schemes on DH(5, q^2), DQ(6, q), and
// DW(5, q); the last two coincide. q is treated as a formal positive
// integer, so no primality condition is imposed.
inline Scheme dual_polar_scheme(DualPolarFamily family, long long q) {
  if (q < 2) throw InadmissibleParameters("need q >= 2");
  Integer q2 = Integer(q) * q, q3 = q2 * q, q4 = q3 * q;
  ExactMatrix p(4, 4);
  auto set_row = [&p](int r, Integer a, Integer b, Integer c, Integer d) {
    p.at(r, 0) = Scalar(a);
    p.at(r, 1) = Scalar(b);
    p.at(r, 2) = Scalar(c);
    p.at(r, 3) = Scalar(d);
  };
  if (family == DualPolarFamily::DH5) {
    Integer poly = q4 + q2 + 1;
    set_row(0, 1, q * poly, q4 * poly, q4 * q4 * q);
    set_row(1, 1, q3 + q - 1, q * (q3 - q2 - 1), -q4);
    set_row(2, 1, -q2 + q - 1, -q * (q2 - q + 1), q3);
    set_row(3, 1, -q4 - q2 - 1, q2 * poly, -q4 * q2);
  } else {
    Integer poly = q2 + q + 1;
    set_row(0, 1, q * poly, q3 * poly, q3 * q3);
    set_row(1, 1, q2 + q - 1, q * (q2 - q - 1), -q3);
    set_row(2, 1, -1, -q2, q2);
    set_row(3, 1, -q2 - q - 1, q * poly, -q3);
  }
  return Scheme::from_eigenmatrix(p);
}

// ---------------------------------------------------------------------------
// Generalised octagons

// Scheme of a generalised octagon of order (s, t) from the intersection
// array {s(t+1), st, st, st; 1, 1, 1, t+1}, with eigenspace rows pinned to
// the order s(t+1), s-1, -(t+1), s-1+sqrt(2st), s-1-sqrt(2st).
inline Scheme octagon_scheme(long long s, long long t) {
  if (s < 1 || t < 1) throw InadmissibleParameters("need s, t >= 1");
  SpectralData base = spectral_from_intersection_array(
      {s * (t + 1), s * t, s * t, s * t}, {1, 1, 1, t + 1});

  Scalar root = sqrt_integer(2 * s * t);
  std::vector<Scalar> targets = {Scalar(s - 1), Scalar(-(t + 1)),
                                 add(Scalar(s - 1), root),
                                 sub(Scalar(s - 1), root)};
  ExactMatrix p(5, 5);
  for (int i = 0; i < 5; ++i) p.at(0, i) = base.P.at(0, i);
  for (int j = 1; j <= 4; ++j) {
    int row = -1;
    for (int r = 1; r <= 4; ++r)
      if (sub(base.P.at(r, 1), targets[j - 1]).is_zero()) {
        row = r;
        break;
      }
    if (row < 0) throw SearchFailed("octagon eigenvalue not found");
    for (int i = 0; i < 5; ++i) p.at(j, i) = base.P.at(row, i);
  }
  return Scheme::from_eigenmatrix(p);
}

// ---------------------------------------------------------------------------
// Generalised Penttila-Williford schemes

// Eigenmatrix of the 4-class scheme on the quadric points off a
// nondegenerate hyperplane section of an elliptic quadric, in terms of
// A = q^(n-2) and B = q^(n-1).
inline ExactMatrix genpw_eigenmatrix(long long q, int n) {
  Integer a = 1, b = 1;
  for (int i = 0; i < n - 2; ++i) a *= q;
  for (int i = 0; i < n - 1; ++i) b *= q;
  ExactMatrix p(5, 5);
  auto set_row = [&p](int r, Integer c0, Integer c1, Integer c2, Integer c3,
                      Integer c4) {
    p.at(r, 0) = Scalar(c0);
    p.at(r, 1) = Scalar(c1);
    p.at(r, 2) = Scalar(c2);
    p.at(r, 3) = Scalar(c3);
    p.at(r, 4) = Scalar(c4);
  };
  set_row(0, 1, (a - 1) * (b + 1), a * (q - 2) * (b + 1), (a - 1) * (b + 1), 1);
  set_row(1, 1, b + 1, 0, -(b + 1), -1);
  set_row(2, 1, a - 1, -2 * a, a - 1, 1);
  set_row(3, 1, -(a - 1), 0, a - 1, -1);
  set_row(4, 1, -a * (q - 2) - 1, 2 * a * (q - 2), -a * (q - 2) - 1, 1);
  return p;
}

inline Scheme genpw_param(long long q, int n) {
  if (q <= 2) throw DegenerateParameters("need q >= 3");
  if (n < 3) throw DegenerateParameters("need n >= 3");
  return Scheme::from_eigenmatrix(genpw_eigenmatrix(q, n));
}

// Explicit variant built from the quadric geometry over a prime field.
inline Scheme genpw_explicit(long long q, int n) {
  if (q <= 2) throw DegenerateParameters("need q >= 3");
  if (n < 3) throw DegenerateParameters("need n >= 3");
  Integer omega_size = 1;
  for (int i = 0; i < n - 1; ++i) omega_size *= q;
  Integer reduced = omega_size - 1;
  omega_size *= reduced;
  if (omega_size > 500)
    throw TooLarge("explicit construction capped at 500 points");
  EllipticQuadric quadric(q, n);
  AmbientSplit split = ambient_split(quadric, default_base_point(quadric));
  return Scheme::from_relations(genpw_relations(quadric, split));
}

namespace detail {

inline Integer qpow(long long q, long long e) {
  Integer out = 1;
  for (long long i = 0; i < e; ++i) out *= q;
  return out;
}

}  // namespace detail

// Closed-form intersection tensor of the quadric scheme as a function of
// q and n; entry (i, j, h) is p_ij^h.
inline IntersectionTensor genpw_reference_intersection_tensor(long long q,
                                                              int n) {
  Integer A = detail::qpow(q, n - 2);
  Integer B = detail::qpow(q, n - 1);
  Integer A2 = A * A;
  Integer edge = (A - 1) * (B + 1);
  Integer branch = A2 - B + A - 2;
  Integer fork = (A - 1) * ((q - 2) * A + 1);
  Integer qa2 = (q - 2) * A2;

  IntersectionTensor t(4);
  for (int j = 0; j <= 4; ++j)
    for (int h = 0; h <= 4; ++h) t.at(0, j, h) = Scalar(j == h ? 1 : 0);

  auto fill = [&t](int i, const std::array<std::array<Integer, 5>, 5>& m) {
    for (int h = 0; h <= 4; ++h)
      for (int j = 0; j <= 4; ++j) t.at(i, j, h) = Scalar(m[h][j]);
  };
  fill(1, {{{Integer(0), edge, Integer(0), Integer(0), Integer(0)},
            {Integer(1), A2, qa2, branch, Integer(0)},
            {Integer(0), A * (A - 1), fork, A * (A - 1), Integer(0)},
            {Integer(0), branch, qa2, A2, Integer(1)},
            {Integer(0), Integer(0), Integer(0), edge, Integer(0)}}});
  fill(2, {{{Integer(0), Integer(0), (q - 2) * A * (B + 1), Integer(0),
             Integer(0)},
            {Integer(0), qa2, (q - 2) * A * ((q - 2) * A + 1), qa2,
             Integer(0)},
            {Integer(1), fork, A * ((q - 2) * (q - 2) * A + 3 * q - 8), fork,
             Integer(1)},
            {Integer(0), qa2, (q - 2) * A * ((q - 2) * A + 1), qa2,
             Integer(0)},
            {Integer(0), Integer(0), (q - 2) * A * (B + 1), Integer(0),
             Integer(0)}}});
  fill(3, {{{Integer(0), Integer(0), Integer(0), edge, Integer(0)},
            {Integer(0), branch, qa2, A2, Integer(1)},
            {Integer(0), A * (A - 1), fork, A * (A - 1), Integer(0)},
            {Integer(1), A2, qa2, branch, Integer(0)},
            {Integer(0), edge, Integer(0), Integer(0), Integer(0)}}});
  for (int h = 0; h <= 4; ++h)
    for (int j = 0; j <= 4; ++j) t.at(4, j, h) = Scalar(j + h == 4 ? 1 : 0);
  return t;
}

// Closed-form Krein tensor of the quadric scheme as a function of q and n;
// entry (i, j, h) is q_ij^h.
inline KreinTensor genpw_reference_krein_tensor(long long q, int n) {
  Integer A = detail::qpow(q, n - 2);
  Integer B = detail::qpow(q, n - 1);
  Integer C = detail::qpow(q, n);
  Integer B2 = B * B;
  Integer dplus = 2 * (q + 1);
  Integer dplus2 = 2 * (q + 1) * (q + 1);
  Integer dminus = 2 * (q - 1);
  Integer dminus2 = 2 * (q - 1) * (q - 1);
  Integer dboth = 2 * (q * q - 1);
  auto frac = [](const Integer& num, const Integer& den) {
    return Scalar(Rational(num, den));
  };
  Scalar zero;

  KreinTensor t(4);
  for (int j = 0; j <= 4; ++j)
    for (int h = 0; h <= 4; ++h) t.at(0, j, h) = Scalar(j == h ? 1 : 0);

  auto fill = [&t](int i, const std::array<std::array<Scalar, 5>, 5>& m) {
    for (int h = 0; h <= 4; ++h)
      for (int j = 0; j <= 4; ++j) t.at(i, j, h) = m[h][j];
  };
  fill(1, {{{zero, frac((C - q) * (A - 1), dplus), zero, zero, zero},
            {Scalar(1), zero, frac((q - 2) * (B2 - 1), dboth), zero,
             frac((C + q) * (A - q), dboth)},
            {zero, frac((C - q) * (A - 1), dplus2), zero,
             frac((C - q) * (B - q), dplus2), zero},
            {zero, zero, frac((q - 2) * (C - q) * (A - 1), dboth), zero,
             frac((C - q) * (A - 1), dboth)},
            {zero, frac((C - q) * (A - q), dplus2), zero,
             frac(q * (B - 1) * (B - 1), dplus2), zero}}});
  fill(2,
       {{{zero, zero, frac((q - 2) * (B2 - 1), dminus), zero, zero},
         {zero, frac((q - 2) * (B2 - 1), dboth), zero,
          frac((q - 2) * q * (B2 - 1), dboth), zero},
         {Scalar(1), zero,
          frac((q - 2) * (q - 2) * B2 + (q - 3) * C - 2 * q * q + 7 * q - 4,
               dminus2),
          zero, frac((C - q * q) * ((q - 2) * A + 1), dminus2)},
         {zero, frac((q - 2) * (C - q) * (A - 1), dboth), zero,
          frac((q - 2) * (B - 1) * (C + 2 * q + 1), dboth), zero},
         {zero, zero, frac((q - 2) * (C - q) * ((q - 2) * A + 1), dminus2),
          zero, frac((q - 2) * (B - 1) * (B - 1), dminus2)}}});
  fill(3, {{{zero, zero, zero, frac(q * (B2 - 1), dplus), zero},
            {zero, zero, frac((q - 2) * q * (B2 - 1), dboth), zero,
             frac(q * (B2 - 1), dboth)},
            {zero, frac((C - q) * (B - q), dplus2), zero,
             frac((C - q) * (C + 2 * q + 1), dplus2), zero},
            {Scalar(1), zero,
             frac((q - 2) * (B - 1) * (C + 2 * q + 1), dboth), zero,
             frac((C + q + 2) * (B - q), dboth)},
            {zero, frac(q * (B - 1) * (B - 1), dplus2), zero,
             frac((C - q) * (C + q + 2), dplus2), zero}}});
  fill(4, {{{zero, zero, zero, zero, frac((C + q) * (A - 1), dminus)},
            {zero, frac((C + q) * (A - q), dboth), zero,
             frac(q * (B2 - 1), dboth), zero},
            {zero, zero, frac((A - 1) * ((q - 2) * C + q * q), dminus2), zero,
             frac((C - q) * (A - 1), dminus2)},
            {zero, frac((C - q) * (A - 1), dboth), zero,
             frac((C + q + 2) * (B - q), dboth), zero},
            {Scalar(1), zero, frac((q - 2) * (B - 1) * (B - 1), dminus2),
             zero,
             frac(B2 - (q * q - 4 * q + 5) * B + (4 - 3 * q) * q,
                  dminus2)}}});
  return t;
}

// ---------------------------------------------------------------------------
// Taylor schemes

// Distance-regular antipodal double cover with intersection array
// {k, mu, 1; 1, mu, k}.
inline Scheme taylor_scheme(long long k, long long mu) {
  if (k < 2 || mu < 1 || mu >= k)
    throw InadmissibleParameters("need 2 <= k and 1 <= mu < k");
  SpectralData sd = spectral_from_intersection_array({k, mu, 1}, {1, mu, k});
  return Scheme::from_eigenmatrix(sd.P);
}

// ---------------------------------------------------------------------------
// The alpha threshold and the feasibility scan

// alpha = (s^2 - t - 1 + sqrt(t(t+1-s^2))) / (s-1), the unique value making
// q_22^2 vanish for a pg(s,t,alpha); equals 1 exactly at t = s^2.
inline Scalar alpha_for_vanishing(long long s, long long t) {
  if (s < 2) throw OutOfRange("need s >= 2");
  if (t < s * s) throw OutOfRange("need t >= s^2");
  Scalar root = sqrt_integer(Integer(t) * (t + 1 - s * s));
  return div(add(Scalar(s * s - t - 1), root), Scalar(s - 1));
}

struct PgScanRow {
  long long s = 0;
  long long t = 0;
  long long alpha = 0;
  Integer n;
};

namespace detail {

inline std::optional<PgScanRow> pg_scan_cell(long long s, long long t) {
  Scalar alpha = alpha_for_vanishing(s, t);
  if (!alpha.is_whole()) return std::nullopt;
  Integer alpha_int = alpha.as_whole();
  if (alpha_int < 1 || alpha_int > std::min(s + 1, t + 1)) return std::nullopt;
  long long a = alpha_int.convert_to<long long>();
  Rational count(Integer(s + 1) * (Integer(s) * t + a), Integer(a));
  if (!is_integer(count)) return std::nullopt;
  Rational third(Integer(s) * t * (s + 1 - a), Integer(a));
  if (!is_integer(third)) return std::nullopt;

  PgParameters params{s, t, a};
  SpectralData sd = spectral(pg_scheme(params));
  KreinTensor kt = krein_parameters(sd);
  if (!kt.at(2, 2, 2).is_zero()) return std::nullopt;
  return PgScanRow{s, t, a, numerator(count)};
}

}  // namespace detail

// All (s, t, alpha) in the box with t >= s^2, alpha integral in range,
// integral point count, and q_22^2 = 0 re-verified from the eigenmatrix.
// Cells are independent; with threads > 1 they are processed in a strided
// partition and merged back in (s, t) order, so the result is identical.
inline std::vector<PgScanRow> pg_scan(long long s_max, long long t_max,
                                      int threads = 1) {
  if (s_max > 500 || t_max > 500) throw TooLarge("scan bounds capped at 500");
  std::vector<std::pair<long long, long long>> cells;
  for (long long s = 2; s <= s_max; ++s)
    for (long long t = s * s; t <= t_max; ++t) cells.emplace_back(s, t);

  std::vector<std::optional<PgScanRow>> found(cells.size());
  if (threads <= 1 || cells.size() < 2) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      found[i] = detail::pg_scan_cell(cells[i].first, cells[i].second);
  } else {
    int used = std::min<std::size_t>(threads, cells.size());
    std::vector<std::exception_ptr> errors(used);
    std::vector<std::thread> pool;
    for (int w = 0; w < used; ++w)
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t i = w; i < cells.size(); i += used)
            found[i] = detail::pg_scan_cell(cells[i].first, cells[i].second);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors)
      if (err) std::rethrow_exception(err);
  }

  std::vector<PgScanRow> rows;
  for (const std::optional<PgScanRow>& row : found)
    if (row) rows.push_back(*row);
  return rows;
}

}  // namespace schemeforge

#endif
