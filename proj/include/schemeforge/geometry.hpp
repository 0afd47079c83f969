#ifndef SCHEMEFORGE_GEOMETRY_HPP
#define SCHEMEFORGE_GEOMETRY_HPP

#include <map>
#include <set>
#include <vector>

#include "schemeforge/relation.hpp"

namespace schemeforge {

// Arithmetic modulo a prime, with elements represented as ints in [0, p).
class PrimeField {
public:
  explicit PrimeField(long long p) : p_(p) {
    if (p < 2) throw InadmissibleParameters("field order must be at least 2");
    for (long long f = 2; f * f <= p; ++f)
      if (p % f == 0)
        throw InadmissibleParameters("field order must be prime");
  }

  long long order() const { return p_; }

  int add(int a, int b) const { return static_cast<int>((a + b) % p_); }
  int sub(int a, int b) const { return static_cast<int>((a - b + p_) % p_); }
  int mul(int a, int b) const {
    return static_cast<int>(static_cast<long long>(a) * b % p_);
  }
  int neg(int a) const { return static_cast<int>((p_ - a) % p_); }
  int inv(int a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in a prime field");
    // Fermat: a^(p-2) mod p.
    long long result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<int>(result);
  }

  bool is_square(int a) const {
    for (int x = 0; x < p_; ++x)
      if (mul(x, x) == a) return true;
    return false;
  }

private:
  long long p_;
};

// Point of PG(2n-1, p): nonzero coordinate vector scaled so the first
// nonzero coordinate is 1.
struct ProjectivePoint {
  std::vector<int> c;

  bool operator==(const ProjectivePoint& o) const { return c == o.c; }
  bool operator!=(const ProjectivePoint& o) const { return c != o.c; }
  bool operator<(const ProjectivePoint& o) const { return c < o.c; }
};

// Elliptic quadric Q^-(2n-1, p) with the split form
//   Q(x) = x_0 x_1 + ... + x_{2n-4} x_{2n-3} + f(x_{2n-2}, x_{2n-1}),
// where f is irreducible over GF(p): x^2 - eps*y^2 for odd p with eps the
// smallest non-square, and x^2 + xy + y^2 for p = 2.
class EllipticQuadric {
public:
  EllipticQuadric(long long p, int n) : field_(p), n_(n) {
    if (n < 2) throw InadmissibleParameters("need at least 4 coordinates");
    if (p == 2) {
      eps_ = 0;
    } else {
      eps_ = -1;
      for (int e = 2; e < p; ++e)
        if (!field_.is_square(e)) {
          eps_ = e;
          break;
        }
      if (eps_ < 0)
        throw InadmissibleParameters("no non-square in the field");
    }
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        if ((x || y) && binary_form(x, y) == 0)
          throw InadmissibleParameters("binary form is reducible");
  }

  const PrimeField& field() const { return field_; }
  int half_dimension() const { return n_; }
  int dimension() const { return 2 * n_; }

  int evaluate(const std::vector<int>& x) const {
    int total = 0;
    for (int i = 0; i + 2 < 2 * n_; i += 2)
      total = field_.add(total, field_.mul(x[i], x[i + 1]));
    return field_.add(total, binary_form(x[2 * n_ - 2], x[2 * n_ - 1]));
  }

  int bilinear(const std::vector<int>& x, const std::vector<int>& y) const {
    std::vector<int> sum(2 * n_);
    for (int i = 0; i < 2 * n_; ++i) sum[i] = field_.add(x[i], y[i]);
    int q_sum = evaluate(sum);
    q_sum = field_.sub(q_sum, evaluate(x));
    return field_.sub(q_sum, evaluate(y));
  }

  bool singular(const ProjectivePoint& pt) const { return evaluate(pt.c) == 0; }
  bool orthogonal(const ProjectivePoint& a, const ProjectivePoint& b) const {
    return bilinear(a.c, b.c) == 0;
  }

  ProjectivePoint normalize(std::vector<int> coords) const {
    int lead = -1;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) {
        lead = static_cast<int>(i);
        break;
      }
    if (lead < 0)
      throw Error(ErrorCategory::MathDomain, "zero vector has no projective point");
    int scale_factor = field_.inv(coords[lead]);
    for (int& v : coords) v = field_.mul(v, scale_factor);
    return ProjectivePoint{std::move(coords)};
  }

private:
  int binary_form(int x, int y) const {
    if (field_.order() == 2)
      return field_.add(field_.add(field_.mul(x, x), field_.mul(x, y)),
                        field_.mul(y, y));
    return field_.sub(field_.mul(x, x), field_.mul(eps_, field_.mul(y, y)));
  }

  PrimeField field_;
  int n_;
  int eps_;
};

namespace detail {

// Visits every projective point once: leading one at position k, zeros
// before it, free digits after it, digits enumerated most significant first.
template <typename Fn>
void for_each_projective_point(const EllipticQuadric& q, Fn&& fn) {
  int dim = q.dimension();
  long long p = q.field().order();
  double scale_check = 1;
  for (int i = 0; i < dim; ++i) scale_check *= static_cast<double>(p);
  if (scale_check > 1e8)
    throw EnumerationTooLarge("projective point enumeration too large");

  std::vector<int> coords(dim);
  for (int lead = 0; lead < dim; ++lead) {
    std::fill(coords.begin(), coords.end(), 0);
    coords[lead] = 1;
    while (true) {
      fn(coords);
      int pos = dim - 1;
      while (pos > lead && coords[pos] == static_cast<int>(p) - 1) {
        coords[pos] = 0;
        --pos;
      }
      if (pos == lead) break;
      ++coords[pos];
    }
  }
}

}  // namespace detail

// All singular projective points, in the deterministic enumeration order.
inline std::vector<ProjectivePoint> quadric_points(const EllipticQuadric& q) {
  std::vector<ProjectivePoint> out;
  detail::for_each_projective_point(q, [&](const std::vector<int>& coords) {
    if (q.evaluate(coords) == 0) out.push_back(ProjectivePoint{coords});
  });
  return out;
}

// A nonsingular point, the quadric section of its perp hyperplane, and the
// quadric points off that hyperplane.
struct AmbientSplit {
  ProjectivePoint base;
  std::vector<ProjectivePoint> pi;
  std::vector<ProjectivePoint> omega;
};

inline ProjectivePoint default_base_point(const EllipticQuadric& q) {
  ProjectivePoint found;
  bool have = false;
  detail::for_each_projective_point(q, [&](const std::vector<int>& coords) {
    if (!have && q.evaluate(coords) != 0) {
      found = ProjectivePoint{coords};
      have = true;
    }
  });
  if (!have) throw Error(ErrorCategory::MathDomain, "no nonsingular point");
  return found;
}

inline AmbientSplit ambient_split(const EllipticQuadric& q,
                                  const ProjectivePoint& base) {
  if (q.singular(base))
    throw SingularBasePoint("base point lies on the quadric");
  AmbientSplit split;
  split.base = base;
  for (const ProjectivePoint& pt : quadric_points(q)) {
    if (q.orthogonal(base, pt))
      split.pi.push_back(pt);
    else
      split.omega.push_back(pt);
  }
  return split;
}

// Second quadric point on the hyperbolic line through the base point and X.
inline ProjectivePoint sigma(const EllipticQuadric& q,
                             const ProjectivePoint& base,
                             const ProjectivePoint& x) {
  const PrimeField& f = q.field();
  int denom = q.bilinear(base.c, x.c);
  if (denom == 0) throw NoSecondPoint("line through the base is tangent");
  int mu = f.mul(f.neg(q.evaluate(base.c)), f.inv(denom));
  std::vector<int> coords(base.c.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] = f.add(base.c[i], f.mul(mu, x.c[i]));
  return q.normalize(std::move(coords));
}

// The five relations on Omega: identity, the sigma pairing, collinearity,
// collinearity with the sigma image, and the rest.
inline std::vector<RelationMatrix> genpw_relations(const EllipticQuadric& q,
                                                   const AmbientSplit& split) {
  if (q.field().order() <= 2)
    throw DegenerateParameters("relations degenerate unless the field has more than 2 elements");
  int n = static_cast<int>(split.omega.size());
  std::map<ProjectivePoint, int> index;
  for (int i = 0; i < n; ++i) index[split.omega[i]] = i;
  std::vector<int> sig(n);
  for (int i = 0; i < n; ++i) {
    auto it = index.find(sigma(q, split.base, split.omega[i]));
    if (it == index.end())
      throw NoSecondPoint("sigma image escaped Omega");
    sig[i] = it->second;
  }

  std::vector<RelationMatrix> rels(5, RelationMatrix(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r;
      if (x == y)
        r = 0;
      else if (y == sig[x])
        r = 4;
      else if (q.orthogonal(split.omega[x], split.omega[y]))
        r = 3;
      else if (q.orthogonal(split.omega[x], split.omega[sig[y]]))
        r = 1;
      else
        r = 2;
      rels[r].set(x, y);
    }
  return rels;
}

// Totally singular lines as sorted index sets into a point list. Any two
// orthogonal singular points span one, and such a line is singular
// throughout, so lines are exactly the closures of orthogonal pairs.
inline std::vector<std::vector<int>> singular_lines(
    const EllipticQuadric& q, const std::vector<ProjectivePoint>& points) {
  if (q.half_dimension() != 3)
    throw UnsupportedDimension("generator enumeration requires lines");
  const PrimeField& f = q.field();
  std::map<ProjectivePoint, int> index;
  for (std::size_t i = 0; i < points.size(); ++i)
    index[points[i]] = static_cast<int>(i);

  std::set<std::vector<int>> lines;
  int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!q.orthogonal(points[i], points[j])) continue;
      std::vector<int> line = {i, j};
      for (int t = 1; t < f.order(); ++t) {
        std::vector<int> coords(points[i].c.size());
        for (std::size_t d = 0; d < coords.size(); ++d)
          coords[d] = f.add(points[i].c[d], f.mul(t, points[j].c[d]));
        auto it = index.find(q.normalize(std::move(coords)));
        if (it == index.end())
          throw Error(ErrorCategory::MathDomain,
                      "singular line left the point list");
        line.push_back(it->second);
      }
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  return std::vector<std::vector<int>>(lines.begin(), lines.end());
}

// Generators (singular lines) not contained in the perp hyperplane, each
// reported as the indices into Omega of its points off the hyperplane.
struct GeneratorsReport {
  long long total_lines = 0;
  std::vector<std::vector<int>> omega_traces;
};

inline GeneratorsReport generators_off_hyperplane(const EllipticQuadric& q,
                                                  const AmbientSplit& split) {
  std::vector<ProjectivePoint> points = quadric_points(q);
  std::vector<std::vector<int>> lines = singular_lines(q, points);

  std::map<ProjectivePoint, int> omega_index;
  for (std::size_t i = 0; i < split.omega.size(); ++i)
    omega_index[split.omega[i]] = static_cast<int>(i);

  GeneratorsReport report;
  report.total_lines = static_cast<long long>(lines.size());
  for (const std::vector<int>& line : lines) {
    std::vector<int> trace;
    for (int pt : line) {
      auto it = omega_index.find(points[pt]);
      if (it != omega_index.end()) trace.push_back(it->second);
    }
    if (!trace.empty()) report.omega_traces.push_back(std::move(trace));
  }
  return report;
}

}  // namespace schemeforge

#endif
