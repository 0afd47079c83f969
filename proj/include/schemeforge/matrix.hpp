#ifndef SCHEMEFORGE_MATRIX_HPP
#define SCHEMEFORGE_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "schemeforge/scalar.hpp"

namespace schemeforge {

// Dense exact matrix. Used for eigenmatrices, intersection matrices and
// their derived data, so dimensions stay small (at most 16 or so); there is
// no sparsity and no floating point anywhere.
class ExactMatrix {
public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        entries_(static_cast<std::size_t>(rows) * cols) {}

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const Scalar& at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  bool operator==(const ExactMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
  }
  bool operator!=(const ExactMatrix& other) const { return !(*this == other); }

  bool all_rational() const {
    for (const Scalar& s : entries_)
      if (!s.is_rational()) return false;
    return true;
  }

private:
  int rows_;
  int cols_;
  std::vector<Scalar> entries_;
};

inline ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCategory::MathDomain, "dimension mismatch in multiply");
  ExactMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (int c = 0; c < b.cols(); ++c)
        out.at(r, c) += a.at(r, k) * b.at(k, c);
    }
  return out;
}

inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  return multiply(a, b);
}

inline ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCategory::MathDomain, "dimension mismatch in add");
  ExactMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
  return out;
}

inline ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCategory::MathDomain, "dimension mismatch in subtract");
  ExactMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
  return out;
}

inline ExactMatrix scale(const Scalar& s, const ExactMatrix& a) {
  ExactMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = s * a.at(r, c);
  return out;
}

inline ExactMatrix transpose(const ExactMatrix& a) {
  ExactMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(c, r) = a.at(r, c);
  return out;
}

inline Scalar trace_of(const ExactMatrix& a) {
  Scalar t;
  for (int i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

// Exact Gauss-Jordan elimination over the scalar field. Division is exact,
// so the result is the true inverse or a SingularMatrix error.
inline ExactMatrix inverse(const ExactMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCategory::MathDomain, "inverse of a nonsquare matrix");
  int n = a.rows();
  ExactMatrix work = a;
  ExactMatrix result = ExactMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!work.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw SingularMatrix("no pivot in column " +
                                        std::to_string(col));
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(work.at(pivot, c), work.at(col, c));
        std::swap(result.at(pivot, c), result.at(col, c));
      }
    Scalar inv_pivot = div(Scalar(1), work.at(col, col));
    for (int c = 0; c < n; ++c) {
      work.at(col, c) *= inv_pivot;
      result.at(col, c) *= inv_pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work.at(r, col).is_zero()) continue;
      Scalar factor = work.at(r, col);
      for (int c = 0; c < n; ++c) {
        work.at(r, c) -= factor * work.at(col, c);
        result.at(r, c) -= factor * result.at(col, c);
      }
    }
  }
  return result;
}

inline Scalar determinant(const ExactMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCategory::MathDomain, "determinant of a nonsquare matrix");
  int n = a.rows();
  ExactMatrix work = a;
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!work.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(work.at(pivot, c), work.at(col, c));
      det = neg(det);
    }
    det *= work.at(col, col);
    Scalar inv_pivot = div(Scalar(1), work.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (work.at(r, col).is_zero()) continue;
      Scalar factor = work.at(r, col) * inv_pivot;
      for (int c = col; c < n; ++c) work.at(r, c) -= factor * work.at(col, c);
    }
  }
  return det;
}

// Characteristic polynomial of a matrix with rational entries, returned as
// primitive integer coefficients (index = degree, leading coefficient
// positive). Faddeev-LeVerrier: the divisions by k are exact over Q.
inline std::vector<Integer> characteristic_polynomial(const ExactMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCategory::MathDomain,
                "characteristic polynomial of a nonsquare matrix");
  if (!a.all_rational())
    throw Error(ErrorCategory::MathDomain,
                "characteristic polynomial requires rational entries");
  int n = a.rows();
  std::vector<Rational> entries(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      entries[static_cast<std::size_t>(r) * n + c] = a.at(r, c).as_rational();

  auto idx = [n](int r, int c) { return static_cast<std::size_t>(r) * n + c; };
  std::vector<Rational> coeff(n + 1);
  coeff[n] = 1;
  std::vector<Rational> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) m[idx(i, i)] = 1;
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> next(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j) {
        if (entries[idx(r, j)] == 0) continue;
        for (int c = 0; c < n; ++c)
          next[idx(r, c)] += entries[idx(r, j)] * m[idx(j, c)];
      }
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += next[idx(i, i)];
    Rational ck = -tr / k;
    coeff[n - k] = ck;
    for (int i = 0; i < n; ++i) next[idx(i, i)] += ck;
    m = std::move(next);
  }

  Integer common_den = 1;
  for (const Rational& c : coeff) common_den = lcm(common_den, denominator(c));
  std::vector<Integer> out(n + 1);
  Integer content = 0;
  for (int i = 0; i <= n; ++i) {
    out[i] = numerator(coeff[i] * common_den);
    content = gcd(content, out[i]);
  }
  if (content > 1)
    for (Integer& c : out) c /= content;
  if (out[n] < 0)
    for (Integer& c : out) c = -c;
  return out;
}

namespace detail {

inline Integer eval_poly(const std::vector<Integer>& poly, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

// Divides a monic integer polynomial by (x - root); exact by construction.
inline std::vector<Integer> deflate(const std::vector<Integer>& poly,
                                    const Integer& root) {
  std::vector<Integer> out(poly.size() - 1);
  Integer carry = poly.back();
  for (std::size_t i = poly.size() - 1; i-- > 0;) {
    out[i] = carry;
    carry = poly[i] + carry * root;
  }
  return out;
}

}  // namespace detail

// All eigenvalues (with multiplicity) of a matrix with rational entries,
// provided the characteristic polynomial splits into rational roots and at
// most one irreducible quadratic factor. Rational roots are located by an
// integer scan over the Gershgorin interval after clearing denominators,
// which avoids factoring large constant terms.
inline std::vector<Scalar> eigenvalues_quadratic(const ExactMatrix& a) {
  std::vector<Integer> poly = characteristic_polynomial(a);
  int n = a.rows();

  Rational lo = 0, hi = 0;
  for (int r = 0; r < n; ++r) {
    Rational center = a.at(r, r).as_rational();
    Rational radius = 0;
    for (int c = 0; c < n; ++c)
      if (c != r) {
        Rational v = a.at(r, c).as_rational();
        radius += v < 0 ? -v : v;
      }
    Rational row_lo = center - radius;
    Rational row_hi = center + radius;
    if (r == 0 || row_lo < lo) lo = row_lo;
    if (r == 0 || row_hi > hi) hi = row_hi;
  }

  // Substitute x = y / L with L the leading coefficient; the image is monic
  // with integer roots y = L * x for every rational eigenvalue x.
  Integer lead = poly[n];
  std::vector<Integer> ypoly(n + 1);
  ypoly[n] = 1;
  Integer power = 1;
  for (int i = n - 1; i >= 0; --i) {
    ypoly[i] = poly[i] * power;
    power *= lead;
  }

  Integer ylo_num = numerator(lo * lead);
  Integer ylo_den = denominator(lo * lead);
  Integer ylo;
  if (ylo_num >= 0)
    ylo = (ylo_num + ylo_den - 1) / ylo_den;
  else
    ylo = -((-ylo_num) / ylo_den);
  Integer yhi_num = numerator(hi * lead);
  Integer yhi_den = denominator(hi * lead);
  Integer yhi;
  if (yhi_num >= 0)
    yhi = yhi_num / yhi_den;
  else
    yhi = -(((-yhi_num) + yhi_den - 1) / yhi_den);
  if (yhi - ylo > 20000000)
    throw Error(ErrorCategory::MathDomain,
                "eigenvalue scan interval too large");

  std::vector<Scalar> roots;
  for (Integer y = ylo; y <= yhi && ypoly.size() > 1; ++y) {
    while (ypoly.size() > 1 && detail::eval_poly(ypoly, y) == 0) {
      roots.push_back(Scalar(Rational(y, lead)));
      ypoly = detail::deflate(ypoly, y);
    }
  }

  std::size_t remaining = ypoly.size() - 1;
  if (remaining == 2) {
    Integer b = ypoly[1];
    Integer c = ypoly[0];
    Integer disc = b * b - 4 * c;
    if (disc < 0)
      throw Error(ErrorCategory::MathDomain,
                  "complex eigenvalues are outside the scalar domain");
    Scalar root_disc = sqrt_integer(disc);
    Scalar two_lead(Rational(2 * lead));
    roots.push_back(div(add(Scalar(Rational(-b)), root_disc), two_lead));
    roots.push_back(div(sub(Scalar(Rational(-b)), root_disc), two_lead));
  } else if (remaining != 0) {
    throw IrreducibleCubicOrHigher(
        "characteristic polynomial has an irreducible factor of degree " +
        std::to_string(remaining));
  }

  // Deterministic order: descending when all values are mutually comparable.
  std::set<long long> discs;
  for (const Scalar& r : roots)
    if (r.discriminant() != 0) discs.insert(r.discriminant());
  if (discs.size() <= 1)
    std::sort(roots.begin(), roots.end(),
              [](const Scalar& x, const Scalar& y) { return compare(x, y) > 0; });
  return roots;
}

// Unique left eigenvector of A for a simple eigenvalue, scaled so that the
// first coordinate is 1.
inline std::vector<Scalar> left_eigenvector_for(const ExactMatrix& a,
                                                const Scalar& lambda) {
  if (a.rows() != a.cols())
    throw Error(ErrorCategory::MathDomain,
                "eigenvector of a nonsquare matrix");
  int n = a.rows();
  // Solve v (A - lambda I) = 0 as (A^T - lambda I) v^T = 0.
  ExactMatrix m = transpose(a);
  for (int i = 0; i < n; ++i) m.at(i, i) -= lambda;

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int pivot = -1;
    for (int r = row; r < n; ++r)
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(row, c));
    Scalar inv_pivot = div(Scalar(1), m.at(row, col));
    for (int c = 0; c < n; ++c) m.at(row, c) *= inv_pivot;
    for (int r = 0; r < n; ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Scalar factor = m.at(r, col);
      for (int c = 0; c < n; ++c) m.at(r, c) -= factor * m.at(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }

  int rank = static_cast<int>(pivot_col.size());
  if (rank == n) throw NotAnEigenvalue("kernel is trivial");
  if (n - rank > 1)
    throw EigenspaceDimensionNotOne("kernel dimension is " +
                                    std::to_string(n - rank));

  int free_col = -1;
  {
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) {
        free_col = c;
        break;
      }
  }
  std::vector<Scalar> v(n);
  v[free_col] = Scalar(1);
  for (int r = 0; r < rank; ++r) v[pivot_col[r]] = neg(m.at(r, free_col));

  if (v[0].is_zero())
    throw Error(ErrorCategory::MathDomain,
                "eigenvector has zero first coordinate");
  Scalar scale_factor = div(Scalar(1), v[0]);
  for (Scalar& entry : v) entry *= scale_factor;
  return v;
}

}  // namespace schemeforge

#endif
