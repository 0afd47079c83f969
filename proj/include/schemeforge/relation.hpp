#ifndef SCHEMEFORGE_RELATION_HPP
#define SCHEMEFORGE_RELATION_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "schemeforge/errors.hpp"

namespace schemeforge {

// Symmetric 0/1 relation on n points, stored as packed row bitmaps so that
// row intersections reduce to word-wise AND plus popcount.
class RelationMatrix {
public:
  RelationMatrix() : n_(0), words_per_row_(0) {}
  explicit RelationMatrix(int n)
      : n_(n), words_per_row_((n + 63) / 64),
        bits_(static_cast<std::size_t>(n) * ((n + 63) / 64)) {}

  int size() const { return n_; }
  int words_per_row() const { return words_per_row_; }

  bool get(int x, int y) const {
    return (word(x, y >> 6) >> (y & 63)) & 1u;
  }
  void set(int x, int y) {
    word(x, y >> 6) |= std::uint64_t{1} << (y & 63);
  }
  void clear(int x, int y) {
    word(x, y >> 6) &= ~(std::uint64_t{1} << (y & 63));
  }

  const std::uint64_t* row(int x) const {
    return bits_.data() + static_cast<std::size_t>(x) * words_per_row_;
  }

  // Number of points adjacent to both x (in this relation) and y (in other).
  long long and_popcount(int x, const RelationMatrix& other, int y) const {
    const std::uint64_t* a = row(x);
    const std::uint64_t* b = other.row(y);
    long long total = 0;
    for (int w = 0; w < words_per_row_; ++w)
      total += std::popcount(a[w] & b[w]);
    return total;
  }

  long long row_popcount(int x) const {
    const std::uint64_t* a = row(x);
    long long total = 0;
    for (int w = 0; w < words_per_row_; ++w) total += std::popcount(a[w]);
    return total;
  }

private:
  std::uint64_t& word(int r, int w) {
    return bits_[static_cast<std::size_t>(r) * words_per_row_ + w];
  }
  const std::uint64_t& word(int r, int w) const {
    return bits_[static_cast<std::size_t>(r) * words_per_row_ + w];
  }

  int n_;
  int words_per_row_;
  std::vector<std::uint64_t> bits_;
};

// Builds the relation list from a dense classification map r(x, y) in
// {0, ..., d}. The map must assign 0 exactly on the diagonal.
inline std::vector<RelationMatrix> relations_from_classifier(
    int n, int d, const std::vector<int>& classes) {
  std::vector<RelationMatrix> rel(d + 1, RelationMatrix(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int c = classes[static_cast<std::size_t>(x) * n + y];
      if (c < 0 || c > d)
        throw Error(ErrorCategory::MathDomain, "relation index out of range");
      rel[c].set(x, y);
    }
  return rel;
}

}  // namespace schemeforge

#endif
