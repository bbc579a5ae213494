#pragma once

// Sparse linear algebra over the two-element field.
//
// Vectors are sorted position sets, matrices are stored column-major as one
// BitVector per column. Every elimination routine pivots on the smallest
// nonzero position so results are reproducible bit for bit.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace emorse::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : length_(length) {}

  /// `support` must be strictly increasing and every position < length.
  BitVector(std::size_t length, std::vector<std::size_t> support);

  /// Sum of unit vectors; repeated positions cancel in pairs.
  static BitVector sum_of(std::size_t length, std::vector<std::size_t> positions);
  static BitVector unit(std::size_t length, std::size_t position);

  std::size_t length() const { return length_; }
  std::span<const std::size_t> support() const { return support_; }
  std::size_t count() const { return support_.size(); }
  bool is_zero() const { return support_.empty(); }
  bool test(std::size_t position) const;
  /// Smallest position carrying a 1.
  std::optional<std::size_t> leading() const;

  void flip(std::size_t position);
  BitVector& operator+=(const BitVector& other);
  friend BitVector operator+(BitVector lhs, const BitVector& rhs) {
    lhs += rhs;
    return lhs;
  }

  /// Parity of the overlap with `other`.
  bool dot(const BitVector& other) const;

  /// Re-index into a vector of `new_length`: position i goes to positions[i].
  BitVector remapped(std::size_t new_length, std::span<const std::size_t> positions) const;
  /// Keep only the listed positions, renumbered 0..k-1 in the order given.
  BitVector restricted(std::span<const std::size_t> positions) const;

  bool operator==(const BitVector&) const = default;
  auto operator<=>(const BitVector&) const = default;

  std::string to_string() const;

 private:
  std::size_t length_ = 0;
  std::vector<std::size_t> support_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  /// Entries are distinct (row, col) positions carrying 1.
  static BitMatrix from_entries(std::size_t rows, std::size_t cols,
                                const std::vector<std::pair<std::size_t, std::size_t>>& entries);
  /// Every column must have length `rows`.
  static BitMatrix from_columns(std::size_t rows, std::vector<BitVector> columns);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const BitVector& column(std::size_t j) const { return columns_.at(j); }
  std::span<const BitVector> columns() const { return columns_; }

  bool test(std::size_t row, std::size_t col) const;
  void flip(std::size_t row, std::size_t col);
  bool is_zero() const;

  /// Sorted (row, col) list.
  std::vector<std::pair<std::size_t, std::size_t>> entries() const;

  BitVector apply(const BitVector& x) const;
  BitMatrix transposed() const;

  /// Select rows and columns (renumbered in the order listed).
  BitMatrix submatrix(std::span<const std::size_t> row_index, std::span<const std::size_t> col_index) const;
  /// Old row i becomes row row_map[i]; old column j becomes column col_map[j].
  BitMatrix permuted(std::span<const std::size_t> row_map, std::span<const std::size_t> col_map) const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix lhs, const BitMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs);

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<BitVector> columns_;
};

/// Incrementally built row-echelon basis of a subspace.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t length) : length_(length) {}

  std::size_t length() const { return length_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Returns true if `v` was outside the current span (and is now added).
  bool insert(const BitVector& v);
  /// Fully reduced form of `v` modulo the span; zero iff `v` is in the span.
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

 private:
  std::size_t length_;
  std::map<std::size_t, BitVector> pivots_;
};

std::size_t rank(const BitMatrix& m);

/// Null-space basis with cols - rank vectors, one per non-pivot column in
/// column order.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

/// dim(span(generators + subspace) / span(subspace)).
std::size_t relative_rank(std::span<const BitVector> generators, std::span<const BitVector> subspace);

/// Linearly independent subset of `vectors`, first-come order.
std::vector<BitVector> independent_subset(std::span<const BitVector> vectors, std::size_t length);

}  // namespace emorse::gf2
