#include "emorse/gf2.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace emorse::gf2 {

BitVector::BitVector(std::size_t length, std::vector<std::size_t> support)
    : length_(length), support_(std::move(support)) {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] >= length_) {
      throw std::invalid_argument("BitVector: position " + std::to_string(support_[i]) +
                                  " out of range for length " + std::to_string(length_));
    }
    if (i > 0 && support_[i - 1] >= support_[i]) {
      throw std::invalid_argument("BitVector: support must be strictly increasing");
    }
  }
}

BitVector BitVector::sum_of(std::size_t length, std::vector<std::size_t> positions) {
  std::sort(positions.begin(), positions.end());
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < positions.size();) {
    std::size_t j = i;
    while (j < positions.size() && positions[j] == positions[i]) ++j;
    if ((j - i) % 2 == 1) support.push_back(positions[i]);
    i = j;
  }
  return BitVector(length, std::move(support));
}

BitVector BitVector::unit(std::size_t length, std::size_t position) {
  return BitVector(length, std::vector<std::size_t>{position});
}

bool BitVector::test(std::size_t position) const {
  return std::binary_search(support_.begin(), support_.end(), position);
}

std::optional<std::size_t> BitVector::leading() const {
  if (support_.empty()) return std::nullopt;
  return support_.front();
}

void BitVector::flip(std::size_t position) {
  if (position >= length_) throw std::out_of_range("BitVector::flip: position out of range");
  auto it = std::lower_bound(support_.begin(), support_.end(), position);
  if (it != support_.end() && *it == position) {
    support_.erase(it);
  } else {
    support_.insert(it, position);
  }
}

BitVector& BitVector::operator+=(const BitVector& other) {
  if (other.length_ != length_) {
    throw std::invalid_argument("BitVector: length mismatch in addition");
  }
  std::vector<std::size_t> out;
  out.reserve(support_.size() + other.support_.size());
  std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(),
                                other.support_.end(), std::back_inserter(out));
  support_ = std::move(out);
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  std::size_t overlap = 0;
  auto a = support_.begin();
  auto b = other.support_.begin();
  while (a != support_.end() && b != other.support_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++overlap;
      ++a;
      ++b;
    }
  }
  return overlap % 2 == 1;
}

BitVector BitVector::remapped(std::size_t new_length, std::span<const std::size_t> positions) const {
  if (positions.size() != length_) {
    throw std::invalid_argument("BitVector::remapped: position map has wrong size");
  }
  std::vector<std::size_t> out;
  out.reserve(support_.size());
  for (auto i : support_) out.push_back(positions[i]);
  return sum_of(new_length, std::move(out));
}

BitVector BitVector::restricted(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (test(positions[k])) out.push_back(k);
  }
  return BitVector(positions.size(), std::move(out));
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (auto i : support_) s[i] = '1';
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, BitVector(rows)) {}

BitMatrix BitMatrix::from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
  std::vector<std::vector<std::size_t>> per_col(cols);
  for (auto [r, c] : entries) {
    if (r >= rows || c >= cols) {
      throw std::invalid_argument("BitMatrix: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                  ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    per_col[c].push_back(r);
  }
  BitMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    auto& col = per_col[c];
    std::sort(col.begin(), col.end());
    if (std::adjacent_find(col.begin(), col.end()) != col.end()) {
      throw std::invalid_argument("BitMatrix: duplicate entry in column " + std::to_string(c));
    }
    m.columns_[c] = BitVector(rows, std::move(col));
  }
  return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::vector<BitVector> columns) {
  for (const auto& c : columns) {
    if (c.length() != rows) throw std::invalid_argument("BitMatrix::from_columns: column length mismatch");
  }
  BitMatrix m;
  m.rows_ = rows;
  m.columns_ = std::move(columns);
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = BitVector::unit(n, i);
  return m;
}

bool BitMatrix::test(std::size_t row, std::size_t col) const { return columns_.at(col).test(row); }

void BitMatrix::flip(std::size_t row, std::size_t col) { columns_.at(col).flip(row); }

bool BitMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const BitVector& c) { return c.is_zero(); });
}

std::vector<std::pair<std::size_t, std::size_t>> BitMatrix::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (auto r : columns_[c].support()) out.emplace_back(r, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BitVector BitMatrix::apply(const BitVector& x) const {
  if (x.length() != cols()) throw std::invalid_argument("BitMatrix::apply: length mismatch");
  BitVector out(rows_);
  for (auto j : x.support()) out += columns_[j];
  return out;
}

BitMatrix BitMatrix::transposed() const {
  std::vector<std::pair<std::size_t, std::size_t>> flipped;
  for (auto [r, c] : entries()) flipped.emplace_back(c, r);
  return from_entries(cols(), rows_, flipped);
}

BitMatrix BitMatrix::submatrix(std::span<const std::size_t> row_index,
                               std::span<const std::size_t> col_index) const {
  std::vector<BitVector> cols_out;
  cols_out.reserve(col_index.size());
  for (auto j : col_index) cols_out.push_back(columns_.at(j).restricted(row_index));
  return from_columns(row_index.size(), std::move(cols_out));
}

BitMatrix BitMatrix::permuted(std::span<const std::size_t> row_map, std::span<const std::size_t> col_map) const {
  if (row_map.size() != rows_ || col_map.size() != cols()) {
    throw std::invalid_argument("BitMatrix::permuted: map sizes do not match shape");
  }
  std::vector<BitVector> out(cols(), BitVector(rows_));
  for (std::size_t j = 0; j < cols(); ++j) out.at(col_map[j]) = columns_[j].remapped(rows_, row_map);
  return from_columns(rows_, std::move(out));
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols() != cols()) {
    throw std::invalid_argument("BitMatrix: shape mismatch in addition");
  }
  for (std::size_t j = 0; j < cols(); ++j) columns_[j] += other.columns_[j];
  return *this;
}

BitMatrix operator*(const BitMatrix& lhs, const BitMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw std::invalid_argument("BitMatrix: shape mismatch in product (" + std::to_string(lhs.rows()) + "x" +
                                std::to_string(lhs.cols()) + " * " + std::to_string(rhs.rows()) + "x" +
                                std::to_string(rhs.cols()) + ")");
  }
  std::vector<BitVector> cols;
  cols.reserve(rhs.cols());
  for (const auto& c : rhs.columns()) cols.push_back(lhs.apply(c));
  return BitMatrix::from_columns(lhs.rows(), std::move(cols));
}

bool EchelonBasis::insert(const BitVector& v) {
  auto r = reduce(v);
  auto lead = r.leading();
  if (!lead) return false;
  pivots_.emplace(*lead, std::move(r));
  return true;
}

BitVector EchelonBasis::reduce(BitVector v) const {
  if (v.length() != length_) throw std::invalid_argument("EchelonBasis: length mismatch");
  // Adding a pivot row only touches positions >= its pivot, so one ascending
  // sweep reaches the fully reduced form.
  std::size_t from = 0;
  while (true) {
    auto support = v.support();
    auto it = std::lower_bound(support.begin(), support.end(), from);
    while (it != support.end() && !pivots_.contains(*it)) ++it;
    if (it == support.end()) return v;
    from = *it;
    v += pivots_.at(from);
    ++from;
  }
}

namespace {

// Column reduction recording, for each surviving pivot, which original
// columns were combined to produce it.
struct ColumnReduction {
  struct Pivot {
    BitVector reduced;
    BitVector combination;
  };
  std::map<std::size_t, Pivot> pivots;
  std::vector<BitVector> kernel;

  explicit ColumnReduction(const BitMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BitVector v = m.column(j);
      BitVector combo = BitVector::unit(m.cols(), j);
      eliminate(v, combo);
      if (auto lead = v.leading()) {
        pivots.emplace(*lead, Pivot{std::move(v), std::move(combo)});
      } else {
        kernel.push_back(std::move(combo));
      }
    }
  }

  void eliminate(BitVector& v, BitVector& combo) const {
    while (auto lead = v.leading()) {
      auto it = pivots.find(*lead);
      if (it == pivots.end()) return;
      v += it->second.reduced;
      combo += it->second.combination;
    }
  }
};

}  // namespace

std::size_t rank(const BitMatrix& m) { return ColumnReduction(m).pivots.size(); }

std::vector<BitVector> kernel_basis(const BitMatrix& m) { return ColumnReduction(m).kernel; }

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
  if (b.length() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  ColumnReduction red(m);
  BitVector v = b;
  BitVector combo(m.cols());
  red.eliminate(v, combo);
  if (!v.is_zero()) return std::nullopt;
  return combo;
}

std::size_t relative_rank(std::span<const BitVector> generators, std::span<const BitVector> subspace) {
  if (generators.empty()) return 0;
  EchelonBasis basis(generators.front().length());
  for (const auto& s : subspace) basis.insert(s);
  std::size_t added = 0;
  for (const auto& g : generators) {
    if (basis.insert(g)) ++added;
  }
  return added;
}

std::vector<BitVector> independent_subset(std::span<const BitVector> vectors, std::size_t length) {
  EchelonBasis basis(length);
  std::vector<BitVector> out;
  for (const auto& v : vectors) {
    if (basis.insert(v)) out.push_back(v);
  }
  return out;
}

}  // namespace emorse::gf2
