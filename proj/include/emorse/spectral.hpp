#pragma once

// Spectral sequence of a bounded filtered complex over GF(2).
//
// Pages are built straight from the cycle/boundary description
//   E^r_{p,q} = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}),
//   Z^r_p     = { x in F_p C_{p+q} : dx in F_{p-r} C },
// with explicit representatives, so d_r is read off by applying the
// boundary to a representative and solving in the target page's basis.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emorse/chain_complex.hpp"

namespace emorse {

/// (p, q) = (filtration level, total degree - p).
using Bidegree = std::pair<int, int>;
using BidegreeDims = std::map<Bidegree, std::size_t>;

class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Every generator needs a level. Throws std::invalid_argument otherwise.
  FilteredComplex(GradedComplex complex, std::map<std::string, int> level);

  const GradedComplex& complex() const { return complex_; }
  int level(const std::string& generator) const { return level_.at(generator); }
  int level(int degree, std::size_t index) const { return levels_by_degree_.at(degree).at(index); }
  const std::map<std::string, int>& levels() const { return level_; }

  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  /// max_level - min_level, zero for the empty complex.
  int width() const { return max_level_ - min_level_; }

 private:
  GradedComplex complex_;
  std::map<std::string, int> level_;
  std::map<int, std::vector<int>> levels_by_degree_;
  int min_level_ = 0;
  int max_level_ = 0;
};

struct FiltrationWitness {
  std::string generator;
  std::string target;
};

/// std::nullopt iff no boundary raises the filtration level.
std::optional<FiltrationWitness> validate_filtration(const FilteredComplex& fc);

struct SpectralPage {
  int r = 0;
  BidegreeDims dims;  // nonzero entries only
  /// Vectors in C_{p+q} of the underlying complex.
  std::map<Bidegree, std::vector<BitVector>> representatives;
  /// d_r out of (p, q), toward (p - r, q + r - 1); present only when both
  /// ends are nonzero. Columns follow the source representatives, rows the
  /// target representatives.
  std::map<Bidegree, BitMatrix> differentials;

  std::size_t dim(int p, int q) const;
  std::size_t differential_rank(int p, int q) const;
};

/// Throws std::invalid_argument if the complex or filtration is invalid.
SpectralPage page(const FilteredComplex& fc, int r);

std::map<Bidegree, BitMatrix> page_differential(const FilteredComplex& fc, int r);

struct InfinityPage {
  SpectralPage page;
  /// Smallest r >= 1 with dims(E^r) = dims(E^s) for every s >= r.
  int stabilization = 1;
};

/// Computes pages 1 .. width + 1; the last of these is E^infinity.
InfinityPage infinity_page(const FilteredComplex& fc);

/// dim F_p H_{p+q} / F_{p-1} H_{p+q}, with F_p H the image of H(F_p C).
BidegreeDims associated_graded_of_homology(const FilteredComplex& fc);

/// Sum of dims over each total degree p + q.
std::map<int, std::size_t> total_degree_sums(const BidegreeDims& dims);

}  // namespace emorse
