#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emorse/gf2.hpp"

namespace emorse {

using gf2::BitMatrix;
using gf2::BitVector;

/// Finite-rank chain complex over GF(2) with named generators.
///
/// Generators within a degree are kept in lexicographic order; the
/// constructor permutes the supplied matrices to match. Names are unique
/// across all degrees. `boundary(d)` maps degree d to degree d - 1.
class GradedComplex {
 public:
  GradedComplex() = default;

  /// Throws std::invalid_argument on duplicate names or inconsistent shapes.
  /// Does not check that the boundary squares to zero; see validate_complex.
  GradedComplex(std::map<int, std::vector<std::string>> generators, std::map<int, BitMatrix> differential = {});

  /// One generator in degree 0.
  static GradedComplex point(std::string name = "pt");

  const std::map<int, std::vector<std::string>>& generators() const { return generators_; }
  std::span<const std::string> generators(int degree) const;
  std::size_t rank(int degree) const;
  std::size_t total_rank() const;
  bool empty() const { return generators_.empty(); }
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;

  /// Matrix of shape rank(d-1) x rank(d); zero when nothing was supplied.
  BitMatrix boundary(int degree) const;
  const std::map<int, BitMatrix>& nonzero_boundaries() const { return differential_; }

  struct Location {
    int degree;
    std::size_t index;
    bool operator==(const Location&) const = default;
  };
  std::optional<Location> find(const std::string& name) const;
  const std::string& name(int degree, std::size_t index) const { return generators_.at(degree).at(index); }

  bool operator==(const GradedComplex&) const = default;

 private:
  std::map<int, std::vector<std::string>> generators_;
  std::map<int, BitMatrix> differential_;
  std::map<std::string, Location> index_;
};

struct BoundaryWitness {
  int degree;
  std::string generator;
};

/// std::nullopt when the boundary squares to zero; otherwise the lowest degree
/// and first generator whose image under the boundary is not a cycle.
std::optional<BoundaryWitness> validate_complex(const GradedComplex& c);

struct Homology {
  std::map<int, std::size_t> dims;  // nonzero entries only
  std::map<int, std::vector<BitVector>> representatives;

  std::size_t dim(int degree) const {
    auto it = dims.find(degree);
    return it == dims.end() ? 0 : it->second;
  }
};

/// Throws std::invalid_argument for complexes failing validate_complex.
Homology homology(const GradedComplex& c);

/// Map of fixed degree `shift`; component d sends C_d(source) to
/// C_{d+shift}(target). Absent components are zero. The source and target
/// complexes are supplied wherever shapes matter.
class DegreeMap {
 public:
  DegreeMap() = default;
  explicit DegreeMap(int shift, std::map<int, BitMatrix> components = {});

  static DegreeMap identity(const GradedComplex& c);

  int shift() const { return shift_; }
  const std::map<int, BitMatrix>& components() const { return components_; }
  const BitMatrix* component(int degree) const;
  BitMatrix component_or_zero(int degree, const GradedComplex& source, const GradedComplex& target) const;
  bool is_zero() const { return components_.empty(); }

  /// Image of a degree-`degree` source chain, in degree + shift of the target.
  BitVector apply(int degree, const BitVector& x, const GradedComplex& target) const;

  DegreeMap& operator+=(const DegreeMap& other);

  bool operator==(const DegreeMap&) const = default;

 private:
  int shift_ = 0;
  std::map<int, BitMatrix> components_;  // zero blocks dropped
};

/// Composite `second` after `first`.
DegreeMap compose(const DegreeMap& second, const DegreeMap& first);

/// Throws std::invalid_argument if some component disagrees with the
/// generator counts of source/target.
void check_shapes(const DegreeMap& f, const GradedComplex& source, const GradedComplex& target);

struct ChainMapWitness {
  int degree;
  std::string generator;
};

/// std::nullopt iff boundary_target * f + f * boundary_source vanishes in every degree.
std::optional<ChainMapWitness> validate_chain_map(const DegreeMap& f, const GradedComplex& source,
                                                  const GradedComplex& target);

/// Generators are named "x*y"; differential d(x*y) = dx*y + x*dy.
GradedComplex tensor_product(const GradedComplex& c, const GradedComplex& d);

/// Disjoint union of the parts with generator names prefixed "<i>:" and
/// degrees raised by the given shift. No cross terms.
GradedComplex direct_sum_with_shifts(const std::vector<std::pair<GradedComplex, int>>& parts);

}  // namespace emorse
