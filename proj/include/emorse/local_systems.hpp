#pragma once

// Finite-group local systems and group-algebra coefficient complexes.
//
// Actions compose in path order: the transport along g followed by h is
// action(gh) = action(h) * action(g), matching how transport operators
// compose along concatenated flow lines.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emorse/chain_complex.hpp"
#include "emorse/enriched_morse.hpp"

namespace emorse {

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}

  /// table[i][j] names the product elements[i] * elements[j]. Elements are
  /// re-ordered lexicographically. Throws std::invalid_argument unless the
  /// table defines a group.
  FiniteGroup(std::vector<std::string> elements, const std::vector<std::vector<std::string>>& table);

  static FiniteGroup trivial();
  /// Elements "1", "t", "t^2", ...
  static FiniteGroup cyclic(std::size_t order);
  /// Permutations of {1,2,3} in one-line notation: "123", "132", ...
  static FiniteGroup symmetric3();

  std::size_t order() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(std::size_t g) const { return elements_.at(g); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t multiply(std::size_t g, std::size_t h) const { return table_[g][h]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t g) const { return inverse_.at(g); }

  /// Multiplication table by name, rows and columns in element order.
  std::vector<std::vector<std::string>> table() const;

  bool operator==(const FiniteGroup&) const = default;

 private:
  FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table, int);

  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Element of the group algebra GF(2)[G]: a subset of the group.
using GroupAlgebraElement = gf2::BitVector;

GroupAlgebraElement algebra_element(const FiniteGroup& g, const std::vector<std::string>& names);

/// Product in GF(2)[G].
GroupAlgebraElement algebra_multiply(const FiniteGroup& g, const GroupAlgebraElement& a,
                                     const GroupAlgebraElement& b);

class MonodromyLocalSystem {
 public:
  /// fiber: graded vector space, stored as a complex with zero boundary.
  /// action[g]: invertible shift-0 map of the fiber, indexed like group elements.
  /// Throws std::invalid_argument unless the action is a path-order
  /// homomorphism by invertible maps.
  MonodromyLocalSystem(FiniteGroup group, GradedComplex fiber, std::vector<DegreeMap> action);

  const FiniteGroup& group() const { return group_; }
  const GradedComplex& fiber() const { return fiber_; }
  const DegreeMap& action(std::size_t g) const { return action_.at(g); }
  const std::vector<DegreeMap>& actions() const { return action_; }

  /// Sum of action(g) over the support of `a`.
  DegreeMap expand(const GroupAlgebraElement& a) const;

 private:
  FiniteGroup group_;
  GradedComplex fiber_;
  std::vector<DegreeMap> action_;
};

/// Rank-one fiber "v" in degree 0 with every element acting as the identity.
MonodromyLocalSystem trivial_system(const FiniteGroup& g);

/// Group algebra in degree 0, transport along h multiplying basis element k
/// to kh.
MonodromyLocalSystem left_regular_system(const FiniteGroup& g);

/// Group algebra in degree 0, transport along h sending k to h^-1 k h.
MonodromyLocalSystem conjugation_system(const FiniteGroup& g);

/// Span of the regular transport operators inside End(GF(2)[G]), with h
/// acting by phi -> R(h) phi R(h)^-1. Basis elements are named "R(k)".
MonodromyLocalSystem end_mon_system(const FiniteGroup& g);

/// Invertible shift-0 U with U a(h) = b(h) U for every h, or nullopt. The
/// intertwiner space is solved for, then searched exhaustively (identity
/// first).
std::optional<DegreeMap> systems_isomorphic(const MonodromyLocalSystem& a, const MonodromyLocalSystem& b);

/// Cellular complex with entries in GF(2)[G]. Entry (i, j) of boundary(d)
/// is the coefficient of cell i of degree d-1 in the boundary of cell j.
class GroupAlgebraComplex {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    GroupAlgebraElement value;
  };

  /// Throws std::invalid_argument on shape errors or if a composite boundary
  /// is nonzero after expansion through the regular representation.
  GroupAlgebraComplex(FiniteGroup group, std::map<int, std::vector<std::string>> cells,
                      std::map<int, std::vector<Entry>> boundary);

  const FiniteGroup& group() const { return group_; }
  const std::map<int, std::vector<std::string>>& cells() const { return cells_; }
  const std::map<int, std::vector<Entry>>& boundary() const { return boundary_; }

  /// Expanded complex with generators "<fiber gen>|<cell>".
  GradedComplex expand(const MonodromyLocalSystem& s) const;

 private:
  FiniteGroup group_;
  std::map<int, std::vector<std::string>> cells_;
  std::map<int, std::vector<Entry>> boundary_;
};

/// Homology of the complex expanded through the system's action.
/// Throws std::invalid_argument when the groups differ.
std::map<int, std::size_t> cellular_local_homology(const GroupAlgebraComplex& c, const MonodromyLocalSystem& s);

/// Index-1 transport coefficients keyed by (from, to).
using AlgebraTransports = std::map<PointPair, GroupAlgebraElement>;

/// Cells are the critical points, one per point in degree = index.
GroupAlgebraComplex lifted_group_complex(const std::vector<CriticalPoint>& points, const AlgebraTransports& transports,
                                         const FiniteGroup& group);

class MonodromyDatumError : public std::invalid_argument {
 public:
  MonodromyDatumError(std::string from, std::string to, const std::string& what)
      : std::invalid_argument(what), from_(std::move(from)), to_(std::move(to)) {}
  const std::string& from() const { return from_; }
  const std::string& to() const { return to_; }

 private:
  std::string from_;
  std::string to_;
};

/// Datum with fiber = the system's fiber at every point and the expanded
/// index-1 transports; all longer transports are zero. Throws
/// MonodromyDatumError naming the pair where the composites over
/// intermediate points fail to cancel.
EnrichedMorseDatum datum_from_monodromy(const std::vector<CriticalPoint>& points, const AlgebraTransports& transports,
                                        const MonodromyLocalSystem& s);

}  // namespace emorse
