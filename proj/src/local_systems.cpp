#include "emorse/local_systems.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>

namespace emorse {

FiniteGroup::FiniteGroup(std::vector<std::string> elements, const std::vector<std::vector<std::string>>& table) {
  const std::size_t n = elements.size();
  if (n == 0) throw std::invalid_argument("group: no elements");
  std::map<std::string, std::size_t> given;
  for (std::size_t i = 0; i < n; ++i) {
    if (!given.emplace(elements[i], i).second) {
      throw std::invalid_argument("group: duplicate element '" + elements[i] + "'");
    }
  }
  if (table.size() != n) throw std::invalid_argument("group: multiplication table has wrong number of rows");
  std::vector<std::vector<std::size_t>> products(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw std::invalid_argument("group: multiplication table row has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      auto it = given.find(table[i][j]);
      if (it == given.end()) throw std::invalid_argument("group: unknown product '" + table[i][j] + "'");
      products[i][j] = it->second;
    }
  }
  *this = FiniteGroup(std::move(elements), std::move(products), 0);
}

FiniteGroup::FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table, int) {
  const std::size_t n = elements.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
  std::vector<std::size_t> where(n);
  for (std::size_t k = 0; k < n; ++k) where[order[k]] = k;

  elements_.resize(n);
  table_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    elements_[where[i]] = elements[i];
    for (std::size_t j = 0; j < n; ++j) table_[where[i]][where[j]] = where[table[i][j]];
  }

  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool unit = true;
    for (std::size_t g = 0; g < n && unit; ++g) unit = table_[e][g] == g && table_[g][e] == g;
    if (unit) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("group: no identity element");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw std::invalid_argument("group: multiplication is not associative at (" + elements_[a] + ", " +
                                      elements_[b] + ", " + elements_[c] + ")");
        }
      }
    }
  }
  inverse_.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    auto it = std::find(table_[g].begin(), table_[g].end(), identity_);
    if (it == table_[g].end()) throw std::invalid_argument("group: '" + elements_[g] + "' has no inverse");
    inverse_[g] = static_cast<std::size_t>(it - table_[g].begin());
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t order) {
  if (order == 0) throw std::invalid_argument("cyclic group of order 0");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < order; ++k) {
    names.push_back(k == 0 ? "1" : k == 1 ? "t" : "t^" + std::to_string(k));
  }
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  }
  return FiniteGroup(std::move(names), std::move(table), 0);
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  // (a * b)(i) = a(b(i))
  std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k] - 1];
      table[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup(std::move(names), std::move(table), 0);
}

std::optional<std::size_t> FiniteGroup::find(const std::string& name) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), name);
  if (it == elements_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::vector<std::string>> FiniteGroup::table() const {
  std::vector<std::vector<std::string>> out(order());
  for (std::size_t i = 0; i < order(); ++i) {
    for (std::size_t j = 0; j < order(); ++j) out[i].push_back(elements_[table_[i][j]]);
  }
  return out;
}

GroupAlgebraElement algebra_element(const FiniteGroup& g, const std::vector<std::string>& names) {
  std::vector<std::size_t> positions;
  for (const auto& n : names) {
    auto i = g.find(n);
    if (!i) throw std::invalid_argument("unknown group element '" + n + "'");
    positions.push_back(*i);
  }
  return GroupAlgebraElement::sum_of(g.order(), std::move(positions));
}

GroupAlgebraElement algebra_multiply(const FiniteGroup& g, const GroupAlgebraElement& a,
                                     const GroupAlgebraElement& b) {
  std::vector<std::size_t> terms;
  for (auto x : a.support()) {
    for (auto y : b.support()) terms.push_back(g.multiply(x, y));
  }
  return GroupAlgebraElement::sum_of(g.order(), std::move(terms));
}

MonodromyLocalSystem::MonodromyLocalSystem(FiniteGroup group, GradedComplex fiber, std::vector<DegreeMap> action)
    : group_(std::move(group)), fiber_(std::move(fiber)), action_(std::move(action)) {
  if (!fiber_.nonzero_boundaries().empty()) throw std::invalid_argument("local system: fiber must have zero boundary");
  if (action_.size() != group_.order()) throw std::invalid_argument("local system: one action per group element");
  for (std::size_t g = 0; g < action_.size(); ++g) {
    const auto& a = action_[g];
    if (a.shift() != 0) throw std::invalid_argument("local system: action must preserve degree");
    check_shapes(a, fiber_, fiber_);
    for (const auto& [degree, names] : fiber_.generators()) {
      if (gf2::rank(a.component_or_zero(degree, fiber_, fiber_)) != names.size()) {
        throw std::invalid_argument("local system: action of '" + group_.name(g) + "' is not invertible");
      }
    }
  }
  if (action_[group_.identity()] != DegreeMap::identity(fiber_)) {
    throw std::invalid_argument("local system: identity must act trivially");
  }
  for (std::size_t g = 0; g < group_.order(); ++g) {
    for (std::size_t h = 0; h < group_.order(); ++h) {
      if (action_[group_.multiply(g, h)] != compose(action_[h], action_[g])) {
        throw std::invalid_argument("local system: action(" + group_.name(g) + " " + group_.name(h) +
                                    ") differs from action(" + group_.name(h) + ") after action(" +
                                    group_.name(g) + ")");
      }
    }
  }
}

DegreeMap MonodromyLocalSystem::expand(const GroupAlgebraElement& a) const {
  if (a.length() != group_.order()) throw std::invalid_argument("group algebra element has wrong length");
  DegreeMap out(0);
  for (auto g : a.support()) out += action_[g];
  return out;
}

namespace {

GradedComplex group_algebra_fiber(const FiniteGroup& g) { return GradedComplex({{0, g.elements()}}); }

// Permutation action on the group algebra: basis k goes to image(h, k).
template <typename Image>
MonodromyLocalSystem permutation_system(const FiniteGroup& g, Image image) {
  std::vector<DegreeMap> action;
  for (std::size_t h = 0; h < g.order(); ++h) {
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t k = 0; k < g.order(); ++k) entries.emplace_back(image(h, k), k);
    action.emplace_back(0, std::map<int, BitMatrix>{{0, BitMatrix::from_entries(g.order(), g.order(), entries)}});
  }
  return MonodromyLocalSystem(g, group_algebra_fiber(g), std::move(action));
}

BitVector flatten(const BitMatrix& m) {
  std::vector<std::size_t> pos;
  for (auto [r, c] : m.entries()) pos.push_back(r * m.cols() + c);
  std::sort(pos.begin(), pos.end());
  return BitVector(m.rows() * m.cols(), std::move(pos));
}

BitMatrix unflatten(const BitVector& v, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (auto p : v.support()) entries.emplace_back(p / n, p % n);
  return BitMatrix::from_entries(n, n, entries);
}

}  // namespace

MonodromyLocalSystem trivial_system(const FiniteGroup& g) {
  GradedComplex fiber({{0, {"v"}}});
  return MonodromyLocalSystem(g, fiber, std::vector<DegreeMap>(g.order(), DegreeMap::identity(fiber)));
}

MonodromyLocalSystem left_regular_system(const FiniteGroup& g) {
  return permutation_system(g, [&](std::size_t h, std::size_t k) { return g.multiply(k, h); });
}

MonodromyLocalSystem conjugation_system(const FiniteGroup& g) {
  return permutation_system(g, [&](std::size_t h, std::size_t k) {
    return g.multiply(g.multiply(g.inverse(h), k), h);
  });
}

MonodromyLocalSystem end_mon_system(const FiniteGroup& g) {
  const auto regular = left_regular_system(g);
  const std::size_t n = g.order();
  auto op = [&](std::size_t h) { return *regular.action(h).component(0); };

  std::vector<BitVector> spanning;
  std::vector<std::string> basis_names;
  gf2::EchelonBasis seen(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    auto flat = flatten(op(k));
    if (seen.insert(flat)) {
      spanning.push_back(std::move(flat));
      basis_names.push_back("R(" + g.name(k) + ")");
    }
  }
  GradedComplex fiber({{0, basis_names}});
  std::vector<std::size_t> slot;
  for (const auto& name : basis_names) slot.push_back(fiber.find(name)->index);
  const BitMatrix basis = BitMatrix::from_columns(n * n, spanning);

  std::vector<DegreeMap> action;
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t i = 0; i < spanning.size(); ++i) {
      const BitMatrix conjugated = op(h) * unflatten(spanning[i], n) * op(g.inverse(h));
      auto coords = gf2::solve(basis, flatten(conjugated));
      if (!coords) throw std::logic_error("end_mon_system: conjugate left the operator span");
      for (auto j : coords->support()) entries.emplace_back(slot[j], slot[i]);
    }
    action.emplace_back(0, std::map<int, BitMatrix>{
                               {0, BitMatrix::from_entries(spanning.size(), spanning.size(), entries)}});
  }
  return MonodromyLocalSystem(g, std::move(fiber), std::move(action));
}

namespace {

constexpr std::size_t kMaxIntertwinerSearch = 24;

std::optional<BitMatrix> intertwiner_block(const MonodromyLocalSystem& a, const MonodromyLocalSystem& b, int degree) {
  const std::size_t n = a.fiber().rank(degree);
  std::vector<BitMatrix> as, bs;
  for (std::size_t h = 0; h < a.group().order(); ++h) {
    as.push_back(a.action(h).component_or_zero(degree, a.fiber(), a.fiber()));
    bs.push_back(b.action(h).component_or_zero(degree, b.fiber(), b.fiber()));
  }
  if (as == bs) return BitMatrix::identity(n);

  // Unknown U(i, j) sits at i * n + j; one equation per entry of U a(h) + b(h) U.
  std::vector<BitVector> equations;
  for (std::size_t h = 0; h < as.size(); ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> terms;
        for (auto k : as[h].column(j).support()) terms.push_back(i * n + k);
        for (std::size_t k = 0; k < n; ++k) {
          if (bs[h].test(i, k)) terms.push_back(k * n + j);
        }
        equations.push_back(BitVector::sum_of(n * n, std::move(terms)));
      }
    }
  }
  const auto space = gf2::kernel_basis(BitMatrix::from_columns(n * n, equations).transposed());
  if (space.size() > kMaxIntertwinerSearch) {
    throw std::runtime_error("systems_isomorphic: intertwiner space of dimension " + std::to_string(space.size()) +
                             " is too large to search");
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << space.size()); ++mask) {
    BitVector u(n * n);
    for (std::size_t k = 0; k < space.size(); ++k) {
      if (mask >> k & 1U) u += space[k];
    }
    BitMatrix candidate = unflatten(u, n);
    if (gf2::rank(candidate) == n) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DegreeMap> systems_isomorphic(const MonodromyLocalSystem& a, const MonodromyLocalSystem& b) {
  if (a.group() != b.group()) throw std::invalid_argument("systems_isomorphic: systems over different groups");
  std::set<int> degrees;
  for (const auto& [d, names] : a.fiber().generators()) degrees.insert(d);
  for (const auto& [d, names] : b.fiber().generators()) degrees.insert(d);
  std::map<int, BitMatrix> blocks;
  for (int d : degrees) {
    if (a.fiber().rank(d) != b.fiber().rank(d)) return std::nullopt;
    auto u = intertwiner_block(a, b, d);
    if (!u) return std::nullopt;
    blocks.emplace(d, std::move(*u));
  }
  return DegreeMap(0, std::move(blocks));
}

GroupAlgebraComplex::GroupAlgebraComplex(FiniteGroup group, std::map<int, std::vector<std::string>> cells,
                                         std::map<int, std::vector<Entry>> boundary)
    : group_(std::move(group)) {
  for (auto& [d, names] : cells) {
    if (!names.empty()) cells_.emplace(d, std::move(names));
  }
  auto count = [&](int d) { return cells_.contains(d) ? cells_.at(d).size() : std::size_t{0}; };
  for (auto& [d, entries] : boundary) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : entries) {
      if (e.row >= count(d - 1) || e.col >= count(d)) {
        throw std::invalid_argument("group algebra complex: entry outside boundary in degree " + std::to_string(d));
      }
      if (e.value.length() != group_.order()) {
        throw std::invalid_argument("group algebra complex: coefficient has wrong length");
      }
      if (!seen.emplace(e.row, e.col).second) {
        throw std::invalid_argument("group algebra complex: repeated entry in degree " + std::to_string(d));
      }
    }
    if (!entries.empty()) boundary_.emplace(d, std::move(entries));
  }
  if (auto w = validate_complex(expand(left_regular_system(group_)))) {
    throw std::invalid_argument("group algebra complex: boundary squares to nonzero in degree " +
                                std::to_string(w->degree));
  }
}

GradedComplex GroupAlgebraComplex::expand(const MonodromyLocalSystem& s) const {
  if (s.group() != group_) throw std::invalid_argument("local system is over a different group");
  const GradedComplex& fiber = s.fiber();
  using Slot = std::tuple<int, std::size_t, int, std::size_t>;  // cell degree, cell, fiber degree, fiber gen
  std::map<int, std::vector<Slot>> slots;
  std::map<Slot, std::size_t> position;
  std::map<int, std::vector<std::string>> names;
  for (const auto& [d, cells] : cells_) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (const auto& [e, gens] : fiber.generators()) {
        for (std::size_t a = 0; a < gens.size(); ++a) {
          Slot slot{d, c, e, a};
          position[slot] = slots[d + e].size();
          slots[d + e].push_back(slot);
          names[d + e].push_back(gens[a] + "|" + cells[c]);
        }
      }
    }
  }
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  for (const auto& [d, list] : boundary_) {
    for (const auto& entry : list) {
      const DegreeMap block = s.expand(entry.value);
      for (const auto& [e, m] : block.components()) {
        for (auto [r, c] : m.entries()) {
          entries[d + e].emplace_back(position.at(Slot{d - 1, entry.row, e, r}),
                                      position.at(Slot{d, entry.col, e, c}));
        }
      }
    }
  }
  std::map<int, BitMatrix> differential;
  for (const auto& [n, list] : slots) {
    const std::size_t rows = slots.contains(n - 1) ? slots.at(n - 1).size() : 0;
    std::vector<std::vector<std::size_t>> per_col(list.size());
    for (auto [r, c] : entries[n]) per_col[c].push_back(r);
    std::vector<BitVector> cols;
    for (auto& rowsets : per_col) cols.push_back(BitVector::sum_of(rows, std::move(rowsets)));
    differential.emplace(n, BitMatrix::from_columns(rows, std::move(cols)));
  }
  return GradedComplex(std::move(names), std::move(differential));
}

std::map<int, std::size_t> cellular_local_homology(const GroupAlgebraComplex& c, const MonodromyLocalSystem& s) {
  if (c.group() != s.group()) throw std::invalid_argument("cellular_local_homology: mismatched groups");
  return homology(c.expand(s)).dims;
}

GroupAlgebraComplex lifted_group_complex(const std::vector<CriticalPoint>& points, const AlgebraTransports& transports,
                                         const FiniteGroup& group) {
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return std::tie(a.index, a.id) < std::tie(b.index, b.id);
  });
  std::map<int, std::vector<std::string>> cells;
  std::map<std::string, std::pair<int, std::size_t>> where;
  for (const auto& p : sorted) {
    where[p.id] = {p.index, cells[p.index].size()};
    cells[p.index].push_back(p.id);
  }
  std::map<int, std::vector<GroupAlgebraComplex::Entry>> boundary;
  for (const auto& [pair, value] : transports) {
    if (!where.contains(pair.first) || !where.contains(pair.second)) {
      throw MonodromyDatumError(pair.first, pair.second, "transport between unknown points");
    }
    const auto [d, col] = where.at(pair.first);
    const auto [d_to, row] = where.at(pair.second);
    if (d_to != d - 1) {
      throw MonodromyDatumError(pair.first, pair.second, "transport " + pair.first + " -> " + pair.second +
                                                             " must lower the index by exactly one");
    }
    if (!value.is_zero()) boundary[d].push_back({row, col, value});
  }
  return GroupAlgebraComplex(group, std::move(cells), std::move(boundary));
}

EnrichedMorseDatum datum_from_monodromy(const std::vector<CriticalPoint>& points, const AlgebraTransports& transports,
                                        const MonodromyLocalSystem& s) {
  for (const auto& [d, names] : s.fiber().generators()) {
    if (d != 0) throw std::invalid_argument("datum_from_monodromy: fiber must be concentrated in degree 0");
  }
  std::map<std::string, int> index;
  for (const auto& p : points) index[p.id] = p.index;

  std::map<PointPair, DegreeMap> maps;
  for (const auto& [pair, value] : transports) {
    if (!index.contains(pair.first) || !index.contains(pair.second)) {
      throw MonodromyDatumError(pair.first, pair.second, "transport between unknown points");
    }
    if (index.at(pair.first) - index.at(pair.second) != 1) {
      throw MonodromyDatumError(pair.first, pair.second, "transport " + pair.first + " -> " + pair.second +
                                                             " must lower the index by exactly one");
    }
    maps.emplace(pair, s.expand(value));
  }

  for (const auto& x : points) {
    for (const auto& y : points) {
      if (x.index - y.index != 2) continue;
      DegreeMap through(0);
      for (const auto& z : points) {
        if (z.index != x.index - 1) continue;
        auto first = maps.find({x.id, z.id});
        auto second = maps.find({z.id, y.id});
        if (first != maps.end() && second != maps.end()) through += compose(second->second, first->second);
      }
      if (!through.is_zero()) {
        throw MonodromyDatumError(x.id, y.id, "transports through intermediate points do not cancel for " + x.id +
                                                  " -> " + y.id);
      }
    }
  }

  std::map<std::string, GradedComplex> fibers;
  for (const auto& p : points) fibers.emplace(p.id, s.fiber());
  EnrichedMorseDatum datum(points, std::move(fibers), std::move(maps));
  if (!check_structure_equation(datum).empty()) {
    throw std::logic_error("datum_from_monodromy: structure equation fails after degree-0 check");
  }
  return datum;
}

}  // namespace emorse
