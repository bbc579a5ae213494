#include "emorse/chain_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace emorse {

namespace {

std::string shape_text(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

GradedComplex::GradedComplex(std::map<int, std::vector<std::string>> generators,
                             std::map<int, BitMatrix> differential) {
  // Sort each degree, remembering where every original position went.
  std::map<int, std::vector<std::size_t>> moved_to;
  for (auto& [degree, names] : generators) {
    if (names.empty()) continue;
    std::vector<std::size_t> order(names.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    std::vector<std::size_t> where(names.size());
    std::vector<std::string> sorted;
    sorted.reserve(names.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      where[order[k]] = k;
      sorted.push_back(names[order[k]]);
    }
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (!index_.emplace(sorted[k], Location{degree, k}).second) {
        throw std::invalid_argument("GradedComplex: duplicate generator name '" + sorted[k] + "'");
      }
    }
    moved_to[degree] = std::move(where);
    generators_[degree] = std::move(sorted);
  }

  for (auto& [degree, m] : differential) {
    const std::size_t rows = rank(degree - 1);
    const std::size_t cols = rank(degree);
    if (m.rows() != rows || m.cols() != cols) {
      throw std::invalid_argument("GradedComplex: boundary in degree " + std::to_string(degree) + " is " +
                                  shape_text(m.rows(), m.cols()) + ", expected " + shape_text(rows, cols));
    }
    if (m.is_zero()) continue;
    differential_[degree] = m.permuted(moved_to.at(degree - 1), moved_to.at(degree));
  }
}

GradedComplex GradedComplex::point(std::string name) { return GradedComplex({{0, {std::move(name)}}}); }

std::span<const std::string> GradedComplex::generators(int degree) const {
  auto it = generators_.find(degree);
  if (it == generators_.end()) return {};
  return it->second;
}

std::size_t GradedComplex::rank(int degree) const { return generators(degree).size(); }

std::size_t GradedComplex::total_rank() const { return index_.size(); }

std::optional<int> GradedComplex::min_degree() const {
  if (generators_.empty()) return std::nullopt;
  return generators_.begin()->first;
}

std::optional<int> GradedComplex::max_degree() const {
  if (generators_.empty()) return std::nullopt;
  return generators_.rbegin()->first;
}

BitMatrix GradedComplex::boundary(int degree) const {
  auto it = differential_.find(degree);
  if (it != differential_.end()) return it->second;
  return BitMatrix(rank(degree - 1), rank(degree));
}

std::optional<GradedComplex::Location> GradedComplex::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<BoundaryWitness> validate_complex(const GradedComplex& c) {
  for (const auto& [degree, names] : c.generators()) {
    if (c.rank(degree - 2) == 0) continue;
    const BitMatrix square = c.boundary(degree - 1) * c.boundary(degree);
    for (std::size_t j = 0; j < square.cols(); ++j) {
      if (!square.column(j).is_zero()) return BoundaryWitness{degree, names[j]};
    }
  }
  return std::nullopt;
}

Homology homology(const GradedComplex& c) {
  if (auto w = validate_complex(c)) {
    throw std::invalid_argument("homology: boundary does not square to zero at generator '" + w->generator +
                                "' in degree " + std::to_string(w->degree));
  }
  Homology h;
  for (const auto& [degree, names] : c.generators()) {
    const BitMatrix incoming = c.boundary(degree + 1);
    gf2::EchelonBasis image(names.size());
    for (const auto& col : incoming.columns()) image.insert(col);
    gf2::EchelonBasis quotient = image;
    std::vector<BitVector> reps;
    for (auto& z : gf2::kernel_basis(c.boundary(degree))) {
      if (quotient.insert(z)) reps.push_back(image.reduce(std::move(z)));
    }
    if (!reps.empty()) {
      h.dims[degree] = reps.size();
      h.representatives[degree] = std::move(reps);
    }
  }
  return h;
}

DegreeMap::DegreeMap(int shift, std::map<int, BitMatrix> components) : shift_(shift) {
  for (auto& [degree, m] : components) {
    if (!m.is_zero()) components_.emplace(degree, std::move(m));
  }
}

DegreeMap DegreeMap::identity(const GradedComplex& c) {
  std::map<int, BitMatrix> comps;
  for (const auto& [degree, names] : c.generators()) comps.emplace(degree, BitMatrix::identity(names.size()));
  return DegreeMap(0, std::move(comps));
}

const BitMatrix* DegreeMap::component(int degree) const {
  auto it = components_.find(degree);
  return it == components_.end() ? nullptr : &it->second;
}

BitMatrix DegreeMap::component_or_zero(int degree, const GradedComplex& source, const GradedComplex& target) const {
  if (const auto* m = component(degree)) return *m;
  return BitMatrix(target.rank(degree + shift_), source.rank(degree));
}

BitVector DegreeMap::apply(int degree, const BitVector& x, const GradedComplex& target) const {
  if (const auto* m = component(degree)) return m->apply(x);
  return BitVector(target.rank(degree + shift_));
}

DegreeMap& DegreeMap::operator+=(const DegreeMap& other) {
  if (other.shift_ != shift_) throw std::invalid_argument("DegreeMap: cannot add maps of different shift");
  for (const auto& [degree, m] : other.components_) {
    auto it = components_.find(degree);
    if (it == components_.end()) {
      components_.emplace(degree, m);
      continue;
    }
    it->second += m;
    if (it->second.is_zero()) components_.erase(it);
  }
  return *this;
}

DegreeMap compose(const DegreeMap& second, const DegreeMap& first) {
  std::map<int, BitMatrix> comps;
  for (const auto& [degree, f] : first.components()) {
    if (const auto* g = second.component(degree + first.shift())) comps.emplace(degree, *g * f);
  }
  return DegreeMap(first.shift() + second.shift(), std::move(comps));
}

void check_shapes(const DegreeMap& f, const GradedComplex& source, const GradedComplex& target) {
  for (const auto& [degree, m] : f.components()) {
    const std::size_t rows = target.rank(degree + f.shift());
    const std::size_t cols = source.rank(degree);
    if (m.rows() != rows || m.cols() != cols) {
      throw std::invalid_argument("map component in degree " + std::to_string(degree) + " is " +
                                  shape_text(m.rows(), m.cols()) + ", expected " + shape_text(rows, cols));
    }
  }
}

std::optional<ChainMapWitness> validate_chain_map(const DegreeMap& f, const GradedComplex& source,
                                                  const GradedComplex& target) {
  check_shapes(f, source, target);
  const int k = f.shift();
  for (const auto& [degree, names] : source.generators()) {
    if (target.rank(degree + k - 1) == 0) continue;
    BitMatrix defect = target.boundary(degree + k) * f.component_or_zero(degree, source, target);
    defect += f.component_or_zero(degree - 1, source, target) * source.boundary(degree);
    for (std::size_t j = 0; j < defect.cols(); ++j) {
      if (!defect.column(j).is_zero()) return ChainMapWitness{degree, names[j]};
    }
  }
  return std::nullopt;
}

GradedComplex tensor_product(const GradedComplex& c, const GradedComplex& d) {
  using Key = std::tuple<int, std::size_t, int, std::size_t>;
  std::map<int, std::vector<Key>> keys;
  std::map<Key, std::size_t> position;
  std::map<int, std::vector<std::string>> names;
  for (const auto& [a, left] : c.generators()) {
    for (const auto& [b, right] : d.generators()) {
      for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
          Key key{a, i, b, j};
          position[key] = keys[a + b].size();
          keys[a + b].push_back(key);
          names[a + b].push_back(left[i] + "*" + right[j]);
        }
      }
    }
  }

  std::map<int, BitMatrix> differential;
  for (const auto& [n, list] : keys) {
    const std::size_t rows = keys.contains(n - 1) ? keys.at(n - 1).size() : 0;
    std::vector<BitVector> cols;
    for (const auto& [a, i, b, j] : list) {
      std::vector<std::size_t> hits;
      const auto da = c.boundary(a).column(i);
      const auto db = d.boundary(b).column(j);
      for (auto r : da.support()) hits.push_back(position.at(Key{a - 1, r, b, j}));
      for (auto s : db.support()) hits.push_back(position.at(Key{a, i, b - 1, s}));
      cols.push_back(BitVector::sum_of(rows, std::move(hits)));
    }
    differential.emplace(n, BitMatrix::from_columns(rows, std::move(cols)));
  }
  return GradedComplex(std::move(names), std::move(differential));
}

GradedComplex direct_sum_with_shifts(const std::vector<std::pair<GradedComplex, int>>& parts) {
  std::map<int, std::vector<std::string>> names;
  // offset[i][n] = first slot of part i inside total degree n
  std::vector<std::map<int, std::size_t>> offset(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [complex, shift] = parts[i];
    for (const auto& [degree, gens] : complex.generators()) {
      auto& slot = names[degree + shift];
      offset[i][degree + shift] = slot.size();
      for (const auto& g : gens) slot.push_back(std::to_string(i) + ":" + g);
    }
  }

  std::map<int, BitMatrix> differential;
  for (const auto& [n, gens] : names) {
    const std::size_t rows = names.contains(n - 1) ? names.at(n - 1).size() : 0;
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& [complex, shift] = parts[i];
      const int degree = n - shift;
      if (complex.rank(degree) == 0 || complex.rank(degree - 1) == 0) continue;
      const std::size_t col0 = offset[i].at(n);
      const std::size_t row0 = offset[i].at(n - 1);
      for (auto [r, c] : complex.boundary(degree).entries()) entries.emplace_back(row0 + r, col0 + c);
    }
    differential.emplace(n, BitMatrix::from_entries(rows, gens.size(), entries));
  }
  return GradedComplex(std::move(names), std::move(differential));
}

}  // namespace emorse
