#include "emorse/enriched_morse.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace emorse {

EnrichedMorseDatum::EnrichedMorseDatum(std::vector<CriticalPoint> points, std::map<std::string, GradedComplex> fibers,
                                       std::map<PointPair, DegreeMap> transports)
    : points_(std::move(points)), fibers_(std::move(fibers)) {
  std::sort(points_.begin(), points_.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return std::tie(a.index, a.id) < std::tie(b.index, b.id);
  });
  for (const auto& pt : points_) {
    if (pt.index < 0) throw std::invalid_argument("critical point '" + pt.id + "' has negative index");
    if (!index_.emplace(pt.id, pt.index).second) {
      throw std::invalid_argument("duplicate critical point id '" + pt.id + "'");
    }
    auto fib = fibers_.find(pt.id);
    if (fib == fibers_.end()) throw std::invalid_argument("no fiber for critical point '" + pt.id + "'");
    if (auto w = validate_complex(fib->second)) {
      throw std::invalid_argument("fiber of '" + pt.id + "' is not a complex: boundary squares to nonzero at '" +
                                  w->generator + "'");
    }
  }
  for (const auto& [id, fib] : fibers_) {
    if (!index_.contains(id)) throw std::invalid_argument("fiber given for unknown point '" + id + "'");
  }

  for (auto& [pair, map] : transports) {
    const auto& [from, to] = pair;
    const std::string label = "transport " + from + " -> " + to;
    if (!index_.contains(from) || !index_.contains(to)) {
      throw std::invalid_argument(label + ": unknown critical point");
    }
    const int drop = index_.at(from) - index_.at(to);
    if (drop <= 0) throw std::invalid_argument(label + ": index must strictly decrease");
    if (map.shift() != drop - 1) {
      throw std::invalid_argument(label + ": shift " + std::to_string(map.shift()) + " but indices require " +
                                  std::to_string(drop - 1));
    }
    try {
      check_shapes(map, fibers_.at(from), fibers_.at(to));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(label + ": " + e.what());
    }
    if (!map.is_zero()) transports_.emplace(pair, std::move(map));
  }
}

int EnrichedMorseDatum::max_index() const { return points_.empty() ? 0 : points_.back().index; }

const DegreeMap* EnrichedMorseDatum::transport(const std::string& from, const std::string& to) const {
  auto it = transports_.find({from, to});
  return it == transports_.end() ? nullptr : &it->second;
}

std::vector<StructureWitness> check_structure_equation(const EnrichedMorseDatum& d) {
  std::vector<StructureWitness> witnesses;
  for (const auto& x : d.points()) {
    for (const auto& y : d.points()) {
      if (x.index <= y.index) continue;
      const int shift = x.index - y.index - 1;
      const GradedComplex& fx = d.fiber(x.id);
      const GradedComplex& fy = d.fiber(y.id);
      const DegreeMap zero(shift);
      const DegreeMap* t = d.transport(x.id, y.id);
      if (!t) t = &zero;

      DegreeMap paths(shift - 1);
      for (const auto& z : d.points()) {
        if (z.index >= x.index || z.index <= y.index) continue;
        const DegreeMap* first = d.transport(x.id, z.id);
        const DegreeMap* second = d.transport(z.id, y.id);
        if (first && second) paths += compose(*second, *first);
      }

      for (const auto& [degree, names] : fx.generators()) {
        if (fy.rank(degree + shift - 1) == 0) continue;
        BitMatrix defect = fy.boundary(degree + shift) * t->component_or_zero(degree, fx, fy);
        defect += t->component_or_zero(degree - 1, fx, fy) * fx.boundary(degree);
        defect += paths.component_or_zero(degree, fx, fy);
        for (std::size_t j = 0; j < defect.cols(); ++j) {
          if (!defect.column(j).is_zero()) {
            witnesses.push_back({x.id, y.id, degree, names[j]});
            break;
          }
        }
      }
    }
  }
  return witnesses;
}

namespace {

std::string describe(const std::vector<StructureWitness>& ws) {
  std::string msg = "structure equation fails";
  for (const auto& w : ws) {
    msg += "; (" + w.from + " -> " + w.to + ", degree " + std::to_string(w.degree) + ", '" + w.generator + "')";
  }
  return msg;
}

void require_structure(const EnrichedMorseDatum& d) {
  if (auto ws = check_structure_equation(d); !ws.empty()) throw StructureEquationError(std::move(ws));
}

}  // namespace

StructureEquationError::StructureEquationError(std::vector<StructureWitness> witnesses)
    : std::runtime_error(describe(witnesses)), witnesses_(std::move(witnesses)) {}

std::string total_generator(const std::string& fiber_generator, const std::string& point) {
  return fiber_generator + "|" + point;
}

FilteredComplex build_total_complex(const EnrichedMorseDatum& d) {
  require_structure(d);

  using Slot = std::tuple<std::string, int, std::size_t>;  // point, fiber degree, index
  std::map<int, std::vector<Slot>> slots;
  std::map<Slot, std::size_t> position;
  std::map<int, std::vector<std::string>> names;
  std::map<std::string, int> level;
  for (const auto& x : d.points()) {
    for (const auto& [degree, gens] : d.fiber(x.id).generators()) {
      const int n = degree + x.index;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Slot s{x.id, degree, i};
        position[s] = slots[n].size();
        slots[n].push_back(s);
        const auto name = total_generator(gens[i], x.id);
        names[n].push_back(name);
        level[name] = x.index;
      }
    }
  }

  std::map<int, BitMatrix> differential;
  for (const auto& [n, list] : slots) {
    const std::size_t rows = slots.contains(n - 1) ? slots.at(n - 1).size() : 0;
    std::vector<BitVector> cols;
    for (const auto& [x, degree, i] : list) {
      std::vector<std::size_t> hits;
      const auto internal = d.fiber(x).boundary(degree).column(i);
      for (auto r : internal.support()) hits.push_back(position.at(Slot{x, degree - 1, r}));
      for (const auto& y : d.points()) {
        const DegreeMap* t = d.transport(x, y.id);
        if (!t) continue;
        const BitMatrix* block = t->component(degree);
        if (!block) continue;
        for (auto r : block->column(i).support()) hits.push_back(position.at(Slot{y.id, degree + t->shift(), r}));
      }
      cols.push_back(BitVector::sum_of(rows, std::move(hits)));
    }
    differential.emplace(n, BitMatrix::from_columns(rows, std::move(cols)));
  }

  FilteredComplex fc(GradedComplex(std::move(names), std::move(differential)), std::move(level));
  if (auto w = validate_complex(fc.complex())) {
    throw std::logic_error("total complex: d^2 != 0 at '" + w->generator + "' despite the structure equation");
  }
  if (auto w = validate_filtration(fc)) {
    throw std::logic_error("total complex: filtration raised by '" + w->generator + "'");
  }
  return fc;
}

std::size_t E1Page::d1_rank(int p, int q) const {
  auto it = d1.find({p, q});
  return it == d1.end() ? 0 : gf2::rank(it->second);
}

namespace {

// Coordinates of the cycle `z` in the homology basis of `h`, for degree q of `c`.
BitVector homology_coordinates(const GradedComplex& c, const Homology& h, int q, const BitVector& z) {
  const auto& reps = h.representatives.at(q);
  std::vector<BitVector> cols = reps;
  for (const auto& b : gf2::independent_subset(c.boundary(q + 1).columns(), c.rank(q))) cols.push_back(b);
  auto x = gf2::solve(BitMatrix::from_columns(c.rank(q), std::move(cols)), z);
  if (!x) throw std::logic_error("E1: transported class is not a cycle");
  std::vector<std::size_t> keep(reps.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return x->restricted(keep);
}

std::string class_name(std::size_t k, const std::string& point) { return "h" + std::to_string(k) + "|" + point; }

}  // namespace

E1Page e1_complex(const EnrichedMorseDatum& d) {
  require_structure(d);

  std::map<std::string, Homology> fiber_homology;
  for (const auto& x : d.points()) fiber_homology.emplace(x.id, homology(d.fiber(x.id)));

  E1Page e1;
  std::map<int, std::vector<std::string>> names;
  for (const auto& x : d.points()) {
    std::size_t k = 0;
    for (const auto& [q, dim] : fiber_homology.at(x.id).dims) {
      for (std::size_t i = 0; i < dim; ++i) {
        const auto name = class_name(k++, x.id);
        names[x.index + q].push_back(name);
        e1.labels[name] = {x.index, q};
      }
      e1.dims[{x.index, q}] += dim;
    }
  }

  // Differential columns keyed by generator name, assembled against the
  // insertion order above before the complex sorts its generators.
  std::map<int, BitMatrix> differential;
  for (const auto& [n, gens] : names) {
    differential.emplace(n, BitMatrix(names.contains(n - 1) ? names.at(n - 1).size() : 0, gens.size()));
  }
  auto slot = [&](int n, const std::string& name) {
    const auto& v = names.at(n);
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), name) - v.begin());
  };
  for (const auto& x : d.points()) {
    const auto& hx = fiber_homology.at(x.id);
    for (const auto& y : d.points()) {
      if (y.index != x.index - 1) continue;
      const DegreeMap* t = d.transport(x.id, y.id);
      if (!t) continue;
      const auto& hy = fiber_homology.at(y.id);
      // Offsets of each q-block in the "h<k>" numbering of x and y.
      std::size_t x_offset = 0;
      for (const auto& [q, dim] : hx.dims) {
        std::size_t y_offset = 0;
        for (const auto& [qy, dimy] : hy.dims) {
          if (qy >= q) break;
          y_offset += dimy;
        }
        if (hy.dim(q) > 0) {
          const int n = x.index + q;
          for (std::size_t i = 0; i < dim; ++i) {
            const BitVector image = t->apply(q, hx.representatives.at(q)[i], d.fiber(y.id));
            const BitVector coords = homology_coordinates(d.fiber(y.id), hy, q, image);
            const std::size_t col = slot(n, class_name(x_offset + i, x.id));
            for (auto j : coords.support()) differential.at(n).flip(slot(n - 1, class_name(y_offset + j, y.id)), col);
          }
        }
        x_offset += dim;
      }
    }
  }
  e1.complex = GradedComplex(std::move(names), std::move(differential));

  for (const auto& [source, dim] : e1.dims) {
    const Bidegree target{source.first - 1, source.second};
    if (!e1.dims.contains(target)) continue;
    const int n = source.first + source.second;
    std::vector<std::size_t> rows, cols;
    const auto gens = e1.complex.generators(n);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (e1.labels.at(gens[j]) == source) cols.push_back(j);
    }
    const auto lower = e1.complex.generators(n - 1);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (e1.labels.at(lower[i]) == target) rows.push_back(i);
    }
    e1.d1.emplace(source, e1.complex.boundary(n).submatrix(rows, cols));
  }
  return e1;
}

BidegreeDims e2_dims(const E1Page& e1) {
  BidegreeDims out;
  for (const auto& [bideg, dim] : e1.dims) {
    const auto [p, q] = bideg;
    const std::size_t kept = dim - e1.d1_rank(p, q) - e1.d1_rank(p + 1, q);
    if (kept > 0) out[bideg] = kept;
  }
  return out;
}

BidegreeDims e2_dims(const EnrichedMorseDatum& d) { return e2_dims(e1_complex(d)); }

}  // namespace emorse
