#pragma once

// Seeded generators for property tests.
//
// random_filtered: a direct sum of singletons and intervals a -> b (levels
// p_a >= p_b) conjugated by a random filtered unitriangular automorphism.
// Its spectral sequence is known in closed form: an interval of gap
// g = p_a - p_b shows up on pages 1..g and then dies; singletons survive.
//
// random_datum: product data (base Morse complex x common fiber, transports
// n(x,y) * id between consecutive indices) conjugated by a random
// filtration-lowering automorphism id + H. The structure equation is
// inherited from the conjugated total differential, and homology is the
// Kunneth product of base and fiber homology.

#include <cstdio>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "emorse/enriched_morse.hpp"
#include "oracles.hpp"

namespace randomized {

using emorse::BitMatrix;
using emorse::BitVector;
using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline BitVector random_vector(Rng& rng, std::size_t n, double p = 0.5) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng, p)) s.push_back(i);
  }
  return BitVector(n, s);
}

inline BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double p = 0.5) {
  std::vector<BitVector> c;
  for (std::size_t j = 0; j < cols; ++j) c.push_back(random_vector(rng, rows, p));
  return BitMatrix::from_columns(rows, c);
}

inline BitMatrix identity(std::size_t n) { return BitMatrix::identity(n); }

/// (I + N)^-1 for nilpotent N.
inline BitMatrix unipotent_inverse(const BitMatrix& n) {
  BitMatrix inv = identity(n.rows());
  BitMatrix power = n;
  while (!power.is_zero()) {
    inv += power;
    power = power * n;
  }
  return inv;
}

inline std::string padded(const char* prefix, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, k);
  return buf;
}

/// Random complex with ranks in [0, max_rank] over degrees [lo, hi] and
/// boundary squaring to zero by construction. Names sort in creation order.
inline emorse::GradedComplex random_complex(Rng& rng, const std::string& prefix, int lo, int hi, int max_rank,
                                            double density = 0.5, int min_rank = 0) {
  std::map<int, std::vector<std::string>> gens;
  std::size_t k = 0;
  for (int d = lo; d <= hi; ++d) {
    const int n = uniform(rng, min_rank, max_rank);
    for (int i = 0; i < n; ++i) gens[d].push_back(padded(prefix.c_str(), k++));
  }
  if (gens.empty()) gens[lo].push_back(padded(prefix.c_str(), k++));
  std::map<int, BitMatrix> diff;
  for (const auto& [d, names] : gens) {
    if (!gens.contains(d - 1)) continue;
    const std::size_t rows = gens.at(d - 1).size();
    // Columns drawn from the cycles of degree d - 1.
    std::vector<BitVector> cycles;
    if (diff.contains(d - 1)) {
      cycles = emorse::gf2::kernel_basis(diff.at(d - 1));
    } else {
      for (std::size_t i = 0; i < rows; ++i) cycles.push_back(BitVector::unit(rows, i));
    }
    std::vector<BitVector> cols;
    for (std::size_t j = 0; j < names.size(); ++j) {
      BitVector v(rows);
      for (const auto& z : cycles) {
        if (coin(rng, density)) v += z;
      }
      cols.push_back(v);
    }
    diff.emplace(d, BitMatrix::from_columns(rows, cols));
  }
  return emorse::GradedComplex(gens, diff);
}

struct FilteredCase {
  emorse::FilteredComplex fc;
  std::vector<std::tuple<int, int>> singletons;         // (level, degree)
  std::vector<std::tuple<int, int, int>> intervals;     // (top level, bottom level, top degree)

  emorse::BidegreeDims expected_page(int r) const {
    emorse::BidegreeDims out;
    for (auto [p, n] : singletons) out[{p, n - p}] += 1;
    for (auto [pa, pb, n] : intervals) {
      if (pa - pb >= r) {
        out[{pa, n - pa}] += 1;
        out[{pb, n - 1 - pb}] += 1;
      }
    }
    return out;
  }
  emorse::BidegreeDims expected_infinity() const { return expected_page(1 << 20); }
  int expected_stabilization() const {
    int s = 1;
    for (auto [pa, pb, n] : intervals) {
      if (pa > pb) s = std::max(s, pa - pb + 1);
    }
    return s;
  }
  std::map<int, std::size_t> expected_homology() const {
    std::map<int, std::size_t> out;
    for (auto [p, n] : singletons) out[n] += 1;
    return out;
  }
};

inline FilteredCase random_filtered(Rng& rng, int max_pieces = 6, int max_level = 3, int max_degree = 3) {
  FilteredCase out;
  struct Gen {
    int degree;
    int level;
  };
  std::vector<Gen> gens;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (target, source)
  const int pieces = uniform(rng, 1, max_pieces);
  for (int k = 0; k < pieces; ++k) {
    if (coin(rng, 0.4)) {
      const int n = uniform(rng, 0, max_degree);
      const int p = uniform(rng, 0, max_level);
      out.singletons.push_back({p, n});
      gens.push_back({n, p});
    } else {
      const int n = uniform(rng, 1, max_degree);
      const int pa = uniform(rng, 0, max_level);
      const int pb = uniform(rng, 0, pa);
      out.intervals.push_back({pa, pb, n});
      gens.push_back({n - 1, pb});
      gens.push_back({n, pa});
      edges.push_back({gens.size() - 2, gens.size() - 1});
    }
  }
  const std::size_t total = gens.size();
  BitMatrix d(total, total);
  for (auto [t, s] : edges) d.flip(t, s);
  // Unitriangular in creation order, same degree, level non-increasing.
  BitMatrix n(total, total);
  for (std::size_t j = 0; j < total; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (gens[i].degree == gens[j].degree && gens[i].level <= gens[j].level && coin(rng, 0.4)) n.flip(i, j);
    }
  }
  BitMatrix phi = identity(total) + n;
  const BitMatrix conj = phi * d * unipotent_inverse(n);

  std::map<int, std::vector<std::string>> names;
  std::map<int, std::vector<std::size_t>> members;
  std::map<std::string, int> level;
  for (std::size_t g = 0; g < total; ++g) {
    const auto nm = padded("g", g);
    names[gens[g].degree].push_back(nm);
    members[gens[g].degree].push_back(g);
    level[nm] = gens[g].level;
  }
  std::map<int, BitMatrix> diff;
  for (const auto& [deg, cols] : members) {
    if (!members.contains(deg - 1)) continue;
    diff.emplace(deg, conj.submatrix(members.at(deg - 1), cols));
  }
  out.fc = emorse::FilteredComplex(emorse::GradedComplex(names, diff), level);
  return out;
}

struct DatumCase {
  emorse::EnrichedMorseDatum datum;
  emorse::GradedComplex base;  // point complex of the base, names = point ids
  emorse::GradedComplex fiber;
  /// The conjugated total differential on generators named "a|x".
  std::vector<std::string> slot_names;
  BitMatrix differential;

  std::map<int, std::size_t> expected_homology() const {
    return oracle::convolve(emorse::homology(base).dims, emorse::homology(fiber).dims);
  }
  /// E2 of a product: H_p(B) (x) H_q(F).
  emorse::BidegreeDims expected_e2() const {
    emorse::BidegreeDims out;
    for (const auto& [p, a] : emorse::homology(base).dims) {
      for (const auto& [q, b] : emorse::homology(fiber).dims) out[{p, q}] = a * b;
    }
    return out;
  }
};

inline DatumCase random_datum(Rng& rng, double homotopy_density = 0.4) {
  DatumCase out;
  const int top = uniform(rng, 1, 3);
  out.base = random_complex(rng, "x", 0, top, 2, 0.7, 1);
  out.fiber = random_complex(rng, "a", 0, uniform(rng, 1, 3), 2, 0.5, 1);

  std::vector<emorse::CriticalPoint> points;
  for (const auto& [d, ids] : out.base.generators()) {
    for (const auto& id : ids) points.push_back({id, d});
  }

  // Slots of the total space: (point, fiber degree, fiber index).
  struct Slot {
    std::string point;
    int index;
    int degree;
    std::size_t k;
  };
  std::vector<Slot> slots;
  std::map<std::tuple<std::string, int, std::size_t>, std::size_t> where;
  for (const auto& x : points) {
    for (const auto& [q, gens] : out.fiber.generators()) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        where[{x.id, q, k}] = slots.size();
        slots.push_back({x.id, x.index, q, k});
      }
    }
  }
  const std::size_t total = slots.size();

  BitMatrix d(total, total);
  for (std::size_t s = 0; s < total; ++s) {
    const auto& a = slots[s];
    const auto fiber_col = out.fiber.boundary(a.degree).column(a.k);
    for (auto r : fiber_col.support()) d.flip(where.at({a.point, a.degree - 1, r}), s);
    const auto base_col = out.base.boundary(a.index).column(out.base.find(a.point)->index);
    for (auto r : base_col.support()) d.flip(where.at({out.base.name(a.index - 1, r), a.degree, a.k}), s);
  }

  // Filtration-lowering, total-degree-preserving perturbation.
  BitMatrix h(total, total);
  for (std::size_t s = 0; s < total; ++s) {
    for (std::size_t t = 0; t < total; ++t) {
      const auto& a = slots[s];
      const auto& b = slots[t];
      if (b.index < a.index && b.degree == a.degree + a.index - b.index && coin(rng, homotopy_density)) h.flip(t, s);
    }
  }
  const BitMatrix conj = (identity(total) + h) * d * unipotent_inverse(h);
  for (const auto& s : slots) out.slot_names.push_back(out.fiber.name(s.degree, s.k) + "|" + s.point);
  out.differential = conj;

  std::map<emorse::PointPair, emorse::DegreeMap> transports;
  for (const auto& x : points) {
    for (const auto& y : points) {
      if (y.index >= x.index) continue;
      const int shift = x.index - y.index - 1;
      std::map<int, BitMatrix> comps;
      for (const auto& [q, gens] : out.fiber.generators()) {
        const std::size_t rows = out.fiber.rank(q + shift);
        if (rows == 0) continue;
        std::vector<std::size_t> row_idx, col_idx;
        for (std::size_t k = 0; k < rows; ++k) row_idx.push_back(where.at({y.id, q + shift, k}));
        for (std::size_t k = 0; k < gens.size(); ++k) col_idx.push_back(where.at({x.id, q, k}));
        comps.emplace(q, conj.submatrix(row_idx, col_idx));
      }
      transports.emplace(emorse::PointPair{x.id, y.id}, emorse::DegreeMap(shift, comps));
    }
  }
  std::map<std::string, emorse::GradedComplex> fibers;
  for (const auto& x : points) fibers.emplace(x.id, out.fiber);
  out.datum = emorse::EnrichedMorseDatum(points, fibers, transports);
  return out;
}

}  // namespace randomized
