#include "emorse/spectral.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace emorse {

FilteredComplex::FilteredComplex(GradedComplex complex, std::map<std::string, int> level)
    : complex_(std::move(complex)), level_(std::move(level)) {
  bool first = true;
  for (const auto& [degree, names] : complex_.generators()) {
    auto& row = levels_by_degree_[degree];
    for (const auto& name : names) {
      auto it = level_.find(name);
      if (it == level_.end()) {
        throw std::invalid_argument("FilteredComplex: no filtration level for generator '" + name + "'");
      }
      row.push_back(it->second);
      min_level_ = first ? it->second : std::min(min_level_, it->second);
      max_level_ = first ? it->second : std::max(max_level_, it->second);
      first = false;
    }
  }
  if (level_.size() != complex_.total_rank()) {
    throw std::invalid_argument("FilteredComplex: levels given for unknown generators");
  }
}

std::optional<FiltrationWitness> validate_filtration(const FilteredComplex& fc) {
  const auto& c = fc.complex();
  for (const auto& [degree, names] : c.generators()) {
    const BitMatrix d = c.boundary(degree);
    for (std::size_t j = 0; j < names.size(); ++j) {
      for (auto i : d.column(j).support()) {
        if (fc.level(degree - 1, i) > fc.level(degree, j)) {
          return FiltrationWitness{names[j], c.name(degree - 1, i)};
        }
      }
    }
  }
  return std::nullopt;
}

std::size_t SpectralPage::dim(int p, int q) const {
  auto it = dims.find({p, q});
  return it == dims.end() ? 0 : it->second;
}

std::size_t SpectralPage::differential_rank(int p, int q) const {
  auto it = differentials.find({p, q});
  return it == differentials.end() ? 0 : gf2::rank(it->second);
}

namespace {

void require_valid(const FilteredComplex& fc) {
  if (auto w = validate_complex(fc.complex())) {
    throw std::invalid_argument("filtered complex: boundary does not square to zero at '" + w->generator + "'");
  }
  if (auto w = validate_filtration(fc)) {
    throw std::invalid_argument("filtered complex: boundary of '" + w->generator + "' hits '" + w->target +
                                "' at a higher filtration level");
  }
}

// Memoised Z^r_p subspaces and the page quotients built from them.
class PageBuilder {
 public:
  explicit PageBuilder(const FilteredComplex& fc) : fc_(fc) {
    for (const auto& [degree, names] : fc.complex().generators()) boundary_.emplace(degree, fc.complex().boundary(degree));
  }

  // Basis of {x in F_p C_n : dx in F_{p-r} C_{n-1}}.
  const std::vector<BitVector>& cycles(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    if (auto it = cycles_.find(key); it != cycles_.end()) return it->second;
    std::vector<BitVector> basis;
    const std::size_t size = rank(n);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < size; ++j) {
      if (fc_.level(n, j) <= p) cols.push_back(j);
    }
    if (!cols.empty()) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < rank(n - 1); ++i) {
        if (fc_.level(n - 1, i) > p - r) rows.push_back(i);
      }
      const BitMatrix restricted = boundary(n).submatrix(rows, cols);
      for (const auto& k : gf2::kernel_basis(restricted)) basis.push_back(k.remapped(size, cols));
    }
    return cycles_.emplace(key, std::move(basis)).first->second;
  }

  struct Quotient {
    std::vector<BitVector> representatives;
    std::vector<BitVector> denominator;  // independent
  };

  // E^r_{p, n-p} together with a basis of the subspace it is taken modulo.
  const Quotient& quotient(int r, int p, int n) {
    auto key = std::make_tuple(r, p, n);
    if (auto it = quotients_.find(key); it != quotients_.end()) return it->second;
    const std::size_t size = rank(n);
    std::vector<BitVector> spanning = cycles(r - 1, p - 1, n);
    if (rank(n + 1) > 0) {
      for (const auto& x : cycles(r - 1, p + r - 1, n + 1)) spanning.push_back(boundary(n + 1).apply(x));
    }
    Quotient q;
    gf2::EchelonBasis basis(size);
    for (const auto& v : spanning) {
      if (basis.insert(v)) q.denominator.push_back(v);
    }
    for (const auto& z : cycles(r, p, n)) {
      if (basis.insert(z)) q.representatives.push_back(z);
    }
    return quotients_.emplace(key, std::move(q)).first->second;
  }

  // Coordinates of `target_vector` in the representative basis of E^r_{p,n}.
  BitVector coordinates(int r, int p, int n, const BitVector& target_vector) {
    const auto& q = quotient(r, p, n);
    std::vector<BitVector> cols = q.representatives;
    cols.insert(cols.end(), q.denominator.begin(), q.denominator.end());
    const auto m = BitMatrix::from_columns(rank(n), std::move(cols));
    auto x = gf2::solve(m, target_vector);
    if (!x) throw std::logic_error("spectral page: boundary of a representative left the target cycles");
    std::vector<std::size_t> keep(q.representatives.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    return x->restricted(keep);
  }

  std::size_t rank(int n) const { return fc_.complex().rank(n); }
  const BitMatrix& boundary(int n) const { return boundary_.at(n); }

 private:
  const FilteredComplex& fc_;
  std::map<int, BitMatrix> boundary_;
  std::map<std::tuple<int, int, int>, std::vector<BitVector>> cycles_;
  std::map<std::tuple<int, int, int>, Quotient> quotients_;
};

}  // namespace

SpectralPage page(const FilteredComplex& fc, int r) {
  if (r < 0) throw std::invalid_argument("page: r must be nonnegative");
  require_valid(fc);
  SpectralPage out;
  out.r = r;
  const auto& c = fc.complex();
  if (c.empty()) return out;

  PageBuilder builder(fc);
  for (const auto& [n, names] : c.generators()) {
    for (int p = fc.min_level(); p <= fc.max_level(); ++p) {
      const auto& q = builder.quotient(r, p, n);
      if (q.representatives.empty()) continue;
      out.dims[{p, n - p}] = q.representatives.size();
      out.representatives[{p, n - p}] = q.representatives;
    }
  }

  for (const auto& [bideg, reps] : out.representatives) {
    const auto [p, q] = bideg;
    const int n = p + q;
    const Bidegree target{p - r, q + r - 1};
    if (!out.dims.contains(target)) continue;
    std::vector<BitVector> cols;
    for (const auto& x : reps) cols.push_back(builder.coordinates(r, p - r, n - 1, builder.boundary(n).apply(x)));
    out.differentials.emplace(bideg, BitMatrix::from_columns(out.dims.at(target), std::move(cols)));
  }
  return out;
}

std::map<Bidegree, BitMatrix> page_differential(const FilteredComplex& fc, int r) {
  return page(fc, r).differentials;
}

InfinityPage infinity_page(const FilteredComplex& fc) {
  require_valid(fc);
  const int last = fc.width() + 1;
  std::vector<SpectralPage> pages;
  for (int r = 1; r <= last; ++r) pages.push_back(page(fc, r));
  int stable = last;
  while (stable > 1 && pages[stable - 2].dims == pages.back().dims) --stable;
  return InfinityPage{std::move(pages.back()), stable};
}

BidegreeDims associated_graded_of_homology(const FilteredComplex& fc) {
  require_valid(fc);
  BidegreeDims out;
  const auto& c = fc.complex();
  for (const auto& [n, names] : c.generators()) {
    const BitMatrix d = c.boundary(n);
    const BitMatrix incoming = c.boundary(n + 1);
    // Cycles of F_p C_n, as p increases, each added modulo boundaries and
    // everything at lower levels.
    gf2::EchelonBasis seen(names.size());
    for (const auto& b : incoming.columns()) seen.insert(b);
    for (int p = fc.min_level(); p <= fc.max_level(); ++p) {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (fc.level(n, j) <= p) cols.push_back(j);
      }
      std::vector<std::size_t> all_rows(c.rank(n - 1));
      for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
      std::size_t added = 0;
      for (const auto& k : gf2::kernel_basis(d.submatrix(all_rows, cols))) {
        if (seen.insert(k.remapped(names.size(), cols))) ++added;
      }
      if (added > 0) out[{p, n - p}] = added;
    }
  }
  return out;
}

std::map<int, std::size_t> total_degree_sums(const BidegreeDims& dims) {
  std::map<int, std::size_t> out;
  for (const auto& [bideg, dim] : dims) {
    if (dim > 0) out[bideg.first + bideg.second] += dim;
  }
  return out;
}

}  // namespace emorse
