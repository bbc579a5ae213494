#include <doctest.h>

#include "emorse/catalog.hpp"
#include "emorse/spectral.hpp"
#include "oracles.hpp"
#include "random_data.hpp"

using namespace emorse;

namespace {

FilteredComplex total(const std::string& name) { return build_total_complex(to_datum(catalog(name))); }

BidegreeDims ones(std::initializer_list<Bidegree> cells) {
  BidegreeDims out;
  for (auto b : cells) out[b] = 1;
  return out;
}

// Homology of (E^r, d_r) from page r's own matrices.
BidegreeDims next_page_dims(const SpectralPage& p) {
  BidegreeDims out;
  for (const auto& [b, dim] : p.dims) {
    const Bidegree into{b.first + p.r, b.second - p.r + 1};
    std::size_t incoming = 0;
    if (auto it = p.differentials.find(into); it != p.differentials.end()) incoming = gf2::rank(it->second);
    const auto kept = dim - p.differential_rank(b.first, b.second) - incoming;
    if (kept > 0) out[b] = kept;
  }
  return out;
}

}  // namespace

TEST_CASE("validate_filtration") {
  CHECK_FALSE(validate_filtration(total("hopf")));
  GradedComplex flat({{0, {"v"}}, {1, {"e"}}}, {{1, BitMatrix::from_entries(1, 1, {{0, 0}})}});
  CHECK_FALSE(validate_filtration(FilteredComplex(flat, {{"v", 3}, {"e", 3}})));
  auto w = validate_filtration(FilteredComplex(flat, {{"v", 1}, {"e", 0}}));
  REQUIRE(w);
  CHECK(w->generator == "e");
  CHECK(w->target == "v");
  CHECK_THROWS_AS(page(FilteredComplex(flat, {{"v", 1}, {"e", 0}}), 1), std::invalid_argument);
  CHECK_THROWS_AS(FilteredComplex(flat, {{"v", 1}}), std::invalid_argument);
}

TEST_CASE("pages of the Hopf fixture") {
  const auto fc = total("hopf");
  const auto e2 = page(fc, 2);
  CHECK(e2.dims == ones({{0, 0}, {0, 1}, {2, 0}, {2, 1}}));
  CHECK(e2.dims == oracle::page(fc, 2));
  CHECK(e2.differential_rank(2, 0) == 1);
  for (const auto& [b, m] : e2.differentials) {
    if (b != Bidegree{2, 0}) CHECK(gf2::rank(m) == 0);
  }
  const auto inf = infinity_page(fc);
  CHECK(inf.stabilization == 3);
  CHECK(inf.page.dims == ones({{0, 0}, {2, 1}}));
  CHECK(page(fc, 3).dims == oracle::page(fc, 3));
  CHECK(associated_graded_of_homology(fc) == ones({{0, 0}, {2, 1}}));
}

TEST_CASE("pages of the torus product") {
  const auto fc = total("torus-product");
  const auto all = ones({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(page(fc, 2).dims == all);
  CHECK(page_differential(fc, 2).empty());
  const auto inf = infinity_page(fc);
  CHECK(inf.page.dims == all);
  // d_1 already vanishes, so the sequence is constant from E1 on.
  CHECK(inf.stabilization == 1);
  CHECK(associated_graded_of_homology(fc) == all);
}

TEST_CASE("single-level filtrations") {
  GradedComplex c({{0, {"a", "b"}}, {1, {"e", "f"}}}, {{1, BitMatrix::from_entries(2, 2, {{0, 0}, {1, 0}})}});
  std::map<std::string, int> level{{"a", 4}, {"b", 4}, {"e", 4}, {"f", 4}};
  FilteredComplex fc(c, level);
  BidegreeDims column;
  for (const auto& [d, k] : homology(c).dims) column[{4, d - 4}] = k;
  CHECK(page(fc, 1).dims == column);
  CHECK(associated_graded_of_homology(fc) == column);
  CHECK(infinity_page(fc).stabilization == 1);
}

TEST_CASE("pages past the filtration width carry no differential") {
  const auto fc = total("hopf");
  for (int r = fc.width() + 1; r < fc.width() + 4; ++r) {
    for (const auto& [b, m] : page_differential(fc, r)) CHECK(m.is_zero());
  }
}

TEST_CASE("representatives lie in Z^r") {
  const auto fc = total("hopf-4crit");
  for (int r = 1; r <= 4; ++r) {
    const auto p = page(fc, r);
    for (const auto& [b, reps] : p.representatives) {
      const int n = b.first + b.second;
      CHECK(reps.size() == p.dim(b.first, b.second));
      for (const auto& x : reps) {
        for (auto i : x.support()) CHECK(fc.level(n, i) <= b.first);
        const auto dx = fc.complex().boundary(n).apply(x);
        for (auto i : dx.support()) CHECK(fc.level(n - 1, i) <= b.first - r);
      }
    }
  }
}

TEST_CASE("property: random filtered complexes") {
  randomized::Rng rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const auto c = randomized::random_filtered(rng);
    CAPTURE(trial);
    REQUIRE_FALSE(validate_complex(c.fc.complex()));
    REQUIRE_FALSE(validate_filtration(c.fc));
    CHECK(homology(c.fc.complex()).dims == c.expected_homology());

    const auto inf = infinity_page(c.fc);
    CHECK(inf.page.dims == c.expected_infinity());
    CHECK(inf.stabilization == c.expected_stabilization());
    const auto graded = associated_graded_of_homology(c.fc);
    CHECK(graded == inf.page.dims);
    CHECK(total_degree_sums(graded) == homology(c.fc.complex()).dims);

    for (int r = 1; r <= c.fc.width() + 1; ++r) {
      const auto p = page(c.fc, r);
      CHECK(p.dims == c.expected_page(r));
      if (trial % 4 == 0) CHECK(p.dims == oracle::page(c.fc, r));
      CHECK(next_page_dims(p) == page(c.fc, r + 1).dims);
      // d_r after d_r vanishes.
      for (const auto& [b, m] : p.differentials) {
        auto it = p.differentials.find({b.first - r, b.second + r - 1});
        if (it != p.differentials.end()) CHECK((it->second * m).is_zero());
      }
    }
  }
}
