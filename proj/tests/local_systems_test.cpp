#include <doctest.h>

#include "emorse/local_systems.hpp"
#include "emorse/spec_format.hpp"

using namespace emorse;

namespace {

// Permutation matrix of an action, as basis index -> image index.
std::vector<std::size_t> permutation(const MonodromyLocalSystem& s, std::size_t h) {
  const auto m = s.action(h).component_or_zero(0, s.fiber(), s.fiber());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    REQUIRE(m.column(j).count() == 1);
    out.push_back(m.column(j).support()[0]);
  }
  return out;
}

std::size_t fixed_points(const std::vector<std::size_t>& p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) n += p[i] == i;
  return n;
}

std::size_t el(const FiniteGroup& g, const std::string& name) { return *g.find(name); }

std::vector<FiniteGroup> groups() {
  return {FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
          FiniteGroup::symmetric3()};
}

}  // namespace

TEST_CASE("finite groups") {
  const auto s3 = FiniteGroup::symmetric3();
  CHECK(s3.order() == 6);
  const auto a = el(s3, "213"), b = el(s3, "132");
  CHECK(s3.multiply(a, b) != s3.multiply(b, a));
  CHECK(s3.multiply(a, s3.inverse(a)) == s3.identity());
  CHECK(FiniteGroup(s3.elements(), s3.table()) == s3);
  // Not associative: a Latin square that is not a group table.
  CHECK_THROWS_AS(FiniteGroup({"1", "a", "b", "c", "d"},
                              {{"1", "a", "b", "c", "d"},
                               {"a", "1", "d", "b", "c"},
                               {"b", "c", "1", "d", "a"},
                               {"c", "d", "a", "1", "b"},
                               {"d", "b", "c", "a", "1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup({"1", "t"}, {{"1", "t"}, {"t", "t"}}), std::invalid_argument);
}

TEST_CASE("group algebra") {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto x = algebra_element(c2, {"1", "t"});
  CHECK(algebra_multiply(c2, x, x).is_zero());
  CHECK_THROWS_AS(algebra_element(c2, {"s"}), std::invalid_argument);
}

TEST_CASE("left regular system") {
  const auto triv = left_regular_system(FiniteGroup::trivial());
  CHECK(triv.fiber().total_rank() == 1);
  const auto c2 = FiniteGroup::cyclic(2);
  CHECK(permutation(left_regular_system(c2), el(c2, "t")) == std::vector<std::size_t>{1, 0});
  const auto c3 = FiniteGroup::cyclic(3);
  const auto p = permutation(left_regular_system(c3), el(c3, "t"));
  CHECK(fixed_points(p) == 0);
  CHECK(p[p[p[0]]] == 0);
}

TEST_CASE("conjugation system") {
  for (std::size_t n : {1, 2, 4}) {
    const auto g = FiniteGroup::cyclic(n);
    const auto s = conjugation_system(g);
    for (std::size_t h = 0; h < g.order(); ++h) CHECK(s.action(h) == DegreeMap::identity(s.fiber()));
  }
  const auto s3 = FiniteGroup::symmetric3();
  const auto s = conjugation_system(s3);
  for (const auto* t : {"213", "132", "321"}) {
    const auto p = permutation(s, el(s3, t));
    CHECK(fixed_points(p) == 2);
    CHECK(p[el(s3, t)] == el(s3, t));
    CHECK(p[s3.identity()] == s3.identity());
  }
}

TEST_CASE("end-mon system") {
  CHECK(end_mon_system(FiniteGroup::trivial()).fiber().total_rank() == 1);
  const auto c2 = FiniteGroup::cyclic(2);
  const auto e2 = end_mon_system(c2);
  CHECK(e2.fiber().rank(0) == 2);
  for (std::size_t h = 0; h < 2; ++h) CHECK(e2.action(h) == DegreeMap::identity(e2.fiber()));
  const auto e6 = end_mon_system(FiniteGroup::symmetric3());
  CHECK(e6.fiber().rank(0) == 6);
}

TEST_CASE("path-order homomorphism is enforced") {
  const auto s3 = FiniteGroup::symmetric3();
  for (const auto& g : groups()) {
    for (const auto& s : {left_regular_system(g), conjugation_system(g), end_mon_system(g), trivial_system(g)}) {
      for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t b = 0; b < g.order(); ++b) {
          CHECK(s.action(g.multiply(a, b)) == compose(s.action(b), s.action(a)));
        }
      }
    }
  }
  // The left-multiplication action k -> hk composes in the opposite order.
  const auto base = left_regular_system(s3);
  std::vector<DegreeMap> left;
  for (std::size_t h = 0; h < s3.order(); ++h) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t k = 0; k < s3.order(); ++k) e.push_back({s3.multiply(h, k), k});
    left.push_back(DegreeMap(0, {{0, BitMatrix::from_entries(6, 6, e)}}));
  }
  CHECK_THROWS_AS(MonodromyLocalSystem(s3, base.fiber(), left), std::invalid_argument);
}

TEST_CASE("systems_isomorphic") {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto reg = left_regular_system(c2);
  auto u = systems_isomorphic(reg, reg);
  REQUIRE(u);
  CHECK(*u == DegreeMap::identity(reg.fiber()));
  CHECK(systems_isomorphic(end_mon_system(c2), conjugation_system(c2)));
  CHECK_FALSE(systems_isomorphic(reg, conjugation_system(c2)));
  CHECK_FALSE(systems_isomorphic(trivial_system(c2), reg));

  for (const auto& g : groups()) {
    const auto a = end_mon_system(g), b = conjugation_system(g);
    auto w = systems_isomorphic(a, b);
    REQUIRE(w);
    for (std::size_t h = 0; h < g.order(); ++h) CHECK(compose(*w, a.action(h)) == compose(b.action(h), *w));
  }
}

TEST_CASE("cellular local homology") {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto x = algebra_element(c2, {"1", "t"});
  auto chain = [&](int top) {
    std::vector<CriticalPoint> pts;
    AlgebraTransports ts;
    for (int k = 0; k <= top; ++k) {
      pts.push_back({"c" + std::to_string(k), k});
      if (k > 0) ts[{"c" + std::to_string(k), "c" + std::to_string(k - 1)}] = x;
    }
    return lifted_group_complex(pts, ts, c2);
  };
  using H = std::map<int, std::size_t>;
  CHECK(cellular_local_homology(chain(2), left_regular_system(c2)) == H{{0, 1}, {2, 1}});
  CHECK(cellular_local_homology(chain(2), trivial_system(c2)) == H{{0, 1}, {1, 1}, {2, 1}});
  CHECK(cellular_local_homology(chain(3), left_regular_system(c2)) == H{{0, 1}, {3, 1}});
  CHECK_THROWS_AS(cellular_local_homology(chain(2), left_regular_system(FiniteGroup::cyclic(3))),
                  std::invalid_argument);
  // A composite boundary that does not vanish.
  CHECK_THROWS_AS(GroupAlgebraComplex(c2, {{0, {"a"}}, {1, {"b"}}, {2, {"c"}}},
                                      {{1, {{0, 0, algebra_element(c2, {"1"})}}}, {2, {{0, 0, algebra_element(c2, {"1"})}}}}),
                  std::invalid_argument);
}

TEST_CASE("datum_from_monodromy") {
  const auto c2 = FiniteGroup::cyclic(2);
  const auto reg = left_regular_system(c2);
  const auto x = algebra_element(c2, {"1", "t"});
  const std::vector<CriticalPoint> pts{{"x0", 0}, {"x1", 1}, {"x2", 2}};
  const auto d = datum_from_monodromy(pts, {{{"x1", "x0"}, x}, {{"x2", "x1"}, x}}, reg);
  CHECK(check_structure_equation(d).empty());
  CHECK(d.transport("x2", "x0") == nullptr);
  CHECK(homology(build_total_complex(d).complex()).dims == std::map<int, std::size_t>{{0, 1}, {2, 1}});

  const auto one = datum_from_monodromy({{"p", 0}}, {}, conjugation_system(FiniteGroup::symmetric3()));
  CHECK(one.transports().empty());

  const auto triv = FiniteGroup::trivial();
  const auto classical =
      datum_from_monodromy({{"m", 0}, {"M", 1}}, {{{"M", "m"}, algebra_element(triv, {"1"})}}, left_regular_system(triv));
  CHECK(homology(build_total_complex(classical).complex()).dims.empty());

  try {
    datum_from_monodromy(pts, {{{"x1", "x0"}, x}, {{"x2", "x1"}, algebra_element(c2, {"1"})}}, reg);
    FAIL("expected a failure");
  } catch (const MonodromyDatumError& e) {
    CHECK(e.from() == "x2");
    CHECK(e.to() == "x0");
  }
}
