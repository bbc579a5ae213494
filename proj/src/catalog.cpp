#include "emorse/catalog.hpp"

#include <charconv>

namespace emorse {

namespace {

constexpr int kDefaultLoopDegree = 8;

GradedComplex circle() { return GradedComplex({{0, {"e"}}, {1, {"f"}}}); }

// Single entry (0, 0) in source degree `degree`.
DegreeMap unit_map(int shift, int degree) {
  return DegreeMap(shift, {{degree, BitMatrix::from_entries(1, 1, {{0, 0}})}});
}

BidegreeDims ones(std::initializer_list<Bidegree> cells) {
  BidegreeDims out;
  for (auto b : cells) out[b] = 1;
  return out;
}

FibrationSpec hopf() {
  FibrationSpec s;
  s.name = "hopf";
  s.points = {{"m", 0}, {"M", 2}};
  s.fibers = {{"m", circle()}, {"M", circle()}};
  // The fiber circle is dragged once around as it sweeps the 2-cell: the
  // basepoint class e at M lands on the fundamental class f at m.
  s.transports = {{{"M", "m"}, unit_map(1, 0)}};
  const auto e2 = ones({{0, 0}, {0, 1}, {2, 0}, {2, 1}});
  const auto inf = ones({{0, 0}, {2, 1}});
  s.reference = ReferenceBlock{{{0, 1}, {3, 1}}, {{2, e2}, {3, inf}}, inf};
  return s;
}

FibrationSpec hopf_4crit() {
  FibrationSpec s;
  s.name = "hopf-4crit";
  s.points = {{"m", 0}, {"s", 1}, {"M1", 2}, {"M2", 2}};
  s.fibers = {{"m", circle()}, {"s", circle()}, {"M1", circle()}, {"M2", circle()}};
  const auto id = DegreeMap::identity(circle());
  s.transports = {
      {{"s", "m"}, DegreeMap(0)},       // two flow lines, cancelling
      {{"M1", "s"}, id},
      {{"M2", "s"}, id},
      {{"M1", "m"}, unit_map(1, 0)},    // all of the twisting on M1
      {{"M2", "m"}, DegreeMap(1)},
  };
  const auto e2 = ones({{0, 0}, {0, 1}, {2, 0}, {2, 1}});
  const auto inf = ones({{0, 0}, {2, 1}});
  s.reference = ReferenceBlock{{{0, 1}, {3, 1}}, {{2, e2}, {3, inf}}, inf};
  return s;
}

FibrationSpec torus_product() {
  FibrationSpec s;
  s.name = "torus-product";
  s.points = {{"m", 0}, {"M", 1}};
  s.fibers = {{"m", circle()}, {"M", circle()}};
  s.transports = {{{"M", "m"}, DegreeMap(0)}};
  const auto e2 = ones({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  s.reference = ReferenceBlock{{{0, 1}, {1, 2}, {2, 1}}, {{1, e2}, {2, e2}}, e2};
  return s;
}

FibrationSpec lifted(const std::string& name, int top) {
  const auto group = FiniteGroup::cyclic(2);
  const std::string system = "left-regular";
  std::vector<CriticalPoint> points;
  AlgebraTransports transports;
  for (int k = 0; k <= top; ++k) {
    points.push_back({"x" + std::to_string(k), k});
    if (k > 0) transports[{"x" + std::to_string(k), "x" + std::to_string(k - 1)}] = algebra_element(group, {"1", "t"});
  }
  auto s = spec_from_datum(name, datum_from_monodromy(points, transports, make_system(group, system)));
  s.monodromy = MonodromyBlock{group, system, transports};
  const auto inf = ones({{0, 0}, {top, 0}});
  s.reference = ReferenceBlock{{{0, 1}, {top, 1}}, {{2, inf}}, inf};
  return s;
}

FibrationSpec s2_pathloop(int n) {
  if (n < 2) throw std::invalid_argument("s2-pathloop needs a truncation degree of at least 2");
  FibrationSpec s;
  s.name = "s2-pathloop-" + std::to_string(n);
  s.points = {{"m", 0}, {"M", 2}};
  // Homology of the loop space: tensor algebra on u in degree 1, cut at u^n.
  std::map<int, std::vector<std::string>> gens;
  for (int k = 0; k <= n; ++k) gens[k] = {"u^" + std::to_string(k)};
  GradedComplex fiber(gens);
  s.fibers = {{"m", fiber}, {"M", fiber}};
  std::map<int, BitMatrix> right_mult;
  for (int k = 0; k < n; ++k) right_mult.emplace(k, BitMatrix::from_entries(1, 1, {{0, 0}}));
  s.transports = {{{"M", "m"}, DegreeMap(1, std::move(right_mult))}};
  s.truncation = n;
  BidegreeDims e2;
  for (int k = 0; k <= n; ++k) {
    e2[{0, k}] = 1;
    e2[{2, k}] = 1;
  }
  // Only the window (total degree <= n - 2) is compared; the stray class
  // u^n at M in degree n + 2 is a truncation artifact.
  s.reference = ReferenceBlock{{{0, 1}}, {{2, e2}}, ones({{0, 0}})};
  return s;
}

FibrationSpec point_fiber_s2() {
  FibrationSpec s;
  s.name = "point-fiber-s2";
  s.points = {{"m", 0}, {"M", 2}};
  s.fibers = {{"m", GradedComplex::point()}, {"M", GradedComplex::point()}};
  s.transports = {{{"M", "m"}, DegreeMap(1)}};
  const auto e2 = ones({{0, 0}, {2, 0}});
  s.reference = ReferenceBlock{{{0, 1}, {2, 1}}, {{2, e2}}, e2};
  return s;
}

std::optional<int> trailing_number(const std::string& name, const std::string& prefix) {
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
  int value = 0;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"hopf", "hopf-4crit", "torus-product", "rp2-lifted", "rp3-lifted", "s2-pathloop-N", "point-fiber-s2"};
}

FibrationSpec catalog(const std::string& name, std::optional<int> param) {
  if (name == "s2-pathloop-N" || name == "s2-pathloop") return s2_pathloop(param.value_or(kDefaultLoopDegree));
  if (auto n = trailing_number(name, "s2-pathloop-")) {
    if (param && *param != *n) throw std::invalid_argument("conflicting parameters for " + name);
    return s2_pathloop(*n);
  }
  if (param) throw std::invalid_argument("fixture '" + name + "' takes no parameter");
  if (name == "hopf") return hopf();
  if (name == "hopf-4crit") return hopf_4crit();
  if (name == "torus-product") return torus_product();
  if (name == "rp2-lifted") return lifted(name, 2);
  if (name == "rp3-lifted") return lifted(name, 3);
  if (name == "point-fiber-s2") return point_fiber_s2();
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<FibrationSpec> catalog_all() {
  std::vector<FibrationSpec> out;
  for (const auto& name : catalog_names()) out.push_back(catalog(name));
  return out;
}

}  // namespace emorse
