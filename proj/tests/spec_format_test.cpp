#include <doctest.h>

#include "emorse/catalog.hpp"
#include "emorse/spec_format.hpp"
#include "random_data.hpp"

using namespace emorse;

namespace {

bool mentions(const SpecError& e, const std::string& text) {
  for (const auto& i : e.issues()) {
    if (i.location.find(text) != std::string::npos || i.message.find(text) != std::string::npos) return true;
  }
  return false;
}

SpecError parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e;
  }
  FAIL("document was accepted");
  return SpecError({});
}

const char* kHopf = R"({
  "name": "hopf",
  "points": [{"id": "M", "index": 2}, {"id": "m", "index": 0}],
  "fibers": {
    "m": {"generators": {"0": ["e"], "1": ["f"]}},
    "M": {"generators": {"1": ["f"], "0": ["e"]}, "differential": {}}
  },
  "transports": [{"from": "M", "to": "m", "shift": 1, "components": {"0": [[0, 0]]}}]
})";

}  // namespace

TEST_CASE("hand-written Hopf document") {
  const auto s = parse_spec(kHopf);
  auto expected = catalog("hopf");
  expected.reference.reset();
  CHECK(s == expected);
  CHECK(to_datum(s) == to_datum(catalog("hopf")));
}

TEST_CASE("round trips over the catalog") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto s = catalog(name);
    const auto text = emit_spec(s);
    const auto back = parse_spec(text);
    CHECK(back == s);
    CHECK(emit_spec(back) == text);
  }
  CHECK(parse_spec(emit_spec(catalog("s2-pathloop-N", 5))) == catalog("s2-pathloop-5"));
}

TEST_CASE("round trips over random data") {
  randomized::Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = spec_from_datum("random", randomized::random_datum(rng).datum);
    const auto text = emit_spec(s);
    CHECK(parse_spec(text) == s);
    CHECK(emit_spec(parse_spec(text)) == text);
  }
}

TEST_CASE("minimal documents") {
  FibrationSpec empty;
  empty.name = "empty";
  const auto text = emit_spec(empty);
  CHECK(parse_spec(text) == empty);
  CHECK(text.find("monodromy") == std::string::npos);
  CHECK(text.find("reference") == std::string::npos);
}

TEST_CASE("group block of the lifted RP3 fixture") {
  const auto text = emit_spec(catalog("rp3-lifted"));
  CHECK(text.find("\"monodromy\"") != std::string::npos);
  const auto s = parse_spec(text);
  REQUIRE(s.monodromy);
  CHECK(s.monodromy->group.elements() == std::vector<std::string>{"1", "t"});
  CHECK(s.monodromy->system == "left-regular");
}

TEST_CASE("located errors") {
  CHECK(mentions(parse_error("{\n  \"name\": \"x\",\n  \"points\": [\n}"), "line 4"));

  auto missing = std::string(kHopf);
  missing.replace(missing.find("\"m\": {\"generators\": {\"0\": [\"e\"], \"1\": [\"f\"]}},"), 50, "");
  const auto e1 = parse_error(missing);
  CHECK(mentions(e1, "missing fiber for critical point 'm'"));

  auto shifted = std::string(kHopf);
  shifted.replace(shifted.find("\"shift\": 1"), 10, "\"shift\": 0");
  const auto e2 = parse_error(shifted);
  CHECK(mentions(e2, "transport M -> m"));
  CHECK(mentions(e2, "/transports/0/shift"));

  auto unknown = std::string(kHopf);
  unknown.replace(unknown.find("\"to\": \"m\""), 9, "\"to\": \"q\"");
  CHECK(mentions(parse_error(unknown), "unknown critical point 'q'"));

  auto coefficient = std::string(kHopf);
  coefficient.replace(coefficient.find("[[0, 0]]"), 8, "[[0, 0, 2]]");
  CHECK(mentions(parse_error(coefficient), "non-GF(2)"));

  auto twice = std::string(kHopf);
  twice.replace(twice.find("[[0, 0]]"), 8, "[[0, 0], [0, 0]]");
  CHECK(mentions(parse_error(twice), "non-GF(2)"));

  auto shape = std::string(kHopf);
  shape.replace(shape.find("[[0, 0]]"), 8, "[[1, 0]]");
  CHECK(mentions(parse_error(shape), "/transports/0/components/0/0"));

  auto notsquare = std::string(kHopf);
  notsquare.replace(notsquare.find("\"differential\": {}"), 18, "\"differential\": {\"1\": [[0, 0]], \"2\": [[0, 0]]}");
  notsquare.replace(notsquare.find("{\"1\": [\"f\"], \"0\": [\"e\"]}"), 24, "{\"1\": [\"f\"], \"0\": [\"e\"], \"2\": [\"g\"]}");
  CHECK(mentions(parse_error(notsquare), "/fibers/M/differential"));

  // Every problem is reported, not just the first.
  auto several = std::string(kHopf);
  several.replace(several.find("\"shift\": 1"), 10, "\"shift\": 3");
  several.replace(several.find("\"name\": \"hopf\""), 14, "\"name\": 7");
  CHECK(parse_error(several).issues().size() >= 2);
}

TEST_CASE("monodromy blocks must match the explicit data") {
  auto s = catalog("rp2-lifted");
  s.monodromy->transports[{"x2", "x1"}] = algebra_element(s.monodromy->group, {"t"});
  CHECK(mentions(parse_error(emit_spec(s)), "/monodromy"));

  auto bad_system = catalog("rp2-lifted");
  bad_system.monodromy->system = "adjoint";
  CHECK(mentions(parse_error(emit_spec(bad_system)), "unknown local system"));
}

TEST_CASE("validity window") {
  CHECK_FALSE(validity_window(catalog("hopf")));
  CHECK(validity_window(catalog("s2-pathloop-8")) == 6);
}
