#pragma once

// JSON fibration spec files.
//
//   {
//     "name": "hopf",
//     "points": [{"id": "m", "index": 0}, {"id": "M", "index": 2}],
//     "fibers": {
//       "m": {"generators": {"0": ["e"], "1": ["f"]}, "differential": {}},
//       ...
//     },
//     "transports": [
//       {"from": "M", "to": "m", "shift": 1, "components": {"0": [[0, 0]]}}
//     ],
//     "truncation": 8,                       // optional
//     "monodromy": {                         // optional
//       "group": {"elements": ["1", "t"], "table": [["1", "t"], ["t", "1"]]},
//       "system": "left-regular",
//       "transports": [{"from": "x1", "to": "x0", "element": ["1", "t"]}]
//     },
//     "reference": {                         // optional
//       "homology": {"0": 1, "3": 1},
//       "pages": {"2": [[0, 0, 1], [0, 1, 1]]},
//       "infinity": [[0, 0, 1], [2, 1, 1]]
//     }
//   }
//
// Degrees are string keys. Matrices list the [row, col] positions carrying a
// 1, indexed by the generator lists as written in the document. A transport
// component keyed d maps degree d of the source fiber to degree d + shift of
// the target fiber.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emorse/enriched_morse.hpp"
#include "emorse/local_systems.hpp"
#include "emorse/spectral.hpp"

namespace emorse {

struct MonodromyBlock {
  FiniteGroup group;
  /// "left-regular", "conjugation", "end-mon" or "trivial".
  std::string system;
  AlgebraTransports transports;

  bool operator==(const MonodromyBlock&) const = default;
};

struct ReferenceBlock {
  std::map<int, std::size_t> homology;  // missing degrees are zero
  std::map<int, BidegreeDims> pages;
  std::optional<BidegreeDims> infinity;

  bool operator==(const ReferenceBlock&) const = default;
};

struct FibrationSpec {
  std::string name;
  std::vector<CriticalPoint> points;  // sorted by (index, id)
  std::map<std::string, GradedComplex> fibers;
  std::map<PointPair, DegreeMap> transports;
  /// Fibers are truncated models valid through this degree.
  std::optional<int> truncation;
  std::optional<MonodromyBlock> monodromy;
  std::optional<ReferenceBlock> reference;

  bool operator==(const FibrationSpec&) const = default;
};

struct SpecIssue {
  std::string location;  // "line N" or a JSON pointer such as "/fibers/m"
  std::string message;
};

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<SpecIssue> issues);
  const std::vector<SpecIssue>& issues() const { return issues_; }

 private:
  std::vector<SpecIssue> issues_;
};

/// Throws SpecError listing every problem found.
FibrationSpec parse_spec(std::string_view text);

/// Canonical document; parse_spec(emit_spec(s)) == s.
std::string emit_spec(const FibrationSpec& s);

/// Throws std::invalid_argument if the spec does not describe a datum.
EnrichedMorseDatum to_datum(const FibrationSpec& s);

FibrationSpec spec_from_datum(std::string name, const EnrichedMorseDatum& d);

/// Highest total degree unaffected by truncation, if the spec is truncated.
std::optional<int> validity_window(const FibrationSpec& s);

/// Throws std::invalid_argument for unknown names.
MonodromyLocalSystem make_system(const FiniteGroup& g, const std::string& kind);

}  // namespace emorse
