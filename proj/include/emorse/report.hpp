#pragma once

// End-to-end report for a spec: checks, total homology, pages, E^infinity
// against the associated graded, the E1/E2 cross-check and the diff against
// the reference block.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emorse/spec_format.hpp"

namespace emorse {

struct CheckResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> details;
};

struct PageTable {
  int r = 0;
  BidegreeDims dims;
  /// Rank of d_r out of each bidegree, nonzero ranks only.
  BidegreeDims differential_ranks;
};

struct ReportOptions {
  /// Last page tabulated; defaults to max(stabilization, 2).
  std::optional<int> max_page;
};

struct Report {
  std::string name;
  std::vector<CheckResult> checks;
  /// False when a check failed and nothing further was computed.
  bool computed = false;
  std::optional<int> window;

  std::map<int, std::size_t> homology;
  std::vector<PageTable> pages;
  int stabilization = 1;
  BidegreeDims infinity;
  BidegreeDims graded;

  /// Enriched-morse path versus pages 1 and 2.
  BidegreeDims e1_enriched;
  BidegreeDims e2_enriched;
  std::vector<std::string> cross_check_failures;

  /// Homology of the lifted group-algebra complex, for specs with monodromy.
  std::optional<std::map<int, std::size_t>> local_homology;

  /// Differences against the reference block (window-restricted).
  std::vector<std::string> mismatches;

  bool checks_ok() const;
  bool infinity_ok() const { return computed && infinity == graded; }
  bool e2_ok() const { return computed && cross_check_failures.empty(); }
  bool compare_ok() const;
};

/// Never throws on mathematically bad data: failures land in `checks`.
Report run_report(const FibrationSpec& spec, const ReportOptions& options = {});

enum class Section { check, homology, pages, e2, compare };

std::string render_text(const Report& r, Section section);
/// Sorted keys, two-space indent, trailing newline.
std::string render_json(const Report& r, Section section);

}  // namespace emorse
