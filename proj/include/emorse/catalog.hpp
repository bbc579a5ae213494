#pragma once

// Built-in fixtures with hand-derived reference values.

#include <optional>
#include <string>
#include <vector>

#include "emorse/spec_format.hpp"

namespace emorse {

/// hopf, hopf-4crit, torus-product, rp2-lifted, rp3-lifted, s2-pathloop-N,
/// point-fiber-s2.
std::vector<std::string> catalog_names();

/// "s2-pathloop-N" takes its truncation degree from `param` (default 8);
/// "s2-pathloop-12" is also accepted. Throws std::invalid_argument for unknown
/// names or a parameter on a fixture that takes none.
FibrationSpec catalog(const std::string& name, std::optional<int> param = std::nullopt);

/// The catalog with default parameters.
std::vector<FibrationSpec> catalog_all();

}  // namespace emorse
