#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qprefine/refine.hpp"

namespace qprefine {

/// Names of the built-in parameter sets, "s1" to "s5".
std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
RefineParams preset(std::string_view name);

/// Compact text for tolerances and factors: "1e-100", "1e12", "0.5".
std::string format_parameter(const Rational& r);

/// Table of all presets, one parameter per row and one preset per column.
std::string describe_presets();

/// Effective parameters as "key: value" lines.
std::string describe_params(const RefineParams& params);

}  // namespace qprefine
