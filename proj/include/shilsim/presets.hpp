#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shilsim/config.hpp"

namespace shilsim {

/// Names of the experiment presets shipped with the tool.
std::vector<std::string> preset_names();

/// Returns the named preset. Throws ConfigInvalid for unknown names.
ExperimentConfig preset_config(std::string_view name);

} // namespace shilsim
