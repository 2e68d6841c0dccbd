#pragma once

#include "qreg/experiment/config.hpp"

#include <string>
#include <vector>

namespace qreg::experiment {

/// Names of the built-in experiments, in a stable order.
std::vector<std::string> preset_names();

/// Built-in configuration. Throws Error(ConfigError) for an unknown name.
ExperimentConfig preset(const std::string& name);

}  // namespace qreg::experiment
