#pragma once

#include "config.hpp"
#include "report.hpp"

#include <string>
#include <vector>

namespace nlvar::cli {

const std::vector<std::string>& subcommands();

/// Runs one experiment. Throws ConfigError on schema violations and
/// nlvar::Error for inputs the library refuses.
Report run(const ExperimentConfig& config);

}  // namespace nlvar::cli
