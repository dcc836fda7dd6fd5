#pragma once

#include <vector>

#include "rfso/cli/presets.hpp"
#include "rfso/harness/validation.hpp"

namespace rfso::cli {

// The built-in cross-validation grid: 12 scenarios spanning front-end
// rejection {10 dB, 20 dB, ideal}, interferer count {2, 3}, and paired
// (mean INR, boresight, demodulation order) settings.
std::vector<harness::ScenarioCase> default_validation_grid();

// Full command-line entry point. Exit codes: 0 success, 1 config error,
// 2 numerical failure, 3 validation failure.
int run_cli(int argc, char** argv);

} // namespace rfso::cli
