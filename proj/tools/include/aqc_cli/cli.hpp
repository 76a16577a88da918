// cli.hpp: the aqc-thermal command-line front end

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "aqc/fitting.hpp"
#include "aqc/kinetics.hpp"
#include "aqc_cli/config.hpp"

namespace aqc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,  // oracle invariant outside tolerance
    kExitInput = 2,
    kExitIntegration = 3,
    kExitRegime = 4,
    kExitCutoff = 5,
};

// args excludes the program name. Regular output goes to `out` unless
// --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Helpers exposed for tests.
SimParams build_params(const RunConfig& config);
SpeedRatioSpec speed_ratio_spec(const RunConfig& config);
double effective_gamma(const RunConfig& config);

struct SweepAxis {
    std::string key;
    std::vector<double> values;  // ascending
};
SweepAxis parse_sweep_axis(const std::string& text);

inline constexpr std::size_t kMaxSweepPoints = 1'000'000;

}  // namespace aqc::cli
