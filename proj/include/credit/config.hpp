#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "credit/calibration.hpp"
#include "credit/process.hpp"

namespace credit {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Everything a full pipeline run needs. Defaults reproduce the reference
/// parameter set: c=0.5, mu=0.05, sigma=0.15, lambda=0.005, jump mean 0.4,
/// jump sd 0.3, V0=100, F=75, T=1, K=500, N=250, M=100000, seed 42.
struct RunConfig {
    ModelParams params;
    double alpha = 0.99;
    CalibrationWindow window;
    std::vector<double> lower_thresholds = {-0.35, -0.30, -0.25, -0.20,
                                            -0.15, -0.10, -0.05};
    std::string output_dir = ".";
};

/// Parse a line-oriented `key = value` document ('#' starts a comment).
/// Unknown keys are rejected with the line number; constraint violations
/// name the offending key. Missing keys keep the defaults above.
RunConfig parse_config(std::istream& in);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

} // namespace credit
