#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "credit/process.hpp"

namespace credit {

/// One outer-loop realization: market return, default statistics and the
/// portfolio loss of the homogeneous K-firm portfolio.
struct ScenarioRecord {
    std::int64_t scenario_id = 0;
    double x_m = 0.0;                       // market return
    int n_defaults = 0;                     // N_D
    double p_d = 0.0;                       // N_D / K
    std::optional<double> mean_recovery;    // <R>, absent when no defaults
    double mean_loss = 0.0;                 // <L>
};

struct ScenarioSet {
    ModelParams params;
    std::vector<ScenarioRecord> records;
};

/// Individual normalized loss (1 - v/F) * Theta(1 - v/F).
double firm_loss(double v_terminal, double face);

/// Scenario statistics from a vector of terminal firm values.
ScenarioRecord record_from_terminals(const std::vector<double>& terminals, double v0,
                                     double face, std::int64_t scenario_id);

/// Simulate one outer-loop realization. Stream 0 of the scenario carries the
/// market terms; firm k uses stream k+1.
ScenarioRecord run_scenario(const ModelParams& params, std::int64_t scenario_id,
                            std::uint64_t master_seed);

/// Work cap for run_simulation, in firm-steps (M*K*N).
inline constexpr double kDefaultWorkBudget = 5e13;

/// Run the full outer loop, parallelized over scenarios. Results are
/// identical for any worker count. workers <= 0 picks the hardware count.
ScenarioSet run_simulation(const ModelParams& params, int workers = 0,
                           double work_budget = kDefaultWorkBudget);

/// scenarios.csv schema:
/// scenario_id,x_m,n_defaults,p_d,mean_recovery,mean_loss
/// mean_recovery is the empty string when absent; doubles use 17 significant
/// digits so files round-trip bit-faithfully.
void write_scenarios_csv(std::ostream& out, const ScenarioSet& set);
void write_scenarios_csv(const std::string& path, const ScenarioSet& set);
std::vector<ScenarioRecord> read_scenarios_csv(std::istream& in);
std::vector<ScenarioRecord> read_scenarios_csv(const std::string& path);

} // namespace credit
