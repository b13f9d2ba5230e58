#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "credit/calibration.hpp"
#include "credit/portfolio.hpp"
#include "credit/recovery.hpp"

namespace credit {

struct RiskReport {
    double alpha = 0.99;
    double var = 0.0;
    double etl = 0.0;
    std::optional<double> var_ratio; // model VaR / empirical VaR
    std::optional<double> etl_ratio;
};

/// Per-scenario model loss p_d * (1 - model recovery); default probabilities
/// come straight from the simulation record.
std::vector<double> model_losses(const std::vector<ScenarioRecord>& records,
                                 const RecoveryModel& model);

/// The ceil(alpha*M)-th smallest loss. Throws std::domain_error when the
/// sample is too small for the requested quantile.
double value_at_risk(std::vector<double> losses, double alpha);

/// Mean of the ceil((1-alpha)*M) largest losses.
double expected_tail_loss(std::vector<double> losses, double alpha);

/// One row of the threshold sweep (Figures 3-4 data).
struct SweepRow {
    std::string model;                    // "empirical", "constant", ...
    std::optional<double> lower_threshold; // absent for the baseline row
    double alpha = 0.99;
    double var = 0.0;
    double etl = 0.0;
    std::optional<double> var_ratio;
    std::optional<double> etl_ratio;
    std::string status = "ok";            // "ok" or "calibration_error"
};

/// For each lower threshold, calibrate all three models on
/// (lower, window_defaults.upper) and report VaR/ETL normalized to the
/// empirical values of the whole record set. Per-threshold calibration
/// failures become rows with status "calibration_error".
std::vector<SweepRow> risk_sweep(const std::vector<ScenarioRecord>& records,
                                 const std::vector<double>& lower_thresholds,
                                 double alpha, const CalibrationWindow& window_defaults,
                                 StructuralFitMode mode = StructuralFitMode::loss_space);

/// risk.csv schema:
/// model,lower_threshold,alpha,var,etl,var_ratio,etl_ratio,status
void write_risk_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_risk_csv(const std::string& path, const std::vector<SweepRow>& rows);

} // namespace credit
