#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "credit/portfolio.hpp"
#include "credit/recovery.hpp"

namespace credit {

class CalibrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Market-return window the calibration data is restricted to, modelling
/// limited historical data.
struct CalibrationWindow {
    double lower = -0.35;  // inclusive
    double upper = 0.0;    // exclusive
    double bin_width = 0.01;
    int min_bin_count = 5;
};

void validate(const CalibrationWindow& window);

/// One averaged interval of the regression data b(X_m) = Phi^-1(<R>).
struct BinPoint {
    double x_center = 0.0;
    double mean_recovery = 0.0;
    double mean_p_d = 0.0;
    double mean_loss = 0.0;
    double b_value = 0.0;
    int count = 0;
};

enum class StructuralFitMode { recovery_space, loss_space };

/// Records with lower <= x_m < upper and at least one default, order kept.
std::vector<ScenarioRecord> filter_scenarios(const std::vector<ScenarioRecord>& records,
                                             const CalibrationWindow& window);

/// Tile [lower, upper) with bins of bin_width and average the member
/// records. Bins below min_bin_count or with mean recovery outside (0,1)
/// are dropped. Throws CalibrationError if nothing survives.
std::vector<BinPoint> bin_scenarios(const std::vector<ScenarioRecord>& filtered,
                                    const CalibrationWindow& window);

/// OLS of b_value on x_center with equal bin weights;
/// gamma = -slope, delta = -intercept. Needs >= 2 distinct centers.
ProbitRecovery fit_probit(const std::vector<BinPoint>& bins);

/// Unweighted mean of <R> over the filtered records.
ConstantRecovery fit_constant(const std::vector<ScenarioRecord>& filtered);

/// Least-squares estimate of B over the filtered records, either against
/// recoveries or against losses. Golden-section search on B in (1e-4, 5]
/// converged to |dB| <= 1e-8.
StructuralRecovery fit_structural(const std::vector<ScenarioRecord>& filtered,
                                  StructuralFitMode mode);

/// Sum of squared residuals of the structural model at a given B.
double structural_sse(const std::vector<ScenarioRecord>& filtered, double b,
                      StructuralFitMode mode);

struct CalibrationResult {
    RecoveryModel model;
    CalibrationWindow window;
    std::size_t n_records = 0;
    std::size_t n_bins = 0; // probit only
    double sse = 0.0;
};

/// Fit one model ("constant", "probit" or "structural") on the window.
CalibrationResult calibrate_model(const std::vector<ScenarioRecord>& records,
                                  const CalibrationWindow& window,
                                  const std::string& model,
                                  StructuralFitMode mode = StructuralFitMode::loss_space);

/// calibration.csv schema:
/// model,window_lower,window_upper,param1,param2,n_records,n_bins,sse
void write_calibration_csv(std::ostream& out, const std::vector<CalibrationResult>& rows);
void write_calibration_csv(const std::string& path,
                           const std::vector<CalibrationResult>& rows);

} // namespace credit
