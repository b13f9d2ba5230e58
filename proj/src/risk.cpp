#include "credit/risk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "credit/csv.hpp"

namespace credit {

std::vector<double> model_losses(const std::vector<ScenarioRecord>& records,
                                 const RecoveryModel& model) {
    std::vector<double> losses;
    losses.reserve(records.size());
    for (const auto& rec : records)
        losses.push_back(rec.p_d * (1.0 - model_recovery(model, rec)));
    return losses;
}

namespace {

// ceil with a guard against representation noise in alpha*M.
std::size_t ceil_count(double x) {
    return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

void check_sample(std::size_t m, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("risk: alpha must lie in (0,1)");
    if (m == 0 || static_cast<double>(m) * (1.0 - alpha) < 1.0 - 1e-9)
        throw std::domain_error("risk: sample too small for requested quantile");
}

} // namespace

double value_at_risk(std::vector<double> losses, double alpha) {
    check_sample(losses.size(), alpha);
    std::size_t k = ceil_count(alpha * static_cast<double>(losses.size()));
    if (k < 1)
        k = 1;
    std::nth_element(losses.begin(), losses.begin() + (k - 1), losses.end());
    return losses[k - 1];
}

double expected_tail_loss(std::vector<double> losses, double alpha) {
    check_sample(losses.size(), alpha);
    std::size_t tail = ceil_count((1.0 - alpha) * static_cast<double>(losses.size()));
    if (tail < 1)
        tail = 1;
    std::size_t cut = losses.size() - tail;
    std::nth_element(losses.begin(), losses.begin() + cut, losses.end());
    // Fixed summation order for determinism.
    std::sort(losses.begin() + cut, losses.end());
    double sum = std::accumulate(losses.begin() + cut, losses.end(), 0.0);
    return sum / static_cast<double>(tail);
}

std::vector<SweepRow> risk_sweep(const std::vector<ScenarioRecord>& records,
                                 const std::vector<double>& lower_thresholds,
                                 double alpha, const CalibrationWindow& window_defaults,
                                 StructuralFitMode mode) {
    std::vector<double> empirical;
    empirical.reserve(records.size());
    for (const auto& rec : records)
        empirical.push_back(rec.mean_loss);
    const double base_var = value_at_risk(empirical, alpha);
    const double base_etl = expected_tail_loss(empirical, alpha);

    std::vector<SweepRow> rows;
    SweepRow baseline;
    baseline.model = "empirical";
    baseline.alpha = alpha;
    baseline.var = base_var;
    baseline.etl = base_etl;
    rows.push_back(baseline);

    for (double lower : lower_thresholds) {
        CalibrationWindow window = window_defaults;
        window.lower = lower;

        auto push = [&](const std::string& name, double var, double etl, bool failed) {
            SweepRow row;
            row.model = name;
            row.lower_threshold = lower;
            row.alpha = alpha;
            if (failed) {
                row.status = "calibration_error";
            } else {
                row.var = var;
                row.etl = etl;
                if (base_var > 0.0)
                    row.var_ratio = var / base_var;
                if (base_etl > 0.0)
                    row.etl_ratio = etl / base_etl;
            }
            rows.push_back(row);
        };

        auto evaluate = [&](const std::string& name, auto fit) {
            try {
                RecoveryModel model = fit();
                auto losses = model_losses(records, model);
                push(name, value_at_risk(losses, alpha),
                     expected_tail_loss(losses, alpha), false);
            } catch (const CalibrationError&) {
                push(name, 0.0, 0.0, true);
            }
        };

        auto filtered = filter_scenarios(records, window);
        evaluate("constant", [&]() -> RecoveryModel { return fit_constant(filtered); });
        evaluate("probit", [&]() -> RecoveryModel {
            return fit_probit(bin_scenarios(filtered, window));
        });
        evaluate("structural",
                 [&]() -> RecoveryModel { return fit_structural(filtered, mode); });
    }
    return rows;
}

void write_risk_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "model,lower_threshold,alpha,var,etl,var_ratio,etl_ratio,status\n";
    for (const auto& row : rows) {
        out << row.model << ',';
        if (row.lower_threshold)
            out << csv::format_double(*row.lower_threshold);
        out << ',' << csv::format_double(row.alpha) << ','
            << csv::format_double(row.var) << ',' << csv::format_double(row.etl) << ',';
        if (row.var_ratio)
            out << csv::format_double(*row.var_ratio);
        out << ',';
        if (row.etl_ratio)
            out << csv::format_double(*row.etl_ratio);
        out << ',' << row.status << '\n';
    }
}

void write_risk_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_risk_csv(out, rows);
}

} // namespace credit
