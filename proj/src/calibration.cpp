#include "credit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "credit/csv.hpp"
#include "credit/gaussmath.hpp"

namespace credit {

void validate(const CalibrationWindow& window) {
    if (!(window.lower < window.upper))
        throw std::invalid_argument("CalibrationWindow: lower must be < upper");
    if (!(window.bin_width > 0.0))
        throw std::invalid_argument("CalibrationWindow: bin_width must be > 0");
    if (window.min_bin_count < 1)
        throw std::invalid_argument("CalibrationWindow: min_bin_count must be >= 1");
}

std::vector<ScenarioRecord> filter_scenarios(const std::vector<ScenarioRecord>& records,
                                             const CalibrationWindow& window) {
    validate(window);
    std::vector<ScenarioRecord> out;
    for (const auto& rec : records)
        if (rec.n_defaults > 0 && rec.x_m >= window.lower && rec.x_m < window.upper)
            out.push_back(rec);
    return out;
}

std::vector<BinPoint> bin_scenarios(const std::vector<ScenarioRecord>& filtered,
                                    const CalibrationWindow& window) {
    validate(window);
    const auto n_bins = static_cast<std::size_t>(
        std::ceil((window.upper - window.lower) / window.bin_width - 1e-12));

    struct Accum {
        double recovery = 0, p_d = 0, loss = 0;
        int count = 0;
    };
    std::vector<Accum> acc(n_bins);
    for (const auto& rec : filtered) {
        auto i = static_cast<std::size_t>((rec.x_m - window.lower) / window.bin_width);
        if (i >= n_bins)
            i = n_bins - 1;
        acc[i].recovery += rec.mean_recovery.value_or(0.0);
        acc[i].p_d += rec.p_d;
        acc[i].loss += rec.mean_loss;
        acc[i].count += 1;
    }

    std::vector<BinPoint> bins;
    for (std::size_t i = 0; i < n_bins; ++i) {
        if (acc[i].count < window.min_bin_count)
            continue;
        BinPoint bp;
        bp.count = acc[i].count;
        bp.mean_recovery = acc[i].recovery / acc[i].count;
        if (!(bp.mean_recovery > 0.0 && bp.mean_recovery < 1.0))
            continue; // Phi^-1 undefined at the boundary
        bp.mean_p_d = acc[i].p_d / acc[i].count;
        bp.mean_loss = acc[i].loss / acc[i].count;
        bp.x_center = window.lower + (static_cast<double>(i) + 0.5) * window.bin_width;
        bp.b_value = std_normal_quantile(bp.mean_recovery);
        bins.push_back(bp);
    }
    if (bins.empty())
        throw CalibrationError("bin_scenarios: no bin meets the occupancy rule");
    return bins;
}

ProbitRecovery fit_probit(const std::vector<BinPoint>& bins) {
    if (bins.size() < 2)
        throw CalibrationError("fit_probit: need at least 2 bins");

    double x_mean = 0, b_mean = 0;
    for (const auto& bp : bins) {
        x_mean += bp.x_center;
        b_mean += bp.b_value;
    }
    x_mean /= static_cast<double>(bins.size());
    b_mean /= static_cast<double>(bins.size());

    double sxx = 0, sxb = 0;
    for (const auto& bp : bins) {
        double dx = bp.x_center - x_mean;
        sxx += dx * dx;
        sxb += dx * (bp.b_value - b_mean);
    }
    if (sxx == 0.0)
        throw CalibrationError("fit_probit: all bin centers coincide");

    double slope = sxb / sxx;
    double intercept = b_mean - slope * x_mean;
    return ProbitRecovery{-slope, -intercept};
}

ConstantRecovery fit_constant(const std::vector<ScenarioRecord>& filtered) {
    if (filtered.empty())
        throw CalibrationError("fit_constant: empty calibration window");
    double sum = 0.0;
    for (const auto& rec : filtered)
        sum += rec.mean_recovery.value_or(0.0);
    return ConstantRecovery{sum / static_cast<double>(filtered.size())};
}

double structural_sse(const std::vector<ScenarioRecord>& filtered, double b,
                      StructuralFitMode mode) {
    double sse = 0.0;
    StructuralRecovery model{b};
    for (const auto& rec : filtered) {
        double r_model = model_recovery(model, rec);
        double resid;
        if (mode == StructuralFitMode::recovery_space)
            resid = rec.mean_recovery.value_or(1.0) - r_model;
        else
            resid = rec.mean_loss - rec.p_d * (1.0 - r_model);
        sse += resid * resid;
    }
    return sse;
}

CalibrationResult calibrate_model(const std::vector<ScenarioRecord>& records,
                                  const CalibrationWindow& window,
                                  const std::string& model, StructuralFitMode mode) {
    CalibrationResult result;
    result.window = window;
    auto filtered = filter_scenarios(records, window);
    if (filtered.empty())
        throw CalibrationError("empty calibration window");
    result.n_records = filtered.size();

    if (model == "constant") {
        auto fit = fit_constant(filtered);
        result.model = fit;
        for (const auto& rec : filtered) {
            double resid = rec.mean_recovery.value_or(0.0) - fit.r_bar;
            result.sse += resid * resid;
        }
    } else if (model == "probit") {
        auto bins = bin_scenarios(filtered, window);
        auto fit = fit_probit(bins);
        result.model = fit;
        result.n_bins = bins.size();
        for (const auto& bp : bins) {
            double resid = bp.b_value - (-fit.gamma * bp.x_center - fit.delta);
            result.sse += resid * resid;
        }
    } else if (model == "structural") {
        auto fit = fit_structural(filtered, mode);
        result.model = fit;
        result.sse = structural_sse(filtered, fit.b, mode);
    } else {
        throw std::invalid_argument("unknown model '" + model +
                                    "' (expected constant, probit or structural)");
    }
    return result;
}

StructuralRecovery fit_structural(const std::vector<ScenarioRecord>& filtered,
                                  StructuralFitMode mode) {
    if (filtered.empty())
        throw CalibrationError("fit_structural: empty calibration window");

    // Coarse log-spaced scan over (1e-4, 5] to bracket the minimum.
    constexpr int kGrid = 80;
    const double lo = 1e-4, hi = 5.0;
    const double step = std::log(hi / lo) / (kGrid - 1);
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> grid(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        grid[i] = lo * std::exp(i * step);
        double sse = structural_sse(filtered, grid[i], mode);
        if (sse < best_sse) {
            best_sse = sse;
            best = i;
        }
    }
    double a = grid[std::max(best - 1, 0)];
    double c = grid[std::min(best + 1, kGrid - 1)];
    if (a >= c)
        throw CalibrationError("fit_structural: degenerate bracket");

    // Golden-section refinement.
    constexpr double kPhi = 0.6180339887498949;
    double x1 = c - kPhi * (c - a);
    double x2 = a + kPhi * (c - a);
    double f1 = structural_sse(filtered, x1, mode);
    double f2 = structural_sse(filtered, x2, mode);
    while (c - a > 1e-9) {
        if (f1 < f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - kPhi * (c - a);
            f1 = structural_sse(filtered, x1, mode);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kPhi * (c - a);
            f2 = structural_sse(filtered, x2, mode);
        }
    }
    return StructuralRecovery{0.5 * (a + c)};
}

void write_calibration_csv(std::ostream& out, const std::vector<CalibrationResult>& rows) {
    out << "model,window_lower,window_upper,param1,param2,n_records,n_bins,sse\n";
    for (const auto& row : rows) {
        out << model_name(row.model) << ',' << csv::format_double(row.window.lower)
            << ',' << csv::format_double(row.window.upper) << ',';
        if (const auto* c = std::get_if<ConstantRecovery>(&row.model))
            out << csv::format_double(c->r_bar) << ',';
        else if (const auto* p = std::get_if<ProbitRecovery>(&row.model))
            out << csv::format_double(p->gamma) << ',' << csv::format_double(p->delta);
        else
            out << csv::format_double(std::get<StructuralRecovery>(row.model).b) << ',';
        out << ',' << row.n_records << ',' << row.n_bins << ','
            << csv::format_double(row.sse) << '\n';
    }
}

void write_calibration_csv(const std::string& path,
                           const std::vector<CalibrationResult>& rows) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_calibration_csv(out, rows);
}

} // namespace credit
