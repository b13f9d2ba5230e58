// creditmc: Monte Carlo credit portfolio engine.
//
// Subcommands: simulate, calibrate, risk (alias: sweep), figdata.
// All artifacts are CSV so figure data can be consumed by external plotters
// and runs stay diffable.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credit/calibration.hpp"
#include "credit/config.hpp"
#include "credit/csv.hpp"
#include "credit/gaussmath.hpp"
#include "credit/portfolio.hpp"
#include "credit/recovery.hpp"
#include "credit/risk.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

credit::StructuralFitMode parse_mode(const std::string& mode) {
    if (mode == "recovery_space")
        return credit::StructuralFitMode::recovery_space;
    if (mode == "loss_space")
        return credit::StructuralFitMode::loss_space;
    throw CLI::ValidationError("--mode", "expected recovery_space or loss_space");
}

int cmd_simulate(const std::string& config_path, std::string out_path,
                 std::optional<std::uint64_t> seed_override, int workers) {
    credit::RunConfig cfg;
    try {
        if (!config_path.empty())
            cfg = credit::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "creditmc simulate: " << e.what() << '\n';
        return kExitUsage;
    }
    if (seed_override)
        cfg.params.seed = *seed_override;
    if (out_path.empty())
        out_path = cfg.output_dir + "/scenarios.csv";

    try {
        auto start = std::chrono::steady_clock::now();
        auto set = credit::run_simulation(cfg.params, workers);
        auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        credit::write_scenarios_csv(out_path, set);

        double pd_sum = 0.0;
        for (const auto& rec : set.records)
            pd_sum += rec.p_d;
        std::cout << "scenarios: " << set.records.size() << '\n'
                  << "runtime_s: " << elapsed << '\n'
                  << "mean_p_d: " << pd_sum / static_cast<double>(set.records.size())
                  << '\n'
                  << "output: " << out_path << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "creditmc simulate: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_calibrate(const std::string& scenarios_path, const std::string& model,
                  const credit::CalibrationWindow& window, const std::string& mode,
                  const std::string& out_path, const std::string& model_out) {
    try {
        auto records = credit::read_scenarios_csv(scenarios_path);
        auto result =
            credit::calibrate_model(records, window, model, parse_mode(mode));
        credit::write_calibration_csv(out_path, {result});
        if (!model_out.empty())
            credit::write_model_csv(model_out, result.model);
        std::cout << "model: " << credit::model_name(result.model)
                  << "  records: " << result.n_records << "  sse: " << result.sse
                  << '\n';
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "creditmc calibrate: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "creditmc calibrate: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "creditmc calibrate: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_risk(const std::string& scenarios_path, double alpha,
             const std::vector<double>& thresholds,
             const credit::CalibrationWindow& window, const std::string& mode,
             const std::string& out_path) {
    try {
        auto records = credit::read_scenarios_csv(scenarios_path);
        auto rows =
            credit::risk_sweep(records, thresholds, alpha, window, parse_mode(mode));
        credit::write_risk_csv(out_path, rows);
        std::cout << "rows: " << rows.size() << "  output: " << out_path << '\n';
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "creditmc risk: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "creditmc risk: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_figdata(const std::string& scenarios_path, const std::string& out_dir,
                double alpha, const std::vector<double>& thresholds,
                credit::CalibrationWindow window, const std::string& mode) {
    try {
        auto records = credit::read_scenarios_csv(scenarios_path);
        if (records.empty())
            throw std::runtime_error("empty scenario file");
        auto fit_mode = parse_mode(mode);

        // Figure 1: regression data b(X_m), raw and interval-averaged over
        // the full observed X_m range.
        {
            std::ofstream out(out_dir + "/fig1_b_vs_xm.csv");
            if (!out)
                throw std::runtime_error("cannot write fig1_b_vs_xm.csv");
            out << "kind,x_m,b_value,count\n";
            double x_min = records.front().x_m, x_max = records.front().x_m;
            for (const auto& rec : records) {
                x_min = std::min(x_min, rec.x_m);
                x_max = std::max(x_max, rec.x_m);
                if (rec.mean_recovery && *rec.mean_recovery > 0.0 &&
                    *rec.mean_recovery < 1.0)
                    out << "scenario," << credit::csv::format_double(rec.x_m) << ','
                        << credit::csv::format_double(
                               credit::std_normal_quantile(*rec.mean_recovery))
                        << ",1\n";
            }
            credit::CalibrationWindow full = window;
            full.lower = x_min;
            full.upper = x_max + window.bin_width;
            auto filtered = credit::filter_scenarios(records, full);
            for (const auto& bp : credit::bin_scenarios(filtered, full))
                out << "bin," << credit::csv::format_double(bp.x_center) << ','
                    << credit::csv::format_double(bp.b_value) << ',' << bp.count
                    << '\n';
        }

        // Figure 2: average loss vs default probability, with the fitted
        // structural curve.
        auto structural =
            credit::fit_structural(credit::filter_scenarios(records, window), fit_mode);
        {
            std::ofstream out(out_dir + "/fig2_loss_vs_pd.csv");
            if (!out)
                throw std::runtime_error("cannot write fig2_loss_vs_pd.csv");
            out << "p_d,mean_loss,structural_fit_loss\n";
            for (const auto& rec : records) {
                if (rec.n_defaults == 0)
                    continue;
                double p = std::clamp(rec.p_d, 1e-12, 1.0 - 1e-12);
                out << credit::csv::format_double(rec.p_d) << ','
                    << credit::csv::format_double(rec.mean_loss) << ','
                    << credit::csv::format_double(
                           credit::structural_expected_loss(p, structural.b))
                    << '\n';
            }
        }

        // Figures 3/4: normalized VaR and ETL threshold sweeps.
        auto rows = credit::risk_sweep(records, thresholds, alpha, window, fit_mode);
        auto write_sweep = [&](const std::string& name, bool use_var) {
            std::ofstream out(out_dir + "/" + name);
            if (!out)
                throw std::runtime_error("cannot write " + name);
            out << "model,lower_threshold,ratio,status\n";
            for (const auto& row : rows) {
                if (!row.lower_threshold)
                    continue;
                auto ratio = use_var ? row.var_ratio : row.etl_ratio;
                out << row.model << ','
                    << credit::csv::format_double(*row.lower_threshold) << ',';
                if (ratio)
                    out << credit::csv::format_double(*ratio);
                out << ',' << row.status << '\n';
            }
        };
        write_sweep("fig3_var_sweep.csv", true);
        write_sweep("fig4_etl_sweep.csv", false);
        std::cout << "figure data written to " << out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "creditmc figdata: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo credit portfolio engine"};
    app.require_subcommand(1);

    std::string config_path, scenarios_path, out_path, model, model_out, out_dir;
    std::string mode = "loss_space";
    double alpha = 0.99;
    credit::CalibrationWindow window;
    std::vector<double> thresholds = {-0.35, -0.30, -0.25, -0.20, -0.15, -0.10, -0.05};
    std::optional<std::uint64_t> seed;
    int workers = 0;

    auto* sim = app.add_subcommand("simulate", "run the scenario simulation");
    sim->add_option("--config", config_path, "key = value config file");
    sim->add_option("--out", out_path, "output scenarios.csv path");
    sim->add_option("--seed", seed, "override the config seed");
    sim->add_option("--workers", workers, "worker threads (0 = hardware)");

    auto* cal = app.add_subcommand("calibrate", "fit one recovery model");
    cal->add_option("--scenarios", scenarios_path, "scenarios.csv path")->required();
    cal->add_option("--model", model, "constant | probit | structural")->required();
    cal->add_option("--lower", window.lower, "window lower threshold");
    cal->add_option("--upper", window.upper, "window upper threshold");
    cal->add_option("--bin-width", window.bin_width, "bin width");
    cal->add_option("--min-bin-count", window.min_bin_count, "minimum bin occupancy");
    cal->add_option("--mode", mode, "structural fit: recovery_space | loss_space");
    cal->add_option("--out", out_path, "calibration.csv path");
    cal->add_option("--model-out", model_out, "also write model.csv here");

    auto* risk = app.add_subcommand("risk", "VaR/ETL threshold sweep");
    risk->alias("sweep");
    risk->add_option("--scenarios", scenarios_path, "scenarios.csv path")->required();
    risk->add_option("--alpha", alpha, "confidence level");
    risk->add_option("--thresholds", thresholds, "lower thresholds")->delimiter(',');
    risk->add_option("--upper", window.upper, "window upper threshold");
    risk->add_option("--bin-width", window.bin_width, "bin width");
    risk->add_option("--min-bin-count", window.min_bin_count, "minimum bin occupancy");
    risk->add_option("--mode", mode, "structural fit: recovery_space | loss_space");
    risk->add_option("--out", out_path, "risk.csv path");

    auto* fig = app.add_subcommand("figdata", "emit figure data CSVs");
    fig->add_option("--scenarios", scenarios_path, "scenarios.csv path")->required();
    fig->add_option("--out", out_dir, "output directory");
    fig->add_option("--alpha", alpha, "confidence level");
    fig->add_option("--thresholds", thresholds, "lower thresholds")->delimiter(',');
    fig->add_option("--lower", window.lower, "calibration window lower threshold");
    fig->add_option("--upper", window.upper, "calibration window upper threshold");
    fig->add_option("--bin-width", window.bin_width, "bin width");
    fig->add_option("--mode", mode, "structural fit: recovery_space | loss_space");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (sim->parsed())
        return cmd_simulate(config_path, out_path, seed, workers);
    if (cal->parsed())
        return cmd_calibrate(scenarios_path, model, window, mode,
                             out_path.empty() ? "calibration.csv" : out_path,
                             model_out);
    if (risk->parsed())
        return cmd_risk(scenarios_path, alpha, thresholds, window, mode,
                        out_path.empty() ? "risk.csv" : out_path);
    if (fig->parsed())
        return cmd_figdata(scenarios_path, out_dir.empty() ? "." : out_dir, alpha,
                           thresholds, window, mode);
    return kExitUsage;
}
