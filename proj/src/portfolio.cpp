#include "credit/portfolio.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "credit/csv.hpp"

namespace credit {

double firm_loss(double v_terminal, double face) {
    double ratio = v_terminal / face;
    return ratio < 1.0 ? 1.0 - ratio : 0.0;
}

ScenarioRecord record_from_terminals(const std::vector<double>& terminals, double v0,
                                     double face, std::int64_t scenario_id) {
    ScenarioRecord rec;
    rec.scenario_id = scenario_id;
    const auto k = static_cast<double>(terminals.size());
    double return_sum = 0.0;
    double loss_sum = 0.0;
    double recovery_sum = 0.0;
    int defaults = 0;
    for (double v : terminals) {
        return_sum += v / v0 - 1.0;
        if (v < face) {
            ++defaults;
            recovery_sum += v / face;
            loss_sum += 1.0 - v / face;
        }
    }
    rec.x_m = return_sum / k;
    rec.n_defaults = defaults;
    rec.p_d = defaults / k;
    rec.mean_loss = loss_sum / k;
    if (defaults > 0)
        rec.mean_recovery = recovery_sum / defaults;
    return rec;
}

ScenarioRecord run_scenario(const ModelParams& params, std::int64_t scenario_id,
                            std::uint64_t master_seed) {
    const auto scen = static_cast<std::uint64_t>(scenario_id);
    CounterRng market_rng(master_seed, scen, 0);
    MarketPath market = make_market_path(params, market_rng);
    auto base = shared_step_base(params, market);

    std::vector<double> terminals(params.firms);
    for (int k = 0; k < params.firms; ++k) {
        CounterRng firm_rng(master_seed, scen, static_cast<std::uint32_t>(k) + 1);
        terminals[k] = simulate_firm_terminal(params, base, firm_rng);
    }
    return record_from_terminals(terminals, params.v0, params.face, scenario_id);
}

ScenarioSet run_simulation(const ModelParams& params, int workers, double work_budget) {
    validate(params);
    double work = static_cast<double>(params.scenarios) * params.firms * params.steps;
    if (work > work_budget)
        throw std::runtime_error("run_simulation: M*K*N = " + std::to_string(work) +
                                 " exceeds the work budget of " +
                                 std::to_string(work_budget));

    ScenarioSet set;
    set.params = params;
    set.records.resize(static_cast<std::size_t>(params.scenarios));

    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1)
        workers = 1;
    if (static_cast<std::int64_t>(workers) > params.scenarios)
        workers = static_cast<int>(params.scenarios);

    auto worker = [&](int w) {
        for (std::int64_t id = w; id < params.scenarios; id += workers)
            set.records[static_cast<std::size_t>(id)] =
                run_scenario(params, id, params.seed);
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker, w);
        for (auto& t : pool)
            t.join();
    }
    return set;
}

namespace {
const char kScenarioHeader[] = "scenario_id,x_m,n_defaults,p_d,mean_recovery,mean_loss";
}

void write_scenarios_csv(std::ostream& out, const ScenarioSet& set) {
    out << kScenarioHeader << '\n';
    for (const auto& rec : set.records) {
        out << rec.scenario_id << ',' << csv::format_double(rec.x_m) << ','
            << rec.n_defaults << ',' << csv::format_double(rec.p_d) << ',';
        if (rec.mean_recovery)
            out << csv::format_double(*rec.mean_recovery);
        out << ',' << csv::format_double(rec.mean_loss) << '\n';
    }
}

void write_scenarios_csv(const std::string& path, const ScenarioSet& set) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_scenarios_csv(out, set);
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

std::vector<ScenarioRecord> read_scenarios_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || csv::split_line(line) != csv::split_line(kScenarioHeader))
        throw std::runtime_error("scenarios.csv: missing or wrong header");

    std::vector<ScenarioRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto f = csv::split_line(line);
        if (f.size() != 6)
            throw std::runtime_error("scenarios.csv: expected 6 fields, got " +
                                     std::to_string(f.size()));
        ScenarioRecord rec;
        rec.scenario_id = csv::parse_int(f[0]);
        rec.x_m = csv::parse_double(f[1]);
        rec.n_defaults = static_cast<int>(csv::parse_int(f[2]));
        rec.p_d = csv::parse_double(f[3]);
        if (!f[4].empty())
            rec.mean_recovery = csv::parse_double(f[4]);
        rec.mean_loss = csv::parse_double(f[5]);
        records.push_back(rec);
    }
    return records;
}

std::vector<ScenarioRecord> read_scenarios_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_scenarios_csv(in);
}

} // namespace credit
