#include "credit/process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace credit {

void validate(const ModelParams& params) {
    auto fail = [](const std::string& field, const std::string& what) {
        throw std::invalid_argument("ModelParams." + field + ": " + what);
    };
    if (!(params.sigma >= 0.0)) fail("sigma", "must be >= 0");
    if (!(params.c >= 0.0 && params.c <= 1.0)) fail("c", "must lie in [0,1]");
    if (!(params.lambda >= 0.0)) fail("lambda", "must be >= 0");
    if (!(params.v0 > 0.0)) fail("v0", "must be > 0");
    if (!(params.face > 0.0)) fail("face", "must be > 0");
    if (!(params.maturity > 0.0)) fail("maturity", "must be > 0");
    if (params.steps < 1) fail("steps", "must be >= 1");
    if (params.firms < 1) fail("firms", "must be >= 1");
    if (params.scenarios < 1) fail("scenarios", "must be >= 1");
}

int poisson_from_uniform(double mean, double p0, double u) {
    if (u <= p0)
        return 0;
    double term = p0;
    double cum = p0;
    int n = 0;
    while (u > cum) {
        ++n;
        term *= mean / n;
        cum += term;
        if (n > 1000000)
            break; // unreachable for finite mean
    }
    return n;
}

int sample_jump_count(double lambda, double dt, CounterRng& rng) {
    double mean = lambda * dt;
    if (mean <= 0.0)
        return 0;
    return poisson_from_uniform(mean, std::exp(-mean), rng.next_uniform());
}

double sample_jump_increment(const JumpSizeParams& jp, int count, CounterRng& rng) {
    double sum = 0.0;
    for (int i = 0; i < count; ++i)
        sum += std::exp(jp.mu_log + jp.sigma_log * rng.next_normal()) - 1.0;
    return sum;
}

MarketPath make_market_path(const ModelParams& params, CounterRng& rng) {
    MarketPath path;
    path.market_shocks.resize(params.steps);
    path.market_jumps.assign(params.steps, 0.0);
    const bool jumps = params.jumps_enabled();
    const double dt = params.dt();
    const double p0 = jumps ? std::exp(-params.lambda * dt) : 1.0;
    for (int t = 0; t < params.steps; ++t) {
        path.market_shocks[t] = rng.next_normal();
        if (jumps) {
            int n = poisson_from_uniform(params.lambda * dt, p0, rng.next_uniform());
            if (n > 0)
                path.market_jumps[t] = sample_jump_increment(params.jump, n, rng);
        }
    }
    return path;
}

std::vector<double> shared_step_base(const ModelParams& params, const MarketPath& market) {
    const double dt = params.dt();
    const double drift = 1.0 + params.mu * dt;
    const double w_m = std::sqrt(params.c) * params.sigma * std::sqrt(dt);
    std::vector<double> base(static_cast<std::size_t>(params.steps));
    for (int t = 0; t < params.steps; ++t) {
        auto u = static_cast<std::size_t>(t);
        base[u] = drift + w_m * market.market_shocks[u] + market.market_jumps[u];
    }
    return base;
}

double simulate_firm_terminal(const ModelParams& params, const MarketPath& market,
                              CounterRng& rng) {
    return simulate_firm_terminal(params, shared_step_base(params, market), rng);
}

double simulate_firm_terminal(const ModelParams& params, const std::vector<double>& base,
                              CounterRng& rng) {
    const int n = params.steps;
    const double dt = params.dt();
    const double w_k = std::sqrt(1.0 - params.c) * params.sigma * std::sqrt(dt);
    const bool jumps = params.jumps_enabled();
    const double mean_jumps = params.lambda * dt;
    const double p0 = jumps ? std::exp(-mean_jumps) : 1.0;

    double value = params.v0;
    for (int t = 0; t < n; ++t) {
        double factor = base[static_cast<std::size_t>(t)] + w_k * rng.next_normal();
        if (jumps) {
            int cnt = poisson_from_uniform(mean_jumps, p0, rng.next_uniform());
            if (cnt > 0)
                factor += sample_jump_increment(params.jump, cnt, rng);
        }
        if (factor <= 0.0)
            return 0.0; // absorbed, firm worthless thereafter
        value *= factor;
    }
    return value;
}

} // namespace credit
