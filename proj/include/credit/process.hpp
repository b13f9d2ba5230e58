#pragma once

#include <cstdint>
#include <vector>

#include "credit/gaussmath.hpp"
#include "credit/rng.hpp"

namespace credit {

enum class ProcessKind { diffusion, jump_diffusion };

/// Process and portfolio constants for one simulation run.
struct ModelParams {
    double mu = 0.05;          // drift per unit time
    double sigma = 0.15;       // volatility per sqrt(time)
    double c = 0.5;            // market correlation weight in [0,1]
    double lambda = 0.005;     // jump intensity per unit time
    JumpSizeParams jump = lognormal_jump_params(0.4, 0.44);
    double v0 = 100.0;         // initial market value
    double face = 75.0;        // zero-coupon face value F
    double maturity = 1.0;     // T
    int steps = 250;           // N, dt = T/N
    int firms = 500;           // K
    std::int64_t scenarios = 100000; // M
    std::uint64_t seed = 42;
    ProcessKind process_kind = ProcessKind::diffusion;

    double dt() const { return maturity / steps; }
    bool jumps_enabled() const {
        return process_kind == ProcessKind::jump_diffusion && lambda > 0.0;
    }
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& params);

/// One realization of the market terms, shared by all firms of a scenario.
struct MarketPath {
    std::vector<double> market_shocks; // eta_{m,t}, standard normal
    std::vector<double> market_jumps;  // dJ_{m,t}, compound jump increments
};

/// Number of jumps in one step, Poisson(lambda*dt). Consumes no draws when
/// the intensity is zero, so diffusion and jump-diffusion streams coincide
/// at lambda = 0.
int sample_jump_count(double lambda, double dt, CounterRng& rng);

/// Inversion of the Poisson CDF from a single uniform; p0 = exp(-mean).
int poisson_from_uniform(double mean, double p0, double u);

/// Compound jump increment: sum of `count` independent draws of Lambda,
/// where Lambda + 1 ~ LN(mu_log, sigma_log). Each Lambda >= -1.
double sample_jump_increment(const JumpSizeParams& jp, int count, CounterRng& rng);

/// Draw the market terms for one scenario.
MarketPath make_market_path(const ModelParams& params, CounterRng& rng);

/// Per-step factor contribution shared by every firm of a scenario:
/// base[t] = 1 + mu dt + sqrt(c) sigma eta_{m,t} sqrt(dt) + dJ_{m,t}.
std::vector<double> shared_step_base(const ModelParams& params, const MarketPath& market);

/// As simulate_firm_terminal below, with the shared base precomputed once
/// per scenario instead of once per firm.
double simulate_firm_terminal(const ModelParams& params, const std::vector<double>& base,
                              CounterRng& rng);

/// Terminal firm value under the multiplicative Euler scheme. The per-step
/// factor is floored at 0 and the firm stays worthless afterwards.
double simulate_firm_terminal(const ModelParams& params, const MarketPath& market,
                              CounterRng& rng);

} // namespace credit
