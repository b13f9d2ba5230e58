#include <doctest.h>

#include <cmath>
#include <vector>

#include "credit/process.hpp"

using namespace credit;

namespace {

ModelParams diffusion_params() {
    ModelParams p;
    p.process_kind = ProcessKind::diffusion;
    return p;
}

MarketPath zero_market(int steps) {
    MarketPath m;
    m.market_shocks.assign(steps, 0.0);
    m.market_jumps.assign(steps, 0.0);
    return m;
}

} // namespace

TEST_CASE("philox streams are reproducible and distinct") {
    CounterRng a(42, 7, 3), b(42, 7, 3), c(42, 7, 4);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    CounterRng a2(42, 7, 3);
    for (int i = 0; i < 100; ++i)
        if (a2.next_u64() != c.next_u64())
            differs = true;
    CHECK(differs);
}

TEST_CASE("uniform draws lie in (0,1) with plausible mean") {
    CounterRng rng(1, 0, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws have plausible first two moments") {
    CounterRng rng(2, 0, 0);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double z = rng.next_normal();
        sum += z;
        sumsq += z * z;
    }
    CHECK(std::fabs(sum / n) <= 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("zero intensity consumes no draws and always returns 0") {
    CounterRng rng(3, 0, 0), twin(3, 0, 0);
    for (int i = 0; i < 10; ++i)
        CHECK(sample_jump_count(0.0, 0.004, rng) == 0);
    CHECK(rng.next_u64() == twin.next_u64());
}

TEST_CASE("Poisson frequencies match the counting distribution") {
    const double lambda = 0.005, t = 1.0;
    CounterRng rng(4, 0, 0);
    const int n = 1000000;
    int count0 = 0, count1 = 0;
    for (int i = 0; i < n; ++i) {
        int k = sample_jump_count(lambda, t, rng);
        if (k == 0) ++count0;
        else if (k == 1) ++count1;
    }
    double p0 = std::exp(-lambda * t);              // 0.9950125
    double p1 = lambda * t * std::exp(-lambda * t); // 0.0049751
    double se0 = std::sqrt(p0 * (1 - p0) / n);
    double se1 = std::sqrt(p1 * (1 - p1) / n);
    CHECK(std::fabs(static_cast<double>(count0) / n - p0) <= 4 * se0);
    CHECK(std::fabs(static_cast<double>(count1) / n - p1) <= 4 * se1);
}

TEST_CASE("Poisson frequencies at a moderate mean") {
    const double mean = 2.0;
    CounterRng rng(5, 0, 0);
    const int n = 400000;
    std::vector<int> hist(8, 0);
    for (int i = 0; i < n; ++i) {
        int k = sample_jump_count(mean, 1.0, rng);
        if (k < static_cast<int>(hist.size()))
            ++hist[static_cast<std::size_t>(k)];
    }
    double pk = std::exp(-mean);
    for (int k = 0; k < 6; ++k) {
        double se = std::sqrt(pk * (1 - pk) / n);
        CHECK(std::fabs(static_cast<double>(hist[static_cast<std::size_t>(k)]) / n - pk) <= 4 * se);
        pk *= mean / (k + 1);
    }
}

TEST_CASE("jump increment basics") {
    CounterRng rng(6, 0, 0);
    auto jp = shifted_lognormal_params(0.4, 0.3);
    CHECK(sample_jump_increment(jp, 0, rng) == 0.0);

    JumpSizeParams degenerate;
    degenerate.mu_log = std::log(0.4);
    degenerate.sigma_log = 0.0;
    CHECK(sample_jump_increment(degenerate, 1, rng) == doctest::Approx(-0.6).epsilon(1e-14));
}

TEST_CASE("jump increment mean matches E[Lambda] = mean_shifted - 1") {
    CounterRng rng(7, 0, 0);
    auto jp = shifted_lognormal_params(0.4, 0.3);
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = sample_jump_increment(jp, 1, rng);
        CHECK(v >= -1.0);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / n;
    double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::fabs(mean - (-0.6)) <= 4 * sd / std::sqrt(n));
}

TEST_CASE("deterministic limits of the Euler scheme") {
    ModelParams p = diffusion_params();
    p.sigma = 0.0;
    p.lambda = 0.0;
    p.mu = 0.05;
    p.v0 = 100.0;

    p.steps = 1;
    CounterRng rng(0, 0, 1);
    CHECK(simulate_firm_terminal(p, zero_market(1), rng) == doctest::Approx(105.0).epsilon(1e-14));

    p.steps = 2;
    CounterRng rng2(0, 0, 1);
    CHECK(simulate_firm_terminal(p, zero_market(2), rng2) ==
          doctest::Approx(100.0 * 1.025 * 1.025).epsilon(1e-14));
}

TEST_CASE("sample mean over firms on a zero-shock market path") {
    ModelParams p = diffusion_params();
    p.steps = 250;
    auto market = zero_market(p.steps);

    const int firms = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < firms; ++k) {
        CounterRng rng(11, 0, static_cast<std::uint32_t>(k) + 1);
        double ratio = simulate_firm_terminal(p, market, rng) / p.v0;
        sum += ratio;
        sumsq += ratio * ratio;
    }
    double mean = sum / firms;
    double sd = std::sqrt(sumsq / firms - mean * mean);
    double expected = std::pow(1.0 + p.mu * p.dt(), p.steps);
    CHECK(std::fabs(mean - expected) <= 4 * sd / std::sqrt(firms));
}

TEST_CASE("terminal values are nonnegative even under huge volatility") {
    ModelParams p = diffusion_params();
    p.sigma = 5.0;
    p.steps = 50;
    CounterRng market_rng(13, 0, 0);
    auto market = make_market_path(p, market_rng);
    for (int k = 0; k < 200; ++k) {
        CounterRng rng(13, 0, static_cast<std::uint32_t>(k) + 1);
        CHECK(simulate_firm_terminal(p, market, rng) >= 0.0);
    }
}

TEST_CASE("c=1 and lambda=0 makes all firms identical") {
    ModelParams p = diffusion_params();
    p.c = 1.0;
    p.lambda = 0.0;
    p.steps = 25;
    CounterRng market_rng(17, 0, 0);
    auto market = make_market_path(p, market_rng);
    CounterRng r1(17, 0, 1), r2(17, 0, 2);
    CHECK(simulate_firm_terminal(p, market, r1) == simulate_firm_terminal(p, market, r2));
}

TEST_CASE("lambda=0 jump-diffusion is bit-identical to diffusion") {
    ModelParams d = diffusion_params();
    d.steps = 40;
    ModelParams j = d;
    j.process_kind = ProcessKind::jump_diffusion;
    j.lambda = 0.0;

    CounterRng md(19, 0, 0), mj(19, 0, 0);
    auto path_d = make_market_path(d, md);
    auto path_j = make_market_path(j, mj);
    CHECK(path_d.market_shocks == path_j.market_shocks);
    CHECK(path_d.market_jumps == path_j.market_jumps);

    CounterRng fd(19, 0, 1), fj(19, 0, 1);
    CHECK(simulate_firm_terminal(d, path_d, fd) == simulate_firm_terminal(j, path_j, fj));
}

TEST_CASE("market path has one shock and one jump slot per step") {
    ModelParams p = diffusion_params();
    p.steps = 33;
    CounterRng rng(23, 0, 0);
    auto market = make_market_path(p, rng);
    CHECK(market.market_shocks.size() == 33);
    CHECK(market.market_jumps.size() == 33);
}

TEST_CASE("params validation names the offending field") {
    ModelParams p = diffusion_params();
    p.c = 1.5;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("c"), std::invalid_argument);
    p = diffusion_params();
    p.steps = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}
