#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "credit/risk.hpp"

using namespace credit;

namespace {

std::vector<double> ramp_losses() {
    std::vector<double> losses;
    for (int i = 1; i <= 1000; ++i)
        losses.push_back(0.001 * i);
    return losses;
}

ScenarioRecord make_record(double x_m, double p_d, double recovery) {
    ScenarioRecord rec;
    rec.x_m = x_m;
    rec.p_d = p_d;
    rec.n_defaults = p_d > 0.0 ? 1 : 0;
    if (p_d > 0.0) {
        rec.mean_recovery = recovery;
        rec.mean_loss = p_d * (1.0 - recovery);
    }
    return rec;
}

} // namespace

TEST_CASE("order-statistic VaR hand examples") {
    auto losses = ramp_losses();
    CHECK(value_at_risk(losses, 0.99) == 0.001 * 990);

    std::vector<double> flat(200, 0.37);
    CHECK(value_at_risk(flat, 0.99) == 0.37);

    // positive homogeneity
    auto scaled = losses;
    for (auto& v : scaled)
        v *= 2.5;
    CHECK(value_at_risk(scaled, 0.99) == 2.5 * value_at_risk(losses, 0.99));
}

TEST_CASE("tail-mean ETL hand examples") {
    auto losses = ramp_losses();
    double expected = 0.0;
    for (int i = 991; i <= 1000; ++i)
        expected += 0.001 * i;
    expected /= 10.0;
    CHECK(expected_tail_loss(losses, 0.99) == expected);

    std::vector<double> flat(200, 0.37);
    CHECK(expected_tail_loss(flat, 0.99) == 0.37);
    CHECK(expected_tail_loss(flat, 0.99) == value_at_risk(flat, 0.99));
}

TEST_CASE("ETL dominates VaR and grows with the confidence level") {
    std::mt19937_64 gen(3);
    std::exponential_distribution<double> expo(30.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> losses(2000);
        for (auto& v : losses)
            v = expo(gen);
        CHECK(expected_tail_loss(losses, 0.99) >= value_at_risk(losses, 0.99));
        CHECK(expected_tail_loss(losses, 0.95) >= value_at_risk(losses, 0.95));
        CHECK(expected_tail_loss(losses, 0.99) >= expected_tail_loss(losses, 0.95));
    }
}

TEST_CASE("translation and permutation behavior") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> losses(1500);
    for (auto& v : losses)
        v = unif(gen);

    double var0 = value_at_risk(losses, 0.99);
    double etl0 = expected_tail_loss(losses, 0.99);

    auto shiftedv = losses;
    for (auto& v : shiftedv)
        v += 0.25;
    CHECK(value_at_risk(shiftedv, 0.99) == doctest::Approx(var0 + 0.25).epsilon(1e-12));
    CHECK(expected_tail_loss(shiftedv, 0.99) == doctest::Approx(etl0 + 0.25).epsilon(1e-12));

    auto shuffled = losses;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(value_at_risk(shuffled, 0.99) == var0);
    CHECK(expected_tail_loss(shuffled, 0.99) == etl0);
}

TEST_CASE("sample-size precondition") {
    std::vector<double> losses(50, 0.1);
    CHECK_THROWS_AS(value_at_risk(losses, 0.99), std::domain_error);
    CHECK_THROWS_AS(expected_tail_loss(losses, 0.99), std::domain_error);
    CHECK_THROWS_AS(value_at_risk({}, 0.5), std::domain_error);
    CHECK_THROWS_AS(value_at_risk(losses, 1.5), std::domain_error);
}

TEST_CASE("model losses") {
    std::vector<ScenarioRecord> records = {make_record(-0.2, 0.3, 0.5),
                                           make_record(0.1, 0.0, 0.0)};

    auto full = model_losses(records, ConstantRecovery{1.0});
    CHECK(full[0] == 0.0);
    CHECK(full[1] == 0.0);

    auto worst = model_losses(records, ConstantRecovery{0.0});
    CHECK(worst[0] == 0.3);
    CHECK(worst[1] == 0.0);

    auto structural = model_losses(records, StructuralRecovery{0.1});
    CHECK(structural[1] == 0.0); // p_d = 0 scenario
    CHECK(structural[0] > 0.0);
}

TEST_CASE("risk sweep on zero-recovery records self-normalizes") {
    // All defaulted scenarios recover nothing, so the fitted constant model
    // reproduces the empirical losses exactly and the ratios are 1.
    std::vector<ScenarioRecord> records;
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> ux(-0.4, -0.01);
    std::uniform_real_distribution<double> up(0.01, 0.9);
    for (int i = 0; i < 2000; ++i)
        records.push_back(make_record(ux(gen), up(gen), 0.0));

    CalibrationWindow w{-0.35, 0.0, 0.01, 5};
    auto rows = risk_sweep(records, {-0.35}, 0.99, w);
    REQUIRE(rows.size() == 4); // baseline + 3 models
    CHECK(rows[0].model == "empirical");
    CHECK_FALSE(rows[0].lower_threshold.has_value());
    CHECK(rows[0].var > 0.0);

    for (const auto& row : rows)
        if (row.model == "constant") {
            REQUIRE(row.var_ratio.has_value());
            CHECK(*row.var_ratio == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(*row.etl_ratio == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("sweep cardinality and per-threshold failure isolation") {
    std::vector<ScenarioRecord> records;
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ux(-0.2, -0.01);
    std::uniform_real_distribution<double> up(0.05, 0.5);
    std::uniform_real_distribution<double> ur(0.3, 0.9);
    for (int i = 0; i < 3000; ++i)
        records.push_back(make_record(ux(gen), up(gen), ur(gen)));

    CalibrationWindow w{-0.35, 0.0, 0.01, 5};
    // -0.005 selects an empty window (all x_m < -0.01): its three rows
    // fail, the rest survive.
    auto rows = risk_sweep(records, {-0.2, -0.1, -0.005}, 0.99, w);
    CHECK(rows.size() == 3 * 3 + 1);

    int failed = 0, ok = 0;
    for (const auto& row : rows) {
        if (row.status == "calibration_error") {
            ++failed;
            CHECK(*row.lower_threshold == -0.005);
            CHECK_FALSE(row.var_ratio.has_value());
        } else if (row.lower_threshold) {
            ++ok;
        }
    }
    CHECK(failed == 3);
    CHECK(ok == 6);
}

TEST_CASE("risk.csv schema") {
    std::vector<ScenarioRecord> records;
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> ux(-0.3, -0.01);
    for (int i = 0; i < 1000; ++i)
        records.push_back(make_record(ux(gen), 0.2, 0.5));
    CalibrationWindow w{-0.35, 0.0, 0.01, 5};
    auto rows = risk_sweep(records, {-0.3}, 0.99, w);
    std::ostringstream out;
    write_risk_csv(out, rows);
    CHECK(out.str().find("model,lower_threshold,alpha,var,etl,var_ratio,etl_ratio,status") == 0);
}
