#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "tdprplan/tdpr.hpp"
#include "test_util.hpp"

using namespace tdprplan;

namespace {

// Rockafellar-Uryasev oracle: min_W W + (1/beta) sum p*max(0, x - W),
// scanned over the sample breakpoints.
double cvar_ru_oracle(const std::vector<double>& x, const std::vector<double>& p,
                      double beta) {
    double best = std::numeric_limits<double>::infinity();
    for (double w : x) {
        double acc = w;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += p[i] * std::max(0.0, x[i] - w) / beta;
        best = std::min(best, acc);
    }
    return best;
}

ScenarioSet single_plant_set(const std::vector<std::vector<double>>& per_sample_hours,
                             int S, int D) {
    ScenarioSet set;
    set.plants = {"p1"};
    set.num_scenarios = S;
    set.num_days = D;
    set.prob = uniform_probabilities(S);
    set.values.resize(static_cast<std::size_t>(S) * D * kHoursPerDay);
    std::size_t i = 0;
    for (int s = 0; s < S; ++s)
        for (int d = 0; d < D; ++d, ++i)
            for (int h = 0; h < kHoursPerDay; ++h)
                set.at(0, s, d, h) = per_sample_hours[i][h];
    return set;
}

}  // namespace

TEST_CASE("hourly forecast is the weighted flat average") {
    // 2 scenarios x 2 days, hour-1 values {9000, 9400, 8800, 9200} -> 9100
    std::vector<std::vector<double>> samples(4, std::vector<double>(24, 500.0));
    samples[0][0] = 9000;
    samples[1][0] = 9400;
    samples[2][0] = 8800;
    samples[3][0] = 9200;
    const auto set = single_plant_set(samples, 2, 2);
    const auto fc = hourly_forecast(set, "p1");
    CHECK(fc.values[0] == doctest::Approx(9100.0).epsilon(1e-12));
    for (int h = 1; h < 24; ++h) CHECK(fc.values[h] == doctest::Approx(500.0));
    CHECK_THROWS_AS(hourly_forecast(set, "nope"), ValidationError);
}

TEST_CASE("forecast of a 32x30 random set matches the brute-force average") {
    const auto set = testutil::make_scenarios(7, 32, 30, {"w"}, 150.0, 30.0);
    const auto fc = hourly_forecast(set, "w");
    for (int h = 0; h < 24; ++h) {
        double acc = 0.0;
        for (int s = 0; s < 32; ++s)
            for (int d = 0; d < 30; ++d) acc += set.at(0, s, d, h);
        CHECK(fc.values[h] == doctest::Approx(acc / (32.0 * 30.0)).epsilon(1e-9));
    }
}

TEST_CASE("aggregate error: worked single-plant sample") {
    // production 9200 against forecast 9000 at an hour -> error 200
    std::vector<std::vector<double>> samples(2, std::vector<double>(24, 100.0));
    samples[0][0] = 9200;
    samples[1][0] = 8800;  // forecast at hour 1 = 9000
    const auto set = single_plant_set(samples, 2, 1);
    const auto err = aggregate_error(set, {"p1"}, {1.0});
    CHECK(err.at(0, 0, 0) == doctest::Approx(200.0));
    CHECK(err.at(1, 0, 0) == doctest::Approx(-200.0));
}

TEST_CASE("opposite deviations cancel in the system error") {
    auto set = testutil::make_scenarios(3, 4, 2, {"a", "b"}, 200.0, 25.0);
    // force b = 300 - a so deviations are exactly opposite
    for (int s = 0; s < 4; ++s)
        for (int d = 0; d < 2; ++d)
            for (int h = 0; h < 24; ++h)
                set.at(1, s, d, h) = 300.0 - set.at(0, s, d, h);
    const auto err = aggregate_error(set, {"a", "b"}, {1.0, 1.0});
    for (double v : err.values) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("zero weight removes a plant from the system error") {
    const auto set = testutil::make_scenarios(11, 3, 2, {"a", "b"}, 120.0, 20.0);
    const auto both = aggregate_error(set, {"a", "b"}, {1.0, 0.0});
    const auto only_a = aggregate_error(set, {"a"}, {1.0});
    for (std::size_t i = 0; i < both.values.size(); ++i)
        CHECK(both.values[i] == doctest::Approx(only_a.values[i]).epsilon(1e-12));
    CHECK_THROWS_AS(aggregate_error(set, {"a"}, {1.5}), ValidationError);
}

TEST_CASE("error samples are centered per hour") {
    const auto set = testutil::make_scenarios(5, 8, 4, {"a", "b"}, 120.0, 20.0);
    const auto err = aggregate_error(set, {"a", "b"}, {1.0, 0.7});
    for (int h = 0; h < 24; ++h) {
        double mean = 0.0;
        for (int s = 0; s < 8; ++s)
            for (int d = 0; d < 4; ++d) mean += set.prob[s] / 4.0 * err.at(s, d, h);
        CHECK(std::abs(mean) < 1e-6 * 120.0);
    }
}

TEST_CASE("error variation: the worked 200 / -300 example gives 500 at hour 1") {
    ErrorSamples err;
    err.num_scenarios = 1;
    err.num_days = 1;
    err.values.assign(24, 0.0);
    err.at(0, 0, 0) = 200.0;
    err.at(0, 0, 1) = -300.0;
    const auto var = error_variation(err);
    CHECK(var.at(0, 0, 0) == 500.0);
}

TEST_CASE("constant error has zero variation; truncate flags hour 24") {
    ErrorSamples err;
    err.num_scenarios = 2;
    err.num_days = 1;
    err.values.assign(48, 3.25);
    const auto wrap = error_variation(err, HourBoundary::kWrap);
    for (double v : wrap.values) CHECK(v == 0.0);
    CHECK_FALSE(wrap.truncated_last_hour);

    err.at(0, 0, 23) = 10.0;
    const auto trunc = error_variation(err, HourBoundary::kTruncate);
    CHECK(trunc.truncated_last_hour);
    CHECK(trunc.at(0, 0, 23) == 0.0);
}

TEST_CASE("error variation matches elementwise brute force on random data") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    ErrorSamples err;
    err.num_scenarios = 10;
    err.num_days = 1;
    err.values.resize(240);
    for (auto& v : err.values) v = u(rng);
    const auto var = error_variation(err, HourBoundary::kWrap);
    for (int s = 0; s < 10; ++s)
        for (int h = 0; h < 24; ++h) {
            const double expect =
                std::abs(err.at(s, 0, h) - err.at(s, 0, (h + 1) % 24));
            CHECK(var.at(s, 0, h) == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("cvar of {1..10} at beta 0.2 is the mean of the top two") {
    std::vector<double> x(10);
    std::iota(x.begin(), x.end(), 1.0);
    const std::vector<double> p(10, 0.1);
    CHECK(cvar_empirical(x, p, 0.2) == doctest::Approx(9.5).epsilon(1e-12));
    CHECK(cvar_empirical(x, p, 1.0) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK_THROWS_AS(cvar_empirical({}, {}, 0.5), ValidationError);
    CHECK_THROWS_AS(cvar_empirical(x, p, 0.0), ValidationError);
    CHECK_THROWS_AS(cvar_empirical(x, p, 1.5), ValidationError);
}

TEST_CASE("cvar equals the breakpoint-scan Rockafellar-Uryasev optimum") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(200), p(200);
        double mass = 0.0;
        for (int i = 0; i < 200; ++i) {
            x[i] = u(rng);
            p[i] = 0.5 + u(rng) / 100.0;
            mass += p[i];
        }
        for (auto& v : p) v /= mass;
        for (double beta : {0.05, 0.1, 0.5, 1.0})
            CHECK(cvar_empirical(x, p, beta) ==
                  doctest::Approx(cvar_ru_oracle(x, p, beta)).epsilon(1e-7));
    }
}

TEST_CASE("tdpr profile endpoints") {
    const auto set = testutil::make_scenarios(21, 6, 3, {"w"}, 100.0, 18.0);
    const auto err = aggregate_error(set, {"w"}, {1.0});
    const auto var = error_variation(err);

    const auto lam0 = tdpr_profile(var, set, {0.0, 0.1, true});
    for (int h = 0; h < 24; ++h)
        CHECK(lam0.tdpr[h] == doctest::Approx(lam0.mean_component[h]).epsilon(1e-12));

    // lambda=1, beta=1: CVaR over the whole mass is the mean again
    const auto deg = tdpr_profile(var, set, {1.0, 1.0, true});
    for (int h = 0; h < 24; ++h)
        CHECK(deg.tdpr[h] == doctest::Approx(deg.mean_component[h]).epsilon(1e-9));
}

TEST_CASE("tdpr profile matches a full independent recomputation") {
    const auto set = testutil::make_scenarios(77, 32, 4, {"w"}, 100.0, 22.0);
    const ReserveConfig cfg{0.5, 0.1, true};
    const auto prof = compute_tdpr(set, {"w"}, {1.0}, cfg);

    const auto err = aggregate_error(set, {"w"}, {1.0});
    const auto var = error_variation(err);
    for (int h = 0; h < 24; ++h) {
        std::vector<double> x, p;
        double mean = 0.0;
        for (int s = 0; s < 32; ++s)
            for (int d = 0; d < 4; ++d) {
                x.push_back(var.at(s, d, h));
                p.push_back(set.prob[s] / 4.0);
                mean += p.back() * x.back();
            }
        const double cvar = cvar_ru_oracle(x, p, cfg.beta);
        CHECK(prof.mean_component[h] == doctest::Approx(mean).epsilon(1e-9));
        CHECK(prof.cvar_component[h] == doctest::Approx(cvar).epsilon(1e-7));
        CHECK(prof.tdpr[h] == doctest::Approx(0.5 * mean + 0.5 * cvar).epsilon(1e-7));
        CHECK(prof.cvar_component[h] >= prof.mean_component[h] - 1e-9);
    }
}

TEST_CASE("monotonicity in lambda and beta") {
    const auto set = testutil::make_scenarios(31, 12, 3, {"w"}, 100.0, 20.0);
    const auto err = aggregate_error(set, {"w"}, {1.0});
    const auto var = error_variation(err);
    double prev0 = -1.0;
    for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto p = tdpr_profile(var, set, {lam, 0.1, true});
        if (prev0 >= 0.0) CHECK(p.tdpr[0] >= prev0 - 1e-9);
        prev0 = p.tdpr[0];
    }
    double prev_cvar = std::numeric_limits<double>::infinity();
    for (double beta : {0.05, 0.1, 0.3, 0.7, 1.0}) {
        const auto p = tdpr_profile(var, set, {1.0, beta, true});
        CHECK(p.cvar_component[5] <= prev_cvar + 1e-9);
        prev_cvar = p.cvar_component[5];
    }
}

TEST_CASE("positive homogeneity and translation invariance") {
    auto set = testutil::make_scenarios(55, 6, 2, {"w"}, 100.0, 15.0);
    const ReserveConfig cfg{0.4, 0.15, true};
    const auto base = compute_tdpr(set, {"w"}, {1.0}, cfg);

    auto scaled = set;
    for (auto& v : scaled.values) v *= 2.5;
    const auto prof2 = compute_tdpr(scaled, {"w"}, {1.0}, cfg);
    for (int h = 0; h < 24; ++h)
        CHECK(prof2.tdpr[h] == doctest::Approx(2.5 * base.tdpr[h]).epsilon(1e-9));

    // adding a scenario-independent hourly profile leaves errors unchanged
    auto shifted = set;
    for (int s = 0; s < 6; ++s)
        for (int d = 0; d < 2; ++d)
            for (int h = 0; h < 24; ++h) shifted.at(0, s, d, h) += 7.0 * h;
    const auto prof3 = compute_tdpr(shifted, {"w"}, {1.0}, cfg);
    for (int h = 0; h < 24; ++h)
        CHECK(prof3.tdpr[h] == doctest::Approx(base.tdpr[h]).epsilon(1e-9));
}

TEST_CASE("portfolio subadditivity and the deterministic case") {
    const auto set = testutil::make_scenarios(91, 8, 2, {"a", "b"}, 100.0, 18.0);
    const ReserveConfig cfg{0.6, 0.2, true};
    const auto ab = compute_tdpr(set, {"a", "b"}, {1.0, 1.0}, cfg);
    const auto a = compute_tdpr(set, {"a"}, {1.0}, cfg);
    const auto b = compute_tdpr(set, {"b"}, {1.0}, cfg);
    for (int h = 0; h < 24; ++h)
        CHECK(ab.tdpr[h] <= a.tdpr[h] + b.tdpr[h] + 1e-9);

    auto flat = testutil::make_scenarios(3, 1, 2, {"a"}, 100.0, 10.0);
    const auto det = compute_tdpr(flat, {"a"}, {1.0}, cfg);
    // single scenario: forecast per hour is the day-average, so errors are
    // day deviations; with identical days the profile is exactly zero
    for (int d = 1; d < 2; ++d)
        for (int h = 0; h < 24; ++h) flat.at(0, 0, d, h) = flat.at(0, 0, 0, h);
    const auto det2 = compute_tdpr(flat, {"a"}, {1.0}, cfg);
    for (int h = 0; h < 24; ++h) CHECK(det2.tdpr[h] == doctest::Approx(0.0));
    (void)det;
}
