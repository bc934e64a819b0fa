#include <doctest.h>

#include <cmath>

#include "coglab/affect.hpp"
#include "coglab/rng.hpp"

using namespace coglab;
using namespace coglab::affect;

TEST_CASE("decay basics") {
    const auto table = DecayTable::defaults();
    // one elapsed day leaves the state untouched (T^0 factor)
    CHECK(decay(0.8, 1.0, "fear", table) == doctest::Approx(0.8));
    // two days at the calibrated fear exponent
    CHECK(decay(0.8, 2.0, "fear", table) ==
          doctest::Approx(0.8 * std::pow(2.0, -0.32)).epsilon(1e-12));
    CHECK(decay(0.8, 2.0, "fear", table) == doctest::Approx(0.6409).epsilon(1e-3));
    // below the activation threshold nothing decays
    CHECK(decay(0.5, 7.0, "trust", table) == doctest::Approx(0.5));
    // zero decays to zero; negative is a domain error
    CHECK(decay(0.0, 5.0, "fear", table) == doctest::Approx(0.0));
    CHECK_THROWS_AS(decay(-0.1, 2.0, "fear", table), NumericError);
    CHECK_THROWS_AS(decay(0.5, 0.5, "fear", table), InputError);
}

TEST_CASE("decay is monotone non-increasing in elapsed time") {
    const auto table = DecayTable::defaults();
    for (const auto& dim : {"fear", "greed", "joy", "sadness", "trust"}) {
        double prev = 1.0;
        for (double t = 1.0; t <= 40.0; t += 1.0) {
            const double v = decay(0.95, t, dim, table);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("fear half-life: numeric root matches closed form") {
    const auto table = DecayTable::defaults();
    const double e0 = 0.9;
    // bisection on E(T)/E0 = 0.5
    double lo = 1.0, hi = 64.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (decay(e0, mid, "fear", table) / e0 > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double numeric = 0.5 * (lo + hi);
    const double closed = std::pow(2.0, 1.0 / 0.32);
    CHECK(std::fabs(numeric - closed) <= 0.01);
    CHECK(closed == doctest::Approx(8.72).epsilon(1e-3));
}

TEST_CASE("holiday adjustment") {
    const auto table = HolidayTable::defaults();
    CHECK(holiday_adjust(1.0, "fear", true, table) == doctest::Approx(1.91));
    CHECK(holiday_adjust(1.0, "sadness", true, table) == doctest::Approx(1.00));
    CHECK(holiday_adjust(0.42, "fear", false, table) == doctest::Approx(0.42));
    CHECK(holiday_adjust(0.42, "unlisted", true, table) == doctest::Approx(0.42));
}

TEST_CASE("apply_shock amplifies losses and clamps") {
    auto reg = DimensionRegistry::default_registry();
    const auto cfg = ShockConfig::defaults();
    CognitiveVector v(reg, {{"fear", 0.10}, {"trust", 0.80}});

    auto res = apply_shock(v, "fear_event", cfg, 0.5);
    CHECK(res.state.get_or_zero("fear") == doctest::Approx(0.85));
    // trust: 0.80 - 0.70*1.5 = -0.25
    CHECK(res.state.get_or_zero("trust") == doctest::Approx(-0.25));
    CHECK_FALSE(res.fragile);

    auto fragile = apply_shock(v, "fear_event", cfg, 1.5572);
    CHECK(fragile.fragile);

    CHECK_THROWS_AS(apply_shock(v, "alien_event", cfg, 0.5), InputError);

    ShockConfig empty = cfg;
    empty.delta_e["noop"] = {};
    auto noop = apply_shock(v, "noop", empty, 0.5);
    CHECK(noop.state.scores() == v.scores());
}

TEST_CASE("shock asymmetry is not reversible") {
    auto reg = DimensionRegistry::default_registry();
    ShockConfig cfg = ShockConfig::defaults();
    cfg.delta_e["up"] = {{"trust", 0.3}};
    cfg.delta_e["down"] = {{"trust", -0.3}};
    CognitiveVector v(reg, {{"trust", 0.1}});
    auto after_up = apply_shock(v, "up", cfg, 0.0);
    auto after_down = apply_shock(after_up.state, "down", cfg, 0.0);
    // +0.3 then -0.3*1.5 lands at 0.1 + 0.3 - 0.45 = -0.05, not the start
    CHECK(after_down.state.get_or_zero("trust") == doctest::Approx(-0.05));
}

TEST_CASE("satellite step single terms and composites") {
    const auto coeffs = SatelliteCoeffs::defaults();
    // joy alone activates the first coefficient
    auto only_joy = satellite_step(1.0, 0.0, 0.0, 0.0, 0.0, coeffs);
    CHECK(only_joy.fomo == doctest::Approx(0.8543));
    // joy with hot consensus adds the main effect and the interaction
    auto hot = satellite_step(1.0, 0.0, 1.0, 0.0, 0.0, coeffs);
    CHECK(hot.fomo == doctest::Approx(0.8543 + 0.1234 - 0.4567).epsilon(1e-12));
    CHECK(hot.fomo == doctest::Approx(0.5210).epsilon(1e-9));
    // everything zero stays zero
    auto zero = satellite_step(0.0, 0.0, 0.0, 0.0, 0.0, coeffs);
    CHECK(zero.fomo == doctest::Approx(0.0));
    CHECK(zero.greed == doctest::Approx(0.0));
    CHECK(zero.d_uncertainty == doctest::Approx(0.0));
    CHECK(zero.regret == doctest::Approx(0.0));
    // outputs clamp to [-1, 1]
    SatelliteCoeffs big = coeffs;
    big.fomo = {5.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(satellite_step(1.0, 0.0, 0.0, 0.0, 0.0, big).fomo == doctest::Approx(1.0));
}

TEST_CASE("fit_decay recovers calibrated exponents exactly") {
    for (const double alpha : {0.05, 0.11, 0.20, 0.25, 0.32}) {
        std::vector<DecaySample> samples;
        Rng rng(1000 + static_cast<std::uint64_t>(alpha * 100));
        for (int i = 0; i < 24; ++i) {
            const double e0 = uniform(rng, 0.3, 1.0);
            const double t = 1.0 + uniform_index(rng, 14);
            samples.push_back({e0, t, std::pow(t, -alpha) * e0});
        }
        const auto fit = fit_decay(samples);
        CHECK(std::fabs(fit.alpha - alpha) / alpha <= 1e-6);
        CHECK(fit.beta0 == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(fit.beta2 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.r_squared == doctest::Approx(1.0));
    }
}

TEST_CASE("fit_decay input validation") {
    std::vector<DecaySample> three = {{0.5, 1, 0.5}, {0.5, 2, 0.4}, {0.5, 3, 0.35}};
    CHECK_THROWS_AS(fit_decay(three), InputError);

    // constant T makes the ln(T) column collinear with the intercept
    std::vector<DecaySample> flat(6, DecaySample{0.5, 2.0, 0.4});
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i].e_start = 0.3 + 0.1 * i;
    CHECK_THROWS_AS(fit_decay(flat), NumericError);
}

TEST_CASE("fit_satellite recovers coefficients from noiseless rows") {
    const std::array<double, 5> truth = {0.8, 0.2, 0.1, -0.4, -0.15};
    std::vector<SatelliteSample> rows;
    Rng rng(77);
    for (int i = 0; i < 30; ++i) {
        SatelliteSample s;
        s.x = uniform(rng, -1.0, 1.0);
        s.v_x = uniform(rng, -0.5, 0.5);
        s.mcfi = uniform01(rng);
        s.y = truth[0] * s.x + truth[1] * s.v_x + truth[2] * s.mcfi +
              truth[3] * s.x * s.mcfi + truth[4] * s.v_x * s.mcfi;
        rows.push_back(s);
    }
    const auto fit = fit_satellite(rows);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(fit.coefficients[i] == doctest::Approx(truth[i]).epsilon(1e-9));
    }

    // zero response: all coefficients zero
    for (auto& r : rows) r.y = 0.0;
    const auto zero_fit = fit_satellite(rows);
    for (double c : zero_fit.coefficients) CHECK(c == doctest::Approx(0.0));

    // one row duplicated has no rank
    std::vector<SatelliteSample> dup(10, rows[0]);
    CHECK_THROWS_AS(fit_satellite(dup), NumericError);
}

TEST_CASE("holiday_test decision rule") {
    SUBCASE("identical samples: no effect") {
        std::vector<double> s = {0.1, 0.2, 0.15, 0.12, 0.18};
        auto res = holiday_test(s, s);
        CHECK(res.t == doctest::Approx(0.0));
        CHECK(res.p_one_tailed == doctest::Approx(0.5));
        CHECK(res.multiplier == doctest::Approx(1.0));
    }
    SUBCASE("large shift: multiplier = mean ratio") {
        Rng rng(31);
        std::vector<double> normal_days(20), holidays(20);
        for (std::size_t i = 0; i < 20; ++i) {
            normal_days[i] = 0.10 + normal(rng, 0.0, 0.01);
            holidays[i] = normal_days[i] + 0.10;
        }
        auto res = holiday_test(holidays, normal_days);
        CHECK(res.p_one_tailed < 1e-3);
        double mh = 0, mn = 0;
        for (double v : holidays) mh += v;
        for (double v : normal_days) mn += v;
        CHECK(res.multiplier == doctest::Approx((mh / 20) / (mn / 20)).epsilon(1e-12));
    }
    SUBCASE("elevated but insignificant ratio collapses to 1.0") {
        // wide spread, small n: ratio 1.68 but p > 0.05
        std::vector<double> holidays = {0.30, 0.05, 0.22, 0.07};
        std::vector<double> normal_days = {0.12, 0.08, 0.10, 0.08};
        auto res = holiday_test(holidays, normal_days);
        CHECK(res.p_one_tailed > 0.05);
        CHECK(res.multiplier == doctest::Approx(1.0));
    }
    SUBCASE("degenerate variance") {
        std::vector<double> flat = {0.1, 0.1, 0.1};
        CHECK_THROWS_AS(holiday_test(flat, flat), NumericError);
    }
}
