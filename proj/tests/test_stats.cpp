#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coglab/rng.hpp"
#include "coglab/stats.hpp"
#include "fixtures/stats_oracle_fixture.h"

using namespace coglab;
using namespace coglab::stats;

TEST_CASE("pearson basics") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    auto same = pearson(x, x);
    CHECK(same.r == doctest::Approx(1.0));
    CHECK(same.p_two_sided == doctest::Approx(0.0));

    std::vector<double> a = {1, 2, 3};
    std::vector<double> b = {6, 4, 5};
    CHECK(pearson(a, b).r == doctest::Approx(-0.5));

    CHECK_THROWS_AS(pearson(a, std::vector<double>{1, 2}), InputError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{3, 4}),
                    InputError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, b), NumericError);
}

TEST_CASE("pearson is symmetric and affine-invariant") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(20), y(20);
        for (auto& v : x) v = normal(rng);
        for (auto& v : y) v = normal(rng);
        const double r_xy = pearson(x, y).r;
        const double r_yx = pearson(y, x).r;
        CHECK(r_xy == doctest::Approx(r_yx).epsilon(1e-12));

        std::vector<double> xs(20), ys(20);
        const double scale = 0.5 + uniform01(rng) * 3.0;
        const double shift = normal(rng) * 10.0;
        for (std::size_t i = 0; i < 20; ++i) {
            xs[i] = scale * x[i] + shift;
            ys[i] = 2.5 * y[i] - shift;
        }
        CHECK(pearson(xs, y).r == doctest::Approx(r_xy).epsilon(1e-9));
        CHECK(pearson(x, ys).r == doctest::Approx(r_xy).epsilon(1e-9));
    }
}

TEST_CASE("welch t: identical samples give t=0, p=0.5") {
    std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
    auto res = welch_t_one_tailed(a, a);
    CHECK(res.t == doctest::Approx(0.0));
    CHECK(res.p_one_tailed == doctest::Approx(0.5));
}

TEST_CASE("welch t: strong shift is decisive") {
    std::vector<double> base(20), shifted(20);
    Rng rng(7);
    for (std::size_t i = 0; i < 20; ++i) {
        base[i] = normal(rng, 0.0, 0.01);
        shifted[i] = base[i] + 10.0;
    }
    auto res = welch_t_one_tailed(shifted, base);
    CHECK(res.p_one_tailed < 1e-6);
}

TEST_CASE("welch t: rejects single-observation samples") {
    CHECK_THROWS_AS(welch_t_one_tailed(std::vector<double>{1.0},
                                       std::vector<double>{1.0, 2.0}),
                    InputError);
    CHECK_THROWS_AS(welch_t_one_tailed(std::vector<double>{1.0, 1.0},
                                       std::vector<double>{2.0, 2.0}),
                    NumericError);
}

TEST_CASE("welch t matches the reference oracle") {
    for (const auto& c : oracle::welch_cases()) {
        CAPTURE(c.name);
        auto res = welch_t_one_tailed(c.a, c.b);
        CHECK(res.t == doctest::Approx(c.t).epsilon(1e-9));
        CHECK(std::fabs(res.p_one_tailed - c.p_one_tailed) <=
              0.10 * std::fabs(c.p_one_tailed));
    }
}

TEST_CASE("icc: identical and offset raters score 1") {
    std::vector<std::pair<double, double>> identical;
    std::vector<std::pair<double, double>> offset;
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const double v = normal(rng, 0.0, 2.0);
        identical.emplace_back(v, v);
        offset.emplace_back(v, v + 1.5);
    }
    CHECK(icc(identical) == doctest::Approx(1.0));
    CHECK(icc(offset) == doctest::Approx(1.0));
}

TEST_CASE("icc: independent raters stay near zero") {
    Rng rng(13);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 200; ++i) pairs.emplace_back(normal(rng), normal(rng));
    CHECK(std::fabs(icc(pairs)) < 0.2);
}

TEST_CASE("icc symmetry under rater swap") {
    Rng rng(17);
    std::vector<std::pair<double, double>> pairs, swapped;
    for (int i = 0; i < 40; ++i) {
        const double a = normal(rng), b = 0.6 * a + normal(rng, 0.0, 0.3);
        pairs.emplace_back(a, b);
        swapped.emplace_back(b, a);
    }
    CHECK(icc(pairs) == doctest::Approx(icc(swapped)).epsilon(1e-12));
}

TEST_CASE("icc input validation") {
    CHECK_THROWS_AS(icc(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}),
                    InputError);
    CHECK_THROWS_AS(
        icc(std::vector<std::pair<double, double>>{{1, 2}, {1, 2}, {1, 2}}),
        NumericError);
}

TEST_CASE("shapiro-wilk matches the reference oracle") {
    for (const auto& c : oracle::shapiro_cases()) {
        CAPTURE(c.name);
        auto res = shapiro_wilk(c.sample);
        CHECK(std::fabs(res.w - c.w) <= 1e-3);
        CHECK(std::fabs(res.p - c.p) <= 0.10 * std::fabs(c.p));
    }
}

TEST_CASE("shapiro-wilk sanity on fresh samples") {
    Rng rng(23);
    std::vector<double> gaussian(100), skewed(100);
    for (auto& v : gaussian) v = normal(rng);
    for (auto& v : skewed) v = -std::log(1.0 - uniform01(rng));  // exponential
    CHECK(shapiro_wilk(gaussian).p > 0.05);
    CHECK(shapiro_wilk(skewed).p < 0.01);

    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1.0, 1.0, 1.0}), NumericError);
    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1.0, 2.0}), InputError);
    std::vector<double> too_many(5001, 0.0);
    CHECK_THROWS_AS(shapiro_wilk(too_many), InputError);
}

TEST_CASE("jsd basics") {
    std::vector<double> p = {0.5, 0.5};
    CHECK(js_divergence(p, p) == doctest::Approx(0.0));

    std::vector<double> disjoint_a = {1.0, 0.0};
    std::vector<double> disjoint_b = {0.0, 1.0};
    CHECK(js_divergence(disjoint_a, disjoint_b) == doctest::Approx(1.0));

    std::vector<double> q = {1.0, 0.0};
    CHECK(js_divergence(p, q) == doctest::Approx(0.311278).epsilon(1e-5));

    CHECK_THROWS_AS(js_divergence(p, std::vector<double>{1.0}), InputError);
    CHECK_THROWS_AS(js_divergence(p, std::vector<double>{0.7, 0.7}), InputError);
}

TEST_CASE("jsd properties on random distributions") {
    Rng rng(29);
    auto random_dist = [&](std::size_t n) {
        std::vector<double> d(n);
        double total = 0.0;
        for (auto& v : d) {
            v = uniform01(rng) + 1e-12;
            total += v;
        }
        for (auto& v : d) v /= total;
        return d;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 12;
        auto p = random_dist(n), q = random_dist(n), r = random_dist(n);
        const double pq = js_divergence(p, q);
        CHECK(pq >= 0.0);
        CHECK(pq <= 1.0);
        CHECK(pq == doctest::Approx(js_divergence(q, p)).epsilon(1e-12));
        // sqrt(JSD) obeys the triangle inequality
        const double pr = js_divergence(p, r);
        const double qr = js_divergence(q, r);
        CHECK(std::sqrt(pq) <= std::sqrt(pr) + std::sqrt(qr) + 1e-9);
    }
}

TEST_CASE("ols exact fits and diagnostics") {
    // y = 2x
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (int i = 1; i <= 8; ++i) {
        design.push_back({static_cast<double>(i)});
        y.push_back(2.0 * i);
    }
    auto fit = ols(design, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    // noiseless 3-regressor recovery
    Rng rng(31);
    std::vector<std::vector<double>> d3;
    std::vector<double> y3;
    const double c0 = 1.5, c1 = -0.7, c2 = 0.25;
    for (int i = 0; i < 40; ++i) {
        const double a = normal(rng), b = normal(rng), c = normal(rng);
        d3.push_back({a, b, c});
        y3.push_back(c0 * a + c1 * b + c2 * c);
    }
    auto fit3 = ols(d3, y3);
    CHECK(fit3.coefficients[0] == doctest::Approx(c0).epsilon(1e-9));
    CHECK(fit3.coefficients[1] == doctest::Approx(c1).epsilon(1e-9));
    CHECK(fit3.coefficients[2] == doctest::Approx(c2).epsilon(1e-9));

    // duplicated column is rank-deficient
    std::vector<std::vector<double>> dup;
    std::vector<double> ydup;
    for (int i = 0; i < 10; ++i) {
        const double a = normal(rng);
        dup.push_back({a, a});
        ydup.push_back(a);
    }
    CHECK_THROWS_AS(ols(dup, ydup), NumericError);
}

TEST_CASE("ols residuals are orthogonal to the design") {
    Rng rng(37);
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
        const double a = normal(rng), b = normal(rng);
        design.push_back({1.0, a, b, a * b});
        y.push_back(0.3 + 1.2 * a - 0.5 * b + 0.8 * a * b + normal(rng, 0.0, 0.4));
    }
    auto fit = ols(design, y);
    for (std::size_t col = 0; col < 4; ++col) {
        double dot = 0.0;
        for (std::size_t r = 0; r < design.size(); ++r) {
            double yhat = 0.0;
            for (std::size_t j = 0; j < 4; ++j) yhat += design[r][j] * fit.coefficients[j];
            dot += (y[r] - yhat) * design[r][col];
        }
        CHECK(std::fabs(dot) <= 1e-9);
    }
}

TEST_CASE("ols p-values flag pure noise coefficients") {
    Rng rng(41);
    int significant = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> design;
        std::vector<double> y;
        for (int i = 0; i < 50; ++i) {
            const double a = normal(rng);
            design.push_back({1.0, a});
            y.push_back(normal(rng));  // unrelated
        }
        if (ols(design, y).p_values[1] < 0.05) ++significant;
    }
    CHECK(significant <= 4);  // ~5% false positive rate
}

TEST_CASE("moments") {
    std::vector<double> two = {10.0, 30.0};
    auto m = moments(two);
    CHECK(m.mean == doctest::Approx(20.0));
    CHECK(m.sd == doctest::Approx(10.0));
    CHECK(*m.cv == doctest::Approx(0.5));

    std::vector<double> sym = {-1.0, 0.0, 1.0};
    auto ms = moments(sym);
    CHECK(*ms.skewness == doctest::Approx(0.0));
    CHECK_FALSE(ms.cv.has_value());  // zero-mean cv is undefined

    std::vector<double> constant = {3.0, 3.0, 3.0};
    auto mc = moments(constant);
    CHECK(mc.sd == doctest::Approx(0.0));
    CHECK(*mc.cv == doctest::Approx(0.0));
    CHECK_FALSE(mc.skewness.has_value());
    CHECK_FALSE(mc.kurtosis_excess.has_value());

    CHECK_THROWS_AS(moments(std::vector<double>{1.0}), InputError);
}

TEST_CASE("entropy") {
    CHECK(entropy(std::vector<double>{1, 1, 1}) == doctest::Approx(std::log(3.0)));
    CHECK(entropy(std::vector<double>{5, 0, 0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(entropy(std::vector<double>{}), InputError);
    CHECK_THROWS_AS(entropy(std::vector<double>{0, 0}), InputError);
}

TEST_CASE("histogram mass normalizes and respects edges") {
    std::vector<double> data = {0.0, 0.5, 1.0, 1.5, 2.0};
    auto h = Histogram::with_bins(data, 4, 0.0, 2.0);
    const auto mass = h.mass();
    double total = 0.0;
    for (double v : mass) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.counts().back() == doctest::Approx(2.0));  // 1.5 and the top edge 2.0

    CHECK_THROWS_AS(Histogram({1.0, 1.0}, data), InputError);
}
