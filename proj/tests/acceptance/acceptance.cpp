// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Criterion 10 drives the CLI binary named by
// COGLAB_BIN over the bundled data named by COGLAB_DATA.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "coglab/affect.hpp"
#include "coglab/backtest.hpp"
#include "coglab/garch.hpp"
#include "coglab/macrostate.hpp"
#include "coglab/rng.hpp"
#include "coglab/stats.hpp"
#include "coglab/strategy.hpp"
#include "coglab/textlab.hpp"
#include "fixtures/stats_oracle_fixture.h"
#include "tools/ic_fixture.hpp"

namespace fs = std::filesystem;
using namespace coglab;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %2d: %-34s %s (%.2fs)\n", pass ? "PASS" : "FAIL",
                criterion, name.c_str(), detail.c_str(), seconds);
    if (!pass) ++g_failures;
}

// ---- 1. information-coefficient fixture --------------------------------------

void criterion_ic_fixture() {
    Timer timer;
    const std::vector<double> idx(cli::fixture::kIndexPctChange.begin(),
                                  cli::fixture::kIndexPctChange.end());
    const auto ra = stats::pearson(
        std::vector<double>(cli::fixture::kModelA.begin(), cli::fixture::kModelA.end()),
        idx);
    const auto rb = stats::pearson(
        std::vector<double>(cli::fixture::kModelB.begin(), cli::fixture::kModelB.end()),
        idx);
    const auto rc = stats::pearson(
        std::vector<double>(cli::fixture::kModelC.begin(), cli::fixture::kModelC.end()),
        idx);
    const bool pass = std::fabs(ra.r - 0.761) <= 0.005 && ra.p_two_sided < 1e-4 &&
                      std::fabs(rb.r - 0.757) <= 0.005 &&
                      std::fabs(rc.r - (-0.121)) <= 0.005 && ra.r > rb.r && rb.r > rc.r &&
                      timer.seconds() < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "rA=%.4f (p=%.2e) rB=%.4f rC=%.4f ordered=%d",
                  ra.r, ra.p_two_sided, rb.r, rc.r, int(ra.r > rb.r && rb.r > rc.r));
    report(1, "ic fixture reproduction", pass, detail, timer.seconds());
}

// ---- 2. gjr-garch correctness --------------------------------------------------

void criterion_gjr() {
    Timer timer;
    bool pass = true;
    std::string why = "ok";

    const garch::GarchParams hand{0.1, 0.1, 0.1, 0.8};
    if (garch::gjr_step(1.0, -1.0, hand) != 1.1) pass = false;
    if (garch::gjr_step(1.0, 1.0, hand) != 1.0) pass = false;
    const garch::GarchParams degenerate{0.37, 0.0, 0.0, 0.0};
    if (garch::gjr_step(5.0, -3.0, degenerate) != 0.37) pass = false;
    if (!pass) why = "hand recursion mismatch";

    const auto arsenal = garch::ParamArsenal::defaults();
    Rng rng(20240615);
    for (int trial = 0; pass && trial < 10000; ++trial) {
        const auto q = macro::kQuadrants[uniform_index(rng, 6)];
        const auto& e = arsenal.entries.at(q);
        const garch::GarchParams p{std::max(1e-9, uniform(rng, e.omega.lo, e.omega.hi)),
                                   uniform(rng, e.alpha.lo, e.alpha.hi),
                                   uniform(rng, e.alpha_neg.lo, e.alpha_neg.hi),
                                   uniform(rng, e.beta.lo, e.beta.hi)};
        const double h_prev = uniform(rng, 0.0, 3.0);
        const double eps = uniform(rng, 0.0, 1.5);
        const double h_neg = garch::gjr_step(h_prev, -eps, p);
        const double h_pos = garch::gjr_step(h_prev, eps, p);
        if (!(h_neg > 0.0 && h_pos > 0.0)) {
            pass = false;
            why = "positivity violated";
        }
        if (std::fabs((h_neg - h_pos) - p.alpha_neg * eps * eps) > 1e-12) {
            pass = false;
            why = "asymmetry identity violated";
        }
    }

    const garch::GarchParams mc{0.05, 0.05, 0.10, 0.80};
    const double target = mc.omega / (1.0 - mc.alpha - 0.5 * mc.alpha_neg - mc.beta);
    double h = target, acc = 0.0;
    const int burn = 2000, steps = 200000;
    Rng mc_rng(777);
    for (int t = 0; t < burn + steps; ++t) {
        const double eps = normal(mc_rng) * std::sqrt(h);
        h = garch::gjr_step(h, eps, mc);
        if (t >= burn) acc += h;
    }
    const double rel = std::fabs(acc / steps - target) / target;
    if (rel >= 0.05) {
        pass = false;
        why = "long-run variance off by " + std::to_string(rel);
    }
    pass = pass && timer.seconds() < 5.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%s; LRV rel err=%.3f", why.c_str(), rel);
    report(2, "gjr-garch correctness", pass, detail, timer.seconds());
}

// ---- 3. decay calibration round-trip -------------------------------------------

void criterion_decay() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    for (const double alpha : {0.05, 0.11, 0.20, 0.25, 0.32}) {
        std::vector<affect::DecaySample> samples;
        Rng rng(static_cast<std::uint64_t>(alpha * 1e4));
        for (int i = 0; i < 30; ++i) {
            const double e0 = uniform(rng, 0.2, 1.0);
            const double t = 1.0 + uniform_index(rng, 20);
            samples.push_back({e0, t, e0 * std::pow(t, -alpha)});
        }
        const auto fit = affect::fit_decay(samples);
        const double rel = std::fabs(fit.alpha - alpha) / alpha;
        worst = std::max(worst, rel);
        if (rel > 1e-6) pass = false;
    }

    const auto table = affect::DecayTable::defaults();
    double lo = 1.0, hi = 64.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (affect::decay(0.9, mid, "fear", table) / 0.9 > 0.5 ? lo : hi) = mid;
    }
    const double half_life = 0.5 * (lo + hi);
    const double closed = std::pow(2.0, 1.0 / 0.32);
    if (std::fabs(half_life - closed) > 0.01) pass = false;

    char detail[160];
    std::snprintf(detail, sizeof(detail), "worst alpha rel err=%.1e; T1/2=%.3f vs %.3f",
                  worst, half_life, closed);
    report(3, "decay calibration round-trip", pass, detail, timer.seconds());
}

// ---- 4. crash drill --------------------------------------------------------------

void criterion_crash_drill() {
    Timer timer;
    // Synthetic scenario: calm rise, fear crosses the stop threshold the
    // day before a single -8% day, then a weak rebound.
    const double closes[] = {100.0, 100.6, 101.2, 101.8, 102.4, 94.2, 94.8, 95.3, 95.9, 96.3};
    const double fears[] = {0.05, 0.06, 0.05, 0.07, 0.40, 0.55, 0.45, 0.35, 0.30, 0.25};
    backtest::PriceSeries prices;
    std::vector<strategy::DayFeatures> days;
    for (int i = 0; i < 10; ++i) {
        prices.points.push_back({Date(2025, 6, 2 + i), closes[i], {}, {}, {}});
        strategy::DayFeatures f;
        f.date = Date(2025, 6, 2 + i);
        f.novice_fear = fears[i];
        f.mdi = i == 0 ? 0.10 : 0.5;  // entry consensus on day 1 only
        f.mcfi = i == 0 ? 0.50 : 0.2;
        f.h_fear = 0.25;
        days.push_back(f);
    }

    strategy::StrategyConfig dyn_cfg;
    strategy::StrategyConfig base_cfg;
    base_cfg.mode = strategy::Mode::Baseline;
    const auto dyn_signals = strategy::run_strategy(days, dyn_cfg);
    const auto base_signals = strategy::run_strategy(days, base_cfg);

    auto exposures = [](const std::vector<strategy::SignalDay>& sd) {
        std::vector<double> out;
        for (const auto& d : sd) out.push_back(d.exposure);
        return out;
    };
    backtest::BacktestConfig bt;
    const auto dyn = backtest::simulate_portfolio(prices, exposures(dyn_signals), bt);
    const auto base = backtest::simulate_portfolio(prices, exposures(base_signals), bt);
    const auto da = backtest::defensive_alpha(dyn, base, bt);

    bool pass = dyn.max_drawdown < base.max_drawdown && da.da > 0.0;
    if (std::fabs(da.safety_buffer - da.da / 0.0026) > 1e-12) pass = false;

    // the published defensive-alpha figure is internally consistent with
    // a ~33x buffer at the 0.26% cost
    const double published_buffer = 0.086 / 0.0026;
    if (std::fabs(published_buffer - 33.1) > 0.05) pass = false;

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "mdd dyn=%.4f < base=%.4f; da=%.4f buffer=%.1fx; 0.086/0.0026=%.1f",
                  dyn.max_drawdown, base.max_drawdown, da.da, da.safety_buffer,
                  published_buffer);
    report(4, "crash drill", pass, detail, timer.seconds());
}

// ---- 5. cost accounting exactness --------------------------------------------------

void criterion_cost() {
    Timer timer;
    backtest::PriceSeries flat;
    for (int i = 0; i < 3; ++i) flat.points.push_back({Date(2025, 6, 1 + i), 100.0, {}, {}, {}});
    const auto res = backtest::simulate_portfolio(flat, {1.0, 1.0, 0.0}, {});
    const double expected = (1.0 - 0.0026) * (1.0 - 0.0026);
    bool pass = std::fabs(res.equity.back() - expected) <= 1e-12;

    Rng rng(31337);
    for (int trial = 0; pass && trial < 1000; ++trial) {
        const int n = 3 + static_cast<int>(uniform_index(rng, 15));
        backtest::PriceSeries s;
        std::vector<double> exposures;
        double level = 100.0;
        for (int i = 0; i < n; ++i) {
            level *= 1.0 + uniform(rng, -0.06, 0.06);
            s.points.push_back({Date(2024, 1, 1).plus_days(i), level, {}, {}, {}});
            exposures.push_back(0.5 * uniform_index(rng, 3));
        }
        backtest::BacktestConfig costly;
        costly.cost_rate = uniform(rng, 1e-5, 0.02);
        backtest::BacktestConfig free;
        free.cost_rate = 0.0;
        if (backtest::simulate_portfolio(s, exposures, costly).equity.back() >
            backtest::simulate_portfolio(s, exposures, free).equity.back() + 1e-15) {
            pass = false;
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof(detail), "enter/exit equity=%.12f target=%.12f",
                  res.equity.back(), expected);
    report(5, "cost accounting exactness", pass, detail, timer.seconds());
}

// ---- 6. perturbation regime reproduction --------------------------------------------

textlab::TemplateSet acceptance_templates() {
    textlab::TemplateSet t;
    t.cells[{Persona::Novice, "crash"}] = {
        "又跌了这么多{event}真的让人受不了账户全是绿色的我现在完全不知道该怎么办了{slang}",
        "为什么每次都是我刚买进去就开始跌{event}感觉自己就是反向指标了真的服气{slang}",
        "早上还红的好好的下午直接跳水{event}这种走势谁顶得住啊我都麻了{slang}",
    };
    t.cells[{Persona::Veteran, "crash"}] = {
        "这波下跌其实早有征兆{event}量能萎缩结构恶化建议大家控制仓位等待企稳信号{slang}",
        "经历过几轮牛熊的人都明白{event}现在恐慌毫无意义关键看政策底什么时候出现{slang}",
    };
    return t;
}

textlab::SlangDictionary acceptance_slang() {
    textlab::SlangDictionary slang;
    slang.categories["Despair"] = {{"关灯吃面", ""}, {"天台见", ""}};
    slang.categories["Euphoria"] = {{"满仓干", ""}, {"GOGOGO", ""}};
    slang.categories["Denial"] = {{"假摔", ""}};
    slang.categories["Cynicism"] = {{"都是剧本", ""}};
    return slang;
}

void criterion_regimes() {
    Timer timer;
    const textlab::GenerationContext ctx{"crash", "大盘跌破三千点"};
    const std::map<Persona, double> dist = {{Persona::Novice, 0.6},
                                            {Persona::Veteran, 0.4}};
    const auto templates = acceptance_templates();
    const auto slang = acceptance_slang();

    auto lengths_for = [&](double i_rhythm, std::uint64_t seed) {
        textlab::GenerationPhysics physics;
        physics.i_rhythm = i_rhythm;
        const auto batch = textlab::generate_synthetic_comments(ctx, dist, physics, slang,
                                                                templates, 40, seed);
        std::vector<double> lengths;
        for (const auto& item : batch) {
            for (const auto& s : textlab::segment_sentences(item.text)) {
                lengths.push_back(static_cast<double>(s.length));
            }
        }
        return lengths;
    };

    double mean_cv[3] = {0, 0, 0};
    const double rhythms[3] = {0.1, 0.85, 1.2};
    std::vector<double> pooled_mid;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (int k = 0; k < 3; ++k) {
            const auto lengths = lengths_for(rhythms[k], seed);
            mean_cv[k] += stats::moments(lengths).cv.value() / 50.0;
            if (k == 1 && pooled_mid.size() < 4500) {
                pooled_mid.insert(pooled_mid.end(), lengths.begin(), lengths.end());
            }
        }
    }
    const bool cv_ordered = mean_cv[0] < mean_cv[1] && mean_cv[1] < mean_cv[2];

    if (pooled_mid.size() > 5000) pooled_mid.resize(5000);
    const auto sw = stats::shapiro_wilk(pooled_mid);
    const double skew = stats::moments(pooled_mid).skewness.value();
    const bool pass =
        cv_ordered && sw.p < 0.05 && skew > 0.5 && timer.seconds() < 30.0;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "cv: %.3f < %.3f < %.3f (%d); SW p=%.2e skew=%.2f", mean_cv[0],
                  mean_cv[1], mean_cv[2], int(cv_ordered), sw.p, skew);
    report(6, "perturbation regime reproduction", pass, detail, timer.seconds());
}

// ---- 7. statistics oracle equivalence ------------------------------------------------

void criterion_stats_oracle() {
    Timer timer;
    bool pass = true;
    std::string why = "ok";

    double worst_w = 0.0, worst_p = 0.0;
    for (const auto& c : oracle::shapiro_cases()) {
        const auto res = stats::shapiro_wilk(c.sample);
        worst_w = std::max(worst_w, std::fabs(res.w - c.w));
        if (c.p > 0.0) {
            worst_p = std::max(worst_p, std::fabs(res.p - c.p) / c.p);
        }
    }
    if (worst_w > 1e-3) {
        pass = false;
        why = "shapiro W off";
    }
    if (worst_p > 0.10) {
        pass = false;
        why = "shapiro p off";
    }

    for (const auto& c : oracle::welch_cases()) {
        const auto res = stats::welch_t_one_tailed(c.a, c.b);
        if (std::fabs(res.p_one_tailed - c.p_one_tailed) > 0.10 * c.p_one_tailed) {
            pass = false;
            why = "welch p off on " + std::string(c.name);
        }
    }

    {
        std::vector<std::pair<double, double>> identical, offset;
        Rng rng(5150);
        for (int i = 0; i < 25; ++i) {
            const double v = normal(rng);
            identical.emplace_back(v, v);
            offset.emplace_back(v, v + 2.0);
        }
        if (std::fabs(stats::icc(identical) - 1.0) > 1e-12 ||
            std::fabs(stats::icc(offset) - 1.0) > 1e-12) {
            pass = false;
            why = "icc consistency form broken";
        }
    }

    {
        Rng rng(9000);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 2 + trial % 8;
            std::vector<double> p(n), q(n);
            double sp = 0, sq = 0;
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = uniform01(rng) + 1e-12;
                q[i] = uniform01(rng) + 1e-12;
                sp += p[i];
                sq += q[i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                p[i] /= sp;
                q[i] /= sq;
            }
            const double pq = stats::js_divergence(p, q);
            const double qp = stats::js_divergence(q, p);
            if (pq < 0.0 || pq > 1.0 || std::fabs(pq - qp) > 1e-12 ||
                stats::js_divergence(p, p) != 0.0) {
                pass = false;
                why = "jsd property violated";
            }
        }
        if (stats::js_divergence(std::vector<double>{1.0, 0.0},
                                 std::vector<double>{0.0, 1.0}) != 1.0) {
            pass = false;
            why = "jsd disjoint != 1";
        }
    }

    {
        Rng rng(6502);
        std::vector<std::vector<double>> design;
        std::vector<double> y;
        for (int i = 0; i < 80; ++i) {
            const double a = normal(rng), b = normal(rng);
            design.push_back({1.0, a, b, a * b});
            y.push_back(0.4 - 0.9 * a + 0.2 * b + 1.1 * a * b + normal(rng, 0.0, 0.3));
        }
        const auto fit = stats::ols(design, y);
        for (std::size_t col = 0; col < 4 && pass; ++col) {
            double dot = 0.0;
            for (std::size_t r = 0; r < design.size(); ++r) {
                double yhat = 0.0;
                for (std::size_t j = 0; j < 4; ++j) {
                    yhat += design[r][j] * fit.coefficients[j];
                }
                dot += (y[r] - yhat) * design[r][col];
            }
            if (std::fabs(dot) > 1e-9) {
                pass = false;
                why = "ols residuals not orthogonal";
            }
        }
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail), "%s; worst |dW|=%.1e worst p rel=%.1e",
                  why.c_str(), worst_w, worst_p);
    report(7, "statistics oracle equivalence", pass, detail, timer.seconds());
}

// ---- 8. fingerprint ordering ----------------------------------------------------------

void criterion_fingerprint_ordering() {
    Timer timer;
    textlab::Lexicons lex;  // length metrics need no lexicon entries

    auto sentence_of = [](std::size_t len) {
        std::string s;
        for (std::size_t i = 0; i < len; ++i) s += "\xE5\xA3\xB0";  // one CJK scalar
        s += "\xE3\x80\x82";
        return s;
    };
    auto heavy_tailed = [&](std::uint64_t seed) {
        Rng rng(seed);
        std::vector<std::string> corpus;
        for (int t = 0; t < 30; ++t) {
            std::string text;
            const int n = 6 + static_cast<int>(uniform_index(rng, 6));
            for (int s = 0; s < n; ++s) {
                const double len = std::exp(normal(rng, 2.6, 0.55));
                text += sentence_of(static_cast<std::size_t>(std::clamp(len, 2.0, 90.0)));
            }
            corpus.push_back(text);
        }
        return corpus;
    };
    auto smooth = [&](std::uint64_t seed) {
        Rng rng(seed);
        std::vector<std::string> corpus;
        for (int t = 0; t < 30; ++t) {
            std::string text;
            for (int s = 0; s < 8; ++s) {
                text += sentence_of(17 + uniform_index(rng, 2));
            }
            corpus.push_back(text);
        }
        return corpus;
    };

    const auto ref = textlab::fingerprint(heavy_tailed(11), lex);
    const auto like = textlab::fingerprint(heavy_tailed(22), lex);
    const auto flat = textlab::fingerprint(smooth(33), lex);
    const auto jsd_like = textlab::compare_corpora(like, ref);
    const auto jsd_flat = textlab::compare_corpora(flat, ref);

    const bool pass =
        jsd_like.at("sentence_length_sd") < jsd_flat.at("sentence_length_sd") &&
        jsd_like.at("avg_sentence_length") < jsd_flat.at("avg_sentence_length");
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "len_sd: %.4f < %.4f; avg_len: %.4f < %.4f",
                  jsd_like.at("sentence_length_sd"), jsd_flat.at("sentence_length_sd"),
                  jsd_like.at("avg_sentence_length"), jsd_flat.at("avg_sentence_length"));
    report(8, "fingerprint ordering", pass, detail, timer.seconds());
}

// ---- 9. macro-state unit oracles --------------------------------------------------------

void criterion_macro_oracles() {
    Timer timer;
    bool pass = true;
    auto reg = DimensionRegistry::default_registry();
    Rng rng(4242);
    for (int trial = 0; pass && trial < 1000; ++trial) {
        std::map<std::string, double> a, b;
        for (const auto& dim : reg->labels()) {
            if (uniform01(rng) < 0.5) a[dim] = uniform(rng, -1.0, 1.0);
            if (uniform01(rng) < 0.5) b[dim] = uniform(rng, -1.0, 1.0);
        }
        PersonaDayState st{Date(2025, 1, 2), CognitiveVector(reg, a),
                           CognitiveVector(reg, b), 0.0, false, false};
        double acc = 0.0;
        for (const auto& dim : reg->labels()) {
            const double lhs = a.count(dim) ? a.at(dim) : 0.0;
            const double rhs = b.count(dim) ? b.at(dim) : 0.0;
            acc += (lhs - rhs) * (lhs - rhs);
        }
        if (std::fabs(macro::mdi(st) - std::sqrt(acc)) > 1e-12) pass = false;

        const double joy = uniform01(rng), ant = uniform01(rng);
        if (macro::mcfi(joy, ant) != 0.6 * joy + 0.4 * ant) pass = false;
    }

    const auto protos = macro::QuadrantPrototypes::defaults();
    for (int trial = 0; pass && trial < 1000; ++trial) {
        macro::MacroFeatures f{uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 1.0),
                               uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5),
                               uniform01(rng)};
        const auto member = macro::quadrant_membership(f, protos);
        double total = 0.0;
        for (double p : member.probabilities) total += p;
        if (std::fabs(total - 1.0) > 1e-9) pass = false;

        std::size_t best = 0;
        for (std::size_t q = 1; q < 6; ++q) {
            if (member.probabilities[q] > member.probabilities[best]) best = q;
        }
        if (member.dominant != macro::kQuadrants[best]) pass = false;
    }
    report(9, "macro-state unit oracles", pass, pass ? "mdi/mcfi/membership exact" : "mismatch",
           timer.seconds());
}

// ---- 10. determinism envelope -----------------------------------------------------------

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        out[entry.path().filename().string()] = buf.str();
    }
    return out;
}

void criterion_determinism() {
    Timer timer;
    const char* bin = std::getenv("COGLAB_BIN");
    const char* data = std::getenv("COGLAB_DATA");
    if (!bin || !data) {
        report(10, "determinism envelope", false, "COGLAB_BIN/COGLAB_DATA not set",
               timer.seconds());
        return;
    }
    const std::string data_dir(data);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"ingest", "ingest " + data_dir + "/reports"},
        {"macro", "macro " + data_dir + "/reports"},
        {"backtest", "backtest --prices " + data_dir + "/prices/demo_2025.csv --reports " +
                         data_dir + "/reports --mode dynamic"},
        {"abtest", "abtest --a " + data_dir + "/abtest/model_a.csv --b " + data_dir +
                       "/abtest/model_b.csv --c " + data_dir +
                       "/abtest/model_c.csv --index " + data_dir + "/abtest/index.csv"},
        {"simulate", "simulate " + data_dir +
                         "/reports --horizon 4 --shock 2:fear_event --seed 11"},
        {"perturb", "perturb --n 20 --seed 3 --templates " + data_dir +
                        "/templates/comments.tpl --slang " + data_dir +
                        "/slang/slang.tsv --event 事件"},
        {"validate", "validate"},
    };
    bool pass = true;
    std::string why = "all commands byte-identical";
    for (const auto& [name, args] : runs) {
        const fs::path out1 = fs::temp_directory_path() / ("coglab_acc_" + name + "_1");
        const fs::path out2 = fs::temp_directory_path() / ("coglab_acc_" + name + "_2");
        fs::remove_all(out1);
        fs::remove_all(out2);
        for (const auto& out : {out1, out2}) {
            const std::string cmd = std::string(bin) + " " + args + " --out " +
                                    out.string() + " > /dev/null 2>&1";
            if (WEXITSTATUS(std::system(cmd.c_str())) != 0) {
                pass = false;
                why = name + " exited nonzero";
            }
        }
        if (pass && dir_bytes(out1) != dir_bytes(out2)) {
            pass = false;
            why = name + " outputs differ between runs";
        }
    }
    report(10, "determinism envelope", pass, why, timer.seconds());
}

}  // namespace

int main() {
    criterion_ic_fixture();
    criterion_gjr();
    criterion_decay();
    criterion_crash_drill();
    criterion_cost();
    criterion_regimes();
    criterion_stats_oracle();
    criterion_fingerprint_ordering();
    criterion_macro_oracles();
    criterion_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
