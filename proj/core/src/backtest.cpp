#include "coglab/backtest.hpp"

#include <algorithm>
#include <cmath>

#include "coglab/stats.hpp"

namespace coglab::backtest {

void PriceSeries::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].close > 0.0)) {
            throw InputError("price series: non-positive close at " +
                             points[i].date.to_string());
        }
        if (i > 0 && !(points[i - 1].date < points[i].date)) {
            throw InputError("price series: dates not strictly increasing at " +
                             points[i].date.to_string());
        }
    }
}

void BacktestConfig::validate() const {
    if (cost_rate < 0.0 || risk_free_daily < 0.0) {
        throw ConfigError("backtest: rates must be >= 0");
    }
}

BacktestResult simulate_portfolio(const PriceSeries& prices,
                                  const std::vector<double>& exposures,
                                  const BacktestConfig& cfg) {
    prices.validate();
    cfg.validate();
    const std::size_t n = prices.points.size();
    if (n == 0) throw InputError("simulate_portfolio: empty price series");
    if (exposures.size() != n) {
        throw InputError("simulate_portfolio: exposures misaligned with prices");
    }
    for (double e : exposures) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw InputError("simulate_portfolio: exposure outside [0, 1]");
        }
    }

    BacktestResult res;
    res.dates.reserve(n);
    res.equity.reserve(n);

    double equity = 1.0;
    double held = 0.0;  // exposure carried into the day
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) {
            const double market_ret =
                prices.points[t].close / prices.points[t - 1].close - 1.0;
            equity *= 1.0 + held * market_ret;
        }
        const double delta = exposures[t] - held;
        if (delta != 0.0) {
            const double cost = std::fabs(delta) * cfg.cost_rate;
            equity *= 1.0 - cost;
            res.trades.push_back({prices.points[t].date, delta, cost});
            held = exposures[t];
        }
        res.dates.push_back(prices.points[t].date);
        res.equity.push_back(equity);
    }

    res.daily_returns.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t t = 1; t < n; ++t) {
        res.daily_returns.push_back(res.equity[t] / res.equity[t - 1] - 1.0);
    }
    compute_metrics(res, cfg);
    return res;
}

void compute_metrics(BacktestResult& result, const BacktestConfig& cfg) {
    if (result.equity.size() < 2) {
        throw InputError("metrics: equity curve needs at least 2 points");
    }
    result.net_return = result.equity.back() - 1.0;
    result.trade_count = result.trades.size();

    double peak = result.equity.front();
    double mdd = 0.0;
    for (double e : result.equity) {
        peak = std::max(peak, e);
        mdd = std::max(mdd, (peak - e) / peak);
    }
    result.max_drawdown = mdd;

    const auto& r = result.daily_returns;
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    var /= static_cast<double>(r.size());
    if (var == 0.0) {
        result.sharpe.reset();  // undefined
    } else {
        double s = (mean - cfg.risk_free_daily) / std::sqrt(var);
        if (cfg.annualize_sharpe) s *= std::sqrt(252.0);
        result.sharpe = s;
    }
}

DefensiveAlpha defensive_alpha(const BacktestResult& strategy_result,
                               const BacktestResult& baseline_result,
                               const BacktestConfig& cfg) {
    cfg.validate();
    if (strategy_result.dates.empty() ||
        strategy_result.dates.size() != baseline_result.dates.size() ||
        strategy_result.dates.front() != baseline_result.dates.front() ||
        strategy_result.dates.back() != baseline_result.dates.back()) {
        throw InputError("defensive_alpha: results cover different windows");
    }
    const double da =
        strategy_result.equity.back() / baseline_result.equity.back() - 1.0;
    if (!(cfg.cost_rate > 0.0)) {
        throw ConfigError("defensive_alpha: safety buffer needs a positive cost rate");
    }
    return {da, da / cfg.cost_rate};
}

SignalQuality signal_quality(const std::vector<strategy::SignalDay>& signals,
                             const std::vector<MarketEvent>& events,
                             std::size_t window_days) {
    if (signals.empty()) throw InputError("signal_quality: empty signal stream");

    SignalQuality out;
    if (!events.empty()) {
        double total = 0.0;
        for (const auto& ev : events) {
            std::optional<std::int64_t> latency;
            for (const auto& sd : signals) {
                if (sd.date < ev.date) continue;
                const std::int64_t lag = sd.date - ev.date;
                if (lag > static_cast<std::int64_t>(window_days)) break;
                if (sd.signal == ev.expected) {
                    latency = lag;
                    break;
                }
            }
            if (!latency) {
                latency = static_cast<std::int64_t>(window_days);
                ++out.unanswered;
            }
            total += static_cast<double>(*latency);
        }
        out.mean_latency_days = total / static_cast<double>(events.size());
    }

    double counts[5] = {0, 0, 0, 0, 0};
    for (const auto& sd : signals) counts[static_cast<std::size_t>(sd.signal)] += 1.0;
    out.entropy = stats::entropy(counts);
    return out;
}

}  // namespace coglab::backtest
