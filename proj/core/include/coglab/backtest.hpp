#pragma once
// Friction-aware daily backtester and its metric suite: net return, max
// drawdown, Sharpe, defensive alpha vs a baseline, safety buffer, and
// signal quality (latency and entropy).

#include <optional>
#include <string>
#include <vector>

#include "coglab/date.hpp"
#include "coglab/strategy.hpp"

namespace coglab::backtest {

struct PricePoint {
    Date date;
    double close = 0.0;  // > 0
    std::optional<double> open, high, low;
};

struct PriceSeries {
    std::vector<PricePoint> points;  // strictly increasing dates

    void validate() const;
};

struct BacktestConfig {
    double cost_rate = 0.0026;          // per trade, on |exposure change|
    double risk_free_daily = 0.00008;   // 2%/yr convention
    bool annualize_sharpe = false;      // x sqrt(252) when set

    void validate() const;
};

struct Trade {
    Date date;
    double exposure_change = 0.0;
    double cost = 0.0;  // equity fraction paid
};

struct BacktestResult {
    std::vector<Date> dates;
    std::vector<double> equity;         // equity[0] after any day-0 trade
    std::vector<double> daily_returns;  // equity-derived, costs included
    std::vector<Trade> trades;
    double net_return = 0.0;
    double max_drawdown = 0.0;
    std::optional<double> sharpe;  // absent when return variance is zero
    std::size_t trade_count = 0;
};

struct DefensiveAlpha {
    double da = 0.0;             // strategy terminal equity / baseline - 1
    double safety_buffer = 0.0;  // da / per-trade cost
};

struct MarketEvent {
    Date date;
    strategy::Signal expected;  // signal that answers the event
};

struct SignalQuality {
    double mean_latency_days = 0.0;
    double entropy = 0.0;           // natural-log entropy of the signal mix
    std::size_t unanswered = 0;     // events capped at the window edge
};

// Daily-bar portfolio simulation. Day-t return accrues on the previous
// day's exposure; each exposure change costs |delta| * cost_rate of
// current equity (applied after the day's return).
BacktestResult simulate_portfolio(const PriceSeries& prices,
                                  const std::vector<double>& exposures,
                                  const BacktestConfig& cfg);

// Fills net_return / max_drawdown / sharpe / trade_count on a result.
void compute_metrics(BacktestResult& result, const BacktestConfig& cfg);

DefensiveAlpha defensive_alpha(const BacktestResult& strategy_result,
                               const BacktestResult& baseline_result,
                               const BacktestConfig& cfg);

// Latency: per event, days until the first expected signal at or after
// the event date, capped at window_days (capped events are flagged).
// Entropy: over the empirical distribution of all emitted signals.
SignalQuality signal_quality(const std::vector<strategy::SignalDay>& signals,
                             const std::vector<MarketEvent>& events,
                             std::size_t window_days = 5);

}  // namespace coglab::backtest
