#include "coglab/strategy.hpp"

#include <algorithm>
#include <cmath>

namespace coglab::strategy {

const char* to_string(Signal s) {
    switch (s) {
        case Signal::Buy: return "BUY";
        case Signal::Warning: return "WARNING";
        case Signal::Sell: return "SELL";
        case Signal::Wait: return "WAIT";
        case Signal::Prepare: return "PREPARE";
    }
    return "?";
}

void StrategyConfig::validate() const {
    if (fear_stop_floor > fear_stop_base) {
        throw ConfigError("strategy: fear_stop_floor must be <= fear_stop_base");
    }
    if (!(h_scale > 0.0)) throw ConfigError("strategy: h_scale must be > 0");
    for (double v : {fear_stop_base, fear_stop_floor, buy_mdi_max, buy_mcfi_min,
                     warning_spike_mult, prepare_mdi_min}) {
        if (!std::isfinite(v)) throw ConfigError("strategy: non-finite threshold");
    }
}

double dynamic_threshold(double base, double floor, double h_fear, double h_ref,
                         double h_scale) {
    const double x = std::clamp((h_fear - h_ref) / h_scale, 0.0, 1.0);
    return base - (base - floor) * x;
}

Decision decide(const DayFeatures& day, const StrategyConfig& cfg) {
    cfg.validate();
    // (1) Mandatory stop-loss on novice fear; the threshold tightens as
    // fear-volatility rises. Removed entirely in baseline mode.
    if (cfg.mode == Mode::Dynamic) {
        const double threshold = dynamic_threshold(cfg.fear_stop_base, cfg.fear_stop_floor,
                                                   day.h_fear, cfg.h_ref, cfg.h_scale);
        if (day.novice_fear > threshold) {
            return {Signal::Sell, "fear above stop threshold"};
        }
    }
    // (2) Divergence spike: velocity of dispersion several times its
    // trailing mean magnitude.
    if (day.v_mdi && day.trailing_abs_v_mdi_mean &&
        *day.trailing_abs_v_mdi_mean > 0.0 &&
        *day.v_mdi >= cfg.warning_spike_mult * *day.trailing_abs_v_mdi_mean) {
        return {Signal::Warning, "dispersion velocity spike"};
    }
    // (3) Consensus entry: tight dispersion with hot consensus.
    if (day.mdi <= cfg.buy_mdi_max && day.mcfi >= cfg.buy_mcfi_min) {
        return {Signal::Buy, "extreme consensus"};
    }
    // (4) Smart-money accumulation: veterans turning constructive while
    // the novice cohort despairs at high dispersion.
    if (day.mdi >= cfg.prepare_mdi_min && day.novice_sentiment < cfg.prepare_novice_max &&
        (day.veteran_anticipation_delta > 0.0 || day.veteran_agency_delta > 0.0)) {
        return {Signal::Prepare, "veteran accumulation against novice despair"};
    }
    return {Signal::Wait, "no rule fired"};
}

std::vector<SignalDay> run_strategy(const std::vector<DayFeatures>& stream,
                                    const StrategyConfig& cfg) {
    if (stream.empty()) throw InputError("run_strategy: empty stream");
    for (std::size_t i = 1; i < stream.size(); ++i) {
        if (!(stream[i - 1].date < stream[i].date)) {
            throw InputError("run_strategy: stream must be date-sorted");
        }
    }
    std::vector<SignalDay> out;
    out.reserve(stream.size());
    double exposure = 0.0;
    bool bought = false;
    for (const auto& day : stream) {
        Decision d = decide(day, cfg);
        if (cfg.mode == Mode::Baseline) {
            // Trigger-free control: enter once, then hold.
            if (bought) {
                d = {Signal::Wait, "baseline hold"};
            } else if (d.signal != Signal::Buy) {
                d = {Signal::Wait, "baseline awaiting entry"};
            }
        }
        switch (d.signal) {
            case Signal::Buy:
                exposure = cfg.exposure_buy;
                bought = true;
                break;
            case Signal::Warning: exposure = cfg.exposure_warning; break;
            case Signal::Sell: exposure = cfg.exposure_sell; break;
            case Signal::Wait:
            case Signal::Prepare: break;  // hold previous exposure
        }
        out.push_back({day.date, d.signal, exposure, std::move(d.rationale)});
    }
    return out;
}

}  // namespace coglab::strategy
