#pragma once
// Signal generation: converts per-day cognitive/macro/volatility state
// into one of five trading signals, with volatility-modulated stop-loss
// thresholds in dynamic mode and a trigger-free baseline mode.

#include <optional>
#include <string>
#include <vector>

#include "coglab/date.hpp"
#include "coglab/error.hpp"

namespace coglab::strategy {

enum class Signal { Buy, Warning, Sell, Wait, Prepare };

const char* to_string(Signal s);

enum class Mode { Dynamic, Baseline };

struct StrategyConfig {
    Mode mode = Mode::Dynamic;
    double fear_stop_base = 0.30;
    double fear_stop_floor = 0.25;
    double h_ref = 0.25;    // variance level where threshold starts tightening
    double h_scale = 0.50;  // variance span over which it reaches the floor
    double buy_mdi_max = 0.20;
    double buy_mcfi_min = 0.40;
    double warning_spike_mult = 3.0;   // multiple of trailing mean |v_mdi|
    std::size_t warning_window = 5;
    double prepare_mdi_min = 0.80;
    double prepare_novice_max = 0.0;  // novice sentiment must sit below this
    // Exposure map per signal; Wait/Prepare hold the previous exposure.
    double exposure_buy = 1.0;
    double exposure_warning = 0.5;
    double exposure_sell = 0.0;

    void validate() const;
};

// Everything decide() looks at for one day.
struct DayFeatures {
    Date date;
    double novice_fear = 0.0;
    double novice_sentiment = 0.0;  // scalar mood of the novice cohort
    double veteran_anticipation_delta = 0.0;  // day-over-day rise
    double veteran_agency_delta = 0.0;
    double mdi = 0.0;
    double mcfi = 0.0;
    std::optional<double> v_mdi;
    std::optional<double> trailing_abs_v_mdi_mean;  // over the warning window
    double h_fear = 0.0;
};

struct Decision {
    Signal signal = Signal::Wait;
    std::string rationale;
};

// threshold = base - (base - floor) * clamp((h_fear - h_ref)/h_scale, 0, 1);
// continuous and monotone non-increasing in h_fear, bounded in [floor, base].
double dynamic_threshold(double base, double floor, double h_fear, double h_ref,
                         double h_scale);

// Priority-ordered rules: stop-loss (dynamic mode only), divergence-spike
// warning, consensus buy, smart-money prepare, else wait.
Decision decide(const DayFeatures& day, const StrategyConfig& cfg);

struct SignalDay {
    Date date;
    Signal signal = Signal::Wait;
    double exposure = 0.0;  // target exposure in [0, 1]
    std::string rationale;
};

// Folds decide() over a date-sorted stream and applies the exposure map.
// Baseline mode takes the first Buy and then holds (everything after is
// Wait), modeling a trigger-free mean-reversion book.
std::vector<SignalDay> run_strategy(const std::vector<DayFeatures>& stream,
                                    const StrategyConfig& cfg);

}  // namespace coglab::strategy
