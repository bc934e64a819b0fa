#pragma once
// Shared ingestion/feature pipeline behind the macro, simulate and
// backtest commands: report loading, macro series, quadrant paths,
// fear-volatility runs and per-day strategy features.

#include <string>
#include <vector>

#include "coglab/backtest.hpp"
#include "coglab/garch.hpp"
#include "coglab/ingest.hpp"
#include "coglab/macrostate.hpp"
#include "coglab/strategy.hpp"

namespace coglab::cli {

struct DayRecord {
    DailySentimentReport report;
    macro::MacroState state;
    macro::MacroDynamics dyn;
    macro::QuadrantMembership membership;
};

struct Pipeline {
    std::vector<DayRecord> days;
    std::vector<double> fear_h;  // conditional variance of the mean fear level
    std::vector<garch::DriftEntry> drift;
    RegistryPtr registry;
};

// Reports from a directory of *.json files or one newline-delimited
// stream file; sorted by date, duplicate dates rejected.
std::vector<DailySentimentReport> load_reports(const std::string& path,
                                               const ingest::ModelConfig& cfg,
                                               bool extensible);

// Full derived series for a report set under a config and garch mode.
Pipeline build_pipeline(const std::vector<DailySentimentReport>& reports,
                        const ingest::ModelConfig& cfg, garch::SelectionMode garch_mode);

// Per-day decision features (trailing statistics included).
std::vector<strategy::DayFeatures> build_features(const Pipeline& pipe,
                                                  const ingest::ModelConfig& cfg);

double mean_dimension(const DailySentimentReport& report, const std::string& dim);

}  // namespace coglab::cli
