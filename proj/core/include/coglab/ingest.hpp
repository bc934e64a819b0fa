#pragma once
// Input surfaces: CSD report documents (JSON, field names per the data
// schema), delimited price files, and the sectioned model configuration
// with calibrated defaults for every constant.

#include <map>
#include <string>
#include <vector>

#include "coglab/affect.hpp"
#include "coglab/backtest.hpp"
#include "coglab/cogvec.hpp"
#include "coglab/garch.hpp"
#include "coglab/macrostate.hpp"
#include "coglab/strategy.hpp"

namespace coglab::ingest {

struct ReportParseOptions {
    RegistryPtr registry;            // default registry when null
    bool clamp_scores = false;       // out-of-range scores clamp instead of erroring
    bool extensible_registry = false;  // unknown dimensions extend a registry copy
};

// Parses one report document. Unknown extra fields are ignored; a missing
// persona block yields a flagged zero-vector persona.
DailySentimentReport parse_csd_report(const std::string& text,
                                      const ReportParseOptions& options = {});

// Dimension labels a document references (for building union registries
// before a strict parse pass).
std::vector<std::string> scan_report_dimensions(const std::string& text);

// Canonical serialization; parse -> serialize -> parse is a fixpoint.
std::string serialize_csd_report(const DailySentimentReport& report);

backtest::PriceSeries parse_price_series(const std::string& csv_text);
backtest::PriceSeries load_price_series(const std::string& path);

struct ModelConfig {
    std::vector<std::string> registry_labels;
    bool clamp_on_ingest = false;

    garch::ParamArsenal arsenal;
    garch::SelectionMode selection = garch::SelectionMode::Dynamic;
    garch::InnovationMode innovation = garch::InnovationMode::FirstDifference;
    double default_h0 = 0.1;

    affect::DecayTable decay;
    affect::HolidayTable holiday;
    affect::ShockConfig shock;
    affect::SatelliteCoeffs satellite;
    std::map<macro::Quadrant, affect::SatelliteCoeffs> satellite_by_quadrant;

    macro::QuadrantPrototypes prototypes = macro::QuadrantPrototypes::defaults();
    double mcfi_alpha = 0.6;

    strategy::StrategyConfig strategy;
    backtest::BacktestConfig backtest;
    std::size_t latency_window = 5;
    double pir_noise_sd = 0.0;

    static ModelConfig defaults();

    RegistryPtr registry() const;
    garch::PirConfig pir_config() const;

    // Cross-validates dimensions against the registry; with strict_ranges
    // set, configured arsenal values must sit inside the calibrated
    // default ranges.
    void validate(bool strict_ranges = false) const;
};

ModelConfig parse_model_config(const std::string& text, bool strict_ranges = false);
ModelConfig load_model_config(const std::string& path, bool strict_ranges = false);
std::string write_model_config(const ModelConfig& cfg);

}  // namespace coglab::ingest
