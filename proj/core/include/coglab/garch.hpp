#pragma once
// Quadrant-switched GJR-GARCH volatility over emotion innovations: the
// parameter arsenal with static/dynamic selection, the recursion itself,
// per-run parameter drift logging, and the counterfactual forward
// simulator with its freeze predicate.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coglab/affect.hpp"
#include "coglab/cogvec.hpp"
#include "coglab/macrostate.hpp"

namespace coglab::garch {

struct GarchParams {
    double omega = 0.0;      // baseline variance, > 0
    double alpha = 0.0;      // shock response, >= 0
    double alpha_neg = 0.0;  // extra response to negative innovations, >= 0
    double beta = 0.0;       // persistence, >= 0

    // Covariance-stationarity margin alpha + alpha_neg/2 + beta, < 1 when
    // strict stationarity is requested.
    double stationarity_margin() const { return alpha + 0.5 * alpha_neg + beta; }

    void validate(bool strict_stationarity = false) const;
};

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
    double midpoint() const { return 0.5 * (lo + hi); }
};

struct ArsenalEntry {
    std::string core_dim;
    ParamRange omega, alpha, alpha_neg, beta;
    // Optional per-parameter selection overrides (may sit outside the
    // range; range conformance is a config-load concern).
    std::optional<double> omega_sel, alpha_sel, alpha_neg_sel, beta_sel;

    GarchParams selection() const;
};

enum class SelectionMode { Dynamic, Static };
enum class InnovationMode { FirstDifference, MeanResidual };

struct ParamArsenal {
    std::map<macro::Quadrant, ArsenalEntry> entries;
    bool strict_stationarity = false;

    // Calibrated per-quadrant ranges; open-ended cells are closed with
    // caps [0, 0.05] and [0.90, 0.99].
    static ParamArsenal defaults();

    void validate() const;  // all six quadrants present, lo <= hi
};

// Dynamic -> the quadrant's selection point; Static -> arithmetic mean of
// all six selection points (quadrant-independent).
GarchParams select_params(macro::Quadrant quadrant, const ParamArsenal& arsenal,
                          SelectionMode mode);

// h_t = omega + alpha*eps^2 + alpha_neg*eps^2*[eps<0] + beta*h_prev
double gjr_step(double h_prev, double eps_prev, const GarchParams& p);

struct DriftEntry {
    std::size_t step = 0;
    GarchParams params;
    double h = 0.0;
};

struct VolatilityRun {
    std::vector<double> h;           // h[0] = h0, then one step per innovation
    std::vector<DriftEntry> drift;   // params in force at each step >= 1
};

VolatilityRun run_volatility(const std::vector<double>& emotion_series,
                             const std::vector<macro::Quadrant>& quadrant_path,
                             const ParamArsenal& arsenal, SelectionMode mode,
                             double h0,
                             InnovationMode innovation = InnovationMode::FirstDifference);

// Per-dimension conditional variance plus the last innovation seen.
struct VolState {
    std::map<std::string, double> h;
    std::map<std::string, double> last_innovation;
};

struct PirState {
    Date date;
    CognitiveVector novice;
    CognitiveVector veteran;
    VolState vol;
    macro::MacroState macro_state;
    macro::Quadrant dominant = macro::Quadrant::A_FullBubble;
    bool fragile = false;  // set when a shock lands while MDI is above threshold
};

struct PirConfig {
    affect::DecayTable decay;
    affect::ShockConfig shock;
    affect::SatelliteCoeffs satellite;
    // Optional per-quadrant satellite overrides (regime-dependent sets).
    std::map<macro::Quadrant, affect::SatelliteCoeffs> satellite_by_quadrant;
    ParamArsenal arsenal;
    SelectionMode selection = SelectionMode::Dynamic;
    macro::QuadrantPrototypes prototypes = macro::QuadrantPrototypes::defaults();
    double mcfi_alpha = 0.6;
    double default_h0 = 0.1;
    double noise_sd = 0.0;  // optional state noise; 0 keeps the run noise-free

    const affect::SatelliteCoeffs& satellite_for(macro::Quadrant q) const;
};

// One scheduled event class per day index (1-based day offsets from the
// initial state); days without an entry evolve shock-free.
using ShockSchedule = std::map<std::size_t, std::string>;

// Forward-evolves the full state day by day: decay -> satellite updates
// -> scheduled shock -> variance step -> macro recompute. Deterministic
// for a given seed; the seed only feeds the optional state noise.
std::vector<PirState> pir_simulate(const PirState& initial, const ShockSchedule& shocks,
                                   std::size_t horizon, const PirConfig& cfg,
                                   std::uint64_t seed = 0);

// Crash-determinism rule: divergence above 0.8 with liquidity below 0.3.
bool freeze_predicate(double mdi, double liquidity, double mdi_threshold = 0.8,
                      double liquidity_threshold = 0.3);

}  // namespace coglab::garch
