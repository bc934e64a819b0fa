#pragma once
// Time evolution of cognitive scores: power-law decay with activation
// thresholds, post-holiday volatility multipliers, shock response with
// loss-aversion asymmetry, and the satellite interaction models
// (fomo / greed / uncertainty / regret). Includes the calibration fits
// that recover these parameters from sample data.

#include <map>
#include <string>
#include <vector>

#include "coglab/cogvec.hpp"
#include "coglab/stats.hpp"

namespace coglab::affect {

struct DecayEntry {
    double alpha = 0.0;      // decay exponent, >= 0
    double threshold = 0.0;  // activation threshold in [0, 1]; no decay at or below
};

struct DecayTable {
    std::map<std::string, DecayEntry> entries;
    double beta0 = 0.0;  // log-linear intercept
    double beta2 = 1.0;  // state elasticity

    // Calibrated defaults: fear .32/.7, greed .25/.6, joy .20/.6,
    // sadness .11/.8, trust .05/.6.
    static DecayTable defaults();

    DecayEntry lookup(const std::string& dim) const;  // {0, 0} when absent
};

struct HolidayTable {
    std::map<std::string, double> multipliers;  // > 0; absent dims read 1.0

    static HolidayTable defaults();  // fear 1.91, joy 2.12, uncertainty 1.83, sadness 1.0

    double lookup(const std::string& dim) const;
};

struct ShockConfig {
    double mdi_threshold = 1.2;  // fragility cutoff
    double lambda = 1.5;         // negative-shock amplification, >= 1
    // event class -> per-dimension increments
    std::map<std::string, std::map<std::string, double>> delta_e;

    static ShockConfig defaults();  // fear and confusion event classes

    void validate() const;
};

struct SatelliteCoeffs {
    // fomo/greed: y = c1*x + c2*v_x + c3*mcfi + c4*x*mcfi + c5*v_x*mcfi
    std::array<double, 5> fomo{};
    std::array<double, 5> greed{};
    // d_uncertainty = u1*v_mdi + u2*mcfi + u3*v_mdi*mcfi
    std::array<double, 3> uncertainty{};
    // regret = r1*lag + r2*mcfi + r3*lag*mcfi
    std::array<double, 3> regret{};

    static SatelliteCoeffs defaults();  // calibrated crash-window estimates
};

struct SatelliteOutput {
    double fomo = 0.0;
    double greed = 0.0;
    double d_uncertainty = 0.0;
    double regret = 0.0;
};

struct ShockResult {
    CognitiveVector state;
    bool fragile = false;  // current MDI above the fragility threshold
};

struct DecayFitResult {
    double alpha = 0.0;
    double beta0 = 0.0;
    double beta2 = 0.0;
    double r_squared = 0.0;
};

struct DecaySample {
    double e_start = 0.0;  // E_t, in (0, 1]
    double elapsed = 0.0;  // T >= 1 days
    double e_end = 0.0;    // E_{t+T}
};

struct SatelliteSample {
    double y = 0.0;
    double x = 0.0;
    double v_x = 0.0;
    double mcfi = 0.0;
};

struct HolidayTestResult {
    double t = 0.0;
    double p_one_tailed = 0.0;
    double multiplier = 1.0;  // mean ratio when significant, else 1.0
};

// E(T) = exp(beta0) * T^(-alpha_d) * E_t^(beta2), clamped to [0, 1].
// Values at or below the activation threshold do not decay. E_t = 0
// stays 0; negative E_t is a domain error.
double decay(double e_t, double elapsed_days, const std::string& dim,
             const DecayTable& table);

// Multiplies a volatility component by the dimension's post-holiday
// factor on post-holiday trading days; identity otherwise.
double holiday_adjust(double volatility_component, const std::string& dim,
                      bool is_post_holiday, const HolidayTable& table);

// Applies the event's increments; negative increments are amplified by
// lambda before the [-1, 1] clamp. Fragility reflects the current MDI.
ShockResult apply_shock(const CognitiveVector& state, const std::string& event_class,
                        const ShockConfig& cfg, double current_mdi);

SatelliteOutput satellite_step(double joy, double v_joy, double mcfi_value,
                               double regret_lag, double v_mdi,
                               const SatelliteCoeffs& coeffs);

// OLS on ln(E_end) = b0 + b1 ln(T) + b2 ln(E_start); alpha = -b1.
DecayFitResult fit_decay(const std::vector<DecaySample>& samples);

// Interaction regression for one satellite target; returns the 5-column fit
// (x, v_x, mcfi, x*mcfi, v_x*mcfi) with per-coefficient p-values.
stats::RegressionFit fit_satellite(const std::vector<SatelliteSample>& rows);

// Welch one-tailed t on post-holiday vs normal volatility samples;
// multiplier = mean ratio when p < 0.05, else 1.0.
HolidayTestResult holiday_test(const std::vector<double>& post_holiday,
                               const std::vector<double>& normal);

}  // namespace coglab::affect
