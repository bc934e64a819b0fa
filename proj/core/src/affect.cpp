#include "coglab/affect.hpp"

#include <algorithm>
#include <cmath>

namespace coglab::affect {

DecayTable DecayTable::defaults() {
    DecayTable t;
    t.entries = {
        {"fear", {0.32, 0.7}}, {"greed", {0.25, 0.6}}, {"joy", {0.20, 0.6}},
        {"sadness", {0.11, 0.8}}, {"trust", {0.05, 0.6}},
    };
    return t;
}

DecayEntry DecayTable::lookup(const std::string& dim) const {
    auto it = entries.find(dim);
    return it == entries.end() ? DecayEntry{} : it->second;
}

HolidayTable HolidayTable::defaults() {
    return {{{"fear", 1.91}, {"joy", 2.12}, {"uncertainty", 1.83}, {"sadness", 1.0}}};
}

double HolidayTable::lookup(const std::string& dim) const {
    auto it = multipliers.find(dim);
    return it == multipliers.end() ? 1.0 : it->second;
}

ShockConfig ShockConfig::defaults() {
    ShockConfig c;
    c.delta_e = {
        {"fear_event", {{"fear", 0.75}, {"trust", -0.70}}},
        {"confusion_event", {{"uncertainty", 0.8}, {"certainty", -0.8}}},
    };
    return c;
}

void ShockConfig::validate() const {
    if (lambda < 1.0) throw ConfigError("shock: lambda must be >= 1");
    if (!(mdi_threshold > 0.0)) throw ConfigError("shock: mdi_threshold must be > 0");
}

SatelliteCoeffs SatelliteCoeffs::defaults() {
    SatelliteCoeffs c;
    c.fomo = {0.8543, 0.2345, 0.1234, -0.4567, -0.1890};
    // The greed model's mcfi main effect was not calibrated; stays 0.
    c.greed = {0.9123, 0.1987, 0.0, -0.5123, -0.1567};
    c.uncertainty = {0.3456, -0.2345, 0.1890};
    c.regret = {0.7234, -0.4567, 0.3456};
    return c;
}

double decay(double e_t, double elapsed_days, const std::string& dim,
             const DecayTable& table) {
    if (elapsed_days < 1.0) throw InputError("decay: elapsed days must be >= 1");
    if (e_t == 0.0) return 0.0;
    if (e_t < 0.0) throw NumericError("decay: state must be non-negative (log domain)");
    if (e_t > 1.0) throw InputError("decay: state must be in (0, 1]");
    const DecayEntry entry = table.lookup(dim);
    if (e_t <= entry.threshold) return e_t;  // below activation: no decay
    const double value = std::exp(table.beta0) * std::pow(elapsed_days, -entry.alpha) *
                         std::pow(e_t, table.beta2);
    return std::clamp(value, 0.0, 1.0);
}

double holiday_adjust(double volatility_component, const std::string& dim,
                      bool is_post_holiday, const HolidayTable& table) {
    if (!is_post_holiday) return volatility_component;
    return volatility_component * table.lookup(dim);
}

ShockResult apply_shock(const CognitiveVector& state, const std::string& event_class,
                        const ShockConfig& cfg, double current_mdi) {
    cfg.validate();
    auto it = cfg.delta_e.find(event_class);
    if (it == cfg.delta_e.end()) {
        throw InputError("apply_shock: unknown event class '" + event_class + "'");
    }
    CognitiveVector out = state;
    for (const auto& [dim, delta] : it->second) {
        double d = delta;
        if (d < 0.0) d *= cfg.lambda;  // losses loom larger
        const double updated = std::clamp(out.get_or_zero(dim) + d, -1.0, 1.0);
        out = out.with(dim, updated);
    }
    return {out, current_mdi > cfg.mdi_threshold};
}

SatelliteOutput satellite_step(double joy, double v_joy, double mcfi_value,
                               double regret_lag, double v_mdi,
                               const SatelliteCoeffs& coeffs) {
    auto clamp1 = [](double v) { return std::clamp(v, -1.0, 1.0); };
    SatelliteOutput out;
    const auto& f = coeffs.fomo;
    out.fomo = clamp1(f[0] * joy + f[1] * v_joy + f[2] * mcfi_value +
                      f[3] * joy * mcfi_value + f[4] * v_joy * mcfi_value);
    const auto& g = coeffs.greed;
    out.greed = clamp1(g[0] * joy + g[1] * v_joy + g[2] * mcfi_value +
                       g[3] * joy * mcfi_value + g[4] * v_joy * mcfi_value);
    const auto& u = coeffs.uncertainty;
    out.d_uncertainty =
        clamp1(u[0] * v_mdi + u[1] * mcfi_value + u[2] * v_mdi * mcfi_value);
    const auto& r = coeffs.regret;
    out.regret = clamp1(r[0] * regret_lag + r[1] * mcfi_value +
                        r[2] * regret_lag * mcfi_value);
    return out;
}

DecayFitResult fit_decay(const std::vector<DecaySample>& samples) {
    if (samples.size() < 4) throw InputError("fit_decay: need at least 4 samples");
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    design.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.e_start <= 0.0 || s.e_end <= 0.0) {
            throw NumericError("fit_decay: states must be positive (log domain)");
        }
        if (s.elapsed < 1.0) throw InputError("fit_decay: elapsed must be >= 1");
        design.push_back({1.0, std::log(s.elapsed), std::log(s.e_start)});
        y.push_back(std::log(s.e_end));
    }
    const auto fit = stats::ols(design, y);
    return {-fit.coefficients[1], fit.coefficients[0], fit.coefficients[2],
            fit.r_squared};
}

stats::RegressionFit fit_satellite(const std::vector<SatelliteSample>& rows) {
    if (rows.size() < 6) throw InputError("fit_satellite: need at least 6 rows");
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    design.reserve(rows.size());
    y.reserve(rows.size());
    for (const auto& r : rows) {
        design.push_back({r.x, r.v_x, r.mcfi, r.x * r.mcfi, r.v_x * r.mcfi});
        y.push_back(r.y);
    }
    return stats::ols(design, y);
}

HolidayTestResult holiday_test(const std::vector<double>& post_holiday,
                               const std::vector<double>& normal) {
    const auto welch = stats::welch_t_one_tailed(post_holiday, normal);
    HolidayTestResult out{welch.t, welch.p_one_tailed, 1.0};
    if (welch.p_one_tailed < 0.05) {
        double mh = 0.0, mn = 0.0;
        for (double v : post_holiday) mh += v;
        for (double v : normal) mn += v;
        mh /= static_cast<double>(post_holiday.size());
        mn /= static_cast<double>(normal.size());
        if (mn == 0.0) throw NumericError("holiday_test: zero normal-day mean");
        out.multiplier = mh / mn;
    }
    return out;
}

}  // namespace coglab::affect
