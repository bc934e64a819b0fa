#include "coglab/garch.hpp"

#include <algorithm>
#include <cmath>

#include "coglab/rng.hpp"

namespace coglab::garch {

void GarchParams::validate(bool strict_stationarity) const {
    if (!(omega > 0.0)) throw ConfigError("garch: omega must be > 0");
    if (alpha < 0.0 || alpha_neg < 0.0 || beta < 0.0) {
        throw ConfigError("garch: alpha, alpha_neg, beta must be >= 0");
    }
    if (strict_stationarity && stationarity_margin() >= 1.0) {
        throw ConfigError("garch: alpha + alpha_neg/2 + beta must be < 1");
    }
}

GarchParams ArsenalEntry::selection() const {
    return {
        omega_sel.value_or(omega.midpoint()),
        alpha_sel.value_or(alpha.midpoint()),
        alpha_neg_sel.value_or(alpha_neg.midpoint()),
        beta_sel.value_or(beta.midpoint()),
    };
}

ParamArsenal ParamArsenal::defaults() {
    using macro::Quadrant;
    ParamArsenal a;
    a.entries[Quadrant::A_FullBubble] =
        {"joy", {0.15, 0.25}, {0.10, 0.20}, {0.00, 0.05}, {0.75, 0.85}, {}, {}, {}, {}};
    a.entries[Quadrant::B_StructuralTearing] =
        {"fear", {0.10, 0.15}, {0.05, 0.10}, {0.08, 0.15}, {0.80, 0.90}, {}, {}, {}, {}};
    a.entries[Quadrant::C_DeadFreeze] =
        {"fear", {0.00, 0.05}, {0.00, 0.05}, {0.15, 0.25}, {0.90, 0.99}, {}, {}, {}, {}};
    a.entries[Quadrant::D_InertialRecession] =
        {"sadness", {0.08, 0.12}, {0.00, 0.05}, {0.08, 0.15}, {0.85, 0.95}, {}, {}, {}, {}};
    a.entries[Quadrant::E_RecessiveTearing] =
        {"fear", {0.05, 0.10}, {0.02, 0.05}, {0.15, 0.20}, {0.85, 0.90}, {}, {}, {}, {}};
    a.entries[Quadrant::F_StructuralRise] =
        {"joy", {0.01, 0.05}, {0.10, 0.15}, {0.00, 0.05}, {0.75, 0.80}, {}, {}, {}, {}};
    return a;
}

void ParamArsenal::validate() const {
    for (macro::Quadrant q : macro::kQuadrants) {
        auto it = entries.find(q);
        if (it == entries.end()) {
            throw ConfigError(std::string("arsenal: missing quadrant ") +
                              macro::to_string(q));
        }
        for (const ParamRange* r :
             {&it->second.omega, &it->second.alpha, &it->second.alpha_neg,
              &it->second.beta}) {
            if (r->lo > r->hi) throw ConfigError("arsenal: range lo > hi");
        }
        it->second.selection().validate(strict_stationarity);
    }
}

GarchParams select_params(macro::Quadrant quadrant, const ParamArsenal& arsenal,
                          SelectionMode mode) {
    auto it = arsenal.entries.find(quadrant);
    if (it == arsenal.entries.end()) {
        throw ConfigError(std::string("arsenal: unknown quadrant ") +
                          macro::to_string(quadrant));
    }
    if (mode == SelectionMode::Dynamic) return it->second.selection();

    GarchParams mean;
    for (macro::Quadrant q : macro::kQuadrants) {
        auto e = arsenal.entries.find(q);
        if (e == arsenal.entries.end()) {
            throw ConfigError("arsenal: static mode needs all six quadrants");
        }
        const GarchParams p = e->second.selection();
        mean.omega += p.omega / 6.0;
        mean.alpha += p.alpha / 6.0;
        mean.alpha_neg += p.alpha_neg / 6.0;
        mean.beta += p.beta / 6.0;
    }
    return mean;
}

double gjr_step(double h_prev, double eps_prev, const GarchParams& p) {
    const double eps2 = eps_prev * eps_prev;
    return p.omega + p.alpha * eps2 + (eps_prev < 0.0 ? p.alpha_neg * eps2 : 0.0) +
           p.beta * h_prev;
}

VolatilityRun run_volatility(const std::vector<double>& emotion_series,
                             const std::vector<macro::Quadrant>& quadrant_path,
                             const ParamArsenal& arsenal, SelectionMode mode, double h0,
                             InnovationMode innovation) {
    if (emotion_series.size() < 2) throw InputError("run_volatility: series too short");
    if (quadrant_path.size() != emotion_series.size()) {
        throw InputError("run_volatility: quadrant path misaligned with series");
    }
    if (h0 < 0.0) throw InputError("run_volatility: h0 must be >= 0");

    VolatilityRun run;
    run.h.reserve(emotion_series.size());
    run.h.push_back(h0);
    double running_sum = emotion_series[0];
    for (std::size_t t = 1; t < emotion_series.size(); ++t) {
        double eps;
        if (innovation == InnovationMode::FirstDifference) {
            eps = emotion_series[t] - emotion_series[t - 1];
        } else {
            eps = emotion_series[t] - running_sum / static_cast<double>(t);
        }
        running_sum += emotion_series[t];
        const GarchParams p = select_params(quadrant_path[t], arsenal, mode);
        run.h.push_back(gjr_step(run.h.back(), eps, p));
        run.drift.push_back({t, p, run.h.back()});
    }
    return run;
}

const affect::SatelliteCoeffs& PirConfig::satellite_for(macro::Quadrant q) const {
    auto it = satellite_by_quadrant.find(q);
    return it == satellite_by_quadrant.end() ? satellite : it->second;
}

bool freeze_predicate(double mdi, double liquidity, double mdi_threshold,
                      double liquidity_threshold) {
    return mdi > mdi_threshold && liquidity < liquidity_threshold;
}

namespace {

// Decay bookkeeping for the forward simulator: every dimension carries
// the value it had when last written plus the days elapsed since. The
// decayed value is recomputed from that anchor, so a dimension untouched
// for t days shows anchor * t^(-alpha) exactly. Signs decay by magnitude.
struct AnchoredVector {
    std::map<std::string, std::pair<double, double>> anchors;  // dim -> (value, age)

    explicit AnchoredVector(const CognitiveVector& v) {
        for (const auto& [dim, s] : v.scores()) anchors[dim] = {s, 0.0};
    }

    void write(const std::string& dim, double value) { anchors[dim] = {value, 0.0}; }

    void advance_and_decay(const affect::DecayTable& table) {
        for (auto& [dim, cell] : anchors) {
            cell.second += 1.0;
            const double mag = std::fabs(cell.first);
            if (mag == 0.0) {
                current_[dim] = 0.0;
                continue;
            }
            const double decayed = affect::decay(std::min(mag, 1.0), cell.second, dim, table);
            current_[dim] = std::copysign(decayed, cell.first);
        }
    }

    double current(const std::string& dim) const {
        auto it = current_.find(dim);
        if (it != current_.end()) return it->second;
        auto a = anchors.find(dim);
        return a == anchors.end() ? 0.0 : a->second.first;
    }

    void overwrite_current(const std::string& dim, double value) {
        current_[dim] = value;
        write(dim, value);
    }

    CognitiveVector to_vector(const RegistryPtr& registry) const {
        std::map<std::string, double> scores;
        for (const auto& [dim, cell] : anchors) {
            auto it = current_.find(dim);
            scores[dim] = it != current_.end() ? it->second : cell.first;
        }
        return CognitiveVector(registry, scores, /*clamp=*/true);
    }

private:
    std::map<std::string, double> current_;
};

}  // namespace

std::vector<PirState> pir_simulate(const PirState& initial, const ShockSchedule& shocks,
                                   std::size_t horizon, const PirConfig& cfg,
                                   std::uint64_t seed) {
    cfg.shock.validate();
    cfg.arsenal.validate();
    for (const auto& [day, event] : shocks) {
        if (cfg.shock.delta_e.find(event) == cfg.shock.delta_e.end()) {
            throw InputError("pir_simulate: unknown event class '" + event + "'");
        }
        (void)day;
    }

    std::vector<PirState> trajectory;
    trajectory.reserve(horizon + 1);
    trajectory.push_back(initial);

    const RegistryPtr registry = initial.novice.registry();
    AnchoredVector novice(initial.novice);
    AnchoredVector veteran(initial.veteran);
    Rng rng(derive_seed(seed, 0));

    // Histories for finite differences (seeded with the initial state).
    std::vector<macro::MacroState> macro_history = {initial.macro_state};

    for (std::size_t day = 1; day <= horizon; ++day) {
        const PirState& prev = trajectory.back();
        PirState next = prev;
        next.date = prev.date.plus_days(1);
        next.fragile = false;

        // 1. Power-law decay from each dimension's anchor.
        novice.advance_and_decay(cfg.decay);
        veteran.advance_and_decay(cfg.decay);

        if (cfg.noise_sd > 0.0) {
            for (const auto& label : registry->labels()) {
                novice.overwrite_current(
                    label, std::clamp(novice.current(label) + normal(rng, 0.0, cfg.noise_sd),
                                      -1.0, 1.0));
                veteran.overwrite_current(
                    label, std::clamp(veteran.current(label) + normal(rng, 0.0, cfg.noise_sd),
                                      -1.0, 1.0));
            }
        }

        // 2. Satellite interactions, per persona, driven by yesterday's macro.
        const auto& coeffs = cfg.satellite_for(prev.dominant);
        const double prev_v_mdi = [&] {
            if (macro_history.size() < 2) return 0.0;
            const auto dyn = macro::dynamics(macro_history, 1);
            return dyn.back().v_mdi.value_or(0.0);
        }();
        for (AnchoredVector* pv : {&novice, &veteran}) {
            const double joy_now = pv->current("joy");
            const double joy_prev = (pv == &novice ? prev.novice : prev.veteran)
                                        .get_or_zero("joy");
            const double regret_lag = (pv == &novice ? prev.novice : prev.veteran)
                                          .get_or_zero("regret");
            const auto sat = affect::satellite_step(joy_now, joy_now - joy_prev,
                                                    prev.macro_state.mcfi, regret_lag,
                                                    prev_v_mdi, coeffs);
            if (registry->contains("fomo")) pv->overwrite_current("fomo", sat.fomo);
            if (registry->contains("greed")) pv->overwrite_current("greed", sat.greed);
            if (registry->contains("regret")) pv->overwrite_current("regret", sat.regret);
            if (registry->contains("uncertainty")) {
                pv->overwrite_current(
                    "uncertainty",
                    std::clamp(pv->current("uncertainty") + sat.d_uncertainty, -1.0, 1.0));
            }
        }

        // 3. Scheduled shock (market-wide: both personas).
        auto shock_it = shocks.find(day);
        if (shock_it != shocks.end()) {
            for (AnchoredVector* pv : {&novice, &veteran}) {
                const auto shocked = affect::apply_shock(pv->to_vector(registry),
                                                         shock_it->second, cfg.shock,
                                                         prev.macro_state.mdi);
                for (const auto& [dim, s] : shocked.state.scores()) {
                    if (s != pv->current(dim)) pv->overwrite_current(dim, s);
                }
                next.fragile = shocked.fragile;
            }
        }

        // 4. Variance step per dimension on the cross-persona mean level,
        //    parameters from the quadrant in force during the day.
        next.novice = novice.to_vector(registry);
        next.veteran = veteran.to_vector(registry);
        const GarchParams params = select_params(prev.dominant, cfg.arsenal, cfg.selection);
        for (const auto& label : registry->labels()) {
            const double level =
                0.5 * (next.novice.get_or_zero(label) + next.veteran.get_or_zero(label));
            const double prev_level =
                0.5 * (prev.novice.get_or_zero(label) + prev.veteran.get_or_zero(label));
            const double eps = level - prev_level;
            auto hit = next.vol.h.find(label);
            const double h_prev = hit == next.vol.h.end() ? cfg.default_h0 : hit->second;
            next.vol.h[label] = gjr_step(h_prev, eps, params);
            next.vol.last_innovation[label] = eps;
        }

        // 5. Macro recompute: MDI/MCFI, then dynamics, then membership.
        PersonaDayState day_state{next.date, next.novice, next.veteran,
                                  prev.macro_state.meta, false, false};
        next.macro_state.date = next.date;
        next.macro_state.mdi = macro::mdi(day_state);
        next.macro_state.mcfi = macro::mcfi(
            0.5 * (next.novice.get_or_zero("joy") + next.veteran.get_or_zero("joy")),
            0.5 * (next.novice.get_or_zero("anticipation") +
                   next.veteran.get_or_zero("anticipation")),
            cfg.mcfi_alpha);
        next.macro_state.meta = prev.macro_state.meta;
        macro_history.push_back(next.macro_state);

        const auto dyn = macro::dynamics(macro_history, 1).back();
        macro::MacroFeatures features{next.macro_state.mdi, next.macro_state.mcfi,
                                      dyn.v_mdi.value_or(0.0), dyn.v_mcfi.value_or(0.0),
                                      next.macro_state.meta};
        next.dominant = macro::quadrant_membership(features, cfg.prototypes).dominant;

        trajectory.push_back(std::move(next));
    }
    return trajectory;
}

}  // namespace coglab::garch
