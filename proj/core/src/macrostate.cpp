#include "coglab/macrostate.hpp"

#include <cmath>

namespace coglab::macro {

const char* to_string(Quadrant q) {
    switch (q) {
        case Quadrant::A_FullBubble: return "A_FullBubble";
        case Quadrant::B_StructuralTearing: return "B_StructuralTearing";
        case Quadrant::C_DeadFreeze: return "C_DeadFreeze";
        case Quadrant::D_InertialRecession: return "D_InertialRecession";
        case Quadrant::E_RecessiveTearing: return "E_RecessiveTearing";
        case Quadrant::F_StructuralRise: return "F_StructuralRise";
    }
    return "?";
}

const char* enum_name(Quadrant q) {
    switch (q) {
        case Quadrant::A_FullBubble: return "MACRO_QUADRANT_FULL_BUBBLE";
        case Quadrant::B_StructuralTearing: return "MACRO_QUADRANT_STRUCTURAL_TEAR";
        case Quadrant::C_DeadFreeze: return "MACRO_QUADRANT_DEAD_FREEZE";
        case Quadrant::D_InertialRecession: return "MACRO_QUADRANT_INERTIAL_RECESSION";
        case Quadrant::E_RecessiveTearing: return "MACRO_QUADRANT_RECESSIVE_TEAR";
        case Quadrant::F_StructuralRise: return "MACRO_QUADRANT_STRUCTURAL_RISE";
    }
    return "?";
}

std::optional<Quadrant> quadrant_from_string(const std::string& s) {
    for (Quadrant q : kQuadrants) {
        if (s == to_string(q) || s == enum_name(q)) return q;
        // Also accept the bare letter.
        if (s.size() == 1 && s[0] == to_string(q)[0]) return q;
    }
    return std::nullopt;
}

QuadrantPrototypes QuadrantPrototypes::defaults() {
    // {mdi, mcfi, v_mdi, v_mcfi, meta}
    QuadrantPrototypes p;
    p.centroids = {{
        {0.30, 0.80, 0.00, 0.10, 0.30},   // A: euphoric consensus
        {1.30, 0.40, 0.30, -0.10, 0.40},  // B: divergence spiking
        {0.20, 0.05, -0.05, -0.05, 0.50}, // C: everything cold
        {0.60, 0.20, 0.00, -0.05, 0.40},  // D: drifting down
        {1.00, 0.15, 0.10, -0.10, 0.45},  // E: cold and torn
        {0.60, 0.55, -0.05, 0.10, 0.50},  // F: healthy climb
    }};
    p.bandwidth = 0.6;
    return p;
}

double mdi(const PersonaDayState& state) {
    if (state.novice.registry().get() != state.veteran.registry().get()) {
        throw InputError("mdi: novice/veteran vectors use different registries");
    }
    double acc = 0.0;
    for (const auto& label : state.novice.registry()->labels()) {
        const double d = state.novice.get_or_zero(label) - state.veteran.get_or_zero(label);
        acc += d * d;
    }
    return std::sqrt(acc);
}

double mcfi(double avg_joy, double avg_anticipation, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InputError("mcfi: alpha must be in [0, 1]");
    }
    if (!std::isfinite(avg_joy) || !std::isfinite(avg_anticipation)) {
        throw InputError("mcfi: inputs must be finite");
    }
    return alpha * avg_joy + (1.0 - alpha) * avg_anticipation;
}

std::vector<MacroDynamics> dynamics(const std::vector<MacroState>& series,
                                    std::size_t k) {
    if (k == 0) throw InputError("dynamics: lag must be >= 1");
    if (k >= series.size()) throw InputError("dynamics: lag >= series length");
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i - 1].date < series[i].date)) {
            throw InputError("dynamics: series must be strictly date-sorted");
        }
    }
    const double kd = static_cast<double>(k);
    std::vector<MacroDynamics> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        out[i].date = series[i].date;
        if (i >= k) {
            out[i].v_mdi = (series[i].mdi - series[i - k].mdi) / kd;
            out[i].v_mcfi = (series[i].mcfi - series[i - k].mcfi) / kd;
        }
        if (i >= 2 * k) {
            out[i].a_mdi = (*out[i].v_mdi - *out[i - k].v_mdi) / kd;
            out[i].a_mcfi = (*out[i].v_mcfi - *out[i - k].v_mcfi) / kd;
        }
    }
    return out;
}

QuadrantMembership quadrant_membership(const MacroFeatures& features,
                                       const QuadrantPrototypes& prototypes) {
    if (!(prototypes.bandwidth > 0.0)) {
        throw InputError("quadrant_membership: bandwidth must be positive");
    }
    const auto f = features.as_array();
    for (double v : f) {
        if (!std::isfinite(v)) throw InputError("quadrant_membership: non-finite feature");
    }
    QuadrantMembership out;
    const double inv = 1.0 / (2.0 * prototypes.bandwidth * prototypes.bandwidth);
    double total = 0.0;
    for (std::size_t q = 0; q < 6; ++q) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            const double d = f[i] - prototypes.centroids[q][i];
            d2 += d * d;
        }
        out.probabilities[q] = std::exp(-d2 * inv);
        total += out.probabilities[q];
    }
    std::size_t best = 0;
    for (std::size_t q = 0; q < 6; ++q) {
        out.probabilities[q] /= total;
        if (out.probabilities[q] > out.probabilities[best]) best = q;  // ties keep A..F order
    }
    out.dominant = kQuadrants[best];
    return out;
}

}  // namespace coglab::macro
