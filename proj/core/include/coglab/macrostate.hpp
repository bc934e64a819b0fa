#pragma once
// Macro market state: dispersion (MDI) and consensus-frenzy (MCFI)
// indices, their velocity/acceleration dynamics, and soft membership
// over the six market regimes.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "coglab/cogvec.hpp"

namespace coglab::macro {

enum class Quadrant {
    A_FullBubble,
    B_StructuralTearing,
    C_DeadFreeze,
    D_InertialRecession,
    E_RecessiveTearing,
    F_StructuralRise,
};

inline constexpr std::array<Quadrant, 6> kQuadrants = {
    Quadrant::A_FullBubble,       Quadrant::B_StructuralTearing,
    Quadrant::C_DeadFreeze,       Quadrant::D_InertialRecession,
    Quadrant::E_RecessiveTearing, Quadrant::F_StructuralRise,
};

const char* to_string(Quadrant q);        // short id, e.g. "A_FullBubble"
const char* enum_name(Quadrant q);        // wire enum, e.g. "MACRO_QUADRANT_FULL_BUBBLE"
std::optional<Quadrant> quadrant_from_string(const std::string& s);

struct MacroState {
    Date date;
    double mdi = 0.0;   // >= 0
    double mcfi = 0.0;
    double meta = 0.0;  // metacognition in [0, 1]
};

// Absent entries mean the window was too short for that derivative.
struct MacroDynamics {
    Date date;
    std::optional<double> v_mdi;
    std::optional<double> v_mcfi;
    std::optional<double> a_mdi;
    std::optional<double> a_mcfi;
};

struct QuadrantMembership {
    std::array<double, 6> probabilities{};  // sums to 1
    Quadrant dominant = Quadrant::A_FullBubble;
};

// Feature point for membership: {mdi, mcfi, v_mdi, v_mcfi, meta}.
struct MacroFeatures {
    double mdi = 0.0;
    double mcfi = 0.0;
    double v_mdi = 0.0;
    double v_mcfi = 0.0;
    double meta = 0.0;

    std::array<double, 5> as_array() const { return {mdi, mcfi, v_mdi, v_mcfi, meta}; }
};

// Hand-placed centroids consistent with the regimes' semantics plus a
// shared Gaussian bandwidth. Defaults are config-overridable and make no
// claim of reproducing any published probability values.
struct QuadrantPrototypes {
    std::array<std::array<double, 5>, 6> centroids;
    double bandwidth = 0.6;

    static QuadrantPrototypes defaults();
};

// Euclidean novice/veteran distance over every registry dimension;
// missing scores contribute 0.
double mdi(const PersonaDayState& state);

// Convex blend alpha*joy + (1-alpha)*anticipation, alpha in [0, 1].
double mcfi(double avg_joy, double avg_anticipation, double alpha = 0.6);

// Finite differences with lag k: v_t = (x_t - x_{t-k})/k, a_t likewise on v.
std::vector<MacroDynamics> dynamics(const std::vector<MacroState>& series,
                                    std::size_t k = 1);

// Gaussian-kernel similarity to each prototype, softmax-normalized.
// Dominant = argmax with ties resolved in fixed A..F order.
QuadrantMembership quadrant_membership(const MacroFeatures& features,
                                       const QuadrantPrototypes& prototypes);

}  // namespace coglab::macro
