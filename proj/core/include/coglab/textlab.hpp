#pragma once
// Deterministic text operators: sentence-length oscillation, probability
// perturbation, the semantic-leap gate, CJK-aware sentence segmentation,
// stylometric fingerprinting with corpus comparison, and a template-backed
// synthetic comment generator (no model calls anywhere).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coglab/cogvec.hpp"
#include "coglab/error.hpp"

namespace coglab::textlab {

enum class LengthUnit { Characters, Words };

struct OscillationParams {
    double baseline = 17.0;   // L
    double amplitude = 8.0;   // A, >= 0
    double omega = 0.5;       // radians per sentence
    double phi = 0.0;
    double noise_sd = 0.0;    // sigma of the Gaussian jitter
    std::size_t min_len = 1;
    LengthUnit unit = LengthUnit::Characters;

    void validate() const;
};

// length_n = max(min_len, floor(L + A*sin(omega*n + phi) + eps_n)), n = 1..
std::vector<std::size_t> oscillation_schedule(const OscillationParams& params,
                                              std::size_t n_sentences,
                                              std::uint64_t seed);

enum class PerturbMode {
    Tempered,  // p^(1/tau) * mask, renormalized (canonical)
    Additive,  // p*(1-beta) + noise, masked and renormalized
};

struct PerturbationParams {
    double tau = 1.0;                // temperature, > 0
    std::vector<double> bias_mask;   // per-token multiplier >= 0
    double beta = 0.0;               // additive-mode damping in [0, 1]
    double noise_sd = 0.05;          // additive-mode noise scale
    double theta_leap = 0.5;         // semantic gate threshold in [-1, 1]
    PerturbMode mode = PerturbMode::Tempered;

    void validate(std::size_t dims) const;
};

std::vector<double> perturb_distribution(const std::vector<double>& p,
                                         const PerturbationParams& params,
                                         std::uint64_t seed = 0);

// True when cosine(context, candidate) < theta (strict): the candidate is
// far enough to count as an associative leap.
bool semantic_gate(const std::vector<double>& context_vec,
                   const std::vector<double>& candidate_vec, double theta_leap = 0.5);

struct Sentence {
    std::string text;        // trimmed, terminator excluded
    std::size_t length = 0;  // Unicode scalar count of text
};

// Splits on CJK and ASCII sentence-ending punctuation; an unterminated
// trailing fragment counts as a sentence; whitespace-only segments drop.
std::vector<Sentence> segment_sentences(const std::string& text);

std::size_t scalar_count(const std::string& utf8);

struct Lexicons {
    std::vector<std::string> adjectives;
    std::vector<std::string> nouns;
    std::vector<std::string> verbs;
    std::vector<std::string> interjections;
    std::map<std::string, double> sentiment;  // phrase -> signed weight
};

// Per-text metric samples over a corpus. Keys are fixed; every metric
// holds one value per input text.
struct Fingerprint {
    static const std::vector<std::string>& metric_names();
    std::map<std::string, std::vector<double>> metrics;
};

Fingerprint fingerprint(const std::vector<std::string>& corpus, const Lexicons& lexicons);

// Histograms both samples on shared equal-width bins over the pooled
// range, then Jensen-Shannon divergence per metric.
std::map<std::string, double> compare_corpora(const Fingerprint& a, const Fingerprint& b,
                                              std::size_t bins = 20);

struct SlangEntry {
    std::string phrase;
    std::string tag;  // cognitive-function note, free-form
};

struct SlangDictionary {
    // category in {Despair, Denial, Euphoria, Cynicism}
    std::map<std::string, std::vector<SlangEntry>> categories;
    double injection_p = 0.3;

    void validate() const;
    std::vector<const SlangEntry*> all() const;
};

// Template cells keyed by (persona, emotion); "{event}" and "{slang}"
// are the recognized slots.
struct TemplateSet {
    std::map<std::pair<Persona, std::string>, std::vector<std::string>> cells;

    const std::vector<std::string>& cell(Persona p, const std::string& emotion) const;
};

struct GenerationContext {
    std::string market_condition;  // selects the emotion-conditioned cell
    std::string event;             // substituted into {event}
};

struct GenerationPhysics {
    double i_rhythm = 0.85;  // in [0, 1.5]
    double p_leap = 0.3;     // in [0, 1]
    OscillationParams oscillation;  // base schedule, scaled by i_rhythm
};

struct GeneratedComment {
    std::string text;
    Persona persona = Persona::Novice;
    bool slang_injected = false;
};

// Deterministic per (inputs, seed); item i derives its own stream from
// (seed, i) so batches are order-independent and parallelizable.
std::vector<GeneratedComment> generate_synthetic_comments(
    const GenerationContext& context, const std::map<Persona, double>& persona_dist,
    const GenerationPhysics& physics, const SlangDictionary& slang,
    const TemplateSet& templates, std::size_t n, std::uint64_t seed);

}  // namespace coglab::textlab
