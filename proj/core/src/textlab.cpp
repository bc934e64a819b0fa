#include "coglab/textlab.hpp"

#include <algorithm>
#include <cmath>

#include "coglab/rng.hpp"
#include "coglab/stats.hpp"

namespace coglab::textlab {

namespace {

// --- minimal UTF-8 walking -------------------------------------------------

std::size_t cp_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xe) return 3;
    if ((lead >> 3) == 0x1e) return 4;
    return 1;  // tolerate stray continuation bytes
}

char32_t decode_cp(const std::string& s, std::size_t i, std::size_t len) {
    const auto b = [&](std::size_t k) { return static_cast<unsigned char>(s[i + k]); };
    switch (len) {
        case 2: return ((b(0) & 0x1Fu) << 6) | (b(1) & 0x3Fu);
        case 3: return ((b(0) & 0x0Fu) << 12) | ((b(1) & 0x3Fu) << 6) | (b(2) & 0x3Fu);
        case 4:
            return ((b(0) & 0x07u) << 18) | ((b(1) & 0x3Fu) << 12) |
                   ((b(2) & 0x3Fu) << 6) | (b(3) & 0x3Fu);
        default: return b(0);
    }
}

// Byte-offset slices of each Unicode scalar.
std::vector<std::pair<std::size_t, std::size_t>> scalar_slices(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t len = cp_len(static_cast<unsigned char>(s[i]));
        if (i + len > s.size()) len = 1;
        out.emplace_back(i, len);
        i += len;
    }
    return out;
}

bool is_terminator(char32_t cp) {
    return cp == U'.' || cp == U'?' || cp == U'!' || cp == 0x3002 /* 。 */ ||
           cp == 0xFF1F /* ？ */ || cp == 0xFF01 /* ！ */;
}

bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
           cp == 0x3000 /* ideographic space */;
}

std::string trim_utf8(const std::string& s) {
    const auto slices = scalar_slices(s);
    std::size_t first = slices.size(), last = 0;
    for (std::size_t k = 0; k < slices.size(); ++k) {
        const char32_t cp = decode_cp(s, slices[k].first, slices[k].second);
        if (!is_space_cp(cp)) {
            if (first == slices.size()) first = k;
            last = k;
        }
    }
    if (first == slices.size()) return "";
    const std::size_t b0 = slices[first].first;
    const std::size_t b1 = slices[last].first + slices[last].second;
    return s.substr(b0, b1 - b0);
}

bool is_cjk(char32_t cp) {
    return (cp >= 0x2E80 && cp <= 0x9FFF) || (cp >= 0xF900 && cp <= 0xFAFF) ||
           (cp >= 0x3040 && cp <= 0x30FF) || (cp >= 0xFF00 && cp <= 0xFFEF);
}

// Token proxy: each CJK scalar is one token; each ASCII alphanumeric run
// is one token. Punctuation and whitespace are skipped.
std::size_t token_count(const std::string& s) {
    const auto slices = scalar_slices(s);
    std::size_t count = 0;
    bool in_word = false;
    for (const auto& [off, len] : slices) {
        const char32_t cp = decode_cp(s, off, len);
        const bool word_char =
            (cp < 0x80) && (std::isalnum(static_cast<unsigned char>(s[off])) != 0);
        if (is_cjk(cp) && !is_terminator(cp) && !is_space_cp(cp)) {
            ++count;
            in_word = false;
        } else if (word_char) {
            if (!in_word) ++count;
            in_word = true;
        } else {
            in_word = false;
        }
    }
    return count;
}

std::size_t count_occurrences(const std::string& text, const std::string& phrase) {
    if (phrase.empty()) return 0;
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(phrase, pos)) != std::string::npos) {
        ++count;
        pos += phrase.size();
    }
    return count;
}

}  // namespace

void OscillationParams::validate() const {
    if (baseline < 1.0) throw InputError("oscillation: baseline length must be >= 1");
    if (amplitude < 0.0) throw InputError("oscillation: amplitude must be >= 0");
    if (noise_sd < 0.0) throw InputError("oscillation: noise sd must be >= 0");
    if (min_len < 1) throw InputError("oscillation: min_len must be >= 1");
}

std::vector<std::size_t> oscillation_schedule(const OscillationParams& params,
                                              std::size_t n_sentences,
                                              std::uint64_t seed) {
    params.validate();
    if (n_sentences == 0) throw InputError("oscillation: need at least one sentence");
    Rng rng(derive_seed(seed, 0x05c1));
    std::vector<std::size_t> out;
    out.reserve(n_sentences);
    for (std::size_t n = 1; n <= n_sentences; ++n) {
        const double eps = params.noise_sd > 0.0 ? normal(rng, 0.0, params.noise_sd) : 0.0;
        const double raw = params.baseline +
                           params.amplitude *
                               std::sin(params.omega * static_cast<double>(n) + params.phi) +
                           eps;
        const double floored = std::floor(raw);
        const double bounded = std::max(static_cast<double>(params.min_len), floored);
        out.push_back(static_cast<std::size_t>(bounded));
    }
    return out;
}

void PerturbationParams::validate(std::size_t dims) const {
    if (!(tau > 0.0)) throw InputError("perturb: tau must be > 0");
    if (beta < 0.0 || beta > 1.0) throw InputError("perturb: beta must be in [0, 1]");
    if (noise_sd < 0.0) throw InputError("perturb: noise sd must be >= 0");
    if (theta_leap < -1.0 || theta_leap > 1.0) {
        throw InputError("perturb: theta_leap must be in [-1, 1]");
    }
    if (!bias_mask.empty() && bias_mask.size() != dims) {
        throw InputError("perturb: mask dimension mismatch");
    }
    bool any_positive = bias_mask.empty();
    for (double m : bias_mask) {
        if (m < 0.0) throw InputError("perturb: mask entries must be >= 0");
        if (m > 0.0) any_positive = true;
    }
    if (!any_positive) throw InputError("perturb: mask must have a positive entry");
}

std::vector<double> perturb_distribution(const std::vector<double>& p,
                                         const PerturbationParams& params,
                                         std::uint64_t seed) {
    if (p.empty()) throw InputError("perturb: empty distribution");
    params.validate(p.size());
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw InputError("perturb: negative probability");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw InputError("perturb: input must sum to 1");
    }

    std::vector<double> q(p.size());
    if (params.mode == PerturbMode::Tempered) {
        const double inv_tau = 1.0 / params.tau;
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] = p[i] > 0.0 ? std::pow(p[i], inv_tau) : 0.0;
        }
    } else {
        Rng rng(derive_seed(seed, 0xadd1));
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double noise =
                params.noise_sd > 0.0 ? normal(rng, 0.0, params.noise_sd) : 0.0;
            q[i] = std::max(0.0, p[i] * (1.0 - params.beta) + noise);
        }
    }
    if (!params.bias_mask.empty()) {
        for (std::size_t i = 0; i < p.size(); ++i) q[i] *= params.bias_mask[i];
    }
    double total = 0.0;
    for (double v : q) total += v;
    if (total <= 0.0) throw NumericError("perturb: distribution vanished after masking");
    for (double& v : q) v /= total;
    return q;
}

bool semantic_gate(const std::vector<double>& context_vec,
                   const std::vector<double>& candidate_vec, double theta_leap) {
    if (context_vec.size() != candidate_vec.size() || context_vec.empty()) {
        throw InputError("semantic_gate: dimension mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < context_vec.size(); ++i) {
        dot += context_vec[i] * candidate_vec[i];
        na += context_vec[i] * context_vec[i];
        nb += candidate_vec[i] * candidate_vec[i];
    }
    if (na == 0.0 || nb == 0.0) throw InputError("semantic_gate: zero vector");
    return dot / std::sqrt(na * nb) < theta_leap;
}

std::vector<Sentence> segment_sentences(const std::string& text) {
    std::vector<Sentence> out;
    const auto slices = scalar_slices(text);
    std::size_t seg_begin = 0;  // byte offset
    auto flush = [&](std::size_t end_byte) {
        if (end_byte <= seg_begin) return;
        const std::string trimmed = trim_utf8(text.substr(seg_begin, end_byte - seg_begin));
        if (!trimmed.empty()) out.push_back({trimmed, scalar_count(trimmed)});
    };
    for (const auto& [off, len] : slices) {
        const char32_t cp = decode_cp(text, off, len);
        if (is_terminator(cp)) {
            flush(off);
            seg_begin = off + len;
        }
    }
    flush(text.size());
    return out;
}

std::size_t scalar_count(const std::string& utf8) { return scalar_slices(utf8).size(); }

const std::vector<std::string>& Fingerprint::metric_names() {
    static const std::vector<std::string> names = {
        "avg_sentence_length", "sentence_length_sd",  "adjective_density",
        "noun_verb_ratio",     "interjection_count",  "sentiment_volatility",
    };
    return names;
}

Fingerprint fingerprint(const std::vector<std::string>& corpus, const Lexicons& lexicons) {
    if (corpus.empty()) throw InputError("fingerprint: empty corpus");
    Fingerprint fp;
    for (const auto& name : Fingerprint::metric_names()) fp.metrics[name] = {};

    for (const auto& text : corpus) {
        const auto sentences = segment_sentences(text);
        double avg_len = 0.0, len_sd = 0.0;
        if (!sentences.empty()) {
            std::vector<double> lengths;
            lengths.reserve(sentences.size());
            for (const auto& s : sentences) lengths.push_back(static_cast<double>(s.length));
            double sum = 0.0;
            for (double v : lengths) sum += v;
            avg_len = sum / static_cast<double>(lengths.size());
            double var = 0.0;
            for (double v : lengths) var += (v - avg_len) * (v - avg_len);
            len_sd = std::sqrt(var / static_cast<double>(lengths.size()));
        }

        const double tokens = std::max<double>(1.0, static_cast<double>(token_count(text)));
        auto density = [&](const std::vector<std::string>& lexicon) {
            std::size_t hits = 0;
            for (const auto& phrase : lexicon) hits += count_occurrences(text, phrase);
            return std::min(1.0, static_cast<double>(hits) / tokens);
        };
        const double adjective_density = density(lexicons.adjectives);
        std::size_t noun_hits = 0, verb_hits = 0, interjection_hits = 0;
        for (const auto& w : lexicons.nouns) noun_hits += count_occurrences(text, w);
        for (const auto& w : lexicons.verbs) verb_hits += count_occurrences(text, w);
        for (const auto& w : lexicons.interjections) {
            interjection_hits += count_occurrences(text, w);
        }
        const double nv_ratio =
            static_cast<double>(noun_hits) / static_cast<double>(std::max<std::size_t>(1, verb_hits));

        // Per-sentence signed lexicon score; volatility is its spread.
        double sentiment_sd = 0.0;
        if (sentences.size() >= 2) {
            std::vector<double> scores;
            scores.reserve(sentences.size());
            for (const auto& s : sentences) {
                double sc = 0.0;
                for (const auto& [phrase, weight] : lexicons.sentiment) {
                    sc += weight * static_cast<double>(count_occurrences(s.text, phrase));
                }
                scores.push_back(sc);
            }
            double mean = 0.0;
            for (double v : scores) mean += v;
            mean /= static_cast<double>(scores.size());
            double var = 0.0;
            for (double v : scores) var += (v - mean) * (v - mean);
            sentiment_sd = std::sqrt(var / static_cast<double>(scores.size()));
        }

        fp.metrics["avg_sentence_length"].push_back(avg_len);
        fp.metrics["sentence_length_sd"].push_back(len_sd);
        fp.metrics["adjective_density"].push_back(adjective_density);
        fp.metrics["noun_verb_ratio"].push_back(nv_ratio);
        fp.metrics["interjection_count"].push_back(static_cast<double>(interjection_hits));
        fp.metrics["sentiment_volatility"].push_back(sentiment_sd);
    }
    return fp;
}

std::map<std::string, double> compare_corpora(const Fingerprint& a, const Fingerprint& b,
                                              std::size_t bins) {
    if (a.metrics.size() != b.metrics.size()) {
        throw InputError("compare_corpora: fingerprints carry different metric sets");
    }
    std::map<std::string, double> out;
    for (const auto& [name, sample_a] : a.metrics) {
        auto it = b.metrics.find(name);
        if (it == b.metrics.end()) {
            throw InputError("compare_corpora: metric missing from one side: " + name);
        }
        const auto& sample_b = it->second;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double v : sample_a) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (double v : sample_b) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const auto ha = stats::Histogram::with_bins(sample_a, bins, lo, hi);
        const auto hb = stats::Histogram::with_bins(sample_b, bins, lo, hi);
        out[name] = stats::js_divergence(ha.mass(), hb.mass());
    }
    return out;
}

void SlangDictionary::validate() const {
    static const std::vector<std::string> kCategories = {"Despair", "Denial", "Euphoria",
                                                         "Cynicism"};
    if (injection_p < 0.0 || injection_p > 1.0) {
        throw ConfigError("slang: injection probability must be in [0, 1]");
    }
    for (const auto& [cat, entries] : categories) {
        if (std::find(kCategories.begin(), kCategories.end(), cat) == kCategories.end()) {
            throw ConfigError("slang: unknown category '" + cat + "'");
        }
        if (entries.empty()) throw ConfigError("slang: empty category '" + cat + "'");
    }
}

std::vector<const SlangEntry*> SlangDictionary::all() const {
    std::vector<const SlangEntry*> out;
    for (const auto& [cat, entries] : categories) {
        for (const auto& e : entries) out.push_back(&e);
    }
    return out;
}

const std::vector<std::string>& TemplateSet::cell(Persona p,
                                                  const std::string& emotion) const {
    auto it = cells.find({p, emotion});
    if (it == cells.end() || it->second.empty()) {
        throw InputError(std::string("templates: empty cell for ") + to_string(p) + "/" +
                         emotion);
    }
    return it->second;
}

namespace {

std::string replace_all(std::string text, const std::string& slot,
                        const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(slot, pos)) != std::string::npos) {
        text.replace(pos, slot.size(), value);
        pos += value.size();
    }
    return text;
}

const char* pick_terminator(Rng& rng) {
    static const char* kTerminators[] = {"\xE3\x80\x82", "\xEF\xBC\x81", "\xEF\xBC\x9F"};
    const double u = uniform01(rng);
    if (u < 0.55) return kTerminators[0];  // 。
    if (u < 0.85) return kTerminators[1];  // ！
    return kTerminators[2];                // ？
}

// Re-chunks raw content into sentences whose lengths follow the target
// schedule, then applies fragmentation and burst truncation driven by
// the rhythm index.
std::string rhythmize(const std::string& content, const GenerationPhysics& physics,
                      Rng& rng) {
    // Strip existing terminators; keep everything else in order.
    std::vector<std::string> scalars;
    {
        const auto slices = scalar_slices(content);
        scalars.reserve(slices.size());
        for (const auto& [off, len] : slices) {
            const char32_t cp = decode_cp(content, off, len);
            if (is_terminator(cp)) continue;
            scalars.push_back(content.substr(off, len));
        }
    }
    if (scalars.empty()) return content;

    OscillationParams osc = physics.oscillation;
    osc.amplitude *= physics.i_rhythm;
    osc.noise_sd *= physics.i_rhythm;
    const std::size_t max_sentences = scalars.size() / osc.min_len + 2;
    const auto schedule = oscillation_schedule(osc, max_sentences, rng());

    std::vector<std::string> sentences;
    std::size_t cursor = 0;
    for (std::size_t target : schedule) {
        if (cursor >= scalars.size()) break;
        const std::size_t take = std::min(target, scalars.size() - cursor);
        std::string s;
        for (std::size_t k = 0; k < take; ++k) s += scalars[cursor + k];
        cursor += take;
        sentences.push_back(std::move(s));
    }
    if (cursor < scalars.size()) {
        std::string tail;
        for (std::size_t k = cursor; k < scalars.size(); ++k) tail += scalars[k];
        sentences.push_back(std::move(tail));
    }

    // Fragmentation: split probability grows linearly with the rhythm
    // index, capped at 0.9. The cut lands early in the sentence, so a
    // split leaves a short burst plus a long remainder (the remainder may
    // split once more); the surviving long pieces form the right tail.
    const double p_split = std::min(0.9, 0.75 * physics.i_rhythm);
    struct Splitter {
        double p_split;
        Rng& rng;
        void operator()(const std::string& s, std::vector<std::string>& sink,
                        bool allow_recurse) const {
            const auto parts = scalar_slices(s);
            if (parts.size() < 4 || uniform01(rng) >= p_split) {
                sink.push_back(s);
                return;
            }
            const double frac = uniform(rng, 0.15, 0.45);
            std::size_t cut = static_cast<std::size_t>(
                frac * static_cast<double>(parts.size()));
            cut = std::clamp<std::size_t>(cut, 1, parts.size() - 1);
            const std::size_t cut_byte = parts[cut].first;
            sink.push_back(s.substr(0, cut_byte));
            const std::string tail = s.substr(cut_byte);
            if (allow_recurse) {
                (*this)(tail, sink, false);
            } else {
                sink.push_back(tail);
            }
        }
    };
    std::vector<std::string> fragmented;
    const Splitter split{p_split, rng};
    for (const auto& s : sentences) split(s, fragmented, true);

    // Over-perturbation regime: occasional one-to-three scalar bursts.
    const double p_burst = std::max(0.0, physics.i_rhythm - 1.0) * 0.8;
    std::string out;
    for (auto& s : fragmented) {
        std::string piece = s;
        if (p_burst > 0.0 && uniform01(rng) < p_burst) {
            const auto parts = scalar_slices(piece);
            const std::size_t keep =
                std::min<std::size_t>(parts.size(), 1 + uniform_index(rng, 3));
            piece = piece.substr(0, parts[keep - 1].first + parts[keep - 1].second);
        }
        const std::string trimmed = trim_utf8(piece);
        if (trimmed.empty()) continue;
        out += trimmed;
        out += pick_terminator(rng);
    }
    return out;
}

}  // namespace

std::vector<GeneratedComment> generate_synthetic_comments(
    const GenerationContext& context, const std::map<Persona, double>& persona_dist,
    const GenerationPhysics& physics, const SlangDictionary& slang,
    const TemplateSet& templates, std::size_t n, std::uint64_t seed) {
    slang.validate();
    if (physics.i_rhythm < 0.0 || physics.i_rhythm > 1.5) {
        throw InputError("generate: i_rhythm must be in [0, 1.5]");
    }
    if (physics.p_leap < 0.0 || physics.p_leap > 1.0) {
        throw InputError("generate: p_leap must be in [0, 1]");
    }
    double weight_sum = 0.0;
    for (const auto& [p, w] : persona_dist) {
        if (w < 0.0) throw InputError("generate: negative persona weight");
        weight_sum += w;
        (void)p;
    }
    if (std::fabs(weight_sum - 1.0) > 1e-9) {
        throw InputError("generate: persona weights must sum to 1");
    }
    const auto slang_pool = slang.all();

    std::vector<GeneratedComment> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, i));

        Persona persona = Persona::Novice;
        double u = uniform01(rng);
        for (const auto& [p, w] : persona_dist) {
            if (u < w) {
                persona = p;
                break;
            }
            u -= w;
        }

        const auto& cell = templates.cell(persona, context.market_condition);
        std::string text = cell[uniform_index(rng, cell.size())];

        const bool inject = !slang_pool.empty() && uniform01(rng) < slang.injection_p;
        if (inject) {
            const auto& entry = *slang_pool[uniform_index(rng, slang_pool.size())];
            if (text.find("{slang}") != std::string::npos) {
                text = replace_all(text, "{slang}", entry.phrase);
            } else {
                text += entry.phrase;
            }
        } else {
            text = replace_all(text, "{slang}", "");
        }
        text = replace_all(text, "{event}", context.event);

        text = rhythmize(text, physics, rng);

        // Associative leap: rotate the first sentence to the back, a
        // visible topic discontinuity.
        if (uniform01(rng) < physics.p_leap) {
            const auto sentences = segment_sentences(text);
            if (sentences.size() >= 2) {
                std::string rotated;
                for (std::size_t k = 1; k < sentences.size(); ++k) {
                    rotated += sentences[k].text;
                    rotated += "\xE3\x80\x82";
                }
                rotated += sentences[0].text;
                rotated += "\xE3\x80\x82";
                text = std::move(rotated);
            }
        }

        out.push_back({std::move(text), persona, inject});
    }
    return out;
}

}  // namespace coglab::textlab
