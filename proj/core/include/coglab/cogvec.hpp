#pragma once
// Cognitive dimension registry, score vectors, persona-stratified day
// states and daily report records. Everything here is immutable after
// construction and safe to share across threads.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coglab/date.hpp"
#include "coglab/error.hpp"

namespace coglab {

// Ordered set of unique dimension names. Index positions are stable for
// the registry's lifetime.
class DimensionRegistry {
public:
    static std::shared_ptr<const DimensionRegistry> make(std::vector<std::string> labels);

    // The 16 dimensions named explicitly by the model (8 basic emotions,
    // 4 regulation, 4 market-domain) plus "valence" as the 17th.
    static std::shared_ptr<const DimensionRegistry> default_registry();

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    bool contains(const std::string& label) const;
    std::size_t index(const std::string& label) const;  // throws InputError

private:
    explicit DimensionRegistry(std::vector<std::string> labels);
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

using RegistryPtr = std::shared_ptr<const DimensionRegistry>;

// Sparse score record over a registry. Scores live in [-1, 1]; absent
// dimensions read as 0 where an aggregate needs a value.
class CognitiveVector {
public:
    CognitiveVector();  // empty vector on the default registry
    explicit CognitiveVector(RegistryPtr registry);

    // Out-of-range scores throw unless clamp is set, in which case they
    // are clamped to [-1, 1] on ingest.
    CognitiveVector(RegistryPtr registry,
                    const std::map<std::string, double>& scores,
                    bool clamp = false);

    const RegistryPtr& registry() const { return registry_; }
    const std::map<std::string, double>& scores() const { return scores_; }

    bool has(const std::string& dim) const { return scores_.count(dim) > 0; }
    std::optional<double> get(const std::string& dim) const;
    double get_or_zero(const std::string& dim) const;
    bool empty() const { return scores_.empty(); }

    // Value-semantic update used by simulators; validates like the ctor.
    CognitiveVector with(const std::string& dim, double score, bool clamp = false) const;

private:
    RegistryPtr registry_;
    std::map<std::string, double> scores_;
};

enum class Persona { Novice, Veteran };

const char* to_string(Persona p);

struct PersonaDayState {
    Date date;
    CognitiveVector novice;
    CognitiveVector veteran;
    double metacognition_score = 0.0;  // in [0, 1]
    bool novice_missing = false;       // persona had no inputs; zero vector
    bool veteran_missing = false;
};

// Closed bias registry (report documents may only use these).
enum class Bias {
    LossAversion,
    Recency,
    Overconfidence,
    Anchoring,
    Herding,
    Attribution,
    GamblersFallacy,
};

const char* to_string(Bias b);
std::optional<Bias> bias_from_string(const std::string& name);

struct DailySentimentReport {
    Date date;
    double overall_sentiment_index = 0.0;  // in [-1, 1]
    std::vector<std::pair<std::string, double>> dominant_emotions;
    PersonaDayState persona_day;
    std::vector<Bias> diagnosed_biases;
    std::vector<std::string> narrative_topics;
};

struct TaggedVector {
    Persona persona;
    CognitiveVector vector;
    bool metacognition_tag = false;  // TAG_METACOGNITION on the source item
};

// Consolidates per-comment vectors into a persona day state: arithmetic
// mean per persona and dimension (over the inputs that carry the
// dimension), metacognition score = tagged / total inputs. A persona
// with no inputs becomes the zero vector and is flagged.
PersonaDayState aggregate_daily(const std::vector<TaggedVector>& inputs, const Date& date);

}  // namespace coglab
