#include "coglab/cogvec.hpp"

#include <algorithm>
#include <cmath>

namespace coglab {

DimensionRegistry::DimensionRegistry(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    if (labels_.empty()) throw InputError("registry: labels must be non-empty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw InputError("registry: empty label");
        if (!index_.emplace(labels_[i], i).second) {
            throw InputError("registry: duplicate label '" + labels_[i] + "'");
        }
    }
}

std::shared_ptr<const DimensionRegistry> DimensionRegistry::make(
    std::vector<std::string> labels) {
    return std::shared_ptr<const DimensionRegistry>(
        new DimensionRegistry(std::move(labels)));
}

std::shared_ptr<const DimensionRegistry> DimensionRegistry::default_registry() {
    static const std::shared_ptr<const DimensionRegistry> reg = make({
        // basic emotions
        "joy", "sadness", "anger", "fear", "trust", "disgust", "surprise",
        "anticipation",
        // cognitive regulation
        "intensity", "agency", "certainty", "temporality",
        // market domain
        "fomo", "greed", "regret", "uncertainty",
        // local convention for the 17th slot
        "valence",
    });
    return reg;
}

bool DimensionRegistry::contains(const std::string& label) const {
    return index_.count(label) > 0;
}

std::size_t DimensionRegistry::index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("registry: unknown dimension '" + label + "'");
    return it->second;
}

namespace {

double validate_score(const std::string& dim, double s, bool clamp) {
    if (!std::isfinite(s)) throw InputError("score for '" + dim + "' is not finite");
    if (s < -1.0 || s > 1.0) {
        if (!clamp) {
            throw InputError("score for '" + dim + "' outside [-1, 1]: " +
                             std::to_string(s));
        }
        return std::clamp(s, -1.0, 1.0);
    }
    return s;
}

}  // namespace

CognitiveVector::CognitiveVector()
    : CognitiveVector(DimensionRegistry::default_registry()) {}

CognitiveVector::CognitiveVector(RegistryPtr registry) : registry_(std::move(registry)) {
    if (!registry_) throw InputError("cognitive vector: null registry");
}

CognitiveVector::CognitiveVector(RegistryPtr registry,
                                 const std::map<std::string, double>& scores, bool clamp)
    : CognitiveVector(std::move(registry)) {
    for (const auto& [dim, s] : scores) {
        if (!registry_->contains(dim)) {
            throw InputError("cognitive vector: unknown dimension '" + dim + "'");
        }
        scores_[dim] = validate_score(dim, s, clamp);
    }
}

std::optional<double> CognitiveVector::get(const std::string& dim) const {
    auto it = scores_.find(dim);
    if (it == scores_.end()) return std::nullopt;
    return it->second;
}

double CognitiveVector::get_or_zero(const std::string& dim) const {
    auto it = scores_.find(dim);
    return it == scores_.end() ? 0.0 : it->second;
}

CognitiveVector CognitiveVector::with(const std::string& dim, double score,
                                      bool clamp) const {
    if (!registry_->contains(dim)) {
        throw InputError("cognitive vector: unknown dimension '" + dim + "'");
    }
    CognitiveVector out = *this;
    out.scores_[dim] = validate_score(dim, score, clamp);
    return out;
}

const char* to_string(Persona p) {
    return p == Persona::Novice ? "novice" : "veteran";
}

const char* to_string(Bias b) {
    switch (b) {
        case Bias::LossAversion: return "BIAS_LOSS_AVERSION";
        case Bias::Recency: return "BIAS_RECENCY";
        case Bias::Overconfidence: return "BIAS_OVERCONFIDENCE";
        case Bias::Anchoring: return "BIAS_ANCHORING";
        case Bias::Herding: return "BIAS_HERDING";
        case Bias::Attribution: return "BIAS_ATTRIBUTION";
        case Bias::GamblersFallacy: return "BIAS_GAMBLERS_FALLACY";
    }
    return "BIAS_UNKNOWN";
}

std::optional<Bias> bias_from_string(const std::string& name) {
    static const std::map<std::string, Bias> lut = {
        {"BIAS_LOSS_AVERSION", Bias::LossAversion},
        {"BIAS_RECENCY", Bias::Recency},
        {"BIAS_OVERCONFIDENCE", Bias::Overconfidence},
        {"BIAS_ANCHORING", Bias::Anchoring},
        {"BIAS_HERDING", Bias::Herding},
        {"BIAS_ATTRIBUTION", Bias::Attribution},
        {"BIAS_GAMBLERS_FALLACY", Bias::GamblersFallacy},
    };
    auto it = lut.find(name);
    if (it == lut.end()) return std::nullopt;
    return it->second;
}

PersonaDayState aggregate_daily(const std::vector<TaggedVector>& inputs,
                                const Date& date) {
    RegistryPtr registry;
    for (const auto& item : inputs) {
        if (!registry) {
            registry = item.vector.registry();
        } else if (registry.get() != item.vector.registry().get()) {
            throw InputError("aggregate_daily: inputs mix registries");
        }
    }
    if (!registry) registry = DimensionRegistry::default_registry();

    // dim -> contributing values per persona; summed in sorted order so
    // the mean is exactly permutation-invariant.
    std::map<std::string, std::vector<double>> acc[2];
    std::size_t counts[2] = {0, 0};
    std::size_t tagged = 0;
    for (const auto& item : inputs) {
        const std::size_t p = item.persona == Persona::Novice ? 0 : 1;
        ++counts[p];
        if (item.metacognition_tag) ++tagged;
        for (const auto& [dim, s] : item.vector.scores()) {
            acc[p][dim].push_back(s);
        }
    }

    auto build = [&](std::size_t p) {
        std::map<std::string, double> means;
        for (auto& [dim, values] : acc[p]) {
            std::sort(values.begin(), values.end());
            double sum = 0.0;
            for (double v : values) sum += v;
            means[dim] = sum / static_cast<double>(values.size());
        }
        return CognitiveVector(registry, means);
    };

    PersonaDayState out{date, build(0), build(1), 0.0, counts[0] == 0, counts[1] == 0};
    if (!inputs.empty()) {
        out.metacognition_score =
            static_cast<double>(tagged) / static_cast<double>(inputs.size());
    }
    return out;
}

}  // namespace coglab
