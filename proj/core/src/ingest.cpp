#include "coglab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ini.hpp"

namespace coglab::ingest {

using nlohmann::json;
using detail::IniDoc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw InputError("report: malformed JSON document");
    return doc;
}

double checked_score(const std::string& dim, double value, bool clamp) {
    if (!std::isfinite(value)) throw InputError("report: non-finite score for " + dim);
    if (value < -1.0 || value > 1.0) {
        if (!clamp) {
            throw InputError("report: score for '" + dim + "' outside [-1, 1]: " +
                             std::to_string(value));
        }
        return std::clamp(value, -1.0, 1.0);
    }
    return value;
}

// Collects (dimension, score) pairs from a persona block: both its
// dominant_emotions list and its cognitive_profile object.
std::map<std::string, double> persona_scores(const json& block) {
    std::map<std::string, double> out;
    if (block.contains("dominant_emotions") && block["dominant_emotions"].is_array()) {
        for (const auto& item : block["dominant_emotions"]) {
            if (item.contains("emotion") && item.contains("score")) {
                out[item["emotion"].get<std::string>()] = item["score"].get<double>();
            }
        }
    }
    if (block.contains("cognitive_profile") && block["cognitive_profile"].is_object()) {
        for (const auto& [dim, v] : block["cognitive_profile"].items()) {
            if (v.is_number()) out[dim] = v.get<double>();
        }
    }
    return out;
}

std::vector<std::string> doc_dimensions(const json& doc) {
    std::set<std::string> dims;
    if (doc.contains("market_sentiment_summary")) {
        const auto& summary = doc["market_sentiment_summary"];
        if (summary.contains("dominant_emotions") &&
            summary["dominant_emotions"].is_array()) {
            for (const auto& item : summary["dominant_emotions"]) {
                if (item.contains("emotion")) {
                    dims.insert(item["emotion"].get<std::string>());
                }
            }
        }
        if (summary.contains("segregated_sentiment")) {
            for (const char* persona : {"novice", "veteran"}) {
                const auto& seg = summary["segregated_sentiment"];
                if (seg.contains(persona)) {
                    for (const auto& [dim, v] : persona_scores(seg[persona])) {
                        dims.insert(dim);
                        (void)v;
                    }
                }
            }
        }
    }
    return {dims.begin(), dims.end()};
}

}  // namespace

std::vector<std::string> scan_report_dimensions(const std::string& text) {
    return doc_dimensions(parse_json(text));
}

DailySentimentReport parse_csd_report(const std::string& text,
                                      const ReportParseOptions& options) {
    const json doc = parse_json(text);

    RegistryPtr registry =
        options.registry ? options.registry : DimensionRegistry::default_registry();
    if (options.extensible_registry) {
        std::vector<std::string> labels = registry->labels();
        for (const auto& dim : doc_dimensions(doc)) {
            if (!registry->contains(dim) &&
                std::find(labels.begin(), labels.end(), dim) == labels.end()) {
                labels.push_back(dim);
            }
        }
        if (labels.size() != registry->size()) registry = DimensionRegistry::make(labels);
    }

    DailySentimentReport report;
    if (!doc.contains("date") || !doc["date"].is_string()) {
        throw InputError("report: missing date");
    }
    report.date = Date::parse(doc["date"].get<std::string>());

    if (!doc.contains("market_sentiment_summary")) {
        throw InputError("report: missing market_sentiment_summary");
    }
    const auto& summary = doc["market_sentiment_summary"];
    if (!summary.contains("overall_sentiment_index") ||
        !summary["overall_sentiment_index"].is_number()) {
        throw InputError("report: missing overall_sentiment_index");
    }
    report.overall_sentiment_index = checked_score(
        "overall_sentiment_index", summary["overall_sentiment_index"].get<double>(),
        options.clamp_scores);

    if (summary.contains("dominant_emotions") && summary["dominant_emotions"].is_array()) {
        for (const auto& item : summary["dominant_emotions"]) {
            if (!item.contains("emotion") || !item.contains("score")) continue;
            const std::string dim = item["emotion"].get<std::string>();
            if (!registry->contains(dim)) {
                throw InputError("report: unknown dimension '" + dim + "'");
            }
            report.dominant_emotions.emplace_back(
                dim, checked_score(dim, item["score"].get<double>(), options.clamp_scores));
        }
    }

    auto build_persona = [&](const char* name, bool& missing) {
        if (summary.contains("segregated_sentiment") &&
            summary["segregated_sentiment"].contains(name)) {
            std::map<std::string, double> scores;
            for (const auto& [dim, v] :
                 persona_scores(summary["segregated_sentiment"][name])) {
                if (!registry->contains(dim)) {
                    throw InputError("report: unknown dimension '" + dim + "'");
                }
                scores[dim] = checked_score(dim, v, options.clamp_scores);
            }
            missing = false;
            return CognitiveVector(registry, scores);
        }
        missing = true;  // zero-vector persona
        return CognitiveVector(registry);
    };
    report.persona_day.date = report.date;
    report.persona_day.novice = build_persona("novice", report.persona_day.novice_missing);
    report.persona_day.veteran =
        build_persona("veteran", report.persona_day.veteran_missing);

    // Metacognition: share of thought tokens carrying the tag.
    if (doc.contains("detailed_thought_token_analysis") &&
        doc["detailed_thought_token_analysis"].is_array()) {
        const auto& tokens = doc["detailed_thought_token_analysis"];
        std::size_t tagged = 0;
        for (const auto& tok : tokens) {
            if (tok.contains("tags") && tok["tags"].is_array()) {
                for (const auto& tag : tok["tags"]) {
                    if (tag.is_string() && tag.get<std::string>() == "TAG_METACOGNITION") {
                        ++tagged;
                        break;
                    }
                }
            }
        }
        if (!tokens.empty()) {
            report.persona_day.metacognition_score =
                static_cast<double>(tagged) / static_cast<double>(tokens.size());
        }
    }

    if (summary.contains("diagnosed_biases") && summary["diagnosed_biases"].is_array()) {
        for (const auto& item : summary["diagnosed_biases"]) {
            std::string name;
            if (item.is_string()) {
                name = item.get<std::string>();
            } else if (item.contains("bias_enum")) {
                name = item["bias_enum"].get<std::string>();
            } else {
                continue;
            }
            const auto bias = bias_from_string(name);
            if (!bias) throw InputError("report: unknown bias '" + name + "'");
            report.diagnosed_biases.push_back(*bias);
        }
    }

    if (summary.contains("narrative_dynamics") && summary["narrative_dynamics"].is_array()) {
        for (const auto& item : summary["narrative_dynamics"]) {
            if (item.contains("topic") && item["topic"].is_string()) {
                report.narrative_topics.push_back(item["topic"].get<std::string>());
            }
        }
    }
    return report;
}

std::string serialize_csd_report(const DailySentimentReport& report) {
    json doc;
    doc["date"] = report.date.to_string();
    json summary;
    summary["overall_sentiment_index"] = report.overall_sentiment_index;
    summary["dominant_emotions"] = json::array();
    for (const auto& [dim, score] : report.dominant_emotions) {
        summary["dominant_emotions"].push_back({{"emotion", dim}, {"score", score}});
    }
    json segregated;
    auto persona_block = [](const CognitiveVector& v) {
        json profile = json::object();
        for (const auto& [dim, s] : v.scores()) profile[dim] = s;
        return json{{"cognitive_profile", profile}};
    };
    if (!report.persona_day.novice_missing) {
        segregated["novice"] = persona_block(report.persona_day.novice);
    }
    if (!report.persona_day.veteran_missing) {
        segregated["veteran"] = persona_block(report.persona_day.veteran);
    }
    summary["segregated_sentiment"] = segregated;
    summary["diagnosed_biases"] = json::array();
    for (const auto b : report.diagnosed_biases) {
        summary["diagnosed_biases"].push_back({{"bias_enum", to_string(b)}});
    }
    summary["narrative_dynamics"] = json::array();
    for (const auto& topic : report.narrative_topics) {
        summary["narrative_dynamics"].push_back({{"topic", topic}});
    }
    doc["market_sentiment_summary"] = summary;
    if (report.persona_day.metacognition_score > 0.0) {
        // Round-trips through a token list with the tagged share.
        const int total = 20;
        const int tagged = static_cast<int>(
            std::lround(report.persona_day.metacognition_score * total));
        json tokens = json::array();
        for (int i = 0; i < total; ++i) {
            json tok = {{"thought_token", "t" + std::to_string(i)}};
            if (i < tagged) tok["tags"] = json::array({"TAG_METACOGNITION"});
            tokens.push_back(tok);
        }
        doc["detailed_thought_token_analysis"] = tokens;
    }
    return doc.dump(2) + "\n";
}

backtest::PriceSeries parse_price_series(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw InputError("price file: empty");
    // Normalize the header and confirm the mandatory columns.
    std::string header = line;
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto cols = IniDoc::split_list(header);
    if (cols.size() < 2 || cols[0] != "date" || cols[1] != "close") {
        throw InputError("price file: header must start with 'date,close'");
    }
    backtest::PriceSeries series;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = IniDoc::split_list(line);
        if (fields.size() < 2) {
            throw InputError("price file line " + std::to_string(lineno) +
                             ": expected date,close");
        }
        backtest::PricePoint pt;
        pt.date = Date::parse(fields[0]);
        pt.close = IniDoc::to_double(fields[1], "price close");
        if (!(pt.close > 0.0)) {
            throw InputError("price file line " + std::to_string(lineno) +
                             ": non-positive close");
        }
        auto opt = [&](std::size_t idx) -> std::optional<double> {
            if (fields.size() > idx) return IniDoc::to_double(fields[idx], "price field");
            return std::nullopt;
        };
        pt.open = opt(2);
        pt.high = opt(3);
        pt.low = opt(4);
        series.points.push_back(pt);
    }
    std::stable_sort(series.points.begin(), series.points.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        if (series.points[i].date == series.points[i - 1].date) {
            throw InputError("price file: duplicate date " +
                             series.points[i].date.to_string());
        }
    }
    series.validate();
    return series;
}

backtest::PriceSeries load_price_series(const std::string& path) {
    try {
        return parse_price_series(read_file(path));
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// --- model config ------------------------------------------------------

ModelConfig ModelConfig::defaults() {
    ModelConfig cfg;
    cfg.registry_labels = DimensionRegistry::default_registry()->labels();
    cfg.arsenal = garch::ParamArsenal::defaults();
    cfg.decay = affect::DecayTable::defaults();
    cfg.holiday = affect::HolidayTable::defaults();
    cfg.shock = affect::ShockConfig::defaults();
    cfg.satellite = affect::SatelliteCoeffs::defaults();
    // Bull regimes couple joy into fomo more strongly.
    affect::SatelliteCoeffs bull = cfg.satellite;
    bull.fomo[0] = 0.8;
    cfg.satellite_by_quadrant[macro::Quadrant::A_FullBubble] = bull;
    cfg.satellite_by_quadrant[macro::Quadrant::F_StructuralRise] = bull;
    return cfg;
}

RegistryPtr ModelConfig::registry() const {
    return DimensionRegistry::make(registry_labels);
}

garch::PirConfig ModelConfig::pir_config() const {
    garch::PirConfig pc;
    pc.decay = decay;
    pc.shock = shock;
    pc.satellite = satellite;
    pc.satellite_by_quadrant = satellite_by_quadrant;
    pc.arsenal = arsenal;
    pc.selection = selection;
    pc.prototypes = prototypes;
    pc.mcfi_alpha = mcfi_alpha;
    pc.default_h0 = default_h0;
    pc.noise_sd = pir_noise_sd;
    return pc;
}

void ModelConfig::validate(bool strict_ranges) const {
    const auto reg = registry();
    auto check_dim = [&](const std::string& dim, const std::string& where) {
        if (!reg->contains(dim)) {
            throw ConfigError(where + ": dimension '" + dim + "' not in registry");
        }
    };
    for (const auto& [dim, entry] : decay.entries) {
        check_dim(dim, "[decay]");
        if (entry.alpha < 0.0) throw ConfigError("[decay] " + dim + ": alpha must be >= 0");
        if (entry.threshold < 0.0 || entry.threshold > 1.0) {
            throw ConfigError("[decay] " + dim + ": threshold must be in [0, 1]");
        }
    }
    for (const auto& [dim, mult] : holiday.multipliers) {
        check_dim(dim, "[holiday]");
        if (!(mult > 0.0)) throw ConfigError("[holiday] " + dim + ": multiplier must be > 0");
    }
    shock.validate();
    for (const auto& [event, deltas] : shock.delta_e) {
        for (const auto& [dim, v] : deltas) {
            check_dim(dim, "[shock] " + event);
            (void)v;
        }
    }
    arsenal.validate();
    for (const auto& [q, entry] : arsenal.entries) {
        check_dim(entry.core_dim, std::string("[arsenal] ") + macro::to_string(q));
    }
    strategy.validate();
    backtest.validate();
    if (backtest.cost_rate < 0.0) throw ConfigError("[backtest] cost_rate must be >= 0");
    if (!(mcfi_alpha >= 0.0 && mcfi_alpha <= 1.0)) {
        throw ConfigError("[quadrants] mcfi_alpha must be in [0, 1]");
    }
    if (!(prototypes.bandwidth > 0.0)) {
        throw ConfigError("[quadrants] bandwidth must be > 0");
    }

    if (strict_ranges) {
        const auto documented = garch::ParamArsenal::defaults();
        constexpr double kEps = 1e-12;
        for (const auto& [q, entry] : arsenal.entries) {
            const auto& ref = documented.entries.at(q);
            auto check_range = [&](const garch::ParamRange& got,
                                   const garch::ParamRange& doc, const char* name) {
                if (got.lo < doc.lo - kEps || got.hi > doc.hi + kEps) {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf),
                                  "[arsenal] %s.%s out of range [%.2f,%.2f]",
                                  macro::to_string(q), name, doc.lo, doc.hi);
                    throw ConfigError(buf);
                }
            };
            check_range(entry.omega, ref.omega, "omega");
            check_range(entry.alpha, ref.alpha, "alpha");
            check_range(entry.alpha_neg, ref.alpha_neg, "alpha_neg");
            check_range(entry.beta, ref.beta, "beta");
            auto check_sel = [&](const std::optional<double>& sel,
                                 const garch::ParamRange& doc, const char* name) {
                if (sel && (*sel < doc.lo - kEps || *sel > doc.hi + kEps)) {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf),
                                  "[arsenal] %s.%s.select out of range [%.2f,%.2f]",
                                  macro::to_string(q), name, doc.lo, doc.hi);
                    throw ConfigError(buf);
                }
            };
            check_sel(entry.omega_sel, ref.omega, "omega");
            check_sel(entry.alpha_sel, ref.alpha, "alpha");
            check_sel(entry.alpha_neg_sel, ref.alpha_neg, "alpha_neg");
            check_sel(entry.beta_sel, ref.beta, "beta");
        }
    }
}

namespace {

std::map<std::string, double> parse_delta_map(const std::string& value,
                                              const std::string& where) {
    std::map<std::string, double> out;
    for (const auto& item : IniDoc::split_list(value)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError(where + ": expected dim:value, got '" + item + "'");
        }
        const std::string dim = item.substr(0, colon);
        out[dim] = IniDoc::to_double(item.substr(colon + 1), where);
    }
    return out;
}

garch::ParamRange parse_range(const std::vector<double>& values, const std::string& where) {
    if (values.size() != 2) throw ConfigError(where + ": expected 'lo, hi'");
    return {values[0], values[1]};
}

template <std::size_t N>
std::array<double, N> parse_coeffs(const std::vector<double>& values,
                                   const std::string& where) {
    if (values.size() != N) {
        throw ConfigError(where + ": expected " + std::to_string(N) + " coefficients");
    }
    std::array<double, N> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

}  // namespace

ModelConfig parse_model_config(const std::string& text, bool strict_ranges) {
    const IniDoc doc = IniDoc::parse(text);
    ModelConfig cfg = ModelConfig::defaults();

    if (doc.has("registry", "labels")) {
        cfg.registry_labels = doc.get_strings("registry", "labels");
    }
    cfg.clamp_on_ingest = doc.get_bool("registry", "clamp_on_ingest", cfg.clamp_on_ingest);

    // [arsenal]: quadrant.param = lo, hi and quadrant.param.select = x
    for (const auto& [key, value] : doc.section_items("arsenal")) {
        if (key == "selection_mode") {
            if (value == "dynamic") {
                cfg.selection = garch::SelectionMode::Dynamic;
            } else if (value == "static") {
                cfg.selection = garch::SelectionMode::Static;
            } else {
                throw ConfigError("[arsenal] selection_mode: 'dynamic' or 'static'");
            }
            continue;
        }
        if (key == "innovation") {
            if (value == "first_difference") {
                cfg.innovation = garch::InnovationMode::FirstDifference;
            } else if (value == "mean_residual") {
                cfg.innovation = garch::InnovationMode::MeanResidual;
            } else {
                throw ConfigError("[arsenal] innovation: 'first_difference' or 'mean_residual'");
            }
            continue;
        }
        if (key == "h0") {
            cfg.default_h0 = IniDoc::to_double(value, "[arsenal] h0");
            continue;
        }
        if (key == "strict_stationarity") {
            cfg.arsenal.strict_stationarity =
                doc.get_bool("arsenal", "strict_stationarity", false);
            continue;
        }
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            throw ConfigError("[arsenal] unrecognized key '" + key + "'");
        }
        const auto quadrant = macro::quadrant_from_string(key.substr(0, dot));
        if (!quadrant) throw ConfigError("[arsenal] unknown quadrant in '" + key + "'");
        auto& entry = cfg.arsenal.entries[*quadrant];
        const std::string rest = key.substr(dot + 1);
        const std::string where = "[arsenal] " + key;
        if (rest == "core_dim") {
            entry.core_dim = value;
        } else if (rest == "omega") {
            entry.omega = parse_range(doc.get_doubles("arsenal", key), where);
        } else if (rest == "alpha") {
            entry.alpha = parse_range(doc.get_doubles("arsenal", key), where);
        } else if (rest == "alpha_neg") {
            entry.alpha_neg = parse_range(doc.get_doubles("arsenal", key), where);
        } else if (rest == "beta") {
            entry.beta = parse_range(doc.get_doubles("arsenal", key), where);
        } else if (rest == "omega.select") {
            entry.omega_sel = IniDoc::to_double(value, where);
        } else if (rest == "alpha.select") {
            entry.alpha_sel = IniDoc::to_double(value, where);
        } else if (rest == "alpha_neg.select") {
            entry.alpha_neg_sel = IniDoc::to_double(value, where);
        } else if (rest == "beta.select") {
            entry.beta_sel = IniDoc::to_double(value, where);
        } else {
            throw ConfigError(where + ": unrecognized parameter");
        }
    }

    // [decay]: beta0/beta2 plus dim = alpha, threshold
    for (const auto& [key, value] : doc.section_items("decay")) {
        if (key == "beta0") {
            cfg.decay.beta0 = IniDoc::to_double(value, "[decay] beta0");
        } else if (key == "beta2") {
            cfg.decay.beta2 = IniDoc::to_double(value, "[decay] beta2");
        } else {
            const auto values = doc.get_doubles("decay", key);
            if (values.size() != 2) {
                throw ConfigError("[decay] " + key + ": expected 'alpha, threshold'");
            }
            cfg.decay.entries[key] = {values[0], values[1]};
        }
    }

    for (const auto& [key, value] : doc.section_items("holiday")) {
        cfg.holiday.multipliers[key] = IniDoc::to_double(value, "[holiday] " + key);
    }

    cfg.shock.mdi_threshold =
        doc.get_double("shock", "mdi_threshold", cfg.shock.mdi_threshold);
    cfg.shock.lambda = doc.get_double("shock", "lambda", cfg.shock.lambda);
    for (const auto& [key, value] : doc.section_items("shock")) {
        if (key == "mdi_threshold" || key == "lambda") continue;
        cfg.shock.delta_e[key] = parse_delta_map(value, "[shock] " + key);
    }

    // [satellite]: base sets plus optional quadrant-prefixed overrides.
    for (const auto& [key, value] : doc.section_items("satellite")) {
        const std::string where = "[satellite] " + key;
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            const auto values = doc.get_doubles("satellite", key);
            if (key == "fomo") {
                cfg.satellite.fomo = parse_coeffs<5>(values, where);
            } else if (key == "greed") {
                cfg.satellite.greed = parse_coeffs<5>(values, where);
            } else if (key == "uncertainty") {
                cfg.satellite.uncertainty = parse_coeffs<3>(values, where);
            } else if (key == "regret") {
                cfg.satellite.regret = parse_coeffs<3>(values, where);
            } else {
                throw ConfigError(where + ": unrecognized model");
            }
            continue;
        }
        const auto quadrant = macro::quadrant_from_string(key.substr(0, dot));
        if (!quadrant) throw ConfigError(where + ": unknown quadrant prefix");
        auto& set = cfg.satellite_by_quadrant.emplace(*quadrant, cfg.satellite).first->second;
        const std::string model = key.substr(dot + 1);
        const auto values = doc.get_doubles("satellite", key);
        if (model == "fomo") {
            set.fomo = parse_coeffs<5>(values, where);
        } else if (model == "greed") {
            set.greed = parse_coeffs<5>(values, where);
        } else if (model == "uncertainty") {
            set.uncertainty = parse_coeffs<3>(values, where);
        } else if (model == "regret") {
            set.regret = parse_coeffs<3>(values, where);
        } else {
            throw ConfigError(where + ": unrecognized model");
        }
    }

    cfg.prototypes.bandwidth =
        doc.get_double("quadrants", "bandwidth", cfg.prototypes.bandwidth);
    cfg.mcfi_alpha = doc.get_double("quadrants", "mcfi_alpha", cfg.mcfi_alpha);
    for (std::size_t q = 0; q < macro::kQuadrants.size(); ++q) {
        const std::string key(1, static_cast<char>('A' + q));
        if (!doc.has("quadrants", key)) continue;
        const auto values = doc.get_doubles("quadrants", key);
        if (values.size() != 5) {
            throw ConfigError("[quadrants] " + key +
                              ": expected 5 features (mdi, mcfi, v_mdi, v_mcfi, meta)");
        }
        std::copy(values.begin(), values.end(), cfg.prototypes.centroids[q].begin());
    }

    const std::string mode = doc.get_string("strategy", "mode", "dynamic");
    if (mode == "dynamic") {
        cfg.strategy.mode = strategy::Mode::Dynamic;
    } else if (mode == "baseline") {
        cfg.strategy.mode = strategy::Mode::Baseline;
    } else {
        throw ConfigError("[strategy] mode: 'dynamic' or 'baseline'");
    }
    auto& st = cfg.strategy;
    st.fear_stop_base = doc.get_double("strategy", "fear_stop_base", st.fear_stop_base);
    st.fear_stop_floor = doc.get_double("strategy", "fear_stop_floor", st.fear_stop_floor);
    st.h_ref = doc.get_double("strategy", "h_ref", st.h_ref);
    st.h_scale = doc.get_double("strategy", "h_scale", st.h_scale);
    st.buy_mdi_max = doc.get_double("strategy", "buy_mdi_max", st.buy_mdi_max);
    st.buy_mcfi_min = doc.get_double("strategy", "buy_mcfi_min", st.buy_mcfi_min);
    st.warning_spike_mult =
        doc.get_double("strategy", "warning_spike_mult", st.warning_spike_mult);
    st.warning_window = static_cast<std::size_t>(
        doc.get_double("strategy", "warning_window", static_cast<double>(st.warning_window)));
    st.prepare_mdi_min = doc.get_double("strategy", "prepare_mdi_min", st.prepare_mdi_min);
    st.prepare_novice_max =
        doc.get_double("strategy", "prepare_novice_max", st.prepare_novice_max);
    st.exposure_buy = doc.get_double("strategy", "exposure_buy", st.exposure_buy);
    st.exposure_warning = doc.get_double("strategy", "exposure_warning", st.exposure_warning);
    st.exposure_sell = doc.get_double("strategy", "exposure_sell", st.exposure_sell);

    auto& bt = cfg.backtest;
    bt.cost_rate = doc.get_double("backtest", "cost_rate", bt.cost_rate);
    bt.risk_free_daily = doc.get_double("backtest", "risk_free_daily", bt.risk_free_daily);
    bt.annualize_sharpe = doc.get_bool("backtest", "annualize_sharpe", bt.annualize_sharpe);
    cfg.latency_window = static_cast<std::size_t>(doc.get_double(
        "backtest", "latency_window", static_cast<double>(cfg.latency_window)));
    cfg.pir_noise_sd = doc.get_double("backtest", "pir_noise_sd", cfg.pir_noise_sd);

    cfg.validate(strict_ranges);
    return cfg;
}

ModelConfig load_model_config(const std::string& path, bool strict_ranges) {
    try {
        return parse_model_config(read_file(path), strict_ranges);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string write_model_config(const ModelConfig& cfg) {
    std::ostringstream out;
    char buf[256];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };

    out << "[registry]\n";
    out << "labels = ";
    for (std::size_t i = 0; i < cfg.registry_labels.size(); ++i) {
        if (i) out << ", ";
        out << cfg.registry_labels[i];
    }
    out << "\nclamp_on_ingest = " << (cfg.clamp_on_ingest ? "true" : "false") << "\n\n";

    out << "[arsenal]\n";
    out << "selection_mode = "
        << (cfg.selection == garch::SelectionMode::Dynamic ? "dynamic" : "static") << "\n";
    out << "innovation = "
        << (cfg.innovation == garch::InnovationMode::FirstDifference ? "first_difference"
                                                                     : "mean_residual")
        << "\n";
    out << "h0 = " << num(cfg.default_h0) << "\n";
    out << "strict_stationarity = " << (cfg.arsenal.strict_stationarity ? "true" : "false")
        << "\n";
    for (const auto& [q, entry] : cfg.arsenal.entries) {
        const std::string prefix(1, to_string(q)[0]);
        out << prefix << ".core_dim = " << entry.core_dim << "\n";
        auto range = [&](const char* name, const garch::ParamRange& r,
                         const std::optional<double>& sel) {
            out << prefix << "." << name << " = " << num(r.lo) << ", " << num(r.hi) << "\n";
            if (sel) out << prefix << "." << name << ".select = " << num(*sel) << "\n";
        };
        range("omega", entry.omega, entry.omega_sel);
        range("alpha", entry.alpha, entry.alpha_sel);
        range("alpha_neg", entry.alpha_neg, entry.alpha_neg_sel);
        range("beta", entry.beta, entry.beta_sel);
    }
    out << "\n[decay]\n";
    out << "beta0 = " << num(cfg.decay.beta0) << "\n";
    out << "beta2 = " << num(cfg.decay.beta2) << "\n";
    for (const auto& [dim, e] : cfg.decay.entries) {
        out << dim << " = " << num(e.alpha) << ", " << num(e.threshold) << "\n";
    }
    out << "\n[holiday]\n";
    for (const auto& [dim, m] : cfg.holiday.multipliers) {
        out << dim << " = " << num(m) << "\n";
    }
    out << "\n[shock]\n";
    out << "mdi_threshold = " << num(cfg.shock.mdi_threshold) << "\n";
    out << "lambda = " << num(cfg.shock.lambda) << "\n";
    for (const auto& [event, deltas] : cfg.shock.delta_e) {
        out << event << " = ";
        bool first = true;
        for (const auto& [dim, v] : deltas) {
            if (!first) out << ", ";
            out << dim << ":" << num(v);
            first = false;
        }
        out << "\n";
    }
    out << "\n[satellite]\n";
    auto coeffs = [&](const char* name, const auto& arr, const std::string& prefix) {
        out << prefix << name << " = ";
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (i) out << ", ";
            out << num(arr[i]);
        }
        out << "\n";
    };
    coeffs("fomo", cfg.satellite.fomo, "");
    coeffs("greed", cfg.satellite.greed, "");
    coeffs("uncertainty", cfg.satellite.uncertainty, "");
    coeffs("regret", cfg.satellite.regret, "");
    for (const auto& [q, set] : cfg.satellite_by_quadrant) {
        const std::string prefix = std::string(1, to_string(q)[0]) + ".";
        coeffs("fomo", set.fomo, prefix);
        coeffs("greed", set.greed, prefix);
        coeffs("uncertainty", set.uncertainty, prefix);
        coeffs("regret", set.regret, prefix);
    }
    out << "\n[quadrants]\n";
    out << "bandwidth = " << num(cfg.prototypes.bandwidth) << "\n";
    out << "mcfi_alpha = " << num(cfg.mcfi_alpha) << "\n";
    for (std::size_t q = 0; q < 6; ++q) {
        out << static_cast<char>('A' + q) << " = ";
        for (std::size_t i = 0; i < 5; ++i) {
            if (i) out << ", ";
            out << num(cfg.prototypes.centroids[q][i]);
        }
        out << "\n";
    }
    out << "\n[strategy]\n";
    out << "mode = " << (cfg.strategy.mode == strategy::Mode::Dynamic ? "dynamic" : "baseline")
        << "\n";
    out << "fear_stop_base = " << num(cfg.strategy.fear_stop_base) << "\n";
    out << "fear_stop_floor = " << num(cfg.strategy.fear_stop_floor) << "\n";
    out << "h_ref = " << num(cfg.strategy.h_ref) << "\n";
    out << "h_scale = " << num(cfg.strategy.h_scale) << "\n";
    out << "buy_mdi_max = " << num(cfg.strategy.buy_mdi_max) << "\n";
    out << "buy_mcfi_min = " << num(cfg.strategy.buy_mcfi_min) << "\n";
    out << "warning_spike_mult = " << num(cfg.strategy.warning_spike_mult) << "\n";
    out << "warning_window = " << cfg.strategy.warning_window << "\n";
    out << "prepare_mdi_min = " << num(cfg.strategy.prepare_mdi_min) << "\n";
    out << "prepare_novice_max = " << num(cfg.strategy.prepare_novice_max) << "\n";
    out << "exposure_buy = " << num(cfg.strategy.exposure_buy) << "\n";
    out << "exposure_warning = " << num(cfg.strategy.exposure_warning) << "\n";
    out << "exposure_sell = " << num(cfg.strategy.exposure_sell) << "\n";
    out << "\n[backtest]\n";
    out << "cost_rate = " << num(cfg.backtest.cost_rate) << "\n";
    out << "risk_free_daily = " << num(cfg.backtest.risk_free_daily) << "\n";
    out << "annualize_sharpe = " << (cfg.backtest.annualize_sharpe ? "true" : "false")
        << "\n";
    out << "latency_window = " << cfg.latency_window << "\n";
    out << "pir_noise_sd = " << num(cfg.pir_noise_sd) << "\n";
    return out.str();
}

}  // namespace coglab::ingest
