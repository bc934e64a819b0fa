#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "io_util.hpp"

namespace coglab::cli {

namespace fs = std::filesystem;

std::vector<DailySentimentReport> load_reports(const std::string& path,
                                               const ingest::ModelConfig& cfg,
                                               bool extensible) {
    std::vector<std::pair<std::string, std::string>> docs;  // (source, text)
    if (fs::is_directory(path)) {
        for (const auto& file : list_files(path, ".json")) {
            docs.emplace_back(file, read_file(file));
        }
    } else if (fs::is_regular_file(path)) {
        // newline-delimited stream: one document per non-empty line
        std::istringstream in(read_file(path));
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            docs.emplace_back(path + ":" + std::to_string(lineno), line);
        }
    } else {
        throw InputError("no such reports path: " + path);
    }
    if (docs.empty()) throw InputError("no input reports under " + path);

    ingest::ReportParseOptions options;
    options.clamp_scores = cfg.clamp_on_ingest;
    RegistryPtr registry = cfg.registry();
    if (extensible) {
        // Union registry across all documents so every report shares one.
        std::vector<std::string> labels = cfg.registry_labels;
        std::set<std::string> seen(labels.begin(), labels.end());
        for (const auto& [source, text] : docs) {
            try {
                for (const auto& dim : ingest::scan_report_dimensions(text)) {
                    if (seen.insert(dim).second) labels.push_back(dim);
                }
            } catch (const Error& e) {
                throw InputError(source + ": " + e.what());
            }
        }
        registry = DimensionRegistry::make(labels);
    }
    options.registry = registry;

    std::vector<DailySentimentReport> reports;
    reports.reserve(docs.size());
    for (const auto& [source, text] : docs) {
        try {
            reports.push_back(ingest::parse_csd_report(text, options));
        } catch (const Error& e) {
            throw InputError(source + ": " + e.what());
        }
    }
    std::stable_sort(reports.begin(), reports.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].date == reports[i - 1].date) {
            throw InputError("duplicate report date " + reports[i].date.to_string());
        }
    }
    return reports;
}

double mean_dimension(const DailySentimentReport& report, const std::string& dim) {
    return 0.5 * (report.persona_day.novice.get_or_zero(dim) +
                  report.persona_day.veteran.get_or_zero(dim));
}

Pipeline build_pipeline(const std::vector<DailySentimentReport>& reports,
                        const ingest::ModelConfig& cfg, garch::SelectionMode garch_mode) {
    if (reports.empty()) throw InputError("pipeline: no reports");
    Pipeline pipe;
    pipe.registry = reports.front().persona_day.novice.registry();

    std::vector<macro::MacroState> states;
    states.reserve(reports.size());
    for (const auto& report : reports) {
        macro::MacroState st;
        st.date = report.date;
        st.mdi = macro::mdi(report.persona_day);
        st.mcfi = macro::mcfi(mean_dimension(report, "joy"),
                              mean_dimension(report, "anticipation"), cfg.mcfi_alpha);
        st.meta = report.persona_day.metacognition_score;
        states.push_back(st);
    }
    const auto dynamics = states.size() >= 2 ? macro::dynamics(states, 1)
                                             : std::vector<macro::MacroDynamics>{
                                                   {states[0].date, {}, {}, {}, {}}};

    std::vector<macro::Quadrant> quadrant_path;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        DayRecord day;
        day.report = reports[i];
        day.state = states[i];
        day.dyn = dynamics[i];
        macro::MacroFeatures features{states[i].mdi, states[i].mcfi,
                                      day.dyn.v_mdi.value_or(0.0),
                                      day.dyn.v_mcfi.value_or(0.0), states[i].meta};
        day.membership = macro::quadrant_membership(features, cfg.prototypes);
        quadrant_path.push_back(day.membership.dominant);
        pipe.days.push_back(std::move(day));
    }

    // Conditional variance of the market-level fear series.
    if (reports.size() >= 2) {
        std::vector<double> fear_series;
        fear_series.reserve(reports.size());
        for (const auto& report : reports) {
            fear_series.push_back(mean_dimension(report, "fear"));
        }
        auto run = garch::run_volatility(fear_series, quadrant_path, cfg.arsenal,
                                         garch_mode, cfg.default_h0, cfg.innovation);
        pipe.fear_h = std::move(run.h);
        pipe.drift = std::move(run.drift);
    } else {
        pipe.fear_h.assign(reports.size(), cfg.default_h0);
    }
    return pipe;
}

std::vector<strategy::DayFeatures> build_features(const Pipeline& pipe,
                                                  const ingest::ModelConfig& cfg) {
    std::vector<strategy::DayFeatures> features;
    features.reserve(pipe.days.size());
    std::vector<double> abs_v_history;
    for (std::size_t i = 0; i < pipe.days.size(); ++i) {
        const auto& day = pipe.days[i];
        strategy::DayFeatures f;
        f.date = day.report.date;
        f.novice_fear = day.report.persona_day.novice.get_or_zero("fear");
        f.novice_sentiment = day.report.overall_sentiment_index;
        if (i > 0) {
            const auto& prev = pipe.days[i - 1].report.persona_day.veteran;
            const auto& cur = day.report.persona_day.veteran;
            f.veteran_anticipation_delta =
                cur.get_or_zero("anticipation") - prev.get_or_zero("anticipation");
            f.veteran_agency_delta = cur.get_or_zero("agency") - prev.get_or_zero("agency");
        }
        f.mdi = day.state.mdi;
        f.mcfi = day.state.mcfi;
        f.v_mdi = day.dyn.v_mdi;
        if (!abs_v_history.empty()) {
            const std::size_t window = std::min(abs_v_history.size(),
                                                cfg.strategy.warning_window);
            double sum = 0.0;
            for (std::size_t k = abs_v_history.size() - window; k < abs_v_history.size();
                 ++k) {
                sum += abs_v_history[k];
            }
            f.trailing_abs_v_mdi_mean = sum / static_cast<double>(window);
        }
        f.h_fear = pipe.fear_h[i];
        features.push_back(f);
        if (day.dyn.v_mdi) abs_v_history.push_back(std::fabs(*day.dyn.v_mdi));
    }
    return features;
}

}  // namespace coglab::cli
