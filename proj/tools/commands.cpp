#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coglab/affect.hpp"
#include "coglab/backtest.hpp"
#include "coglab/garch.hpp"
#include "coglab/ingest.hpp"
#include "coglab/rng.hpp"
#include "coglab/stats.hpp"
#include "coglab/textlab.hpp"
#include "ic_fixture.hpp"
#include "io_util.hpp"
#include "pipeline.hpp"

namespace coglab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool strict_ranges = false;
    bool annualize = false;
    std::string mode = "dynamic";
};

ingest::ModelConfig load_config(const CommonOpts& opts) {
    ingest::ModelConfig cfg = opts.config_path.empty()
                                  ? ingest::ModelConfig::defaults()
                                  : ingest::load_model_config(opts.config_path,
                                                              opts.strict_ranges);
    if (opts.annualize) cfg.backtest.annualize_sharpe = true;
    return cfg;
}

std::string csv_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// --- ingest ----------------------------------------------------------------

std::string day_state_csv(const Pipeline& pipe) {
    std::ostringstream out;
    out << "date,overall_sentiment,metacognition,novice_missing,veteran_missing,mdi,mcfi";
    const auto& labels = pipe.registry->labels();
    for (const auto& dim : labels) out << ",novice_" << dim;
    for (const auto& dim : labels) out << ",veteran_" << dim;
    out << "\n";
    for (const auto& day : pipe.days) {
        out << day.report.date.to_string() << ","
            << format_double(day.report.overall_sentiment_index) << ","
            << format_double(day.report.persona_day.metacognition_score) << ","
            << (day.report.persona_day.novice_missing ? 1 : 0) << ","
            << (day.report.persona_day.veteran_missing ? 1 : 0) << ","
            << format_double(day.state.mdi) << "," << format_double(day.state.mcfi);
        for (const auto& dim : labels) {
            out << "," << format_double(day.report.persona_day.novice.get_or_zero(dim));
        }
        for (const auto& dim : labels) {
            out << "," << format_double(day.report.persona_day.veteran.get_or_zero(dim));
        }
        out << "\n";
    }
    return out.str();
}

int cmd_ingest(const CommonOpts& opts, const std::string& reports_path, bool extensible) {
    const auto cfg = load_config(opts);
    const auto reports = load_reports(reports_path, cfg, extensible);
    const auto pipe = build_pipeline(reports, cfg, cfg.selection);

    RunWriter run(opts.out_dir, "ingest");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(reports_path);
    run.write("day_states.csv", day_state_csv(pipe));
    run.finish();
    std::cout << "ingested " << pipe.days.size() << " day states -> " << opts.out_dir
              << "/day_states.csv\n";
    return kExitOk;
}

// --- macro -----------------------------------------------------------------

std::string macro_csv(const Pipeline& pipe) {
    std::ostringstream out;
    out << "date,mdi,mcfi,meta,v_mdi,v_mcfi,a_mdi,a_mcfi";
    for (macro::Quadrant q : macro::kQuadrants) out << ",p_" << macro::to_string(q)[0];
    out << ",dominant\n";
    for (const auto& day : pipe.days) {
        out << day.report.date.to_string() << "," << format_double(day.state.mdi) << ","
            << format_double(day.state.mcfi) << "," << format_double(day.state.meta) << ","
            << csv_optional(day.dyn.v_mdi) << "," << csv_optional(day.dyn.v_mcfi) << ","
            << csv_optional(day.dyn.a_mdi) << "," << csv_optional(day.dyn.a_mcfi);
        for (double p : day.membership.probabilities) out << "," << format_double(p);
        out << "," << macro::enum_name(day.membership.dominant) << "\n";
    }
    return out.str();
}

int cmd_macro(const CommonOpts& opts, const std::string& reports_path, bool extensible) {
    const auto cfg = load_config(opts);
    const auto reports = load_reports(reports_path, cfg, extensible);
    const auto pipe = build_pipeline(reports, cfg, cfg.selection);

    RunWriter run(opts.out_dir, "macro");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(reports_path);
    run.write("macro.csv", macro_csv(pipe));
    run.finish();
    std::cout << "macro states for " << pipe.days.size() << " days -> " << opts.out_dir
              << "/macro.csv\n";
    return kExitOk;
}

// --- simulate (counterfactual forward run) ----------------------------------

garch::ShockSchedule parse_shocks(const std::vector<std::string>& specs) {
    garch::ShockSchedule shocks;
    for (const auto& spec : specs) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) {
            throw InputError("--shock expects day:event_class, got '" + spec + "'");
        }
        const int day = std::atoi(spec.substr(0, colon).c_str());
        if (day <= 0) throw InputError("--shock day must be a positive day offset");
        shocks[static_cast<std::size_t>(day)] = spec.substr(colon + 1);
    }
    return shocks;
}

int cmd_simulate(const CommonOpts& opts, const std::string& reports_path,
                 std::size_t horizon, const std::vector<std::string>& shock_specs,
                 const std::string& liquidity_path, bool extensible) {
    const auto cfg = load_config(opts);
    const auto reports = load_reports(reports_path, cfg, extensible);
    const auto pipe = build_pipeline(reports, cfg, cfg.selection);

    // Last observed day becomes the simulation anchor.
    const auto& anchor = pipe.days.back();
    garch::PirState initial;
    initial.date = anchor.report.date;
    initial.novice = anchor.report.persona_day.novice;
    initial.veteran = anchor.report.persona_day.veteran;
    initial.macro_state = anchor.state;
    initial.dominant = anchor.membership.dominant;
    for (const auto& dim : pipe.registry->labels()) {
        initial.vol.h[dim] = pipe.fear_h.empty() ? cfg.default_h0 : pipe.fear_h.back();
    }

    auto pir_cfg = cfg.pir_config();
    const auto trajectory =
        garch::pir_simulate(initial, parse_shocks(shock_specs), horizon, pir_cfg, opts.seed);

    std::map<Date, double> liquidity;
    if (!liquidity_path.empty()) {
        const auto series = ingest::load_price_series(liquidity_path);
        for (const auto& pt : series.points) liquidity[pt.date] = pt.close;
    }

    std::ostringstream out;
    out << "date,mdi,mcfi,dominant,fragile";
    const auto& labels = pipe.registry->labels();
    for (const auto& dim : labels) out << ",novice_" << dim;
    for (const auto& dim : labels) out << ",veteran_" << dim;
    for (const auto& dim : labels) out << ",h_" << dim;
    if (!liquidity.empty()) out << ",liquidity,freeze";
    out << "\n";
    for (const auto& state : trajectory) {
        out << state.date.to_string() << "," << format_double(state.macro_state.mdi) << ","
            << format_double(state.macro_state.mcfi) << ","
            << macro::enum_name(state.dominant) << "," << (state.fragile ? 1 : 0);
        for (const auto& dim : labels) {
            out << "," << format_double(state.novice.get_or_zero(dim));
        }
        for (const auto& dim : labels) {
            out << "," << format_double(state.veteran.get_or_zero(dim));
        }
        for (const auto& dim : labels) {
            auto it = state.vol.h.find(dim);
            out << "," << format_double(it == state.vol.h.end() ? cfg.default_h0
                                                                : it->second);
        }
        if (!liquidity.empty()) {
            auto it = liquidity.find(state.date);
            if (it != liquidity.end()) {
                out << "," << format_double(it->second) << ","
                    << (garch::freeze_predicate(state.macro_state.mdi, it->second) ? 1 : 0);
            } else {
                out << ",,";
            }
        }
        out << "\n";
    }

    RunWriter run(opts.out_dir, "simulate");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(reports_path);
    if (!liquidity_path.empty()) run.add_input(liquidity_path);
    run.write("trajectory.csv", out.str());
    run.finish();
    std::cout << "simulated " << horizon << " days from " << initial.date.to_string()
              << " -> " << opts.out_dir << "/trajectory.csv\n";
    return kExitOk;
}

// --- backtest ----------------------------------------------------------------

int cmd_backtest(const CommonOpts& opts, const std::string& prices_path,
                 const std::string& reports_path, bool extensible) {
    auto cfg = load_config(opts);
    garch::SelectionMode garch_mode = garch::SelectionMode::Dynamic;
    if (opts.mode == "dynamic") {
        cfg.strategy.mode = strategy::Mode::Dynamic;
    } else if (opts.mode == "baseline") {
        cfg.strategy.mode = strategy::Mode::Baseline;
    } else if (opts.mode == "static-garch") {
        cfg.strategy.mode = strategy::Mode::Dynamic;
        garch_mode = garch::SelectionMode::Static;
    } else {
        throw ConfigError("--mode must be dynamic, baseline or static-garch");
    }

    const auto prices = ingest::load_price_series(prices_path);
    auto reports = load_reports(reports_path, cfg, extensible);

    // Align on the price calendar: every traded day needs a report.
    std::map<Date, DailySentimentReport> by_date;
    for (auto& r : reports) by_date.emplace(r.date, std::move(r));
    std::vector<DailySentimentReport> aligned;
    for (const auto& pt : prices.points) {
        auto it = by_date.find(pt.date);
        if (it == by_date.end()) {
            throw InputError("no report for trading day " + pt.date.to_string());
        }
        aligned.push_back(it->second);
    }

    const auto pipe = build_pipeline(aligned, cfg, garch_mode);
    const auto features = build_features(pipe, cfg);
    const auto signals = strategy::run_strategy(features, cfg.strategy);

    std::vector<double> exposures;
    exposures.reserve(signals.size());
    for (const auto& s : signals) exposures.push_back(s.exposure);
    const auto result = backtest::simulate_portfolio(prices, exposures, cfg.backtest);

    json report;
    report["mode"] = opts.mode;
    report["days"] = result.dates.size();
    report["net_return"] = result.net_return;
    report["max_drawdown"] = result.max_drawdown;
    if (result.sharpe) {
        report["sharpe"] = *result.sharpe;
    } else {
        report["sharpe"] = nullptr;
    }
    report["trade_count"] = result.trade_count;
    report["final_equity"] = result.equity.back();
    report["signal_entropy"] = backtest::signal_quality(signals, {}, cfg.latency_window)
                                   .entropy;
    json trades = json::array();
    for (const auto& t : result.trades) {
        trades.push_back({{"date", t.date.to_string()},
                          {"exposure_change", t.exposure_change},
                          {"cost", t.cost}});
    }
    report["trades"] = trades;

    std::ostringstream equity_csv;
    equity_csv << "date,close,equity,drawdown\n";
    double peak = result.equity.front();
    for (std::size_t i = 0; i < result.equity.size(); ++i) {
        peak = std::max(peak, result.equity[i]);
        equity_csv << result.dates[i].to_string() << ","
                   << format_double(prices.points[i].close) << ","
                   << format_double(result.equity[i]) << ","
                   << format_double((peak - result.equity[i]) / peak) << "\n";
    }

    std::ostringstream signals_csv;
    signals_csv << "date,signal,exposure,rationale\n";
    for (const auto& s : signals) {
        signals_csv << s.date.to_string() << "," << strategy::to_string(s.signal) << ","
                    << format_double(s.exposure) << "," << s.rationale << "\n";
    }

    RunWriter run(opts.out_dir, "backtest");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(prices_path);
    run.add_input(reports_path);
    run.write("report.json", report.dump(2) + "\n");
    run.write("equity.csv", equity_csv.str());
    run.write("signals.csv", signals_csv.str());
    if (opts.mode != "baseline" && !pipe.drift.empty()) {
        std::ostringstream drift_csv;
        drift_csv << "date,dim,omega,alpha,alpha_neg,beta,h\n";
        for (const auto& entry : pipe.drift) {
            drift_csv << pipe.days[entry.step].report.date.to_string() << ",fear,"
                      << format_double(entry.params.omega) << ","
                      << format_double(entry.params.alpha) << ","
                      << format_double(entry.params.alpha_neg) << ","
                      << format_double(entry.params.beta) << ","
                      << format_double(entry.h) << "\n";
        }
        run.write("drift.csv", drift_csv.str());
    }
    run.finish();

    std::cout << "backtest(" << opts.mode << "): net_return="
              << format_double(result.net_return)
              << " max_drawdown=" << format_double(result.max_drawdown)
              << " trades=" << result.trade_count << " -> " << opts.out_dir << "\n";
    return kExitOk;
}

// --- abtest ------------------------------------------------------------------

std::vector<double> load_value_column(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    {
        // a numeric first line means the header is missing and a row
        // would silently vanish
        char* end = nullptr;
        std::strtod(line.c_str(), &end);
        if (end != line.c_str()) {
            throw InputError(path + ": expected a header row before the values");
        }
    }
    std::vector<double> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) {
            throw InputError(path + " line " + std::to_string(lineno) + ": not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw InputError(path + ": no data rows");
    return values;
}

int cmd_abtest(const CommonOpts& opts, const std::string& a_path, const std::string& b_path,
               const std::string& c_path, const std::string& index_path) {
    const auto va = load_value_column(a_path);
    const auto vb = load_value_column(b_path);
    const auto vc = load_value_column(c_path);
    const auto idx = load_value_column(index_path);
    if (va.size() != idx.size() || vb.size() != idx.size() || vc.size() != idx.size()) {
        throw InputError("abtest: sentiment series and index must have equal length");
    }

    struct Row {
        const char* model;
        stats::CorrelationResult res;
    };
    const Row rows[] = {
        {"A", stats::pearson(va, idx)},
        {"B", stats::pearson(vb, idx)},
        {"C", stats::pearson(vc, idx)},
    };

    std::ostringstream table;
    table << "model,r,p\n";
    for (const auto& row : rows) {
        table << row.model << "," << format_double(row.res.r) << ","
              << format_double(row.res.p_two_sided) << "\n";
    }
    const bool ordered = rows[0].res.r > rows[1].res.r && rows[1].res.r > rows[2].res.r;
    std::ostringstream verdict;
    verdict << "ordering r(A)>r(B)>r(C): " << (ordered ? "holds" : "violated") << "\n";

    RunWriter run(opts.out_dir, "abtest");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    for (const auto& p : {a_path, b_path, c_path, index_path}) run.add_input(p);
    run.write("ic_table.csv", table.str());
    run.write("verdict.txt", verdict.str());
    run.finish();

    std::cout << table.str() << verdict.str();
    return kExitOk;
}

// --- fingerprint ---------------------------------------------------------------

textlab::Lexicons load_lexicons(const std::string& dir) {
    auto lines_of = [&](const std::string& name) {
        const fs::path path = fs::path(dir) / name;
        if (!fs::is_regular_file(path)) {
            throw InputError("missing lexicon file: " + path.string());
        }
        std::vector<std::string> lines;
        std::istringstream in(read_file(path.string()));
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
        return lines;
    };
    textlab::Lexicons lex;
    lex.adjectives = lines_of("adjectives.txt");
    lex.nouns = lines_of("nouns.txt");
    lex.verbs = lines_of("verbs.txt");
    lex.interjections = lines_of("interjections.txt");
    for (const auto& line : lines_of("sentiment.tsv")) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw InputError("sentiment.tsv: expected phrase<TAB>weight");
        }
        lex.sentiment[line.substr(0, tab)] = std::atof(line.substr(tab + 1).c_str());
    }
    return lex;
}

std::vector<std::string> load_corpus(const std::string& dir) {
    std::vector<std::string> corpus;
    for (const auto& file : list_files(dir, ".txt")) corpus.push_back(read_file(file));
    if (corpus.empty()) throw InputError("empty corpus directory: " + dir);
    return corpus;
}

int cmd_fingerprint(const CommonOpts& opts, const std::string& a_dir,
                    const std::string& b_dir, const std::string& lexicon_dir,
                    std::size_t bins) {
    const auto lex = load_lexicons(lexicon_dir);
    const auto fp_a = textlab::fingerprint(load_corpus(a_dir), lex);
    const auto fp_b = textlab::fingerprint(load_corpus(b_dir), lex);
    const auto jsd = textlab::compare_corpora(fp_a, fp_b, bins);

    std::ostringstream table;
    table << "metric,jsd\n";
    for (const auto& name : textlab::Fingerprint::metric_names()) {
        table << name << "," << format_double(jsd.at(name)) << "\n";
    }

    RunWriter run(opts.out_dir, "fingerprint");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(a_dir);
    run.add_input(b_dir);
    run.add_input(lexicon_dir);
    run.write("jsd_table.csv", table.str());
    run.finish();
    std::cout << table.str();
    return kExitOk;
}

// --- perturb (synthetic corpus generation) --------------------------------------

textlab::TemplateSet load_templates(const std::string& path) {
    textlab::TemplateSet set;
    std::istringstream in(read_file(path));
    std::string line;
    std::optional<std::pair<Persona, std::string>> cell;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            const std::string header = line.substr(1, line.size() - 2);
            const auto dot = header.find('.');
            if (dot == std::string::npos) {
                throw InputError(path + " line " + std::to_string(lineno) +
                                 ": expected [persona.emotion]");
            }
            const std::string persona = header.substr(0, dot);
            Persona p;
            if (persona == "novice") {
                p = Persona::Novice;
            } else if (persona == "veteran") {
                p = Persona::Veteran;
            } else {
                throw InputError(path + " line " + std::to_string(lineno) +
                                 ": unknown persona '" + persona + "'");
            }
            cell = {p, header.substr(dot + 1)};
            continue;
        }
        if (!cell) {
            throw InputError(path + " line " + std::to_string(lineno) +
                             ": template before any [persona.emotion] header");
        }
        set.cells[*cell].push_back(line);
    }
    return set;
}

textlab::SlangDictionary load_slang(const std::string& path, double injection_p) {
    textlab::SlangDictionary slang;
    slang.injection_p = injection_p;
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string category, phrase, tag;
        if (!std::getline(fields, category, '\t') || !std::getline(fields, phrase, '\t')) {
            throw InputError(path + " line " + std::to_string(lineno) +
                             ": expected category<TAB>phrase[<TAB>tag]");
        }
        std::getline(fields, tag, '\t');
        slang.categories[category].push_back({phrase, tag});
    }
    return slang;
}

std::map<Persona, double> parse_persona_dist(const std::string& spec) {
    std::map<Persona, double> dist;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw InputError("--persona-dist expects name:weight pairs");
        }
        const std::string name = item.substr(0, colon);
        const double w = std::atof(item.substr(colon + 1).c_str());
        if (name == "novice") {
            dist[Persona::Novice] = w;
        } else if (name == "veteran") {
            dist[Persona::Veteran] = w;
        } else {
            throw InputError("--persona-dist: unknown persona '" + name + "'");
        }
    }
    return dist;
}

int cmd_perturb(const CommonOpts& opts, std::size_t n, double i_rhythm, double p_leap,
                const std::string& templates_path, const std::string& slang_path,
                double slang_p, const std::string& condition, const std::string& event,
                const std::string& persona_spec) {
    const auto templates = load_templates(templates_path);
    const auto slang = load_slang(slang_path, slang_p);
    textlab::GenerationContext ctx{condition, event};
    textlab::GenerationPhysics physics;
    physics.i_rhythm = i_rhythm;
    physics.p_leap = p_leap;
    const auto batch = textlab::generate_synthetic_comments(
        ctx, parse_persona_dist(persona_spec), physics, slang, templates, n, opts.seed);

    std::ostringstream tsv;
    tsv << "persona\tslang\ttext\n";
    std::vector<double> lengths;
    for (const auto& item : batch) {
        tsv << to_string(item.persona) << "\t" << (item.slang_injected ? 1 : 0) << "\t"
            << item.text << "\n";
        for (const auto& s : textlab::segment_sentences(item.text)) {
            lengths.push_back(static_cast<double>(s.length));
        }
    }

    json summary;
    summary["comments"] = batch.size();
    summary["sentences"] = lengths.size();
    summary["i_rhythm"] = i_rhythm;
    summary["p_leap"] = p_leap;
    if (lengths.size() >= 3) {
        const auto m = stats::moments(lengths);
        summary["length_mean"] = m.mean;
        summary["length_sd"] = m.sd;
        if (m.cv) summary["length_cv"] = *m.cv;
        if (m.skewness) summary["length_skewness"] = *m.skewness;
        if (lengths.size() <= 5000) {
            const auto sw = stats::shapiro_wilk(lengths);
            summary["shapiro_w"] = sw.w;
            summary["shapiro_p"] = sw.p;
        }
    }

    RunWriter run(opts.out_dir, "perturb");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(templates_path);
    run.add_input(slang_path);
    run.write("comments.tsv", tsv.str());
    run.write("corpus_stats.json", summary.dump(2) + "\n");
    run.finish();
    std::cout << "generated " << batch.size() << " comments -> " << opts.out_dir
              << "/comments.tsv\n";
    return kExitOk;
}

// --- calibrate -------------------------------------------------------------------

std::vector<std::map<std::string, std::string>> read_csv_rows(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::istringstream h(line);
        std::string col;
        while (std::getline(h, col, ',')) header.push_back(col);
    }
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string value;
        std::map<std::string, std::string> row;
        std::size_t i = 0;
        while (std::getline(fields, value, ',') && i < header.size()) {
            row[header[i++]] = value;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double field_of(const std::map<std::string, std::string>& row, const std::string& name,
                const std::string& path) {
    auto it = row.find(name);
    if (it == row.end()) throw InputError(path + ": missing column '" + name + "'");
    return std::atof(it->second.c_str());
}

int cmd_calibrate(const CommonOpts& opts, const std::string& task,
                  const std::string& in_path) {
    const auto rows = read_csv_rows(in_path);
    json estimates;
    estimates["task"] = task;
    if (task == "decay") {
        std::vector<affect::DecaySample> samples;
        for (const auto& row : rows) {
            samples.push_back({field_of(row, "e_start", in_path),
                               field_of(row, "elapsed", in_path),
                               field_of(row, "e_end", in_path)});
        }
        const auto fit = affect::fit_decay(samples);
        estimates["alpha"] = fit.alpha;
        estimates["beta0"] = fit.beta0;
        estimates["beta2"] = fit.beta2;
        estimates["r_squared"] = fit.r_squared;
    } else if (task == "satellite") {
        std::vector<affect::SatelliteSample> samples;
        for (const auto& row : rows) {
            samples.push_back({field_of(row, "y", in_path), field_of(row, "x", in_path),
                               field_of(row, "v_x", in_path),
                               field_of(row, "mcfi", in_path)});
        }
        const auto fit = affect::fit_satellite(samples);
        estimates["coefficients"] = fit.coefficients;
        estimates["p_values"] = fit.p_values;
        estimates["r_squared"] = fit.r_squared;
    } else if (task == "holiday") {
        std::vector<double> post, normal_days;
        for (const auto& row : rows) {
            auto it = row.find("group");
            if (it == row.end()) throw InputError(in_path + ": missing column 'group'");
            const double v = field_of(row, "value", in_path);
            if (it->second == "post_holiday") {
                post.push_back(v);
            } else if (it->second == "normal") {
                normal_days.push_back(v);
            } else {
                throw InputError(in_path + ": group must be post_holiday or normal");
            }
        }
        const auto res = affect::holiday_test(post, normal_days);
        estimates["t"] = res.t;
        estimates["p_one_tailed"] = res.p_one_tailed;
        estimates["multiplier"] = res.multiplier;
    } else {
        throw ConfigError("--task must be decay, satellite or holiday");
    }

    RunWriter run(opts.out_dir, "calibrate");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.add_input(in_path);
    run.write("estimates.json", estimates.dump(2) + "\n");
    run.finish();
    std::cout << estimates.dump(2) << "\n";
    return kExitOk;
}

// --- validate (built-in self checks) ----------------------------------------------

int cmd_validate(const CommonOpts& opts) {
    (void)load_config(opts);  // a broken config must fail the run
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    {
        const std::vector<double> idx(fixture::kIndexPctChange.begin(),
                                      fixture::kIndexPctChange.end());
        const auto ra = stats::pearson(
            std::vector<double>(fixture::kModelA.begin(), fixture::kModelA.end()), idx);
        const auto rb = stats::pearson(
            std::vector<double>(fixture::kModelB.begin(), fixture::kModelB.end()), idx);
        const auto rc = stats::pearson(
            std::vector<double>(fixture::kModelC.begin(), fixture::kModelC.end()), idx);
        add("ic_fixture_r_values",
            std::fabs(ra.r - 0.761) <= 0.005 && std::fabs(rb.r - 0.757) <= 0.005 &&
                std::fabs(rc.r + 0.121) <= 0.005 && ra.r > rb.r && rb.r > rc.r,
            "rA=" + format_double(ra.r) + " rB=" + format_double(rb.r) +
                " rC=" + format_double(rc.r));
    }
    {
        const garch::GarchParams p{0.1, 0.1, 0.1, 0.8};
        add("gjr_hand_recursion",
            std::fabs(garch::gjr_step(1.0, -1.0, p) - 1.1) < 1e-15 &&
                std::fabs(garch::gjr_step(1.0, 1.0, p) - 1.0) < 1e-15,
            "h(-1)=1.1 h(+1)=1.0");
    }
    {
        const auto table = affect::DecayTable::defaults();
        double lo = 1.0, hi = 64.0;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            (affect::decay(0.9, mid, "fear", table) / 0.9 > 0.5 ? lo : hi) = mid;
        }
        const double closed = std::pow(2.0, 1.0 / 0.32);
        add("fear_half_life", std::fabs(0.5 * (lo + hi) - closed) <= 0.01,
            "T1/2=" + format_double(0.5 * (lo + hi)));
    }
    {
        const double jsd = stats::js_divergence(std::vector<double>{0.5, 0.5},
                                                std::vector<double>{1.0, 0.0});
        add("jsd_hand_value", std::fabs(jsd - 0.311278) < 1e-4, format_double(jsd));
    }
    {
        backtest::PriceSeries s;
        for (int i = 0; i < 3; ++i) s.points.push_back({Date(2025, 6, 1 + i), 100.0, {}, {}, {}});
        const auto res = backtest::simulate_portfolio(s, {1.0, 1.0, 0.0}, {});
        const double expected = (1.0 - 0.0026) * (1.0 - 0.0026);
        add("cost_exactness", std::fabs(res.equity.back() - expected) <= 1e-12,
            format_double(res.equity.back()));
    }
    {
        Rng rng(1);
        std::vector<double> gaussian(155);
        for (auto& v : gaussian) v = normal(rng);
        const auto sw = stats::shapiro_wilk(gaussian);
        add("shapiro_gaussian_accepts", sw.p > 0.05, "p=" + format_double(sw.p));
    }

    std::ostringstream table;
    table << "check,status,detail\n";
    bool all_pass = true;
    for (const auto& c : checks) {
        table << c.name << "," << (c.pass ? "pass" : "FAIL") << "," << c.detail << "\n";
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "  " << c.detail << "\n";
    }

    RunWriter run(opts.out_dir, "validate");
    run.set_seed(opts.seed);
    run.set_config(opts.config_path.empty() ? "(defaults)" : opts.config_path);
    run.write("validation.csv", table.str());
    run.finish();
    return all_pass ? kExitOk : kExitNumeric;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"cognitive market simulation, calibration and backtesting toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CommonOpts opts;
    app.add_option("--config", opts.config_path, "model configuration file")
        ->envname("COGLAB_CONFIG");
    app.add_option("--seed", opts.seed, "random seed recorded in the run manifest");
    app.add_option("--out", opts.out_dir, "output directory (default: out)");
    app.add_flag("--strict-ranges", opts.strict_ranges,
                 "reject config values outside the calibrated ranges");
    app.add_flag("--annualize", opts.annualize, "annualize Sharpe by sqrt(252)");

    std::string reports_path, prices_path, liquidity_path;
    bool extensible = false;
    std::size_t horizon = 5;
    std::vector<std::string> shock_specs;

    auto* ingest_cmd = app.add_subcommand("ingest", "normalize report documents");
    ingest_cmd->add_option("reports", reports_path, "reports directory or stream file")
        ->required();
    ingest_cmd->add_flag("--extensible", extensible,
                         "accept unknown dimensions by extending the registry");

    auto* macro_cmd = app.add_subcommand("macro", "per-day macro state and regimes");
    macro_cmd->add_option("reports", reports_path)->required();
    macro_cmd->add_flag("--extensible", extensible);

    auto* sim_cmd = app.add_subcommand("simulate", "counterfactual forward simulation");
    sim_cmd->add_option("reports", reports_path)->required();
    sim_cmd->add_option("--horizon", horizon, "days to simulate");
    sim_cmd->add_option("--shock", shock_specs, "day:event_class (repeatable)");
    sim_cmd->add_option("--liquidity", liquidity_path,
                        "date,close series enabling the freeze column");
    sim_cmd->add_flag("--extensible", extensible);

    auto* bt_cmd = app.add_subcommand("backtest", "signal generation and portfolio run");
    bt_cmd->add_option("--prices", prices_path)->required();
    bt_cmd->add_option("--reports", reports_path)->required();
    bt_cmd->add_option("--mode", opts.mode, "dynamic | baseline | static-garch");
    bt_cmd->add_flag("--extensible", extensible);

    std::string a_path, b_path, c_path, index_path;
    auto* ab_cmd = app.add_subcommand("abtest", "information-coefficient comparison");
    ab_cmd->add_option("--a", a_path)->required();
    ab_cmd->add_option("--b", b_path)->required();
    ab_cmd->add_option("--c", c_path)->required();
    ab_cmd->add_option("--index", index_path)->required();

    std::string b_dir, lexicon_dir;
    std::size_t bins = 20;
    auto* fp_cmd = app.add_subcommand("fingerprint", "stylometric corpus comparison");
    fp_cmd->add_option("--a", a_path)->required();
    fp_cmd->add_option("--b", b_dir)->required();
    fp_cmd->add_option("--lexicons", lexicon_dir)->required();
    fp_cmd->add_option("--bins", bins, "histogram bins (default 20)");

    std::size_t n_comments = 50;
    double i_rhythm = 0.85, p_leap = 0.3, slang_p = 0.3;
    std::string templates_path, slang_path, condition = "crash", event_text,
                persona_spec = "novice:0.7,veteran:0.3";
    auto* pt_cmd = app.add_subcommand("perturb", "synthetic comment generation");
    pt_cmd->add_option("--n", n_comments);
    pt_cmd->add_option("--i-rhythm", i_rhythm, "rhythmic volatility in [0, 1.5]");
    pt_cmd->add_option("--p-leap", p_leap, "associative leap probability");
    pt_cmd->add_option("--templates", templates_path)->required();
    pt_cmd->add_option("--slang", slang_path)->required();
    pt_cmd->add_option("--slang-p", slang_p, "injection probability");
    pt_cmd->add_option("--condition", condition, "emotion-conditioned template cell");
    pt_cmd->add_option("--event", event_text, "text substituted into {event}");
    pt_cmd->add_option("--persona-dist", persona_spec, "e.g. novice:0.7,veteran:0.3");

    std::string task, calibrate_in;
    auto* cal_cmd = app.add_subcommand("calibrate", "fit model parameters from samples");
    cal_cmd->add_option("--task", task, "decay | satellite | holiday")->required();
    cal_cmd->add_option("--in", calibrate_in, "sample CSV")->required();

    auto* val_cmd = app.add_subcommand("validate", "built-in numerical self checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(opts, reports_path, extensible);
        if (macro_cmd->parsed()) return cmd_macro(opts, reports_path, extensible);
        if (sim_cmd->parsed()) {
            return cmd_simulate(opts, reports_path, horizon, shock_specs, liquidity_path,
                                extensible);
        }
        if (bt_cmd->parsed()) return cmd_backtest(opts, prices_path, reports_path, extensible);
        if (ab_cmd->parsed()) return cmd_abtest(opts, a_path, b_path, c_path, index_path);
        if (fp_cmd->parsed()) return cmd_fingerprint(opts, a_path, b_dir, lexicon_dir, bins);
        if (pt_cmd->parsed()) {
            return cmd_perturb(opts, n_comments, i_rhythm, p_leap, templates_path,
                               slang_path, slang_p, condition, event_text, persona_spec);
        }
        if (cal_cmd->parsed()) return cmd_calibrate(opts, task, calibrate_in);
        if (val_cmd->parsed()) return cmd_validate(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace coglab::cli
