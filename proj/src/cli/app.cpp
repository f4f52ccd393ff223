// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/cli/app.hpp"

#include "geostab/brands/detect.hpp"
#include "geostab/collect/http_adapter.hpp"
#include "geostab/collect/simulator.hpp"
#include "geostab/concentration/gini.hpp"
#include "geostab/convergence/convergence.hpp"
#include "geostab/convergence/rng.hpp"
#include "geostab/core/validate.hpp"
#include "geostab/ingest/log_io.hpp"
#include "geostab/pairing/pairs.hpp"
#include "geostab/report/format.hpp"
#include "geostab/report/render.hpp"
#include "geostab/report/svg.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace geostab {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kWarnings = 1;
constexpr int kFatal = 2;

struct CommonOpts {
    std::vector<std::string> inputs;
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 42;

    // 1:1 overrides for the config document keys; a given flag wins over the file
    std::string window_start, window_end;
    std::vector<std::string> excluded_dates;
    std::vector<std::string> blocked_domains;
    std::vector<std::string> excluded_engines;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_inputs = true) {
    if (with_inputs)
        cmd->add_option("-i,--input", opts.inputs, "input record log(s), one JSON object per line")
            ->required();
    cmd->add_option("-c,--config", opts.config_path,
                    "ingest config file (fallback: $GEO_STABILITY_CONFIG)");
    cmd->add_option("-o,--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "master seed for all randomness");
    cmd->add_option("--window-start", opts.window_start, "overrides date_window.start");
    cmd->add_option("--window-end", opts.window_end, "overrides date_window.end");
    cmd->add_option("--exclude-date", opts.excluded_dates, "overrides excluded_dates");
    cmd->add_option("--block-domain", opts.blocked_domains, "overrides blocked_domains");
    cmd->add_option("--exclude-engine", opts.excluded_engines, "overrides excluded_engines");
}

IngestConfig resolve_config(const CommonOpts& opts) {
    IngestConfig cfg = IngestConfig::defaults();
    std::string path = opts.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("GEO_STABILITY_CONFIG")) path = env;
    }
    if (!path.empty()) cfg = IngestConfig::load(path);

    if (!opts.window_start.empty() || !opts.window_end.empty()) {
        auto start = parse_date(opts.window_start);
        auto end = parse_date(opts.window_end);
        if (!start || !end) throw std::runtime_error("--window-start/--window-end: bad or missing date");
        if (*start > *end) throw std::runtime_error("--window-start after --window-end");
        cfg.date_window = DateWindow{*start, *end};
    }
    if (!opts.excluded_dates.empty()) {
        cfg.excluded_dates.clear();
        for (const auto& s : opts.excluded_dates) {
            auto d = parse_date(s);
            if (!d) throw std::runtime_error("--exclude-date: bad date " + s);
            cfg.excluded_dates.insert(*d);
        }
    }
    if (!opts.blocked_domains.empty()) {
        cfg.blocked_domains.clear();
        for (const auto& s : opts.blocked_domains) cfg.blocked_domains.insert(fold_case(s));
    }
    if (!opts.excluded_engines.empty()) {
        cfg.excluded_engines.clear();
        for (const auto& s : opts.excluded_engines)
            cfg.excluded_engines.insert(EngineId::parse(s).label());
    }
    return cfg;
}

struct LoadResult {
    std::vector<ResponseRecord> records;
    size_t malformed_lines = 0;
    size_t invalid_records = 0;
};

// Parses every input, assigns missing run indices, drops invalid records
// (duplicates included) with a warning line each.
LoadResult load_records(const std::vector<std::string>& paths, std::ostream& err) {
    LoadResult out;
    RecordValidator validator;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open input file: " + path);
        ParseResult parsed = parse_log(in);
        assign_run_indices(parsed);
        for (const auto& e : parsed.errors) {
            err << "warning: " << path << ':' << e.line << ": " << e.message << '\n';
            ++out.malformed_lines;
        }
        for (auto& r : parsed.records) {
            ValidationReport report = validator.validate(r);
            if (!report.valid()) {
                err << "warning: " << path << ": dropping invalid record (";
                for (size_t i = 0; i < report.violations.size(); ++i)
                    err << (i ? "; " : "") << report.violations[i];
                err << ")\n";
                ++out.invalid_records;
                continue;
            }
            out.records.push_back(std::move(r));
        }
    }
    return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& bytes,
                std::ostream& out) {
    fs::create_directories(dir);
    fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << bytes;
    if (!f) throw std::runtime_error("write failed: " + path.string());
    out << "wrote " << path.string() << '\n';
}

std::map<std::string, double> campaign_detection_rates(const FilteredDataset& dataset,
                                                       const std::map<std::string, BrandLexicon>& lexicons) {
    std::map<std::string, std::vector<DetectionResult>> per_campaign;
    for (const auto& r : dataset.records) {
        auto lex = lexicons.find(r.prompt.campaign.name);
        if (lex == lexicons.end()) continue;
        per_campaign[r.prompt.campaign.name].push_back(detect_brands(r.answer_text, lex->second));
    }
    std::map<std::string, double> rates;
    for (const auto& [campaign, results] : per_campaign) rates[campaign] = detection_rate(results);
    return rates;
}

// Removes records of campaigns that miss the detection-rate threshold (or have
// no lexicon); returns warning lines naming rate vs threshold.
std::vector<std::string> restrict_to_qualified(FilteredDataset& dataset,
                                               const std::map<std::string, BrandLexicon>& lexicons,
                                               double threshold) {
    auto rates = campaign_detection_rates(dataset, lexicons);
    QualificationReport report = qualify_campaigns(rates, threshold);
    std::vector<std::string> warnings;
    std::set<std::string> keep;
    for (const auto& row : report.rows) {
        if (row.qualified)
            keep.insert(row.campaign);
        else
            warnings.push_back("campaign " + row.campaign + " excluded from brand analysis: detection rate " +
                               fmt_fixed(row.rate, 3) + " < threshold " + fmt_fixed(threshold, 2));
    }
    std::erase_if(dataset.records, [&](const ResponseRecord& r) {
        if (!lexicons.count(r.prompt.campaign.name)) return true;
        return keep.count(r.prompt.campaign.name) == 0;
    });
    return warnings;
}

struct SimilarityArtifacts {
    std::vector<ScoredPair> scored;
    std::vector<RecordPair> pairs;
};

SimilarityArtifacts run_similarity(const FilteredDataset& dataset, const std::string& mode,
                                   ExtractionKind kind, RboParams params, int max_gap_days,
                                   std::chrono::seconds max_delta,
                                   const std::map<std::string, BrandLexicon>* lexicons) {
    SimilarityArtifacts art;
    if (mode == "temporal") {
        art.pairs = consecutive_day_pairs(dataset, TemporalPairingConfig{max_gap_days}, kind);
    } else {
        auto cfg = SimultaneousPairingConfig::for_kind(kind);
        cfg.max_delta = max_delta;
        art.pairs = simultaneous_pairs(dataset, cfg, kind);
    }
    art.scored = score_pairs(dataset, art.pairs, params, lexicons);
    return art;
}

std::vector<BoxGroup> box_groups_by_campaign(const std::vector<ScoredPair>& scored) {
    std::map<std::string, BoxGroup> groups;
    for (const auto& sp : scored) {
        if (sp.score.excluded()) continue;
        auto& g = groups[sp.key.campaign.name];
        g.label = sp.key.campaign.name;
        g.jaccard.push_back(*sp.score.jaccard);
        g.rbo.push_back(*sp.score.rbo);
    }
    std::vector<BoxGroup> out;
    for (auto& [name, g] : groups) out.push_back(std::move(g));
    return out;
}

struct SimilarityFileNames {
    std::string table, engine_table, breakdown, box_svg, manifest, pairs_csv;
};

SimilarityFileNames similarity_file_names(const std::string& mode, ExtractionKind kind) {
    const bool temporal = mode == "temporal";
    const bool source = kind == ExtractionKind::Source;
    SimilarityFileNames names;
    if (temporal) {
        names.table = source ? "table2_source_temporal.csv" : "table3_brand_temporal.csv";
        names.box_svg = source ? "fig1_source_temporal_box.svg" : "fig2_brand_temporal_box.svg";
    } else {
        names.table = source ? "table4_source_simul.csv" : "table5_brand_simul.csv";
        names.box_svg = source ? "fig4_source_simul_box.svg" : "fig4_brand_simul_box.svg";
    }
    std::string suffix = std::string(temporal ? "temporal" : "simul") + "_" + std::string(to_string(kind));
    names.engine_table = "table6_engine_" + suffix + ".csv";
    names.breakdown = "fig5_prompt_breakdown_" + suffix + ".csv";
    names.manifest = "pairs_manifest_" + suffix + ".csv";
    names.pairs_csv = "pair_scores_" + suffix + ".csv";
    return names;
}

int emit_similarity(const FilteredDataset& dataset, const SimilarityArtifacts& art,
                    const std::string& mode, ExtractionKind kind, const CommonOpts& opts,
                    bool dump_pairs, std::ostream& out) {
    Population population = mode == "temporal" ? Population::Temporal : Population::Simultaneous;
    auto names = similarity_file_names(mode, kind);

    auto campaign_rows = aggregate(art.scored, Scope::Campaign, population);
    auto engine_rows = aggregate(art.scored, Scope::Engine, population);
    auto breakdown = per_prompt_breakdown(art.scored);

    write_file(opts.out_dir, names.table, render_aggregate_csv(campaign_rows), out);
    write_file(opts.out_dir, names.table + ".md", render_aggregate_markdown(campaign_rows), out);
    std::string json_name = names.table.substr(0, names.table.size() - 4) + ".json";
    write_file(opts.out_dir, json_name, render_aggregate_json(campaign_rows), out);
    write_file(opts.out_dir, names.engine_table, render_aggregate_csv(engine_rows), out);
    write_file(opts.out_dir, names.breakdown, render_prompt_breakdown_csv(breakdown), out);

    std::string title = (mode == "temporal" ? "Day-to-day " : "Within-24h ") +
                        std::string(to_string(kind)) + " similarity";
    auto boxes = box_groups_by_campaign(art.scored);
    if (!boxes.empty())
        write_file(opts.out_dir, names.box_svg, render_similarity_box_svg(title, boxes), out);

    std::ostringstream manifest;
    write_pair_manifest(manifest, dataset, art.pairs);
    write_file(opts.out_dir, names.manifest, manifest.str(), out);
    if (dump_pairs)
        write_file(opts.out_dir, names.pairs_csv, render_pair_scores_csv(dataset, art.scored), out);

    for (const auto& w : breakdown.warnings) out << "warning: " << w << '\n';
    return breakdown.warnings.empty() ? kOk : kWarnings;
}

// ---- subcommand bodies ----

int cmd_ingest(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    out << "parsed records:      " << dataset.records.size() + dataset.counts.dropped_records() << '\n'
        << "malformed lines:     " << loaded.malformed_lines << '\n'
        << "invalid records:     " << loaded.invalid_records << '\n'
        << "dropped (engine):    " << dataset.counts.excluded_engine << '\n'
        << "dropped (window):    " << dataset.counts.out_of_window << '\n'
        << "dropped (dates):     " << dataset.counts.excluded_date << '\n'
        << "blocked citations:   " << dataset.counts.blocked_citations << '\n'
        << "malformed citations: " << dataset.counts.malformed_citations << '\n'
        << "surviving records:   " << dataset.records.size() << '\n';

    CoverageTable table = coverage_table(dataset);
    write_file(opts.out_dir, "table1_coverage.csv", render_coverage_csv(table), out);
    write_file(opts.out_dir, "table1_coverage.md", render_coverage_markdown(table), out);
    return (loaded.malformed_lines || loaded.invalid_records) ? kWarnings : kOk;
}

int cmd_similarity(const CommonOpts& opts, const std::string& mode, const std::string& kind_name,
                   const std::string& lexicon_path, double p, int max_gap_days,
                   double max_delta_hours, double threshold, bool dump_pairs, std::ostream& out,
                   std::ostream& err) {
    ExtractionKind kind = kind_name == "source" ? ExtractionKind::Source : ExtractionKind::Brand;
    std::map<std::string, BrandLexicon> lexicons;
    if (kind == ExtractionKind::Brand) {
        if (lexicon_path.empty()) throw std::runtime_error("--kind brand requires --lexicon");
        lexicons = load_lexicons(lexicon_path);
    }

    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    int rc = kOk;
    if (kind == ExtractionKind::Brand) {
        auto warnings = restrict_to_qualified(dataset, lexicons, threshold);
        for (const auto& w : warnings) {
            out << "warning: " << w << '\n';
            rc = kWarnings;
        }
    }

    auto art = run_similarity(dataset, mode, kind, RboParams{p}, max_gap_days,
                              std::chrono::seconds{static_cast<long>(max_delta_hours * 3600)},
                              kind == ExtractionKind::Brand ? &lexicons : nullptr);
    int emit_rc = emit_similarity(dataset, art, mode, kind, opts, dump_pairs, out);
    return std::max(rc, emit_rc);
}

int cmd_gini(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    GiniMatrix matrix = gini_matrix(dataset);
    write_file(opts.out_dir, "gini_matrix.csv", render_gini_csv(matrix), out);
    write_file(opts.out_dir, "fig3_gini_heatmap.svg",
               render_gini_heatmap_svg("Citation concentration (Gini)", matrix), out);
    out << "global mean gini: " << fmt_fixed(matrix.global_mean, 3) << '\n';
    return kOk;
}

int cmd_converge(const CommonOpts& opts, const std::string& mode, const std::string& lexicon_path,
                 size_t resamples, size_t reference_runs, size_t max_window, bool strict_calendar,
                 std::ostream& out, std::ostream& err) {
    std::map<std::string, BrandLexicon> lexicons;
    if (!lexicon_path.empty()) lexicons = load_lexicons(lexicon_path);

    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    auto report_thresholds = [&out](const ConvergenceCurve& curve) {
        bool window = curve.mode.rfind("window", 0) == 0;
        for (const auto& [thr, x] : curve.thresholds)
            out << curve.mode << ": SE < " << fmt_fixed(thr, 2) << " at "
                << (window ? "d = " : "n = ") << x << '\n';
    };

    if (mode == "runs") {
        if (!lexicons.empty()) {
            auto brand = run_convergence_curve(dataset, lexicons, RunCurveMode::BrandDetection,
                                               reference_runs, resamples, opts.seed);
            write_file(opts.out_dir, "convergence_runs_brand.csv", render_curve_csv(brand), out);
            write_file(opts.out_dir, "fig6_convergence_runs_brand.svg",
                       render_curve_svg("Per-brand detection SE vs runs", brand), out);
            report_thresholds(brand);
        }
        auto coverage = run_convergence_curve(dataset, lexicons, RunCurveMode::SourceCoverage,
                                              reference_runs, resamples, opts.seed);
        write_file(opts.out_dir, "convergence_runs_coverage.csv", render_curve_csv(coverage), out);
        write_file(opts.out_dir, "fig6_convergence_runs_coverage.svg",
                   render_curve_svg("Source-coverage SE vs runs", coverage), out);
        report_thresholds(coverage);
        return kOk;
    }

    if (lexicons.empty()) throw std::runtime_error("--mode window requires --lexicon");
    auto window = window_convergence_curve(dataset, lexicons, max_window, strict_calendar);
    write_file(opts.out_dir, "convergence_window.csv", render_curve_csv(window), out);
    write_file(opts.out_dir, "fig7_convergence_window.svg",
               render_curve_svg("Per-brand detection SE vs window length", window), out);
    report_thresholds(window);
    return kOk;
}

int cmd_detect(const CommonOpts& opts, const std::string& lexicon_path, std::ostream& out,
               std::ostream& err) {
    auto lexicons = load_lexicons(lexicon_path);
    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    std::ostringstream csv;
    csv << "# schema_version=1\n"
        << "campaign,engine,prompt_index,timestamp,run_index,detected_count,brands\n";
    for (const auto& r : dataset.records) {
        auto lex = lexicons.find(r.prompt.campaign.name);
        if (lex == lexicons.end()) continue;
        DetectionResult d = detect_brands(r.answer_text, lex->second);
        csv << r.prompt.campaign.name << ',' << r.engine.label() << ',' << r.prompt.index << ','
            << format_instant(r.timestamp) << ',' << r.run_index << ',' << d.brands_ordered.size()
            << ',';
        for (size_t i = 0; i < d.brands_ordered.size(); ++i)
            csv << (i ? "|" : "") << d.brands_ordered[i] << ':' << d.offsets[i];
        csv << '\n';
    }
    write_file(opts.out_dir, "detections.csv", csv.str(), out);
    return kOk;
}

int cmd_qualify(const CommonOpts& opts, const std::string& lexicon_path, double threshold,
                std::ostream& out, std::ostream& err) {
    auto lexicons = load_lexicons(lexicon_path);
    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    auto rates = campaign_detection_rates(dataset, lexicons);
    QualificationReport report = qualify_campaigns(rates, threshold);

    std::ostringstream csv;
    csv << "# schema_version=1\n" << "campaign,detection_rate,threshold,qualified\n";
    for (const auto& row : report.rows) {
        csv << row.campaign << ',' << fmt_double(row.rate) << ',' << fmt_double(report.threshold)
            << ',' << (row.qualified ? 1 : 0) << '\n';
        out << row.campaign << ": rate " << fmt_fixed(row.rate, 3)
            << (row.qualified ? " (qualified)" : " (disqualified)") << '\n';
    }
    write_file(opts.out_dir, "qualification.csv", csv.str(), out);
    return report.disqualified().empty() ? kOk : kWarnings;
}

std::shared_ptr<EngineAdapter> make_http_adapter(const std::string& endpoint) {
    // host:port[/path]
    size_t colon = endpoint.find(':');
    if (colon == std::string::npos) throw std::runtime_error("endpoint must be host:port[/path]");
    std::string host = endpoint.substr(0, colon);
    size_t slash = endpoint.find('/', colon);
    std::string port_str = slash == std::string::npos ? endpoint.substr(colon + 1)
                                                      : endpoint.substr(colon + 1, slash - colon - 1);
    int port = std::stoi(port_str);
    std::string path = slash == std::string::npos ? "/v1/answer" : endpoint.substr(slash);
    return std::make_shared<HttpEngineAdapter>(host, port, path);
}

int cmd_collect(const std::string& plan_path, const std::string& endpoint,
                const std::vector<std::string>& engine_endpoints, const std::string& out_path,
                bool system_clock, std::ostream& out) {
    CollectionPlan plan = CollectionPlan::load(plan_path);

    std::map<std::string, std::shared_ptr<EngineAdapter>> adapters;
    for (const auto& spec : engine_endpoints) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--engine-endpoint must be label=host:port[/path]");
        adapters[EngineId::parse(spec.substr(0, eq)).label()] = make_http_adapter(spec.substr(eq + 1));
    }
    if (!endpoint.empty()) {
        auto shared = make_http_adapter(endpoint);
        for (const auto& engine : plan.engines) adapters.emplace(engine.label(), shared);
    }

    std::ofstream sink(out_path, std::ios::binary);
    if (!sink) throw std::runtime_error("cannot open sink: " + out_path);
    auto clock = system_clock ? make_system_clock() : make_virtual_clock(plan);
    CollectionSummary summary = run_plan(plan, adapters, sink, clock);

    for (const auto& [engine, stats] : summary.per_engine)
        out << engine << ": " << stats.successes << " ok, " << stats.failures << " failed\n";
    for (const auto& line : summary.failure_log) out << "failure: " << line << '\n';
    out << "wrote " << out_path << " (" << summary.records_written << " records)\n";
    return summary.failure_log.empty() ? kOk : kWarnings;
}

int cmd_simulate(const std::string& plan_path, const std::string& sim_config_path,
                 const std::string& out_path, uint64_t seed, bool seed_given,
                 const std::string& virtual_start, std::ostream& out) {
    CollectionPlan plan = CollectionPlan::load(plan_path);
    if (!virtual_start.empty()) {
        auto t = parse_instant(virtual_start);
        if (!t) throw std::runtime_error("--virtual-start: bad timestamp");
        plan.virtual_start = *t;
    }
    SimulatedEngineConfig base = SimulatedEngineConfig::load(sim_config_path);
    if (seed_given) base.seed = seed;

    std::map<std::string, std::shared_ptr<EngineAdapter>> adapters;
    for (const auto& engine : plan.engines) {
        SimulatedEngineConfig cfg = base;
        cfg.seed = derive_seed(base.seed, "sim|" + engine.label());
        adapters[engine.label()] = std::make_shared<SimulatedEngineAdapter>(cfg);
    }

    std::ofstream sink(out_path, std::ios::binary);
    if (!sink) throw std::runtime_error("cannot open sink: " + out_path);
    CollectionSummary summary = run_plan(plan, adapters, sink, make_virtual_clock(plan));
    out << "wrote " << out_path << " (" << summary.records_written << " records)\n";
    return kOk;
}

int cmd_report(const CommonOpts& opts, const std::string& lexicon_path, double p, double threshold,
               size_t resamples, size_t reference_runs, size_t max_window, double max_delta_hours,
               std::ostream& out, std::ostream& err) {
    std::map<std::string, BrandLexicon> lexicons;
    if (!lexicon_path.empty()) lexicons = load_lexicons(lexicon_path);

    IngestConfig cfg = resolve_config(opts);
    LoadResult loaded = load_records(opts.inputs, err);
    FilteredDataset dataset = apply_filters(std::move(loaded.records), cfg);

    int rc = kOk;
    write_file(opts.out_dir, "table1_coverage.csv", render_coverage_csv(coverage_table(dataset)), out);

    auto max_delta = std::chrono::seconds{static_cast<long>(max_delta_hours * 3600)};
    for (const std::string mode : {"temporal", "simul"}) {
        // source similarity on the full dataset
        auto src = run_similarity(dataset, mode, ExtractionKind::Source, RboParams{p}, 1, max_delta,
                                  nullptr);
        rc = std::max(rc, emit_similarity(dataset, src, mode, ExtractionKind::Source, opts, false, out));

        if (lexicons.empty()) continue;
        FilteredDataset brand_dataset = dataset; // per-mode copy, restricted to qualified campaigns
        auto warnings = restrict_to_qualified(brand_dataset, lexicons, threshold);
        for (const auto& w : warnings) {
            out << "warning: " << w << '\n';
            rc = kWarnings;
        }
        if (brand_dataset.records.empty()) continue;
        auto brand = run_similarity(brand_dataset, mode, ExtractionKind::Brand, RboParams{p}, 1,
                                    max_delta, &lexicons);
        rc = std::max(rc, emit_similarity(brand_dataset, brand, mode, ExtractionKind::Brand, opts,
                                          false, out));
    }

    GiniMatrix matrix = gini_matrix(dataset);
    write_file(opts.out_dir, "gini_matrix.csv", render_gini_csv(matrix), out);
    write_file(opts.out_dir, "fig3_gini_heatmap.svg",
               render_gini_heatmap_svg("Citation concentration (Gini)", matrix), out);

    // convergence is best-effort: synthetic or partial datasets may lack
    // groups with the full run count or any detected brand
    try {
        auto coverage = run_convergence_curve(dataset, lexicons, RunCurveMode::SourceCoverage,
                                              reference_runs, resamples, opts.seed);
        write_file(opts.out_dir, "convergence_runs_coverage.csv", render_curve_csv(coverage), out);
        write_file(opts.out_dir, "fig6_convergence_runs_coverage.svg",
                   render_curve_svg("Source-coverage SE vs runs", coverage), out);
    } catch (const std::exception& e) {
        out << "note: source-coverage convergence skipped (" << e.what() << ")\n";
    }
    if (!lexicons.empty()) {
        try {
            auto brand = run_convergence_curve(dataset, lexicons, RunCurveMode::BrandDetection,
                                               reference_runs, resamples, opts.seed);
            write_file(opts.out_dir, "convergence_runs_brand.csv", render_curve_csv(brand), out);
            write_file(opts.out_dir, "fig6_convergence_runs_brand.svg",
                       render_curve_svg("Per-brand detection SE vs runs", brand), out);
        } catch (const std::exception& e) {
            out << "note: brand convergence skipped (" << e.what() << ")\n";
        }
        try {
            auto window = window_convergence_curve(dataset, lexicons, max_window);
            write_file(opts.out_dir, "convergence_window.csv", render_curve_csv(window), out);
            write_file(opts.out_dir, "fig7_convergence_window.svg",
                       render_curve_svg("Per-brand detection SE vs window length", window), out);
        } catch (const std::exception& e) {
            out << "note: window convergence skipped (" << e.what() << ")\n";
        }
    }
    return rc;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"geostab: stability analytics for AI-search visibility"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string mode = "temporal", kind = "source", lexicon_path;
    double p = 0.9, threshold = 0.70, max_delta_hours = 24.0;
    int max_gap_days = 1;
    size_t resamples = 2000, reference_runs = 10, max_window = 45;
    bool dump_pairs = false;
    std::string plan_path, sim_config_path, endpoint, sink_path = "records.jsonl";
    std::vector<std::string> engine_endpoints;
    bool system_clock = false;
    bool strict_calendar = false;

    auto* ingest = app.add_subcommand("ingest", "parse logs, apply filters, emit the coverage table");
    add_common_flags(ingest, opts);

    auto* similarity = app.add_subcommand("similarity", "pairwise Jaccard/RBO tables and box plots");
    add_common_flags(similarity, opts);
    similarity->add_option("--mode", mode, "temporal|simul")->check(CLI::IsMember({"temporal", "simul"}));
    similarity->add_option("--kind", kind, "source|brand")->check(CLI::IsMember({"source", "brand"}));
    similarity->add_option("--lexicon", lexicon_path, "brand lexicon file (required for --kind brand)");
    similarity->add_option("--p", p, "RBO persistence parameter");
    similarity->add_option("--max-gap-days", max_gap_days, "temporal pairing day distance");
    similarity->add_option("--max-delta-hours", max_delta_hours, "simultaneous pairing window");
    similarity->add_option("--threshold", threshold, "brand-detection qualification threshold");
    similarity->add_flag("--dump-pairs", dump_pairs, "also write per-pair scores");

    auto* gini = app.add_subcommand("gini", "citation concentration matrix and heatmap");
    add_common_flags(gini, opts);

    auto* converge = app.add_subcommand("converge", "run-count and observation-window convergence");
    add_common_flags(converge, opts);
    converge->add_option("--mode", mode, "runs|window")->check(CLI::IsMember({"runs", "window"}));
    converge->add_option("--lexicon", lexicon_path, "brand lexicon file");
    converge->add_option("--resamples", resamples, "subsamples per series");
    converge->add_option("--reference-runs", reference_runs, "reference run count N");
    converge->add_option("--max-window", max_window, "largest window length d");
    converge->add_flag("--strict-calendar", strict_calendar,
                       "windows over calendar days, gaps break the window");

    auto* detect = app.add_subcommand("detect", "per-record brand detections");
    add_common_flags(detect, opts);
    detect->add_option("--lexicon", lexicon_path, "brand lexicon file")->required();

    auto* qualify = app.add_subcommand("qualify", "campaign detection rates vs threshold");
    add_common_flags(qualify, opts);
    qualify->add_option("--lexicon", lexicon_path, "brand lexicon file")->required();
    qualify->add_option("--threshold", threshold, "qualification threshold");

    auto* collect = app.add_subcommand("collect", "run a collection plan against engine adapters");
    collect->add_option("--plan", plan_path, "collection plan file")->required();
    collect->add_option("--endpoint", endpoint, "host:port[/path] used for every engine");
    collect->add_option("--engine-endpoint", engine_endpoints, "label=host:port[/path]");
    collect->add_option("--sink", sink_path, "output record log");
    collect->add_flag("--system-clock", system_clock, "timestamp with the system clock");

    auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset");
    simulate->add_option("--plan", plan_path, "collection plan file")->required();
    simulate->add_option("--sim-config", sim_config_path, "simulated engine config")->required();
    simulate->add_option("--sink", sink_path, "output record log");
    std::string virtual_start;
    simulate->add_option("--virtual-start", virtual_start, "overrides the plan's virtual clock start");
    auto* seed_opt = simulate->add_option("--seed", opts.seed, "master seed");

    auto* report = app.add_subcommand("report", "every table and figure in one pass");
    add_common_flags(report, opts);
    report->add_option("--lexicon", lexicon_path, "brand lexicon file");
    report->add_option("--p", p, "RBO persistence parameter");
    report->add_option("--threshold", threshold, "qualification threshold");
    report->add_option("--resamples", resamples, "subsamples per series");
    report->add_option("--reference-runs", reference_runs, "reference run count N");
    report->add_option("--max-window", max_window, "largest window length d");
    report->add_option("--max-delta-hours", max_delta_hours, "simultaneous pairing window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kFatal;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(opts, out, err);
        if (similarity->parsed())
            return cmd_similarity(opts, mode, kind, lexicon_path, p, max_gap_days, max_delta_hours,
                                  threshold, dump_pairs, out, err);
        if (gini->parsed()) return cmd_gini(opts, out, err);
        if (converge->parsed()) {
            std::string cmode = converge->count("--mode") ? mode : "runs";
            return cmd_converge(opts, cmode, lexicon_path, resamples, reference_runs, max_window,
                                strict_calendar, out, err);
        }
        if (detect->parsed()) return cmd_detect(opts, lexicon_path, out, err);
        if (qualify->parsed()) return cmd_qualify(opts, lexicon_path, threshold, out, err);
        if (collect->parsed())
            return cmd_collect(plan_path, endpoint, engine_endpoints, sink_path, system_clock, out);
        if (simulate->parsed())
            return cmd_simulate(plan_path, sim_config_path, sink_path, opts.seed,
                                seed_opt->count() > 0, virtual_start, out);
        if (report->parsed())
            return cmd_report(opts, lexicon_path, p, threshold, resamples, reference_runs,
                              max_window, max_delta_hours, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFatal;
    }
    return kFatal;
}

} // namespace geostab
