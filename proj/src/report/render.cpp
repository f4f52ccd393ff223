// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/report/render.hpp"

#include "geostab/report/format.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geostab {

namespace {

constexpr const char* kSchemaComment = "# schema_version=1\n";

ExtractionKind parse_kind(std::string_view s) {
    if (s == "source") return ExtractionKind::Source;
    if (s == "brand") return ExtractionKind::Brand;
    throw std::runtime_error("unknown kind: " + std::string(s));
}

Scope parse_scope(std::string_view s) {
    if (s == "campaign") return Scope::Campaign;
    if (s == "engine") return Scope::Engine;
    if (s == "prompt") return Scope::Prompt;
    throw std::runtime_error("unknown scope: " + std::string(s));
}

Population parse_population(std::string_view s) {
    if (s == "temporal") return Population::Temporal;
    if (s == "simultaneous") return Population::Simultaneous;
    throw std::runtime_error("unknown population: " + std::string(s));
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("bad number: " + std::string(s));
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

std::string render_aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << kSchemaComment
        << "scope,scope_value,kind,population,pair_count,excluded_count,"
           "jaccard_mean,jaccard_sd,rbo_mean,rbo_sd,"
           "jaccard_q1,jaccard_median,jaccard_q3,rbo_q1,rbo_median,rbo_q3,degenerate\n";
    for (const auto& r : rows) {
        out << to_string(r.scope) << ',' << r.scope_value << ',' << to_string(r.kind) << ','
            << to_string(r.population) << ',' << r.pair_count << ',' << r.excluded_count << ','
            << fmt_double(r.jaccard_mean) << ',' << fmt_double(r.jaccard_sd) << ','
            << fmt_double(r.rbo_mean) << ',' << fmt_double(r.rbo_sd) << ','
            << fmt_double(r.jaccard_q1) << ',' << fmt_double(r.jaccard_median) << ','
            << fmt_double(r.jaccard_q3) << ',' << fmt_double(r.rbo_q1) << ','
            << fmt_double(r.rbo_median) << ',' << fmt_double(r.rbo_q3) << ','
            << (r.degenerate ? 1 : 0) << '\n';
    }
    return out.str();
}

std::vector<AggregateRow> parse_aggregate_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<AggregateRow> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column order is fixed by the schema version
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 17) throw std::runtime_error("aggregate csv: bad field count");
        AggregateRow r;
        r.scope = parse_scope(f[0]);
        r.scope_value = f[1];
        r.kind = parse_kind(f[2]);
        r.population = parse_population(f[3]);
        r.pair_count = static_cast<size_t>(std::stoull(f[4]));
        r.excluded_count = static_cast<size_t>(std::stoull(f[5]));
        r.jaccard_mean = parse_double(f[6]);
        r.jaccard_sd = parse_double(f[7]);
        r.rbo_mean = parse_double(f[8]);
        r.rbo_sd = parse_double(f[9]);
        r.jaccard_q1 = parse_double(f[10]);
        r.jaccard_median = parse_double(f[11]);
        r.jaccard_q3 = parse_double(f[12]);
        r.rbo_q1 = parse_double(f[13]);
        r.rbo_median = parse_double(f[14]);
        r.rbo_q3 = parse_double(f[15]);
        r.degenerate = f[16] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_aggregate_json(const std::vector<AggregateRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        o["scope"] = std::string(to_string(r.scope));
        o["scope_value"] = r.scope_value;
        o["kind"] = std::string(to_string(r.kind));
        o["population"] = std::string(to_string(r.population));
        o["pair_count"] = r.pair_count;
        o["excluded_count"] = r.excluded_count;
        o["jaccard_mean"] = r.jaccard_mean;
        o["jaccard_sd"] = r.jaccard_sd;
        o["rbo_mean"] = r.rbo_mean;
        o["rbo_sd"] = r.rbo_sd;
        o["jaccard_q1"] = r.jaccard_q1;
        o["jaccard_median"] = r.jaccard_median;
        o["jaccard_q3"] = r.jaccard_q3;
        o["rbo_q1"] = r.rbo_q1;
        o["rbo_median"] = r.rbo_median;
        o["rbo_q3"] = r.rbo_q3;
        o["degenerate"] = r.degenerate;
        j.push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

std::string render_aggregate_markdown(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    out << "| " << (rows.empty() ? "Scope" : std::string(to_string(rows.front().scope)))
        << " | Jac. Mean | Jac. SD | RBO Mean | RBO SD | Pairs | Excluded |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.scope_value << " | " << fmt_fixed(r.jaccard_mean, 3) << " | "
            << fmt_fixed(r.jaccard_sd, 3) << " | " << fmt_fixed(r.rbo_mean, 3) << " | "
            << fmt_fixed(r.rbo_sd, 3) << " | " << r.pair_count << " | " << r.excluded_count
            << " |\n";
    }
    return out.str();
}

std::string render_aggregate(const std::vector<AggregateRow>& rows, const std::string& format) {
    if (format == "csv") return render_aggregate_csv(rows);
    if (format == "json") return render_aggregate_json(rows);
    if (format == "markdown") return render_aggregate_markdown(rows);
    throw std::invalid_argument("unknown report format: " + format);
}

std::string render_pair_scores_csv(const FilteredDataset& dataset,
                                   const std::vector<ScoredPair>& scores) {
    (void)dataset;
    std::ostringstream out;
    out << kSchemaComment
        << "campaign,engine,prompt_index,kind,delta_seconds,jaccard,rbo\n";
    for (const auto& sp : scores) {
        out << sp.key.campaign.name << ',' << sp.key.engine.label() << ',' << sp.key.prompt_index
            << ',' << to_string(sp.key.kind) << ',' << sp.score.delta_t.count() << ',';
        if (sp.score.excluded())
            out << "excluded,excluded\n";
        else
            out << fmt_double(*sp.score.jaccard) << ',' << fmt_double(*sp.score.rbo) << '\n';
    }
    return out.str();
}

std::string render_prompt_breakdown_csv(const PromptBreakdown& breakdown) {
    std::ostringstream out;
    out << kSchemaComment
        << "campaign,prompt_index,kind,pair_count,excluded_count,jaccard_mean,rbo_mean,above_half\n";
    for (const auto& r : breakdown.rows) {
        out << r.campaign << ',' << r.prompt_index << ',' << to_string(r.kind) << ','
            << r.pair_count << ',' << r.excluded_count << ',' << fmt_double(r.jaccard_mean) << ','
            << fmt_double(r.rbo_mean) << ',' << (r.above_half ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string render_coverage_csv(const CoverageTable& table) {
    std::ostringstream out;
    out << kSchemaComment << "campaign,queries,days";
    for (const auto& e : table.engines) out << ',' << e;
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.campaign.name << ',' << row.queries << ',' << row.days;
        for (const auto& e : table.engines) out << ',' << row.engine_days.at(e);
        out << '\n';
    }
    return out.str();
}

std::string render_coverage_markdown(const CoverageTable& table) {
    std::ostringstream out;
    out << "| Campaign | Queries | Days |";
    for (const auto& e : table.engines) out << ' ' << e << " |";
    out << "\n|---|---|---|";
    for (size_t i = 0; i < table.engines.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& row : table.rows) {
        out << "| " << row.campaign.display_name << " | " << row.queries << " | " << row.days
            << " |";
        for (const auto& e : table.engines) out << ' ' << row.engine_days.at(e) << " |";
        out << '\n';
    }
    return out.str();
}

std::string render_gini_csv(const GiniMatrix& matrix) {
    std::ostringstream out;
    out << kSchemaComment << "campaign";
    for (const auto& e : matrix.engines) out << ',' << e;
    out << ",mean\n";
    for (const auto& c : matrix.campaigns) {
        out << c;
        for (const auto& e : matrix.engines) {
            out << ',';
            auto cell = matrix.cells.find({c, e});
            if (cell != matrix.cells.end()) out << fmt_double(cell->second);
        }
        out << ',';
        auto mean = matrix.campaign_means.find(c);
        if (mean != matrix.campaign_means.end()) out << fmt_double(mean->second);
        out << '\n';
    }
    out << "mean";
    for (const auto& e : matrix.engines) {
        out << ',';
        auto mean = matrix.engine_means.find(e);
        if (mean != matrix.engine_means.end()) out << fmt_double(mean->second);
    }
    out << ',';
    if (matrix.defined_cells > 0) out << fmt_double(matrix.global_mean);
    out << '\n';
    return out.str();
}

std::string render_curve_csv(const ConvergenceCurve& curve) {
    std::ostringstream out;
    out << kSchemaComment << "mode,n_or_d,mean_se,ci_half_width,series_count\n";
    for (const auto& pt : curve.points) {
        out << curve.mode << ',' << pt.x << ',' << fmt_double(pt.mean_se) << ','
            << fmt_double(pt.ci_half_width) << ',' << pt.series_count << '\n';
    }
    return out.str();
}

} // namespace geostab
