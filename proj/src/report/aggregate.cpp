// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/report/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace geostab {

std::string_view to_string(Scope scope) {
    switch (scope) {
    case Scope::Campaign: return "campaign";
    case Scope::Engine: return "engine";
    case Scope::Prompt: return "prompt";
    }
    return "campaign";
}

std::string_view to_string(Population population) {
    return population == Population::Temporal ? "temporal" : "simultaneous";
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: no values");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q out of [0,1]");
    std::sort(values.begin(), values.end());
    double h = (static_cast<double>(values.size()) - 1.0) * q;
    size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

struct Samples {
    std::vector<double> jaccard;
    std::vector<double> rbo;
    size_t excluded = 0;
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string scope_value_of(const GroupKey& key, Scope scope) {
    switch (scope) {
    case Scope::Campaign: return key.campaign.name;
    case Scope::Engine: return key.engine.label();
    case Scope::Prompt: return key.campaign.name + "#" + std::to_string(key.prompt_index);
    }
    return key.campaign.name;
}

} // namespace

std::vector<AggregateRow> aggregate(const std::vector<ScoredPair>& scores, Scope scope,
                                    Population population) {
    std::map<std::pair<std::string, ExtractionKind>, Samples> groups;
    for (const auto& sp : scores) {
        auto& g = groups[{scope_value_of(sp.key, scope), sp.key.kind}];
        if (sp.score.excluded()) {
            ++g.excluded;
        } else {
            g.jaccard.push_back(*sp.score.jaccard);
            g.rbo.push_back(*sp.score.rbo);
        }
    }

    std::vector<AggregateRow> rows;
    for (const auto& [key, g] : groups) {
        if (g.jaccard.empty()) continue; // all pairs excluded: no defined mean
        AggregateRow row;
        row.scope = scope;
        row.scope_value = key.first;
        row.kind = key.second;
        row.population = population;
        row.pair_count = g.jaccard.size();
        row.excluded_count = g.excluded;
        row.jaccard_mean = mean_of(g.jaccard);
        row.jaccard_sd = sample_sd(g.jaccard, row.jaccard_mean);
        row.rbo_mean = mean_of(g.rbo);
        row.rbo_sd = sample_sd(g.rbo, row.rbo_mean);
        row.jaccard_q1 = quantile(g.jaccard, 0.25);
        row.jaccard_median = quantile(g.jaccard, 0.5);
        row.jaccard_q3 = quantile(g.jaccard, 0.75);
        row.rbo_q1 = quantile(g.rbo, 0.25);
        row.rbo_median = quantile(g.rbo, 0.5);
        row.rbo_q3 = quantile(g.rbo, 0.75);
        row.degenerate = row.pair_count < 2;
        rows.push_back(std::move(row));
    }
    return rows;
}

PromptBreakdown per_prompt_breakdown(const std::vector<ScoredPair>& scores) {
    std::map<std::tuple<std::string, int, ExtractionKind>, Samples> groups;
    for (const auto& sp : scores) {
        auto& g = groups[{sp.key.campaign.name, sp.key.prompt_index, sp.key.kind}];
        if (sp.score.excluded()) {
            ++g.excluded;
        } else {
            g.jaccard.push_back(*sp.score.jaccard);
            g.rbo.push_back(*sp.score.rbo);
        }
    }

    PromptBreakdown breakdown;
    for (const auto& [key, g] : groups) {
        const auto& [campaign, prompt_index, kind] = key;
        if (g.jaccard.empty()) {
            breakdown.warnings.push_back("prompt " + campaign + "#" + std::to_string(prompt_index) +
                                         " (" + std::string(to_string(kind)) +
                                         ") omitted: all pairs excluded");
            continue;
        }
        PromptRow row;
        row.campaign = campaign;
        row.prompt_index = prompt_index;
        row.kind = kind;
        row.pair_count = g.jaccard.size();
        row.excluded_count = g.excluded;
        row.jaccard_mean = mean_of(g.jaccard);
        row.rbo_mean = mean_of(g.rbo);
        row.above_half = row.jaccard_mean >= 0.5;
        breakdown.rows.push_back(std::move(row));
    }
    std::stable_sort(breakdown.rows.begin(), breakdown.rows.end(),
                     [](const PromptRow& a, const PromptRow& b) {
                         if (a.jaccard_mean != b.jaccard_mean) return a.jaccard_mean < b.jaccard_mean;
                         return std::tie(a.campaign, a.prompt_index) < std::tie(b.campaign, b.prompt_index);
                     });
    return breakdown;
}

} // namespace geostab
