// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/pairing/pairs.hpp"

#include <string>
#include <vector>

namespace geostab {

enum class Scope { Campaign, Engine, Prompt };
enum class Population { Temporal, Simultaneous };

std::string_view to_string(Scope scope);
std::string_view to_string(Population population);

// One row of a similarity table. Excluded pairs never enter the means; they
// are tallied in excluded_count. SDs are sample (n-1) standard deviations;
// a single-pair group reports sd 0 and is flagged degenerate.
struct AggregateRow {
    Scope scope = Scope::Campaign;
    std::string scope_value; // campaign name, engine label, or campaign#prompt
    ExtractionKind kind = ExtractionKind::Source;
    Population population = Population::Temporal;
    size_t pair_count = 0; // non-excluded pairs only
    size_t excluded_count = 0;
    double jaccard_mean = 0.0, jaccard_sd = 0.0;
    double rbo_mean = 0.0, rbo_sd = 0.0;
    // linear-interpolation quantiles, for box plots
    double jaccard_q1 = 0.0, jaccard_median = 0.0, jaccard_q3 = 0.0;
    double rbo_q1 = 0.0, rbo_median = 0.0, rbo_q3 = 0.0;
    bool degenerate = false;
};

// Groups scores by scope and computes the table rows, sorted by scope_value.
// Scope values whose pairs are all excluded are dropped (no defined mean).
std::vector<AggregateRow> aggregate(const std::vector<ScoredPair>& scores, Scope scope,
                                    Population population);

struct PromptRow {
    std::string campaign;
    int prompt_index = 1;
    ExtractionKind kind = ExtractionKind::Source;
    size_t pair_count = 0;
    size_t excluded_count = 0;
    double jaccard_mean = 0.0;
    double rbo_mean = 0.0;
    bool above_half = false; // jaccard_mean >= 0.5 reference line
};

struct PromptBreakdown {
    std::vector<PromptRow> rows; // ascending by jaccard_mean
    std::vector<std::string> warnings;
};

// One row per (campaign, prompt, kind), sorted ascending by mean Jaccard.
// Prompts whose pairs are all excluded are omitted with a warning.
PromptBreakdown per_prompt_breakdown(const std::vector<ScoredPair>& scores);

// Quantile with the linear-interpolation convention, q in [0, 1].
double quantile(std::vector<double> values, double q);

} // namespace geostab
