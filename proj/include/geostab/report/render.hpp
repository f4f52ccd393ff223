// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/concentration/gini.hpp"
#include "geostab/convergence/convergence.hpp"
#include "geostab/ingest/filters.hpp"
#include "geostab/report/aggregate.hpp"

#include <string>
#include <vector>

namespace geostab {

// All renderers are pure string producers: identical inputs give identical
// bytes. CSVs start with a "# schema_version=1" comment line. Excluded scores
// are serialized as the literal "excluded", never as 0.

std::string render_aggregate_csv(const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> parse_aggregate_csv(const std::string& csv);

std::string render_aggregate_json(const std::vector<AggregateRow>& rows);

// Paper-style table: one row per scope value with means, SDs and pair counts.
std::string render_aggregate_markdown(const std::vector<AggregateRow>& rows);

// Dispatch on "csv" | "json" | "markdown"; throws std::invalid_argument on an
// unknown format name.
std::string render_aggregate(const std::vector<AggregateRow>& rows, const std::string& format);

std::string render_pair_scores_csv(const FilteredDataset& dataset,
                                   const std::vector<ScoredPair>& scores);

std::string render_prompt_breakdown_csv(const PromptBreakdown& breakdown);

std::string render_coverage_csv(const CoverageTable& table);
std::string render_coverage_markdown(const CoverageTable& table);

// campaign rows x engine columns; per-campaign and per-engine means; the
// bottom-right cell is the global mean. Empty groups render as empty cells.
std::string render_gini_csv(const GiniMatrix& matrix);

std::string render_curve_csv(const ConvergenceCurve& curve);

} // namespace geostab
