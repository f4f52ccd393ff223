// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/ingest/filters.hpp"

#include <map>
#include <string>
#include <vector>

namespace geostab {

// Citation occurrences per normalized domain for one campaign x engine group,
// aggregated over the whole window. Repeat citations of a domain within one
// response all count.
struct CitationCounts {
    std::map<std::string, long long> counts;

    bool empty() const { return counts.empty(); }
    std::vector<double> values() const;
};

CitationCounts tally_citations(const FilteredDataset& dataset, const std::string& campaign,
                               const std::string& engine);

// Rank-weighted Gini: sort ascending, G = 2*sum(i*y_i) / (n*sum(y)) - (n+1)/n.
// Range [0, (n-1)/n]. Throws std::invalid_argument when the values are empty,
// all zero, or any is negative.
double gini(std::vector<double> values);
double gini(const CitationCounts& counts);

struct GiniMatrix {
    std::vector<std::string> campaigns; // sorted
    std::vector<std::string> engines;   // sorted
    // groups without citations carry no cell
    std::map<std::pair<std::string, std::string>, double> cells;
    std::map<std::string, double> campaign_means; // unweighted, over defined cells
    std::map<std::string, double> engine_means;
    double global_mean = 0.0;
    size_t defined_cells = 0;
};

GiniMatrix gini_matrix(const FilteredDataset& dataset);

} // namespace geostab
