// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/concentration/gini.hpp"

#include "geostab/ingest/url.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace geostab {

std::vector<double> CitationCounts::values() const {
    std::vector<double> v;
    v.reserve(counts.size());
    for (const auto& [domain, count] : counts) v.push_back(static_cast<double>(count));
    return v;
}

CitationCounts tally_citations(const FilteredDataset& dataset, const std::string& campaign,
                               const std::string& engine) {
    CitationCounts tally;
    for (const auto& r : dataset.records) {
        if (r.prompt.campaign.name != campaign || r.engine.label() != engine) continue;
        for (const auto& url : r.citations) {
            auto domain = normalize_url(url);
            if (domain) ++tally.counts[*domain];
        }
    }
    return tally;
}

double gini(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("gini: no values");
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("gini: negative value");
        total += v;
    }
    if (total <= 0.0) throw std::invalid_argument("gini: undefined for all-zero counts");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double rank_weighted = 0.0;
    for (size_t i = 0; i < values.size(); ++i)
        rank_weighted += static_cast<double>(i + 1) * values[i];
    return 2.0 * rank_weighted / (n * total) - (n + 1.0) / n;
}

double gini(const CitationCounts& counts) {
    return gini(counts.values());
}

GiniMatrix gini_matrix(const FilteredDataset& dataset) {
    std::set<std::string> campaigns, engines;
    for (const auto& r : dataset.records) {
        campaigns.insert(r.prompt.campaign.name);
        engines.insert(r.engine.label());
    }

    GiniMatrix matrix;
    matrix.campaigns.assign(campaigns.begin(), campaigns.end());
    matrix.engines.assign(engines.begin(), engines.end());

    std::map<std::string, std::pair<double, size_t>> campaign_acc, engine_acc;
    double global_sum = 0.0;
    for (const auto& campaign : matrix.campaigns) {
        for (const auto& engine : matrix.engines) {
            CitationCounts tally = tally_citations(dataset, campaign, engine);
            if (tally.empty()) continue;
            double g = gini(tally);
            matrix.cells[{campaign, engine}] = g;
            campaign_acc[campaign].first += g;
            campaign_acc[campaign].second += 1;
            engine_acc[engine].first += g;
            engine_acc[engine].second += 1;
            global_sum += g;
            ++matrix.defined_cells;
        }
    }
    for (const auto& [campaign, acc] : campaign_acc)
        matrix.campaign_means[campaign] = acc.first / static_cast<double>(acc.second);
    for (const auto& [engine, acc] : engine_acc)
        matrix.engine_means[engine] = acc.first / static_cast<double>(acc.second);
    if (matrix.defined_cells > 0)
        matrix.global_mean = global_sum / static_cast<double>(matrix.defined_cells);
    return matrix;
}

} // namespace geostab
