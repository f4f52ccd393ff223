// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/brands/detect.hpp"

#include <algorithm>
#include <stdexcept>

namespace geostab {

DetectionResult detect_brands(const std::string& text, const BrandLexicon& lexicon) {
    DetectionResult result;
    if (text.empty()) return result;
    std::string folded = fold_case(text);

    // brands() iterates canonicals in order, so equal offsets sort stably by name
    std::vector<std::pair<size_t, const std::string*>> hits;
    for (const auto& [canonical, patterns] : lexicon.brands()) {
        size_t best = std::string::npos;
        for (const auto& p : patterns) {
            size_t pos = folded.find(p);
            if (pos != std::string::npos) best = std::min(best, pos);
        }
        if (best != std::string::npos) hits.emplace_back(best, &canonical);
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [offset, canonical] : hits) {
        result.brands_ordered.push_back(*canonical);
        result.offsets.push_back(offset);
    }
    return result;
}

double detection_rate(const std::vector<DetectionResult>& results) {
    if (results.empty()) throw std::invalid_argument("detection_rate: no records");
    size_t hits = 0;
    for (const auto& r : results)
        if (r.any()) ++hits;
    return static_cast<double>(hits) / static_cast<double>(results.size());
}

std::vector<QualificationRow> QualificationReport::disqualified() const {
    std::vector<QualificationRow> out;
    for (const auto& row : rows)
        if (!row.qualified) out.push_back(row);
    return out;
}

bool QualificationReport::is_qualified(const std::string& campaign) const {
    for (const auto& row : rows)
        if (row.campaign == campaign) return row.qualified;
    return false;
}

QualificationReport qualify_campaigns(const std::map<std::string, double>& rates, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("qualify_campaigns: threshold must be in (0, 1]");
    QualificationReport report;
    report.threshold = threshold;
    for (const auto& [campaign, rate] : rates)
        report.rows.push_back({campaign, rate, rate >= threshold});
    return report;
}

} // namespace geostab
