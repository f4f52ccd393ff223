// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/metrics/similarity.hpp"

#include "geostab/ingest/url.hpp"

#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace geostab {

SimilarityValue jaccard(const ItemSet& a, const ItemSet& b) {
    if (a.empty() && b.empty()) return kExcluded;
    if (a.empty() || b.empty()) return 0.0;
    const ItemSet& small = a.size() <= b.size() ? a : b;
    const ItemSet& large = a.size() <= b.size() ? b : a;
    size_t intersection = 0;
    for (const auto& item : small.items)
        if (large.contains(item)) ++intersection;
    size_t unions = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

SimilarityValue rbo_min(const RankedList& s, const RankedList& t, RboParams params) {
    if (!params.valid()) throw std::invalid_argument("rbo_min: p must be in (0, 1)");
    if (s.empty() && t.empty()) return kExcluded;
    if (s.empty() || t.empty()) return 0.0;

    const double p = params.p;
    const size_t k = std::min(s.size(), t.size());
    std::unordered_set<std::string> seen_s, seen_t;
    size_t overlap = 0;
    double sum = 0.0;
    double weight = 1.0; // p^(d-1)
    for (size_t d = 1; d <= k; ++d) {
        const std::string& x = s[d - 1];
        const std::string& y = t[d - 1];
        if (x == y) {
            ++overlap;
        } else {
            if (seen_t.count(x)) ++overlap;
            if (seen_s.count(y)) ++overlap;
        }
        seen_s.insert(x);
        seen_t.insert(y);
        sum += weight * static_cast<double>(overlap) / static_cast<double>(d);
        weight *= p;
    }
    return (1.0 - p) * sum;
}

RankedList source_ranked(const ResponseRecord& record) {
    RankedList ranked;
    for (const auto& url : record.citations) {
        auto domain = normalize_url(url);
        if (domain) ranked.push_back(std::move(*domain));
    }
    return ranked;
}

RankedList extract_ranked(const ResponseRecord& record, ExtractionKind kind,
                          const BrandLexicon* lexicon) {
    if (kind == ExtractionKind::Source) return source_ranked(record);
    if (!lexicon) throw std::invalid_argument("brand extraction requires a lexicon");
    return detect_brands(record.answer_text, *lexicon).brands_ordered;
}

PairScore score_pair(const ResponseRecord& r1, const ResponseRecord& r2, ExtractionKind kind,
                     RboParams params, const BrandLexicon* lexicon) {
    RankedList a = extract_ranked(r1, kind, lexicon);
    RankedList b = extract_ranked(r2, kind, lexicon);
    PairScore score;
    score.jaccard = jaccard(a.to_set(), b.to_set());
    score.rbo = rbo_min(a, b, params);
    score.delta_t = std::chrono::abs(r1.timestamp - r2.timestamp);
    return score;
}

} // namespace geostab
