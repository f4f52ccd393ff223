// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/brands/lexicon.hpp"
#include "geostab/core/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace geostab {

// Brands detected in one answer, ordered by first-mention character offset
// (byte offset into the folded text). A brand appears at most once; ties on
// identical offsets are broken by canonical-name order.
struct DetectionResult {
    std::string record_ref;
    RankedList brands_ordered;
    std::vector<size_t> offsets; // parallel to brands_ordered, non-decreasing

    ItemSet brands_set() const { return brands_ordered.to_set(); }
    bool any() const { return !brands_ordered.empty(); }
};

// Substring detection on case-folded text. A canonical brand is detected iff
// any of its patterns occurs; its rank position is the minimum match offset
// over all its patterns.
DetectionResult detect_brands(const std::string& text, const BrandLexicon& lexicon);

// Fraction of records with >= 1 detected brand. Throws std::invalid_argument
// on empty input.
double detection_rate(const std::vector<DetectionResult>& results);

struct QualificationRow {
    std::string campaign;
    double rate = 0.0;
    bool qualified = false;
};

struct QualificationReport {
    double threshold = 0.70;
    std::vector<QualificationRow> rows; // sorted by campaign

    std::vector<QualificationRow> disqualified() const;
    bool is_qualified(const std::string& campaign) const;
};

// A campaign qualifies for brand analysis iff its mean detection rate is
// >= threshold (inclusive).
QualificationReport qualify_campaigns(const std::map<std::string, double>& rates, double threshold = 0.70);

} // namespace geostab
