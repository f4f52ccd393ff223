// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/brands/detect.hpp"
#include "geostab/core/types.hpp"

#include <vector>

namespace geostab {

// Empty-input policy, applied uniformly to Jaccard and RBO:
//   both inputs empty      -> Excluded (dropped from aggregation, never 0)
//   exactly one empty      -> 0.0 (maximum disagreement)
//   both non-empty         -> the metric proper

// |a n b| / |a u b|.
SimilarityValue jaccard(const ItemSet& a, const ItemSet& b);

// Non-extrapolated minimum-bound RBO:
//   (1-p) * sum_{d=1..k} p^(d-1) * A_d,  A_d = |S_:d n T_:d| / d,  k = min(|S|,|T|).
// Identical lists of length k score 1 - p^k, not 1. Lists must be deduplicated,
// which RankedList enforces.
SimilarityValue rbo_min(const RankedList& s, const RankedList& t, RboParams params = {});

// Ordered-unique domains of a record's citations, emission order, first
// occurrence keeps the earliest rank. Citations that fail URL normalization
// are skipped.
RankedList source_ranked(const ResponseRecord& record);

// Ranked items for the requested kind: cited domains, or canonical brands by
// first mention. Brand extraction requires a lexicon.
RankedList extract_ranked(const ResponseRecord& record, ExtractionKind kind,
                          const BrandLexicon* lexicon);

// Jaccard + RBO for one record pair under the shared empty policy;
// delta_t = |t1 - t2|. Throws std::invalid_argument for Brand kind without a
// lexicon.
PairScore score_pair(const ResponseRecord& r1, const ResponseRecord& r2, ExtractionKind kind,
                     RboParams params = {}, const BrandLexicon* lexicon = nullptr);

} // namespace geostab
