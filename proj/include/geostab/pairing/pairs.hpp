// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/brands/lexicon.hpp"
#include "geostab/core/types.hpp"
#include "geostab/ingest/filters.hpp"

#include <iosfwd>
#include <map>
#include <vector>

namespace geostab {

struct TemporalPairingConfig {
    // Calendar-day distance between the two records of a pair. 1 = adjacent
    // days; no bridging across gaps.
    int max_gap_days = 1;
};

struct SimultaneousPairingConfig {
    std::chrono::seconds max_delta = std::chrono::hours{24};
    bool require_citation = false;     // drop zero-citation runs before pairing
    bool require_nonempty_text = false;

    static SimultaneousPairingConfig for_kind(ExtractionKind kind) {
        SimultaneousPairingConfig cfg;
        cfg.require_citation = kind == ExtractionKind::Source;
        cfg.require_nonempty_text = kind == ExtractionKind::Brand;
        return cfg;
    }
};

// Indices into FilteredDataset::records. first < second in dataset order.
struct RecordPair {
    GroupKey key;
    size_t first = 0;
    size_t second = 0;
};

// Day-to-day pairs: within each (campaign, engine, prompt) group, keeps one
// record per calendar day (earliest timestamp) and pairs days exactly
// max_gap_days apart. Missing days produce no pair.
std::vector<RecordPair> consecutive_day_pairs(const FilteredDataset& dataset,
                                              const TemporalPairingConfig& cfg,
                                              ExtractionKind kind);

// Within-window pairs: all unordered record pairs of a (campaign, engine,
// prompt) group with |dt| <= max_delta, after the per-run filters. A group of
// m qualifying runs yields at most C(m, 2) pairs.
std::vector<RecordPair> simultaneous_pairs(const FilteredDataset& dataset,
                                           const SimultaneousPairingConfig& cfg,
                                           ExtractionKind kind);

struct ScoredPair {
    GroupKey key;
    PairScore score;
};

// Scores every pair, caching the per-record extraction. Brand pairs require
// the campaign's lexicon to be present in `lexicons`.
std::vector<ScoredPair> score_pairs(const FilteredDataset& dataset,
                                    const std::vector<RecordPair>& pairs, RboParams params,
                                    const std::map<std::string, BrandLexicon>* lexicons = nullptr);

// Audit manifest, one CSV line per pair:
// campaign,engine,prompt_index,kind,t1,t2,delta_seconds,run_index_1,run_index_2
void write_pair_manifest(std::ostream& out, const FilteredDataset& dataset,
                         const std::vector<RecordPair>& pairs);

} // namespace geostab
