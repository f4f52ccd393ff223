// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/pairing/pairs.hpp"

#include "geostab/metrics/similarity.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace geostab {

namespace {

using GroupIndex = std::map<GroupKey, std::vector<size_t>>;

// dataset.records is already sorted, so group vectors are in (timestamp,
// run_index) order.
GroupIndex group_records(const FilteredDataset& dataset, ExtractionKind kind) {
    GroupIndex groups;
    for (size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& r = dataset.records[i];
        GroupKey key{r.prompt.campaign, r.engine, r.prompt.index, kind};
        groups[key].push_back(i);
    }
    return groups;
}

} // namespace

std::vector<RecordPair> consecutive_day_pairs(const FilteredDataset& dataset,
                                              const TemporalPairingConfig& cfg,
                                              ExtractionKind kind) {
    if (cfg.max_gap_days < 1) throw std::invalid_argument("max_gap_days must be >= 1");
    std::vector<RecordPair> pairs;
    for (auto& [key, indices] : group_records(dataset, kind)) {
        // one record per calendar day: earliest timestamp wins
        std::map<Date, size_t> by_day;
        for (size_t i : indices) {
            Date day = to_date(dataset.records[i].timestamp);
            auto it = by_day.find(day);
            if (it == by_day.end() || dataset.records[i].timestamp < dataset.records[it->second].timestamp)
                by_day[day] = i;
        }
        for (const auto& [day, idx] : by_day) {
            auto next = by_day.find(day + std::chrono::days{cfg.max_gap_days});
            if (next != by_day.end()) pairs.push_back({key, idx, next->second});
        }
    }
    return pairs;
}

std::vector<RecordPair> simultaneous_pairs(const FilteredDataset& dataset,
                                           const SimultaneousPairingConfig& cfg,
                                           ExtractionKind kind) {
    if (cfg.max_delta <= std::chrono::seconds{0}) throw std::invalid_argument("max_delta must be > 0");
    std::vector<RecordPair> pairs;
    for (auto& [key, indices] : group_records(dataset, kind)) {
        std::vector<size_t> qualifying;
        for (size_t i : indices) {
            const auto& r = dataset.records[i];
            if (cfg.require_citation && r.citations.empty()) continue;
            if (cfg.require_nonempty_text && r.answer_text.empty()) continue;
            qualifying.push_back(i);
        }
        for (size_t a = 0; a < qualifying.size(); ++a) {
            for (size_t b = a + 1; b < qualifying.size(); ++b) {
                auto dt = std::chrono::abs(dataset.records[qualifying[a]].timestamp -
                                           dataset.records[qualifying[b]].timestamp);
                if (dt <= cfg.max_delta) pairs.push_back({key, qualifying[a], qualifying[b]});
            }
        }
    }
    return pairs;
}

std::vector<ScoredPair> score_pairs(const FilteredDataset& dataset,
                                    const std::vector<RecordPair>& pairs, RboParams params,
                                    const std::map<std::string, BrandLexicon>* lexicons) {
    // extraction cache: one ranked list + item set per record per kind
    struct Extracted {
        RankedList ranked;
        ItemSet set;
    };
    std::map<std::pair<size_t, ExtractionKind>, Extracted> cache;
    auto extracted_for = [&](size_t idx, ExtractionKind kind) -> const Extracted& {
        auto key = std::make_pair(idx, kind);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const auto& record = dataset.records[idx];
        const BrandLexicon* lexicon = nullptr;
        if (kind == ExtractionKind::Brand) {
            if (!lexicons) throw std::invalid_argument("brand scoring requires lexicons");
            auto lex = lexicons->find(record.prompt.campaign.name);
            if (lex == lexicons->end())
                throw std::invalid_argument("no lexicon for campaign " + record.prompt.campaign.name);
            lexicon = &lex->second;
        }
        Extracted e;
        e.ranked = extract_ranked(record, kind, lexicon);
        e.set = e.ranked.to_set();
        return cache.emplace(key, std::move(e)).first->second;
    };

    std::vector<ScoredPair> scored;
    scored.reserve(pairs.size());
    for (const auto& pair : pairs) {
        const Extracted& a = extracted_for(pair.first, pair.key.kind);
        const Extracted& b = extracted_for(pair.second, pair.key.kind);
        PairScore score;
        score.jaccard = jaccard(a.set, b.set);
        score.rbo = rbo_min(a.ranked, b.ranked, params);
        score.delta_t = std::chrono::abs(dataset.records[pair.first].timestamp -
                                         dataset.records[pair.second].timestamp);
        scored.push_back({pair.key, score});
    }
    return scored;
}

void write_pair_manifest(std::ostream& out, const FilteredDataset& dataset,
                         const std::vector<RecordPair>& pairs) {
    out << "campaign,engine,prompt_index,kind,t1,t2,delta_seconds,run_index_1,run_index_2\n";
    for (const auto& pair : pairs) {
        const auto& a = dataset.records[pair.first];
        const auto& b = dataset.records[pair.second];
        auto dt = std::chrono::abs(a.timestamp - b.timestamp);
        out << pair.key.campaign.name << ',' << pair.key.engine.label() << ','
            << pair.key.prompt_index << ',' << to_string(pair.key.kind) << ','
            << format_instant(a.timestamp) << ',' << format_instant(b.timestamp) << ','
            << dt.count() << ',' << a.run_index << ',' << b.run_index << '\n';
    }
}

} // namespace geostab
