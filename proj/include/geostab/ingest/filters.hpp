// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/types.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace geostab {

struct DateWindow {
    Date start{};
    Date end{}; // inclusive

    bool contains(Date d) const { return d >= start && d <= end; }
};

struct IngestConfig {
    std::optional<DateWindow> date_window;   // no restriction when absent
    std::set<Date> excluded_dates;
    std::set<std::string> blocked_domains;   // normalized hosts
    std::set<std::string> excluded_engines;  // canonical labels

    // Paper-window defaults: images.openai.com CDN artifact blocked,
    // google-aio rejected.
    static IngestConfig defaults();

    // Parses the config document. Keys: date_window.start, date_window.end,
    // excluded_dates, blocked_domains, excluded_engines. Missing keys keep the
    // defaults.
    static IngestConfig from_json_text(const std::string& text);
    static IngestConfig load(const std::string& path);
};

struct FilterCounts {
    size_t excluded_engine = 0;     // records dropped
    size_t out_of_window = 0;       // records dropped
    size_t excluded_date = 0;       // records dropped
    size_t blocked_citations = 0;   // citations removed, record kept
    size_t malformed_citations = 0; // citations removed, record kept

    size_t dropped_records() const { return excluded_engine + out_of_window + excluded_date; }
};

// Records surviving the data-quality filters, in deterministic order
// (engine, campaign, prompt, timestamp, run_index).
struct FilteredDataset {
    std::vector<ResponseRecord> records;
    FilterCounts counts;
};

// Drops records from excluded engines, outside the date window, or on excluded
// dates (checked in that order; each dropped record is counted once). Removes
// blocked and malformed citations from surviving records without dropping the
// record itself.
FilteredDataset apply_filters(std::vector<ResponseRecord> records, const IngestConfig& cfg);

struct CoverageRow {
    CampaignId campaign;
    int queries = 0; // distinct prompt indices
    int days = 0;    // distinct collection days, any engine
    std::map<std::string, int> engine_days;
};

struct CoverageTable {
    std::vector<std::string> engines; // sorted labels present in the dataset
    std::vector<CoverageRow> rows;    // sorted by campaign
};

// Collection days with >= 1 result, per campaign and engine.
CoverageTable coverage_table(const FilteredDataset& dataset);

} // namespace geostab
