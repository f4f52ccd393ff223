// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/ingest/filters.hpp"

#include "geostab/ingest/url.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geostab {

IngestConfig IngestConfig::defaults() {
    IngestConfig cfg;
    cfg.blocked_domains.insert("images.openai.com");
    cfg.excluded_engines.insert("google-aio");
    return cfg;
}

IngestConfig IngestConfig::from_json_text(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    IngestConfig cfg = defaults();
    if (j.contains("date_window")) {
        const auto& w = j.at("date_window");
        auto start = parse_date(w.at("start").get<std::string>());
        auto end = parse_date(w.at("end").get<std::string>());
        if (!start || !end) throw std::runtime_error("date_window: bad date");
        if (*start > *end) throw std::runtime_error("date_window: start > end");
        cfg.date_window = DateWindow{*start, *end};
    }
    if (j.contains("excluded_dates")) {
        cfg.excluded_dates.clear();
        for (const auto& s : j.at("excluded_dates")) {
            auto d = parse_date(s.get<std::string>());
            if (!d) throw std::runtime_error("excluded_dates: bad date " + s.get<std::string>());
            cfg.excluded_dates.insert(*d);
        }
    }
    if (j.contains("blocked_domains")) {
        cfg.blocked_domains.clear();
        for (const auto& s : j.at("blocked_domains")) cfg.blocked_domains.insert(fold_case(s.get<std::string>()));
    }
    if (j.contains("excluded_engines")) {
        cfg.excluded_engines.clear();
        for (const auto& s : j.at("excluded_engines"))
            cfg.excluded_engines.insert(EngineId::parse(s.get<std::string>()).label());
    }
    return cfg;
}

IngestConfig IngestConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

FilteredDataset apply_filters(std::vector<ResponseRecord> records, const IngestConfig& cfg) {
    FilteredDataset out;
    out.records.reserve(records.size());
    for (auto& r : records) {
        if (cfg.excluded_engines.count(r.engine.label())) {
            ++out.counts.excluded_engine;
            continue;
        }
        Date day = to_date(r.timestamp);
        if (cfg.date_window && !cfg.date_window->contains(day)) {
            ++out.counts.out_of_window;
            continue;
        }
        if (cfg.excluded_dates.count(day)) {
            ++out.counts.excluded_date;
            continue;
        }
        std::vector<std::string> kept;
        kept.reserve(r.citations.size());
        for (auto& url : r.citations) {
            auto domain = normalize_url(url);
            if (!domain) {
                ++out.counts.malformed_citations;
            } else if (cfg.blocked_domains.count(*domain)) {
                ++out.counts.blocked_citations;
            } else {
                kept.push_back(std::move(url));
            }
        }
        r.citations = std::move(kept);
        out.records.push_back(std::move(r));
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const ResponseRecord& a, const ResponseRecord& b) {
                         auto ka = std::tie(a.engine.label(), a.prompt.campaign.name,
                                            a.prompt.index, a.timestamp, a.run_index);
                         auto kb = std::tie(b.engine.label(), b.prompt.campaign.name,
                                            b.prompt.index, b.timestamp, b.run_index);
                         return ka < kb;
                     });
    return out;
}

CoverageTable coverage_table(const FilteredDataset& dataset) {
    struct Acc {
        std::set<int> queries;
        std::set<Date> days;
        std::map<std::string, std::set<Date>> engine_days;
    };
    std::map<std::string, Acc> per_campaign;
    std::set<std::string> engines;
    std::map<std::string, CampaignId> campaigns;
    for (const auto& r : dataset.records) {
        auto& acc = per_campaign[r.prompt.campaign.name];
        campaigns.emplace(r.prompt.campaign.name, r.prompt.campaign);
        acc.queries.insert(r.prompt.index);
        Date day = to_date(r.timestamp);
        acc.days.insert(day);
        acc.engine_days[r.engine.label()].insert(day);
        engines.insert(r.engine.label());
    }

    CoverageTable table;
    table.engines.assign(engines.begin(), engines.end());
    for (const auto& [name, acc] : per_campaign) {
        CoverageRow row;
        row.campaign = campaigns.at(name);
        row.queries = static_cast<int>(acc.queries.size());
        row.days = static_cast<int>(acc.days.size());
        for (const auto& engine : table.engines) {
            auto it = acc.engine_days.find(engine);
            row.engine_days[engine] = it == acc.engine_days.end() ? 0 : static_cast<int>(it->second.size());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace geostab
