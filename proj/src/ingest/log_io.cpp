// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/ingest/log_io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace geostab {

namespace {

using nlohmann::json;

ResponseRecord record_from_json(const json& j, bool& has_run_index) {
    if (!j.is_object()) throw std::runtime_error("not a JSON object");
    ResponseRecord r;
    r.engine = EngineId::parse(j.at("engine").get<std::string>());
    if (r.engine.label().empty()) throw std::runtime_error("empty engine label");
    r.prompt.campaign = CampaignId::of(j.at("campaign").get<std::string>());
    if (r.prompt.campaign.name.empty()) throw std::runtime_error("empty campaign");
    r.prompt.index = j.at("prompt_index").get<int>();
    r.prompt.text = j.at("prompt_text").get<std::string>();
    auto ts = parse_instant(j.at("timestamp").get<std::string>());
    if (!ts) throw std::runtime_error("bad timestamp");
    r.timestamp = *ts;
    has_run_index = j.contains("run_index") && !j.at("run_index").is_null();
    if (has_run_index) r.run_index = j.at("run_index").get<int>();
    r.answer_text = j.value("answer_text", std::string{});
    if (j.contains("citations")) {
        for (const auto& c : j.at("citations")) r.citations.push_back(c.get<std::string>());
    }
    return r;
}

} // namespace

ParseResult parse_log(std::istream& in) {
    ParseResult result;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue; // blank
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            result.errors.push_back({line_no, "invalid JSON"});
            continue;
        }
        try {
            bool has_run_index = false;
            ResponseRecord r = record_from_json(j, has_run_index);
            if (!has_run_index) result.missing_run_index.push_back(result.records.size());
            result.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            result.errors.push_back({line_no, e.what()});
        }
    }
    if (in.bad()) throw std::runtime_error("I/O error while reading log stream");
    return result;
}

std::string format_record_line(const ResponseRecord& record) {
    json j;
    j["engine"] = record.engine.label();
    j["campaign"] = record.prompt.campaign.name;
    j["prompt_index"] = record.prompt.index;
    j["prompt_text"] = record.prompt.text;
    j["timestamp"] = format_instant(record.timestamp);
    j["run_index"] = record.run_index;
    j["answer_text"] = record.answer_text;
    j["citations"] = record.citations;
    return j.dump();
}

void assign_run_indices(ParseResult& result) {
    if (result.missing_run_index.empty()) return;
    using GroupId = std::tuple<std::string, std::string, int, Date>;
    auto group_of = [](const ResponseRecord& r) {
        return GroupId{r.engine.label(), r.prompt.campaign.name, r.prompt.index,
                       to_date(r.timestamp)};
    };

    // highest explicit run_index per group
    std::map<GroupId, int> base;
    std::vector<bool> missing(result.records.size(), false);
    for (size_t i : result.missing_run_index) missing[i] = true;
    for (size_t i = 0; i < result.records.size(); ++i) {
        if (missing[i]) continue;
        auto g = group_of(result.records[i]);
        auto& b = base[g];
        b = std::max(b, result.records[i].run_index);
    }

    std::map<GroupId, std::vector<size_t>> pending;
    for (size_t i : result.missing_run_index) pending[group_of(result.records[i])].push_back(i);
    for (auto& [g, indices] : pending) {
        std::stable_sort(indices.begin(), indices.end(), [&](size_t a, size_t b) {
            return result.records[a].timestamp < result.records[b].timestamp;
        });
        int next = base.count(g) ? base[g] : 0;
        for (size_t i : indices) result.records[i].run_index = ++next;
    }
}

} // namespace geostab
