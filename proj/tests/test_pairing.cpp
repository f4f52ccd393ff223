// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "doctest.h"

#include "geostab/pairing/pairs.hpp"

#include <map>
#include <sstream>

using namespace geostab;

namespace {

ResponseRecord make(const std::string& engine, const std::string& campaign, int prompt,
                    const std::string& ts, int run = 1, std::vector<std::string> citations = {"https://a.ch/"},
                    std::string answer = "text") {
    ResponseRecord r;
    r.engine = EngineId::parse(engine);
    r.prompt.campaign = CampaignId::of(campaign);
    r.prompt.index = prompt;
    r.prompt.text = "q";
    r.timestamp = *parse_instant(ts);
    r.run_index = run;
    r.citations = std::move(citations);
    r.answer_text = std::move(answer);
    return r;
}

FilteredDataset dataset_of(std::vector<ResponseRecord> records) {
    return apply_filters(std::move(records), IngestConfig::defaults());
}

} // namespace

TEST_CASE("consecutive-day pairing") {
    SUBCASE("mon/tue/wed give two pairs") {
        auto ds = dataset_of({make("chatgpt", "t", 1, "2026-02-02T08:00:00Z"),
                              make("chatgpt", "t", 1, "2026-02-03T08:00:00Z"),
                              make("chatgpt", "t", 1, "2026-02-04T08:00:00Z")});
        auto pairs = consecutive_day_pairs(ds, {}, ExtractionKind::Source);
        REQUIRE(pairs.size() == 2);
        CHECK(to_date(ds.records[pairs[0].first].timestamp) + std::chrono::days{1} ==
              to_date(ds.records[pairs[0].second].timestamp));
    }
    SUBCASE("a gap produces no pair at max_gap_days 1") {
        auto ds = dataset_of({make("chatgpt", "t", 1, "2026-02-02T08:00:00Z"),
                              make("chatgpt", "t", 1, "2026-02-04T08:00:00Z")});
        CHECK(consecutive_day_pairs(ds, {}, ExtractionKind::Source).empty());
        CHECK(consecutive_day_pairs(ds, {2}, ExtractionKind::Source).size() == 1);
    }
    SUBCASE("within-day dedup keeps the earliest run") {
        auto ds = dataset_of({make("chatgpt", "t", 1, "2026-02-02T11:00:00Z", 2),
                              make("chatgpt", "t", 1, "2026-02-02T08:00:00Z", 1),
                              make("chatgpt", "t", 1, "2026-02-03T09:00:00Z", 1)});
        auto pairs = consecutive_day_pairs(ds, {}, ExtractionKind::Source);
        REQUIRE(pairs.size() == 1);
        CHECK(format_instant(ds.records[pairs[0].first].timestamp) == "2026-02-02T08:00:00Z");
    }
    SUBCASE("each record appears in at most two pairs") {
        std::vector<ResponseRecord> records;
        for (int day = 1; day <= 9; ++day) {
            char ts[40];
            std::snprintf(ts, sizeof(ts), "2026-02-%02dT08:00:00Z", day);
            records.push_back(make("chatgpt", "t", 1, ts));
        }
        auto ds = dataset_of(std::move(records));
        auto pairs = consecutive_day_pairs(ds, {}, ExtractionKind::Source);
        CHECK(pairs.size() == 8);
        std::map<size_t, int> uses;
        for (const auto& p : pairs) {
            ++uses[p.first];
            ++uses[p.second];
        }
        for (const auto& [idx, n] : uses) CHECK(n <= 2);
    }
}

TEST_CASE("simultaneous pairing") {
    SUBCASE("ten qualifying runs give C(10,2) pairs") {
        std::vector<ResponseRecord> records;
        for (int rep = 1; rep <= 10; ++rep)
            records.push_back(make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", rep));
        for (auto& r : records) r.timestamp += std::chrono::minutes{r.run_index};
        auto ds = dataset_of(std::move(records));
        auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
        CHECK(simultaneous_pairs(ds, cfg, ExtractionKind::Source).size() == 45);
    }
    SUBCASE("25 hours apart never pairs") {
        auto ds = dataset_of({make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", 1),
                              make("chatgpt", "t", 1, "2026-03-22T09:00:00Z", 2)});
        auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
        CHECK(simultaneous_pairs(ds, cfg, ExtractionKind::Source).empty());
        CHECK(std::chrono::abs(ds.records[0].timestamp - ds.records[1].timestamp) ==
              std::chrono::hours{25});
    }
    SUBCASE("zero-citation runs drop before pairing in source mode") {
        std::vector<ResponseRecord> records;
        for (int rep = 1; rep <= 10; ++rep) {
            bool cited = rep > 4; // 4 of 10 have no citations
            records.push_back(make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", rep,
                                   cited ? std::vector<std::string>{"https://a.ch/"}
                                         : std::vector<std::string>{}));
            records.back().timestamp += std::chrono::minutes{rep};
        }
        auto ds = dataset_of(std::move(records));
        auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
        CHECK(simultaneous_pairs(ds, cfg, ExtractionKind::Source).size() == 15); // C(6,2)

        SUBCASE("brand mode keeps them but drops empty answers") {
            auto brand_cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Brand);
            CHECK(simultaneous_pairs(ds, brand_cfg, ExtractionKind::Brand).size() == 45);
        }
    }
    SUBCASE("removing one run removes m-1 pairs") {
        std::vector<ResponseRecord> records;
        for (int rep = 1; rep <= 7; ++rep) {
            records.push_back(make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", rep));
            records.back().timestamp += std::chrono::minutes{rep};
        }
        auto full = dataset_of(records);
        records.pop_back();
        auto smaller = dataset_of(records);
        auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
        size_t before = simultaneous_pairs(full, cfg, ExtractionKind::Source).size();
        size_t after = simultaneous_pairs(smaller, cfg, ExtractionKind::Source).size();
        CHECK(before - after == 6);
    }
    SUBCASE("pairs never cross engines or prompts") {
        auto ds = dataset_of({make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", 1),
                              make("gemini", "t", 1, "2026-03-21T08:01:00Z", 1),
                              make("chatgpt", "t", 2, "2026-03-21T08:02:00Z", 1),
                              make("chatgpt", "s", 1, "2026-03-21T08:03:00Z", 1)});
        auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
        CHECK(simultaneous_pairs(ds, cfg, ExtractionKind::Source).empty());
        CHECK(consecutive_day_pairs(ds, {}, ExtractionKind::Source).empty());
    }
}

TEST_CASE("pair manifest carries one audit line per pair") {
    auto ds = dataset_of({make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", 1),
                          make("chatgpt", "t", 1, "2026-03-21T08:05:00Z", 2)});
    auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
    auto pairs = simultaneous_pairs(ds, cfg, ExtractionKind::Source);
    REQUIRE(pairs.size() == 1);
    std::ostringstream out;
    write_pair_manifest(out, ds, pairs);
    CHECK(out.str() ==
          "campaign,engine,prompt_index,kind,t1,t2,delta_seconds,run_index_1,run_index_2\n"
          "t,chatgpt,1,source,2026-03-21T08:00:00Z,2026-03-21T08:05:00Z,300,1,2\n");
}

TEST_CASE("bulk scoring matches per-pair scoring") {
    auto ds = dataset_of({make("chatgpt", "t", 1, "2026-03-21T08:00:00Z", 1,
                               {"https://a.ch/", "https://b.ch/"}),
                          make("chatgpt", "t", 1, "2026-03-21T08:05:00Z", 2,
                               {"https://b.ch/", "https://c.ch/"})});
    auto cfg = SimultaneousPairingConfig::for_kind(ExtractionKind::Source);
    auto pairs = simultaneous_pairs(ds, cfg, ExtractionKind::Source);
    auto scored = score_pairs(ds, pairs, RboParams{0.9});
    REQUIRE(scored.size() == 1);
    CHECK(*scored[0].score.jaccard == doctest::Approx(1.0 / 3.0));
}
