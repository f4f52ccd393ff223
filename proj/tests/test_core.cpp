// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "doctest.h"

#include "geostab/core/time.hpp"
#include "geostab/core/types.hpp"
#include "geostab/core/validate.hpp"

using namespace geostab;

TEST_CASE("rfc3339 parsing to utc seconds") {
    auto utc = parse_instant("2026-01-24T08:15:00Z");
    REQUIRE(utc.has_value());
    CHECK(format_instant(*utc) == "2026-01-24T08:15:00Z");

    SUBCASE("offset is converted on ingest") {
        auto offset = parse_instant("2026-01-24T09:15:00+01:00");
        REQUIRE(offset.has_value());
        CHECK(*offset == *utc);
        auto negative = parse_instant("2026-01-24T03:15:00-05:00");
        REQUIRE(negative.has_value());
        CHECK(*negative == *utc);
    }
    SUBCASE("fractional seconds truncate") {
        auto frac = parse_instant("2026-01-24T08:15:00.987Z");
        REQUIRE(frac.has_value());
        CHECK(*frac == *utc);
    }
    SUBCASE("malformed inputs are rejected") {
        CHECK(!parse_instant("not a time"));
        CHECK(!parse_instant("2026-13-01T00:00:00Z"));
        CHECK(!parse_instant("2026-02-30T00:00:00Z"));
        CHECK(!parse_instant("2026-01-24T25:00:00Z"));
        CHECK(!parse_instant("2026-01-24T08:15:00+01"));
        CHECK(!parse_instant(""));
    }
    SUBCASE("calendar day in utc") {
        auto late = parse_instant("2026-01-24T23:30:00-02:00"); // 01:30 next day UTC
        REQUIRE(late.has_value());
        CHECK(format_date(to_date(*late)) == "2026-01-25");
    }
}

TEST_CASE("fold_case handles ascii and latin-1 supplement") {
    CHECK(fold_case("SwissCom") == "swisscom");
    CHECK(fold_case("BÄCHLI") == "bächli");
    CHECK(fold_case("Engel & Völkers") == "engel & völkers");
    CHECK(fold_case("WÜST") == "wüst");
    CHECK(fold_case("1&1") == "1&1");
}

TEST_CASE("engine ids canonicalize case-insensitively") {
    CHECK(EngineId::parse("ChatGPT").kind() == EngineKind::ChatGPT);
    CHECK(EngineId::parse("chatgpt") == EngineId::parse("CHATGPT"));
    CHECK(EngineId::parse("Google AI Mode").label() == "google-ai-mode");
    CHECK(EngineId::parse("google_ai_mode").kind() == EngineKind::GoogleAIMode);
    CHECK(EngineId::parse("Perplexity").display() == "Perplexity");

    // google-aio is a different product, never an alias of google-ai-mode
    EngineId aio = EngineId::parse("Google-AIO");
    CHECK(aio.kind() == EngineKind::Other);
    CHECK(aio.label() == "google-aio");
    CHECK(aio != EngineId::parse("google-ai-mode"));
}

TEST_CASE("ranked list dedups, first occurrence keeps the rank") {
    RankedList list({"a", "b", "a", "c", "b"});
    CHECK(list.items() == std::vector<std::string>{"a", "b", "c"});

    SUBCASE("idempotent") {
        RankedList again(list.items());
        CHECK(again.items() == list.items());
    }
    SUBCASE("set view matches") {
        ItemSet set = list.to_set();
        CHECK(set.size() == 3);
        CHECK(set.contains("a"));
        CHECK(set.contains("c"));
    }
}

TEST_CASE("record validation reports instead of throwing") {
    ResponseRecord record;
    record.engine = EngineId::parse("chatgpt");
    record.prompt.campaign = CampaignId::of("telecommunications");
    record.prompt.index = 1;
    record.prompt.text = "Welcher Anbieter?";
    record.timestamp = *parse_instant("2026-01-24T08:00:00Z");
    record.run_index = 1;

    RecordValidator validator;
    CHECK(validator.validate(record).valid());

    SUBCASE("run_index below one") {
        ResponseRecord bad = record;
        bad.run_index = 0;
        auto report = validator.validate(bad);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0] == "run_index < 1");
    }
    SUBCASE("duplicate key flagged on the second record only") {
        auto second = validator.validate(record);
        REQUIRE(second.violations.size() == 1);
        CHECK(second.violations[0] == "duplicate (engine, prompt, timestamp, run_index)");
    }
    SUBCASE("empty engine label") {
        ResponseRecord bad = record;
        bad.engine = EngineId::parse("");
        auto report = validator.validate(bad);
        CHECK(!report.valid());
    }
}

#include "geostab/metrics/similarity.hpp"

TEST_CASE("every valid record extracts to a ranked list and item set") {
    ResponseRecord record;
    record.engine = EngineId::parse("chatgpt");
    record.prompt.campaign = CampaignId::of("t");
    record.prompt.index = 1;
    record.prompt.text = "q";
    record.timestamp = *parse_instant("2026-01-24T08:00:00Z");

    SUBCASE("empty citations give empty views") {
        RankedList ranked = source_ranked(record);
        CHECK(ranked.empty());
        CHECK(ranked.to_set().empty());
    }
    SUBCASE("set of the ranked list equals the item set") {
        record.citations = {"https://a.ch/x", "https://b.ch/y", "https://a.ch/z"};
        RankedList ranked = source_ranked(record);
        ItemSet set = ranked.to_set();
        CHECK(set.size() == ranked.size());
        for (const auto& item : ranked.items()) CHECK(set.contains(item));
    }
}
