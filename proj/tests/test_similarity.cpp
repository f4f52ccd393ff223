// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "doctest.h"

#include "geostab/convergence/rng.hpp"
#include "geostab/metrics/similarity.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace geostab;

namespace {

ItemSet set_of(std::initializer_list<std::string> items) {
    ItemSet s;
    for (const auto& i : items) s.items.insert(i);
    return s;
}

RankedList list_of(std::initializer_list<std::string> items) {
    return RankedList(std::vector<std::string>(items));
}

ResponseRecord record_with(std::vector<std::string> citations, std::string answer = "") {
    ResponseRecord r;
    r.engine = EngineId::parse("chatgpt");
    r.prompt.campaign = CampaignId::of("telecommunications");
    r.prompt.index = 1;
    r.prompt.text = "q";
    r.timestamp = *parse_instant("2026-01-24T08:00:00Z");
    r.citations = std::move(citations);
    r.answer_text = std::move(answer);
    return r;
}

// random list over a small alphabet, unique items
std::vector<std::string> random_list(SplitMix64& rng, size_t max_len, int alphabet) {
    size_t len = rng.next_below(max_len + 1);
    std::vector<std::string> pool;
    for (int i = 0; i < alphabet; ++i) pool.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::string> out;
    for (size_t i = 0; i < len && !pool.empty(); ++i) {
        size_t pick = rng.next_below(pool.size());
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
    }
    return out;
}

} // namespace

TEST_CASE("jaccard definition and empty policy") {
    CHECK(*jaccard(set_of({"a", "b", "c"}), set_of({"b", "c", "d"})) == doctest::Approx(0.5));
    CHECK(*jaccard(set_of({"x", "y"}), set_of({"x", "y"})) == 1.0);
    CHECK(*jaccard(set_of({}), set_of({"x"})) == 0.0);
    CHECK(jaccard(set_of({}), set_of({})) == kExcluded);
}

TEST_CASE("rbo_min matches the hand-computed cases") {
    RboParams p09{0.9};
    SUBCASE("identical lists score 1 - p^k") {
        auto s = list_of({"a", "b", "c", "d", "e"});
        CHECK(*rbo_min(s, s, p09) == doctest::Approx(1.0 - std::pow(0.9, 5)).epsilon(1e-12));
    }
    SUBCASE("swapped two-element lists") {
        // A_1 = 0, A_2 = 1 -> 0.1 * (0 + 0.9 * 1) = 0.09
        CHECK(*rbo_min(list_of({"a", "b"}), list_of({"b", "a"}), p09) == doctest::Approx(0.09));
    }
    SUBCASE("disjoint equal-length lists") {
        CHECK(*rbo_min(list_of({"a", "b"}), list_of({"c", "d"}), p09) == 0.0);
    }
    SUBCASE("empty policy") {
        CHECK(rbo_min(list_of({}), list_of({}), p09) == kExcluded);
        CHECK(*rbo_min(list_of({}), list_of({"a"}), p09) == 0.0);
    }
    SUBCASE("p outside (0,1) rejected") {
        CHECK_THROWS_AS(rbo_min(list_of({"a"}), list_of({"a"}), RboParams{1.0}), std::invalid_argument);
    }
}

TEST_CASE("metric properties over random inputs") {
    SplitMix64 rng(20260124);
    RboParams params{0.9};
    for (int trial = 0; trial < 400; ++trial) {
        auto va = random_list(rng, 10, 15);
        auto vb = random_list(rng, 10, 15);
        RankedList a(va), b(vb);

        auto j_ab = jaccard(a.to_set(), b.to_set());
        auto j_ba = jaccard(b.to_set(), a.to_set());
        auto r_ab = rbo_min(a, b, params);
        auto r_ba = rbo_min(b, a, params);

        // symmetry
        CHECK(j_ab == j_ba);
        REQUIRE(r_ab.has_value() == r_ba.has_value());
        if (r_ab) CHECK(*r_ab == doctest::Approx(*r_ba).epsilon(1e-12));

        // bounds, including the truncation ceiling
        if (j_ab) {
            CHECK(*j_ab >= 0.0);
            CHECK(*j_ab <= 1.0);
        }
        if (r_ab && !a.empty() && !b.empty()) {
            double ceiling = 1.0 - std::pow(params.p, std::min(a.size(), b.size()));
            CHECK(*r_ab >= 0.0);
            CHECK(*r_ab <= ceiling + 1e-12);
        }

        // appending the same new item to both lists never decreases rbo
        if (!a.empty() && !b.empty()) {
            auto grown_a = a.items();
            auto grown_b = b.items();
            grown_a.push_back("zz");
            grown_b.push_back("zz");
            auto grown = rbo_min(RankedList(grown_a), RankedList(grown_b), params);
            CHECK(*grown >= *r_ab - 1e-12);
        }
    }
}

TEST_CASE("oracle equivalence on 1000 random pairs") {
    SplitMix64 rng(99);
    RboParams params{0.9};
    for (int trial = 0; trial < 1000; ++trial) {
        auto va = random_list(rng, 10, 15);
        auto vb = random_list(rng, 10, 15);
        RankedList a(va), b(vb);

        auto j = jaccard(a.to_set(), b.to_set());
        auto j_oracle = oracles::jaccard_naive(va, vb);
        REQUIRE(j.has_value() == j_oracle.has_value());
        if (j) CHECK(*j == *j_oracle); // exact: both are ratios of the same integers

        auto r = rbo_min(a, b, params);
        auto r_oracle = oracles::rbo_min_naive(va, vb, params.p);
        REQUIRE(r.has_value() == r_oracle.has_value());
        if (r) CHECK(*r == doctest::Approx(*r_oracle).epsilon(1e-12));
    }
}

TEST_CASE("score_pair applies the shared policy per kind") {
    SUBCASE("identical citation lists") {
        auto r1 = record_with({"https://a.ch/1", "https://b.ch/2", "https://c.ch/3"});
        auto r2 = record_with({"https://a.ch/9", "https://b.ch/8", "https://c.ch/7"});
        PairScore s = score_pair(r1, r2, ExtractionKind::Source);
        CHECK(*s.jaccard == 1.0);
        CHECK(*s.rbo == doctest::Approx(1.0 - std::pow(0.9, 3)));
    }
    SUBCASE("one empty, one cited: maximum disagreement") {
        PairScore s = score_pair(record_with({}), record_with({"https://a.ch/"}),
                                 ExtractionKind::Source);
        CHECK(*s.jaccard == 0.0);
        CHECK(*s.rbo == 0.0);
        CHECK(!s.excluded());
    }
    SUBCASE("both empty: excluded, never zero") {
        PairScore s = score_pair(record_with({}), record_with({}), ExtractionKind::Source);
        CHECK(s.excluded());
        CHECK(s.jaccard == kExcluded);
        CHECK(s.rbo == kExcluded);
    }
    SUBCASE("delta_t is the absolute timestamp distance") {
        auto r1 = record_with({"https://a.ch/"});
        auto r2 = record_with({"https://a.ch/"});
        r2.timestamp = *parse_instant("2026-01-24T10:30:00Z");
        PairScore s = score_pair(r2, r1, ExtractionKind::Source);
        CHECK(s.delta_t == std::chrono::seconds{9000});
    }
    SUBCASE("brand kind requires a lexicon") {
        CHECK_THROWS_AS(score_pair(record_with({}), record_with({}), ExtractionKind::Brand),
                        std::invalid_argument);
    }
    SUBCASE("brand kind scores detected canonical brands") {
        BrandLexicon lex(CampaignId::of("telecommunications"));
        lex.add_brand("Salt", {"salt"});
        lex.add_brand("Sunrise", {"sunrise"});
        auto r1 = record_with({}, "salt und sunrise");
        auto r2 = record_with({}, "nur sunrise hier");
        PairScore s = score_pair(r1, r2, ExtractionKind::Brand, RboParams{0.9}, &lex);
        CHECK(*s.jaccard == doctest::Approx(0.5));
    }
    SUBCASE("source rank order follows emission order after domain dedup") {
        auto r = record_with({"https://b.ch/1", "https://www.b.ch/2", "https://a.ch/1"});
        RankedList ranked = source_ranked(r);
        CHECK(ranked.items() == std::vector<std::string>{"b.ch", "a.ch"});
    }
}
