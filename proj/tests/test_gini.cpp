// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "doctest.h"

#include "geostab/concentration/gini.hpp"
#include "geostab/convergence/rng.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace geostab;

namespace {

ResponseRecord cite(const std::string& campaign, const std::string& engine,
                    std::vector<std::string> urls, int run = 1) {
    ResponseRecord r;
    r.engine = EngineId::parse(engine);
    r.prompt.campaign = CampaignId::of(campaign);
    r.prompt.index = 1;
    r.prompt.text = "q";
    r.timestamp = *parse_instant("2026-02-01T08:00:00Z");
    r.run_index = run;
    r.citations = std::move(urls);
    return r;
}

} // namespace

TEST_CASE("gini worked example and edge values") {
    CHECK(gini({1, 2, 3, 4, 10}) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(gini({5, 5, 5, 5}) == 0.0);
    CHECK(gini({0, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(gini(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(gini({0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(gini({1, -1}), std::invalid_argument);
}

TEST_CASE("gini properties on random count vectors") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 300; ++trial) {
        size_t n = 1 + rng.next_below(20);
        std::vector<double> values;
        bool positive = false;
        for (size_t i = 0; i < n; ++i) {
            double v = static_cast<double>(rng.next_below(50));
            positive |= v > 0;
            values.push_back(v);
        }
        if (!positive) values[0] = 1;

        double base = gini(values);

        // scale invariance with an integer factor
        std::vector<double> scaled = values;
        for (double& v : scaled) v *= 7;
        CHECK(gini(scaled) == doctest::Approx(base).epsilon(1e-12));

        // permutation invariance
        std::vector<double> shuffled = values;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
        CHECK(gini(shuffled) == doctest::Approx(base).epsilon(1e-12));

        // range bound
        double n_d = static_cast<double>(values.size());
        CHECK(base >= -1e-12);
        CHECK(base <= (n_d - 1.0) / n_d + 1e-12);

        // Lorenz-curve area oracle
        CHECK(base == doctest::Approx(oracles::gini_lorenz(values)).epsilon(1e-12));
    }
}

TEST_CASE("gini extremes characterize equality and monopoly") {
    CHECK(gini({3, 3, 3}) == doctest::Approx(0.0));
    // single domain holds everything: G = (n-1)/n
    CHECK(gini({0, 0, 0, 12}) == doctest::Approx(3.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("tally counts every citation occurrence") {
    FilteredDataset ds;
    ds.records.push_back(cite("t", "chatgpt", {"https://example.com/a"}, 1));
    ds.records.push_back(cite("t", "chatgpt", {"https://example.com/b"}, 2));
    auto tally = tally_citations(ds, "t", "chatgpt");
    CHECK(tally.counts.at("example.com") == 2);

    SUBCASE("empty group, empty counts") {
        CHECK(tally_citations(ds, "t", "gemini").empty());
    }
    SUBCASE("three distinct domains once each") {
        FilteredDataset three;
        three.records.push_back(
            cite("t", "chatgpt", {"https://a.ch/", "https://b.ch/", "https://c.ch/"}));
        auto counts = tally_citations(three, "t", "chatgpt");
        CHECK(counts.counts.size() == 3);
        for (const auto& [domain, n] : counts.counts) CHECK(n == 1);
    }
    SUBCASE("repeat citations within one response all count") {
        FilteredDataset repeat;
        repeat.records.push_back(cite("t", "chatgpt", {"https://a.ch/1", "https://a.ch/2"}));
        CHECK(tally_citations(repeat, "t", "chatgpt").counts.at("a.ch") == 2);
    }
}

TEST_CASE("gini matrix with means") {
    SUBCASE("single group reuses the worked example") {
        FilteredDataset ds;
        std::vector<std::string> urls;
        auto repeat = [&](const std::string& domain, int times) {
            for (int i = 0; i < times; ++i) urls.push_back("https://" + domain + "/" + std::to_string(i));
        };
        repeat("a.ch", 1);
        repeat("b.ch", 2);
        repeat("c.ch", 3);
        repeat("d.ch", 4);
        repeat("e.ch", 10);
        ds.records.push_back(cite("t", "chatgpt", urls));
        GiniMatrix matrix = gini_matrix(ds);
        REQUIRE(matrix.defined_cells == 1);
        CHECK(matrix.cells.at({"t", "chatgpt"}) == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(matrix.global_mean == doctest::Approx(0.4).epsilon(1e-12));
    }
    SUBCASE("global mean is the unweighted cell mean") {
        FilteredDataset ds;
        // chatgpt cell: [1, 4] -> G = 2*9/(2*5) - 3/2 = 0.3
        ds.records.push_back(cite("t", "chatgpt", {"https://a.ch/", "https://b.ch/1",
                                                   "https://b.ch/2", "https://b.ch/3",
                                                   "https://b.ch/4"}));
        // gemini cell: [1, 1] -> G = 0
        ds.records.push_back(cite("t", "gemini", {"https://a.ch/", "https://b.ch/"}));
        GiniMatrix matrix = gini_matrix(ds);
        CHECK(matrix.cells.at({"t", "chatgpt"}) == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(matrix.cells.at({"t", "gemini"}) == doctest::Approx(0.0));
        CHECK(matrix.global_mean == doctest::Approx(0.15).epsilon(1e-12));
        CHECK(matrix.campaign_means.at("t") == doctest::Approx(0.15).epsilon(1e-12));
        CHECK(matrix.engine_means.at("chatgpt") == doctest::Approx(0.3).epsilon(1e-12));
    }
    SUBCASE("groups without citations have no cell") {
        FilteredDataset ds;
        ds.records.push_back(cite("t", "chatgpt", {}));
        GiniMatrix matrix = gini_matrix(ds);
        CHECK(matrix.defined_cells == 0);
        CHECK(matrix.cells.empty());
    }
}
