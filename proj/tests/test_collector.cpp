// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "doctest.h"

#include "geostab/brands/detect.hpp"
#include "geostab/collect/http_adapter.hpp"
#include "geostab/collect/simulator.hpp"
#include "geostab/core/validate.hpp"
#include "geostab/ingest/log_io.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

using namespace geostab;

namespace {

SimulatedEngineConfig demo_config() {
    SimulatedEngineConfig cfg;
    cfg.seed = 7;
    cfg.domain_pool = {{"a.ch", 5.0}, {"b.ch", 3.0}, {"c.ch", 1.0}, {"d.ch", 1.0}};
    cfg.brand_pool = {{"Always", 1.0}, {"Sometimes", 0.6}, {"Never", 0.0}};
    cfg.citations_min = 1;
    cfg.citations_max = 3;
    return cfg;
}

CollectionPlan demo_plan(int prompts, int reps) {
    CollectionPlan plan;
    plan.engines = {EngineId::parse("simulated")};
    plan.reps_per_prompt = reps;
    for (int i = 1; i <= prompts; ++i) {
        PromptId p;
        p.campaign = CampaignId::of("camp");
        p.index = i;
        p.text = "prompt number " + std::to_string(i);
        plan.prompts.push_back(std::move(p));
    }
    return plan;
}

struct FailingAdapter : EngineAdapter {
    int calls = 0;
    FetchOutcome fetch(const std::string&, const LocaleHints&) override {
        ++calls;
        return FetchOutcome::failure("always down");
    }
};

} // namespace

TEST_CASE("simulate_response is deterministic and honors probabilities") {
    SimulatedEngineConfig cfg = demo_config();
    PromptId prompt;
    prompt.campaign = CampaignId::of("camp");
    prompt.index = 1;
    prompt.text = "beste anbieter?";

    SUBCASE("identical inputs give identical bytes") {
        auto a = simulate_response(cfg, prompt, 3);
        auto b = simulate_response(cfg, prompt, 3);
        CHECK(a.answer_text == b.answer_text);
        CHECK(a.citations == b.citations);
        auto c = simulate_response(cfg, prompt, 4);
        CHECK((a.answer_text != c.answer_text || a.citations != c.citations));
    }
    SUBCASE("p=1 brand always present, p=0 never") {
        for (int draw = 1; draw <= 50; ++draw) {
            auto r = simulate_response(cfg, prompt, draw);
            CHECK(r.answer_text.find("Always") != std::string::npos);
            CHECK(r.answer_text.find("Never") == std::string::npos);
        }
    }
    SUBCASE("citation counts stay in range, domains distinct") {
        for (int draw = 1; draw <= 50; ++draw) {
            auto r = simulate_response(cfg, prompt, draw);
            CHECK(r.citations.size() >= 1);
            CHECK(r.citations.size() <= 3);
            std::set<std::string> unique(r.citations.begin(), r.citations.end());
            CHECK(unique.size() == r.citations.size());
        }
    }
    SUBCASE("p=0.6 brand appears at roughly its rate") {
        int hits = 0;
        const int draws = 500;
        for (int draw = 1; draw <= draws; ++draw) {
            auto r = simulate_response(cfg, prompt, draw);
            if (r.answer_text.find("Sometimes") != std::string::npos) ++hits;
        }
        double rate = static_cast<double>(hits) / draws;
        CHECK(std::abs(rate - 0.6) < 0.07); // binomial 3-sigma is about 0.066
    }
    SUBCASE("domain frequencies follow the weights") {
        std::map<std::string, int> first_pick;
        const int draws = 1000;
        for (int draw = 1; draw <= draws; ++draw) {
            auto r = simulate_response(cfg, prompt, draw);
            REQUIRE(!r.citations.empty());
            ++first_pick[r.citations[0]];
        }
        // first pick of a.ch has probability 0.5; 3 sigma ~ 0.047
        double a_rate = first_pick["https://a.ch/"] / static_cast<double>(draws);
        CHECK(std::abs(a_rate - 0.5) < 0.05);
    }
}

TEST_CASE("run_plan produces plan-shaped datasets") {
    SUBCASE("2 prompts x 1 engine x 3 reps gives 6 records") {
        CollectionPlan plan = demo_plan(2, 3);
        std::map<std::string, std::shared_ptr<EngineAdapter>> adapters{
            {"simulated", std::make_shared<SimulatedEngineAdapter>(demo_config())}};
        std::ostringstream sink;
        auto summary = run_plan(plan, adapters, sink, make_virtual_clock(plan));
        CHECK(summary.records_written == 6);
        CHECK(summary.per_engine.at("simulated").successes == 6);

        std::istringstream in(sink.str());
        auto parsed = parse_log(in);
        CHECK(parsed.records.size() == 6);
        CHECK(parsed.errors.empty());

        RecordValidator validator;
        for (const auto& r : parsed.records) CHECK(validator.validate(r).valid());
    }
    SUBCASE("failures retried max_retries times then logged") {
        CollectionPlan plan = demo_plan(2, 1);
        plan.max_retries = 2;
        auto failing = std::make_shared<FailingAdapter>();
        std::map<std::string, std::shared_ptr<EngineAdapter>> adapters{{"simulated", failing}};
        std::ostringstream sink;
        auto summary = run_plan(plan, adapters, sink, make_virtual_clock(plan));
        CHECK(summary.records_written == 0);
        CHECK(summary.per_engine.at("simulated").failures == 2);
        CHECK(failing->calls == 6); // 2 prompts x 3 attempts
        REQUIRE(summary.failure_log.size() == 2);
        CHECK(summary.failure_log[0].find("attempts=3") != std::string::npos);
    }
    SUBCASE("missing adapter is a programmer error") {
        CollectionPlan plan = demo_plan(1, 1);
        std::ostringstream sink;
        CHECK_THROWS_AS(run_plan(plan, {}, sink, make_virtual_clock(plan)), std::invalid_argument);
    }
    SUBCASE("virtual clock steps deterministically") {
        CollectionPlan plan = demo_plan(1, 2);
        std::map<std::string, std::shared_ptr<EngineAdapter>> adapters{
            {"simulated", std::make_shared<SimulatedEngineAdapter>(demo_config())}};
        std::ostringstream sink_a, sink_b;
        run_plan(plan, adapters, sink_a, make_virtual_clock(plan));
        adapters["simulated"] = std::make_shared<SimulatedEngineAdapter>(demo_config());
        run_plan(plan, adapters, sink_b, make_virtual_clock(plan));
        CHECK(sink_a.str() == sink_b.str());
    }
}

TEST_CASE("pipeline recovers the simulator's brand probability") {
    CollectionPlan plan = demo_plan(1, 500);
    std::map<std::string, std::shared_ptr<EngineAdapter>> adapters{
        {"simulated", std::make_shared<SimulatedEngineAdapter>(demo_config())}};
    std::ostringstream sink;
    run_plan(plan, adapters, sink, make_virtual_clock(plan));

    std::istringstream in(sink.str());
    auto parsed = parse_log(in);
    REQUIRE(parsed.records.size() == 500);

    BrandLexicon lex(CampaignId::of("camp"));
    lex.add_brand("Always", {"always"});
    lex.add_brand("Sometimes", {"sometimes"});
    lex.add_brand("Never", {"never"});

    int always = 0, sometimes = 0, never = 0;
    for (const auto& r : parsed.records) {
        auto d = detect_brands(r.answer_text, lex);
        auto set = d.brands_set();
        if (set.contains("Always")) ++always;
        if (set.contains("Sometimes")) ++sometimes;
        if (set.contains("Never")) ++never;
    }
    CHECK(always == 500);
    CHECK(never == 0);
    CHECK(std::abs(sometimes / 500.0 - 0.6) < 0.07);
}

TEST_CASE("http loopback adapter speaks the wire format") {
    httplib::Server server;
    server.Post("/v1/answer", [](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        nlohmann::json reply;
        reply["answer_text"] = "echo: " + body.at("prompt").get<std::string>();
        reply["citations"] = {"https://echo.ch/" + body.at("region").get<std::string>()};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpEngineAdapter adapter("127.0.0.1", port);
    LocaleHints hints;
    auto outcome = adapter.fetch("hallo", hints);
    REQUIRE(outcome.ok());
    CHECK(outcome.response->answer_text == "echo: hallo");
    REQUIRE(outcome.response->citations.size() == 1);
    CHECK(outcome.response->citations[0] == "https://echo.ch/CH");

    SUBCASE("run_plan over the loopback adapter") {
        CollectionPlan plan = demo_plan(2, 2);
        std::map<std::string, std::shared_ptr<EngineAdapter>> adapters{
            {"simulated", std::make_shared<HttpEngineAdapter>("127.0.0.1", port)}};
        std::ostringstream sink;
        auto summary = run_plan(plan, adapters, sink, make_virtual_clock(plan));
        CHECK(summary.records_written == 4);
        std::istringstream in(sink.str());
        CHECK(parse_log(in).records.size() == 4);
    }

    server.stop();
    server_thread.join();

    SUBCASE("unreachable endpoint is a recoverable failure") {
        HttpEngineAdapter dead("127.0.0.1", 1);
        auto failed = dead.fetch("x", hints);
        CHECK(!failed.ok());
        CHECK(!failed.error.empty());
    }
}
