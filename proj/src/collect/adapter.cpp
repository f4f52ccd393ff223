// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/collect/adapter.hpp"

#include "geostab/ingest/log_io.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace geostab {

CollectionPlan CollectionPlan::from_json_text(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    CollectionPlan plan;
    for (const auto& e : j.at("engines")) plan.engines.push_back(EngineId::parse(e.get<std::string>()));
    plan.reps_per_prompt = j.value("reps_per_prompt", 10);
    if (plan.reps_per_prompt < 1) throw std::runtime_error("plan: reps_per_prompt must be >= 1");
    plan.inter_call_delay = std::chrono::milliseconds{j.value("inter_call_delay_ms", 0)};
    if (plan.inter_call_delay.count() < 0) throw std::runtime_error("plan: negative delay");
    plan.max_retries = j.value("max_retries", 2);
    if (j.contains("virtual_start")) {
        auto t = parse_instant(j.at("virtual_start").get<std::string>());
        if (!t) throw std::runtime_error("plan: bad virtual_start");
        plan.virtual_start = *t;
    }
    plan.virtual_step = std::chrono::seconds{j.value("virtual_step_seconds", 30)};
    for (const auto& block : j.at("campaigns")) {
        CampaignId campaign = CampaignId::of(block.at("campaign").get<std::string>());
        int index = 0;
        for (const auto& p : block.at("prompts")) {
            PromptId prompt;
            prompt.campaign = campaign;
            prompt.index = ++index;
            prompt.text = p.get<std::string>();
            if (prompt.text.empty()) throw std::runtime_error("plan: empty prompt text");
            plan.prompts.push_back(std::move(prompt));
        }
    }
    if (plan.prompts.empty()) throw std::runtime_error("plan: no prompts");
    if (plan.engines.empty()) throw std::runtime_error("plan: no engines");
    return plan;
}

CollectionPlan CollectionPlan::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

CollectClock make_virtual_clock(const CollectionPlan& plan) {
    auto now = std::make_shared<Instant>(plan.virtual_start);
    auto step = plan.virtual_step;
    return [now, step]() {
        Instant t = *now;
        *now += step;
        return t;
    };
}

CollectClock make_system_clock() {
    return [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

CollectionSummary run_plan(const CollectionPlan& plan,
                           const std::map<std::string, std::shared_ptr<EngineAdapter>>& adapters,
                           std::ostream& sink, const CollectClock& clock) {
    for (const auto& engine : plan.engines) {
        if (!adapters.count(engine.label()))
            throw std::invalid_argument("no adapter for engine " + engine.label());
    }

    CollectionSummary summary;
    for (const auto& engine : plan.engines) {
        EngineAdapter& adapter = *adapters.at(engine.label());
        auto& stats = summary.per_engine[engine.label()];
        bool first_call = true;
        for (const auto& prompt : plan.prompts) {
            for (int rep = 1; rep <= plan.reps_per_prompt; ++rep) {
                if (!first_call && plan.inter_call_delay.count() > 0)
                    std::this_thread::sleep_for(plan.inter_call_delay);
                first_call = false;

                FetchOutcome outcome;
                int attempts = 0;
                for (; attempts <= plan.max_retries; ++attempts) {
                    outcome = adapter.fetch(prompt.text, plan.locale);
                    if (outcome.ok()) break;
                }
                if (!outcome.ok()) {
                    ++stats.failures;
                    summary.failure_log.push_back(
                        "engine=" + engine.label() + " campaign=" + prompt.campaign.name +
                        " prompt=" + std::to_string(prompt.index) + " rep=" + std::to_string(rep) +
                        " attempts=" + std::to_string(attempts) + " error=" + outcome.error);
                    continue;
                }
                ResponseRecord record;
                record.engine = engine;
                record.prompt = prompt;
                record.timestamp = clock();
                record.run_index = rep;
                record.answer_text = std::move(outcome.response->answer_text);
                record.citations = std::move(outcome.response->citations);
                sink << format_record_line(record) << '\n';
                if (!sink) throw std::runtime_error("record sink write failed");
                ++stats.successes;
                ++summary.records_written;
            }
        }
    }
    sink.flush();
    if (!sink) throw std::runtime_error("record sink flush failed");
    return summary;
}

} // namespace geostab
