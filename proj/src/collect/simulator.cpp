// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/collect/simulator.hpp"

#include "geostab/convergence/rng.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geostab {

SimulatedEngineConfig SimulatedEngineConfig::from_json_text(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    SimulatedEngineConfig cfg;
    cfg.seed = j.value("seed", uint64_t{0});
    for (const auto& d : j.at("domain_pool"))
        cfg.domain_pool.push_back({d.at("domain").get<std::string>(), d.value("weight", 1.0)});
    if (j.contains("brand_pool")) {
        for (const auto& b : j.at("brand_pool"))
            cfg.brand_pool.push_back({b.at("brand").get<std::string>(), b.at("p").get<double>()});
    }
    if (j.contains("citations_per_answer")) {
        cfg.citations_min = j.at("citations_per_answer").value("min", 2);
        cfg.citations_max = j.at("citations_per_answer").value("max", 5);
    }
    cfg.answer_template = j.value("answer_template", cfg.answer_template);
    cfg.validate();
    return cfg;
}

SimulatedEngineConfig SimulatedEngineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open simulator config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void SimulatedEngineConfig::validate() const {
    if (domain_pool.empty()) throw std::runtime_error("simulator: empty domain pool");
    for (const auto& d : domain_pool)
        if (d.weight <= 0.0) throw std::runtime_error("simulator: non-positive weight for " + d.domain);
    for (const auto& b : brand_pool)
        if (b.p < 0.0 || b.p > 1.0) throw std::runtime_error("simulator: p out of [0,1] for " + b.brand);
    if (citations_min < 0 || citations_max < citations_min)
        throw std::runtime_error("simulator: bad citations_per_answer range");
}

EngineResponse simulate_response(const SimulatedEngineConfig& cfg, const PromptId& prompt,
                                 int draw_index) {
    SplitMix64 rng(derive_seed(cfg.seed, prompt.text + "|draw=" + std::to_string(draw_index)));

    EngineResponse response;

    // citation count, then weighted sampling without replacement
    int span = cfg.citations_max - cfg.citations_min + 1;
    int count = cfg.citations_min + static_cast<int>(rng.next_below(static_cast<uint64_t>(span)));
    count = std::min<int>(count, static_cast<int>(cfg.domain_pool.size()));

    std::vector<size_t> remaining(cfg.domain_pool.size());
    for (size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    for (int c = 0; c < count; ++c) {
        double total = 0.0;
        for (size_t i : remaining) total += cfg.domain_pool[i].weight;
        double r = rng.next_double() * total;
        size_t pick = remaining.size() - 1; // fallback for r landing on the total
        double acc = 0.0;
        for (size_t pos = 0; pos < remaining.size(); ++pos) {
            acc += cfg.domain_pool[remaining[pos]].weight;
            if (r < acc) {
                pick = pos;
                break;
            }
        }
        size_t chosen = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(pick));
        response.citations.push_back("https://" + cfg.domain_pool[chosen].domain + "/");
    }

    std::string brands;
    for (const auto& b : cfg.brand_pool) {
        if (rng.next_double() < b.p) {
            if (!brands.empty()) brands += ", ";
            brands += b.brand;
        }
    }
    std::string text = cfg.answer_template;
    size_t slot = text.find("{brands}");
    if (slot != std::string::npos) text.replace(slot, 8, brands);
    response.answer_text = std::move(text);
    return response;
}

SimulatedEngineAdapter::SimulatedEngineAdapter(SimulatedEngineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
}

FetchOutcome SimulatedEngineAdapter::fetch(const std::string& prompt_text, const LocaleHints&) {
    PromptId prompt;
    prompt.campaign = CampaignId::of("simulated");
    prompt.index = 1;
    prompt.text = prompt_text;
    int draw = ++draws_[prompt_text];
    return FetchOutcome::success(simulate_response(cfg_, prompt, draw));
}

} // namespace geostab
