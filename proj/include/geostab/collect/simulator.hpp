// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/collect/adapter.hpp"

#include <cstdint>
#include <unordered_map>

namespace geostab {

// Seeded engine with known ground truth: domains drawn from a weighted pool,
// brands included independently with per-brand probability, mentioned via
// their canonical names so the lexicon always detects them.
struct SimulatedEngineConfig {
    uint64_t seed = 0;

    struct DomainWeight {
        std::string domain;
        double weight = 1.0;
    };
    std::vector<DomainWeight> domain_pool;

    struct BrandProb {
        std::string brand;
        double p = 0.0; // inclusion probability per answer
    };
    std::vector<BrandProb> brand_pool;

    int citations_min = 2;
    int citations_max = 5;
    std::string answer_template = "Recommended providers: {brands}. Details in the cited sources.";

    // Keys: seed, domain_pool: [{domain, weight}], brand_pool: [{brand, p}],
    // citations_per_answer: {min, max}, answer_template.
    static SimulatedEngineConfig from_json_text(const std::string& text);
    static SimulatedEngineConfig load(const std::string& path);

    void validate() const; // throws std::runtime_error on a bad pool/range
};

// Deterministic given (cfg.seed, prompt.text, draw_index): repeat calls with
// the same inputs produce identical bytes.
EngineResponse simulate_response(const SimulatedEngineConfig& cfg, const PromptId& prompt,
                                 int draw_index);

// Session state: a per-prompt-text draw counter, so consecutive fetches of the
// same prompt step through draw_index 1, 2, ...
class SimulatedEngineAdapter : public EngineAdapter {
public:
    explicit SimulatedEngineAdapter(SimulatedEngineConfig cfg);

    FetchOutcome fetch(const std::string& prompt_text, const LocaleHints& hints) override;

private:
    SimulatedEngineConfig cfg_;
    std::unordered_map<std::string, int> draws_;
};

} // namespace geostab
