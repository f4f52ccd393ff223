// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/types.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace geostab {

struct EngineResponse {
    std::string answer_text;
    std::vector<std::string> citations; // emission order
};

struct LocaleHints {
    std::string language = "de-CH";
    std::string region = "CH";
};

struct FetchOutcome {
    std::optional<EngineResponse> response;
    std::string error;

    bool ok() const { return response.has_value(); }
    static FetchOutcome success(EngineResponse r) { return {std::move(r), {}}; }
    static FetchOutcome failure(std::string message) { return {std::nullopt, std::move(message)}; }
};

// One AI-search engine behind a uniform contract. Adapters are stateless
// between calls or document their session state.
class EngineAdapter {
public:
    virtual ~EngineAdapter() = default;
    virtual FetchOutcome fetch(const std::string& prompt_text, const LocaleHints& hints) = 0;
};

struct CollectionPlan {
    std::vector<PromptId> prompts;
    std::vector<EngineId> engines;
    int reps_per_prompt = 10;
    std::chrono::milliseconds inter_call_delay{0};
    int max_retries = 2; // attempts = 1 + max_retries
    LocaleHints locale;

    // deterministic clock for reproducible datasets
    Instant virtual_start = parse_instant("2026-03-21T08:00:00Z").value();
    std::chrono::seconds virtual_step{30};

    // Plan document: engines, reps_per_prompt, inter_call_delay_ms, max_retries,
    // virtual_start, virtual_step_seconds, campaigns: [{campaign, prompts: [text...]}].
    static CollectionPlan from_json_text(const std::string& text);
    static CollectionPlan load(const std::string& path);
};

struct CollectionSummary {
    struct EngineStats {
        size_t successes = 0;
        size_t failures = 0;
    };
    std::map<std::string, EngineStats> per_engine;
    std::vector<std::string> failure_log;
    size_t records_written = 0;
};

using CollectClock = std::function<Instant()>;

// Advances plan.virtual_start by plan.virtual_step per call.
CollectClock make_virtual_clock(const CollectionPlan& plan);
CollectClock make_system_clock();

// Executes prompts x engines x reps against the adapters, appending one record
// line per success to the sink. Failed calls are retried up to max_retries
// times, then logged. Throws when an engine has no adapter or the sink fails.
CollectionSummary run_plan(const CollectionPlan& plan,
                           const std::map<std::string, std::shared_ptr<EngineAdapter>>& adapters,
                           std::ostream& sink, const CollectClock& clock);

} // namespace geostab
