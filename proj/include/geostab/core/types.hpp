// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/time.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace geostab {

// ASCII + Latin-1 supplement case folding, applied to every label and to
// answer text before substring matching. Multi-byte UTF-8 beyond U+00FF is
// passed through unchanged.
std::string fold_case(std::string_view text);

enum class EngineKind { ChatGPT, Gemini, GoogleAIMode, Perplexity, Simulated, Other };

// An engine label. Canonical labels are lower-case ("chatgpt", "gemini",
// "google-ai-mode", "perplexity", "simulated"); anything else is Other with
// its folded label preserved. "google-aio" is intentionally *not* an alias of
// GoogleAIMode: it is a distinct Google product and stays Other("google-aio").
class EngineId {
public:
    EngineId() = default;

    // Case-insensitive; spaces and underscores in the label are treated as '-'.
    static EngineId parse(std::string_view label);

    EngineKind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    // Human-readable name ("ChatGPT", "Google AI Mode", ...).
    std::string display() const;

    bool operator==(const EngineId& other) const { return label_ == other.label_; }
    auto operator<=>(const EngineId& other) const { return label_ <=> other.label_; }

private:
    EngineKind kind_ = EngineKind::Other;
    std::string label_;
};

struct CampaignId {
    std::string name;         // stable key, folded
    std::string display_name; // defaults to name

    static CampaignId of(std::string_view name);

    bool operator==(const CampaignId& other) const { return name == other.name; }
    auto operator<=>(const CampaignId& other) const { return name <=> other.name; }
};

struct PromptId {
    CampaignId campaign;
    int index = 1; // 1-based within the campaign
    std::string text;

    bool operator==(const PromptId& other) const {
        return campaign == other.campaign && index == other.index;
    }
    auto operator<=>(const PromptId& other) const {
        if (auto c = campaign <=> other.campaign; c != 0) return c;
        return index <=> other.index;
    }
};

// One engine answer to one prompt at one timestamp. Citations preserve the
// engine's emission order (position 1 = first cited) and hold raw URL strings.
struct ResponseRecord {
    EngineId engine;
    PromptId prompt;
    Instant timestamp{};
    int run_index = 1;
    std::string answer_text;
    std::vector<std::string> citations;
};

// Unordered view of the items (domains or canonical brands) of one record.
struct ItemSet {
    std::unordered_set<std::string> items;

    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
    bool contains(const std::string& s) const { return items.count(s) != 0; }
};

// Ordered-unique view; first occurrence keeps the earliest rank.
class RankedList {
public:
    RankedList() = default;
    explicit RankedList(std::vector<std::string> items) { for (auto& s : items) push_back(std::move(s)); }

    // No-op if the item is already present.
    void push_back(std::string item) {
        if (seen_.insert(item).second) items_.push_back(std::move(item));
    }

    const std::vector<std::string>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    size_t size() const { return items_.size(); }
    const std::string& operator[](size_t i) const { return items_[i]; }

    ItemSet to_set() const { return ItemSet{seen_}; }

private:
    std::vector<std::string> items_;
    std::unordered_set<std::string> seen_;
};

// Only the min-bound (non-extrapolated) variant exists; the enum reserves the
// switch for an extrapolated variant.
enum class RboVariant { MinBound };

struct RboParams {
    double p = 0.9; // persistence, in (0,1)
    RboVariant variant = RboVariant::MinBound;

    bool valid() const { return p > 0.0 && p < 1.0; }
};

// A similarity score in [0,1], or nullopt for a pair excluded under the
// both-empty policy. Excluded is never coerced to 0.
using SimilarityValue = std::optional<double>;

inline constexpr std::nullopt_t kExcluded = std::nullopt;

// Jaccard + RBO for one record pair. The two values are excluded together or
// defined together.
struct PairScore {
    SimilarityValue jaccard;
    SimilarityValue rbo;
    std::chrono::seconds delta_t{0};

    bool excluded() const { return !jaccard.has_value(); }
};

enum class ExtractionKind { Source, Brand };

std::string_view to_string(ExtractionKind kind);

// Identifies the population one pair belongs to. Pairs never cross campaigns,
// engines, or prompts.
struct GroupKey {
    CampaignId campaign;
    EngineId engine;
    int prompt_index = 1;
    ExtractionKind kind = ExtractionKind::Source;

    auto tie() const { return std::tie(campaign.name, engine.label(), prompt_index, kind); }
    bool operator==(const GroupKey& other) const { return tie() == other.tie(); }
    bool operator<(const GroupKey& other) const { return tie() < other.tie(); }
};

} // namespace geostab
