// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/core/types.hpp"

namespace geostab {

std::string fold_case(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            out.push_back(static_cast<char>(c));
        } else if (c == 0xC3 && i + 1 < text.size()) {
            // Latin-1 supplement: U+00C0..U+00DE fold to +0x20, except U+00D7 (multiplication sign).
            unsigned char n = static_cast<unsigned char>(text[i + 1]);
            if (n >= 0x80 && n <= 0x9E && n != 0x97) n = static_cast<unsigned char>(n + 0x20);
            out.push_back(static_cast<char>(c));
            out.push_back(static_cast<char>(n));
            ++i;
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

namespace {

std::string canonical_engine_label(std::string_view label) {
    std::string s = fold_case(label);
    for (char& c : s)
        if (c == ' ' || c == '_') c = '-';
    return s;
}

} // namespace

EngineId EngineId::parse(std::string_view label) {
    EngineId id;
    id.label_ = canonical_engine_label(label);
    if (id.label_ == "chatgpt")
        id.kind_ = EngineKind::ChatGPT;
    else if (id.label_ == "gemini")
        id.kind_ = EngineKind::Gemini;
    else if (id.label_ == "google-ai-mode")
        id.kind_ = EngineKind::GoogleAIMode;
    else if (id.label_ == "perplexity")
        id.kind_ = EngineKind::Perplexity;
    else if (id.label_ == "simulated")
        id.kind_ = EngineKind::Simulated;
    else
        id.kind_ = EngineKind::Other;
    return id;
}

std::string EngineId::display() const {
    switch (kind_) {
    case EngineKind::ChatGPT: return "ChatGPT";
    case EngineKind::Gemini: return "Gemini";
    case EngineKind::GoogleAIMode: return "Google AI Mode";
    case EngineKind::Perplexity: return "Perplexity";
    case EngineKind::Simulated: return "Simulated";
    case EngineKind::Other: break;
    }
    return label_;
}

CampaignId CampaignId::of(std::string_view name) {
    CampaignId c;
    c.name = fold_case(name);
    c.display_name = c.name;
    return c;
}

std::string_view to_string(ExtractionKind kind) {
    return kind == ExtractionKind::Source ? "source" : "brand";
}

} // namespace geostab
