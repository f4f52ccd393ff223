// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace geostab {

// Campaign-scoped mapping from lower-case search patterns to canonical brand
// names. Multiple patterns may map to one canonical brand; canonical names are
// unique per campaign after case-folding.
class BrandLexicon {
public:
    BrandLexicon() = default;
    explicit BrandLexicon(CampaignId campaign) : campaign_(std::move(campaign)) {}

    // Throws std::runtime_error on an empty pattern, a duplicate canonical
    // name (case-folded), or a pattern already bound to a different brand.
    void add_brand(const std::string& canonical, const std::vector<std::string>& patterns);

    const CampaignId& campaign() const { return campaign_; }
    const std::map<std::string, std::vector<std::string>>& brands() const { return brands_; }
    size_t brand_count() const { return brands_.size(); }

private:
    CampaignId campaign_;
    std::map<std::string, std::vector<std::string>> brands_; // canonical -> folded patterns
    std::map<std::string, std::string> pattern_owner_;       // folded pattern -> canonical
    std::map<std::string, std::string> folded_canonicals_;
};

// Lexicon file: JSON object mapping campaign -> list of {canonical, patterns[]}.
// A brand without "patterns" gets its folded canonical name as the single pattern.
std::map<std::string, BrandLexicon> parse_lexicons(const std::string& json_text);
std::map<std::string, BrandLexicon> load_lexicons(const std::string& path);

} // namespace geostab
