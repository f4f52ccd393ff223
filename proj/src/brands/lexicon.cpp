// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/brands/lexicon.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geostab {

void BrandLexicon::add_brand(const std::string& canonical, const std::vector<std::string>& patterns) {
    if (canonical.empty()) throw std::runtime_error("empty canonical brand name");
    std::string folded = fold_case(canonical);
    if (!folded_canonicals_.emplace(folded, canonical).second)
        throw std::runtime_error("duplicate canonical brand (case-folded): " + canonical);

    std::vector<std::string> folded_patterns;
    for (const auto& p : patterns) {
        std::string fp = fold_case(p);
        if (fp.empty()) throw std::runtime_error("empty pattern for brand " + canonical);
        auto [it, inserted] = pattern_owner_.emplace(fp, canonical);
        if (!inserted && it->second != canonical)
            throw std::runtime_error("pattern '" + fp + "' maps to both " + it->second + " and " + canonical);
        folded_patterns.push_back(std::move(fp));
    }
    if (folded_patterns.empty()) throw std::runtime_error("brand without patterns: " + canonical);
    brands_.emplace(canonical, std::move(folded_patterns));
}

std::map<std::string, BrandLexicon> parse_lexicons(const std::string& json_text) {
    using nlohmann::json;
    json j = json::parse(json_text);
    if (!j.is_object()) throw std::runtime_error("lexicon file: expected a JSON object");
    std::map<std::string, BrandLexicon> out;
    for (const auto& [campaign_name, entries] : j.items()) {
        BrandLexicon lex(CampaignId::of(campaign_name));
        for (const auto& entry : entries) {
            std::string canonical = entry.at("canonical").get<std::string>();
            std::vector<std::string> patterns;
            if (entry.contains("patterns")) {
                for (const auto& p : entry.at("patterns")) patterns.push_back(p.get<std::string>());
            }
            if (patterns.empty()) patterns.push_back(fold_case(canonical));
            lex.add_brand(canonical, patterns);
        }
        out.emplace(lex.campaign().name, std::move(lex));
    }
    return out;
}

std::map<std::string, BrandLexicon> load_lexicons(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lexicons(buf.str());
}

} // namespace geostab
