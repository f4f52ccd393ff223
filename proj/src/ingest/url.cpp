// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/ingest/url.hpp"

#include <cctype>

namespace geostab {

namespace {

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool valid_host(std::string_view host) {
    if (host.empty() || host.front() == '.' || host.back() == '.' || host.front() == '-')
        return false;
    bool has_dot = false;
    char prev = 0;
    for (char c : host) {
        if (c == '.') {
            if (prev == '.') return false;
            has_dot = true;
        } else if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
            return false;
        }
        prev = c;
    }
    return has_dot;
}

} // namespace

std::optional<std::string> normalize_url(std::string_view url) {
    // trim surrounding whitespace
    while (!url.empty() && std::isspace(static_cast<unsigned char>(url.front()))) url.remove_prefix(1);
    while (!url.empty() && std::isspace(static_cast<unsigned char>(url.back()))) url.remove_suffix(1);
    if (url.empty()) return std::nullopt;

    // strip "<scheme>://"
    size_t scheme_end = url.find("://");
    if (scheme_end != std::string_view::npos && scheme_end > 0) {
        bool ok = std::isalpha(static_cast<unsigned char>(url[0]));
        for (size_t i = 1; ok && i < scheme_end; ++i) ok = is_scheme_char(url[i]);
        if (ok) url.remove_prefix(scheme_end + 3);
    } else if (url.substr(0, 2) == "//") {
        url.remove_prefix(2); // protocol-relative
    }

    // authority ends at the first path/query/fragment delimiter
    size_t end = url.find_first_of("/?#");
    std::string_view authority = url.substr(0, end);

    // drop userinfo and port
    size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority.remove_prefix(at + 1);
    size_t colon = authority.find(':');
    if (colon != std::string_view::npos) authority = authority.substr(0, colon);

    std::string host;
    host.reserve(authority.size());
    for (char c : authority) host.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    if (host.rfind("www.", 0) == 0) host.erase(0, 4);
    if (!valid_host(host)) return std::nullopt;
    return host;
}

} // namespace geostab
