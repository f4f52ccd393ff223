// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/core/time.hpp"

#include <cctype>
#include <cstdio>

namespace geostab {

namespace {

bool parse_fixed_uint(std::string_view s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (!std::isdigit(c)) return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

std::optional<Date> make_date(int y, int m, int d) {
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

} // namespace

std::optional<Date> parse_date(std::string_view text) {
    int y, m, d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!parse_fixed_uint(text, 0, 4, y) || !parse_fixed_uint(text, 5, 2, m) ||
        !parse_fixed_uint(text, 8, 2, d))
        return std::nullopt;
    return make_date(y, m, d);
}

std::optional<Instant> parse_instant(std::string_view text) {
    using namespace std::chrono;
    // date part
    if (text.size() < 19) return std::nullopt;
    auto date = parse_date(text.substr(0, 10));
    if (!date) return std::nullopt;
    char sep = text[10];
    if (sep != 'T' && sep != 't' && sep != ' ') return std::nullopt;
    int hh, mm, ss;
    if (text[13] != ':' || text[16] != ':') return std::nullopt;
    if (!parse_fixed_uint(text, 11, 2, hh) || !parse_fixed_uint(text, 14, 2, mm) ||
        !parse_fixed_uint(text, 17, 2, ss))
        return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    if (ss == 60) ss = 59; // clamp leap second

    size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos; // truncate fractional seconds
        size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }

    seconds offset{0};
    if (pos == text.size()) {
        // no zone designator: treat as UTC
    } else if ((text[pos] == 'Z' || text[pos] == 'z') && pos + 1 == text.size()) {
        // UTC
    } else if (text[pos] == '+' || text[pos] == '-') {
        int oh, om;
        if (pos + 6 != text.size() || text[pos + 3] != ':') return std::nullopt;
        if (!parse_fixed_uint(text, pos + 1, 2, oh) || !parse_fixed_uint(text, pos + 4, 2, om))
            return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset = hours{oh} + minutes{om};
        if (text[pos] == '-') offset = -offset;
    } else {
        return std::nullopt;
    }

    Instant utc = *date + hours{hh} + minutes{mm} + seconds{ss} - offset;
    return utc;
}

std::string format_instant(Instant t) {
    using namespace std::chrono;
    Date d = to_date(t);
    year_month_day ymd{d};
    auto tod = t - d;
    auto h = duration_cast<hours>(tod);
    auto m = duration_cast<minutes>(tod - h);
    auto s = duration_cast<seconds>(tod - h - m);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), int(h.count()), int(m.count()),
                  int(s.count()));
    return buf;
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

} // namespace geostab
