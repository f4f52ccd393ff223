// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace geostab {

// All timestamps are UTC with second precision. Inputs carrying a numeric
// offset are converted to UTC on parse; fractional seconds are truncated.
using Instant = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// RFC 3339 timestamp, e.g. "2026-01-24T08:15:00Z" or "2026-01-24T09:15:00+01:00".
std::optional<Instant> parse_instant(std::string_view text);

// Calendar date "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);

std::string format_instant(Instant t);
std::string format_date(Date d);

inline Date to_date(Instant t) {
    return std::chrono::floor<std::chrono::days>(t);
}

} // namespace geostab
