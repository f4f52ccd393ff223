// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace geostab {

// Line-delimited record schema. One JSON object per line with keys:
//   engine, campaign, prompt_index, prompt_text, timestamp (RFC 3339),
//   run_index (optional), answer_text, citations (array of URL strings,
//   emission order).

struct LineError {
    size_t line = 0; // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<ResponseRecord> records;       // file order
    std::vector<LineError> errors;             // malformed lines, not silently dropped
    std::vector<size_t> missing_run_index;     // indices into records
};

// Parses a UTF-8 line-delimited stream. Blank lines are skipped; every other
// line yields either a record or a LineError.
ParseResult parse_log(std::istream& in);

// Serializes one record as a single JSON line (no trailing newline).
// parse_record_line(format_record_line(r)) reproduces r exactly.
std::string format_record_line(const ResponseRecord& record);

// Assigns run_index by timestamp order within (engine, prompt, calendar day)
// to the records listed in missing_run_index, continuing after the highest
// explicit run_index of the same group.
void assign_run_indices(ParseResult& result);

} // namespace geostab
