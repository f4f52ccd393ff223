// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/core/types.hpp"

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace geostab {

// Validation never throws; it reports. An empty report means the record is valid.
struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

// Checks one record at a time; remembers (engine, prompt, timestamp, run_index)
// keys so that the second of two identical records is reported as a duplicate.
class RecordValidator {
public:
    ValidationReport validate(const ResponseRecord& record);

private:
    using Key = std::tuple<std::string, std::string, int, Instant, int>;
    std::set<Key> seen_;
};

} // namespace geostab
