// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/core/validate.hpp"

namespace geostab {

ValidationReport RecordValidator::validate(const ResponseRecord& record) {
    ValidationReport report;
    if (record.engine.label().empty()) report.violations.push_back("empty engine label");
    if (record.prompt.campaign.name.empty()) report.violations.push_back("empty campaign name");
    if (record.prompt.index < 1) report.violations.push_back("prompt index < 1");
    if (record.prompt.text.empty()) report.violations.push_back("empty prompt text");
    if (record.run_index < 1) report.violations.push_back("run_index < 1");

    Key key{record.engine.label(), record.prompt.campaign.name, record.prompt.index,
            record.timestamp, record.run_index};
    if (!seen_.insert(key).second)
        report.violations.push_back("duplicate (engine, prompt, timestamp, run_index)");
    return report;
}

} // namespace geostab
