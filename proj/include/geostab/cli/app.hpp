// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <iosfwd>

namespace geostab {

// Entry point behind the geostab binary, callable in-process for tests.
// Exit codes: 0 success, 1 completed with warnings, 2 fatal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace geostab
