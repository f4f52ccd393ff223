// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>

namespace geostab {

// Shortest decimal form that round-trips the exact double (std::to_chars).
std::string fmt_double(double value);

// Fixed decimals, for table display and SVG coordinates.
std::string fmt_fixed(double value, int digits);

} // namespace geostab
