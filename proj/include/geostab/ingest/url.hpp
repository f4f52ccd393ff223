// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace geostab {

// Reduces a citation URL to its registrable host: lower-cased, scheme, port,
// path, query and a single leading "www." stripped. Subdomains are kept
// ("images.openai.com" stays distinct from "openai.com"). Returns nullopt for
// strings without a parsable host.
std::optional<std::string> normalize_url(std::string_view url);

} // namespace geostab
