// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/collect/adapter.hpp"

namespace geostab {

// Plain HTTP/1.1 transport for an engine endpoint. POSTs a JSON body
// {"prompt": ..., "language": ..., "region": ...} and expects a 200 response
// {"answer_text": ..., "citations": [...]}. Any transport or schema problem is
// a recoverable failure, never an exception.
class HttpEngineAdapter : public EngineAdapter {
public:
    HttpEngineAdapter(std::string host, int port, std::string path = "/v1/answer");

    FetchOutcome fetch(const std::string& prompt_text, const LocaleHints& hints) override;

private:
    std::string host_;
    int port_;
    std::string path_;
};

} // namespace geostab
