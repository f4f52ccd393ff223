// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/collect/http_adapter.hpp"

#include "httplib.h"
#include "json.hpp"

namespace geostab {

HttpEngineAdapter::HttpEngineAdapter(std::string host, int port, std::string path)
    : host_(std::move(host)), port_(port), path_(std::move(path)) {}

FetchOutcome HttpEngineAdapter::fetch(const std::string& prompt_text, const LocaleHints& hints) {
    nlohmann::json body;
    body["prompt"] = prompt_text;
    body["language"] = hints.language;
    body["region"] = hints.region;

    httplib::Client client(host_, port_);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res) return FetchOutcome::failure("transport: " + httplib::to_string(res.error()));
    if (res->status != 200)
        return FetchOutcome::failure("http status " + std::to_string(res->status));

    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("answer_text"))
        return FetchOutcome::failure("malformed response body");
    EngineResponse response;
    response.answer_text = j.at("answer_text").get<std::string>();
    if (j.contains("citations")) {
        for (const auto& c : j.at("citations")) response.citations.push_back(c.get<std::string>());
    }
    return FetchOutcome::success(std::move(response));
}

} // namespace geostab
