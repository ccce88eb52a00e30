#pragma once

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "synthius/common.hpp"

namespace synthius {

// One external-model port endpoint. kind "reference" selects the built-in
// deterministic implementation and needs no network configuration.
struct PortConfig {
    std::string kind = "reference";  // "reference" | "http"
    std::string base_url;            // e.g. http://localhost:9090
    std::string path = "/v1/complete";
    std::string model;
    std::string api_key_env;  // name of the env var holding the key
    int timeout_ms = 30000;

    bool is_reference() const { return kind == "reference"; }
};

inline void validate(const PortConfig& cfg, const std::string& name) {
    if (cfg.kind != "reference" && cfg.kind != "http")
        fail(ErrorKind::config, name + " port kind must be 'reference' or 'http'");
    if (cfg.kind == "http" && cfg.base_url.empty())
        fail(ErrorKind::config, name + " port needs a base_url");
}

// Shared wire protocol for every model-backed port:
// POST {prompt, schema, max_output_tokens} -> schema-shaped JSON response.
class HttpModelClient {
public:
    explicit HttpModelClient(PortConfig cfg) : cfg_(std::move(cfg)) {}

    json complete(const std::string& prompt, const json& schema, int max_output_tokens) const {
        json body = {{"prompt", prompt}, {"schema", schema}, {"max_output_tokens", max_output_tokens}};
        if (!cfg_.model.empty()) body["model"] = cfg_.model;

        httplib::Client client(cfg_.base_url);
        client.set_connection_timeout(0, cfg_.timeout_ms * 1000);
        client.set_read_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (!cfg_.api_key_env.empty()) {
            const char* key = std::getenv(cfg_.api_key_env.c_str());
            if (key == nullptr)
                fail(ErrorKind::config, "environment variable " + cfg_.api_key_env + " is not set");
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }

        auto res = client.Post(cfg_.path, headers, body.dump(), "application/json");
        if (!res) fail(ErrorKind::port, "model endpoint unreachable: " + cfg_.base_url);
        if (res->status != 200)
            fail(ErrorKind::port, "model endpoint returned HTTP " + std::to_string(res->status));
        try {
            return json::parse(res->body);
        } catch (const json::parse_error& e) {
            fail(ErrorKind::port, std::string("model response is not JSON: ") + e.what());
        }
    }

    const PortConfig& config() const { return cfg_; }

private:
    PortConfig cfg_;
};

}  // namespace synthius
