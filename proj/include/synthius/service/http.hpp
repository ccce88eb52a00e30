#pragma once

#include <functional>
#include <string>

#include <httplib.h>

#include "synthius/service/commands.hpp"

namespace synthius {

inline int http_status_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse:
        case ErrorKind::validation:
        case ErrorKind::non_queryable:
        case ErrorKind::contract:
        case ErrorKind::config: return 400;
        case ErrorKind::scope: return 403;
        case ErrorKind::not_found: return 404;
        case ErrorKind::version_conflict: return 409;
        case ErrorKind::port: return 502;
        case ErrorKind::io: return 500;
    }
    return 500;
}

namespace detail {

inline void reply_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(2), "application/json");
}

template <typename Fn>
inline void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        reply_json(res, {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}},
                   http_status_for(e.kind()));
    } catch (const std::exception& e) {
        reply_json(res, {{"error", {{"kind", "internal"}, {"message", e.what()}}}}, 500);
    }
}

inline json parse_body(const httplib::Request& req) {
    try {
        return req.body.empty() ? json::object() : json::parse(req.body);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, std::string("request body: ") + e.what());
    }
}

}  // namespace detail

// Local JSON-over-HTTP service mirroring the CLI commands against the same
// PersonaManager. Single node, no authentication.
class HttpService {
public:
    explicit HttpService(PersonaManager& manager) : manager_(manager) { route(); }

    // Blocks until stop(); returns false when the port cannot be bound.
    bool listen(const std::string& host, int port) { return server_.listen(host, port); }

    bool bind_to_port(const std::string& host, int port) {
        return server_.bind_to_port(host, port);
    }
    bool listen_after_bind() { return server_.listen_after_bind(); }
    void stop() { server_.stop(); }
    bool is_running() const { return server_.is_running(); }
    void wait_until_ready() const { server_.wait_until_ready(); }

private:
    void route() {
        server_.Post(R"(/personas/([^/]+)/ingest)", [this](const httplib::Request& req,
                                                           httplib::Response& res) {
            detail::guarded(res, [&] {
                const json body = detail::parse_body(req);
                if (!body.contains("content") || !body.contains("format"))
                    fail(ErrorKind::parse, "ingest body needs {content, format}");
                detail::reply_json(res, cmd_ingest(manager_, req.matches[1].str(),
                                                   body.at("content").get<std::string>(),
                                                   body.at("format").get<std::string>()));
            });
        });

        server_.Post(R"(/personas/([^/]+)/query)", [this](const httplib::Request& req,
                                                          httplib::Response& res) {
            detail::guarded(res, [&] {
                const json body = detail::parse_body(req);
                if (!body.contains("question")) fail(ErrorKind::parse, "query body needs {question}");
                std::vector<std::string> domains;
                if (body.contains("domains"))
                    for (const auto& d : body.at("domains")) domains.push_back(d.get<std::string>());
                detail::reply_json(res, cmd_query(manager_, req.matches[1].str(),
                                                  body.at("question").get<std::string>(), domains));
            });
        });

        server_.Get(R"(/personas/([^/]+)/facts)", [this](const httplib::Request& req,
                                                         httplib::Response& res) {
            detail::guarded(res, [&] {
                const std::string domain = req.get_param_value("domain");
                if (domain.empty()) fail(ErrorKind::parse, "facts needs a ?domain= parameter");
                std::optional<std::string> category;
                if (req.has_param("category")) category = req.get_param_value("category");
                detail::reply_json(res, cmd_facts(manager_, req.matches[1].str(), domain, category));
            });
        });

        server_.Get(R"(/personas/([^/]+)/history)", [this](const httplib::Request& req,
                                                           httplib::Response& res) {
            detail::guarded(res,
                            [&] { detail::reply_json(res, cmd_history(manager_, req.matches[1].str())); });
        });

        server_.Post(R"(/personas/([^/]+)/rollback)", [this](const httplib::Request& req,
                                                             httplib::Response& res) {
            detail::guarded(res, [&] {
                const json body = detail::parse_body(req);
                if (!body.contains("to_version"))
                    fail(ErrorKind::parse, "rollback body needs {to_version}");
                detail::reply_json(res, cmd_rollback(manager_, req.matches[1].str(),
                                                     body.at("to_version").get<std::int64_t>()));
            });
        });

        server_.Get("/cost", [this](const httplib::Request& req, httplib::Response& res) {
            detail::guarded(res, [&] {
                std::vector<long> n_values = {500};
                if (req.has_param("n")) {
                    n_values.clear();
                    const std::string raw = req.get_param_value("n");
                    std::size_t pos = 0;
                    while (pos < raw.size()) {
                        auto comma = raw.find(',', pos);
                        if (comma == std::string::npos) comma = raw.size();
                        const std::string piece = trim(raw.substr(pos, comma - pos));
                        if (!piece.empty()) {
                            try {
                                n_values.push_back(std::stol(piece));
                            } catch (const std::exception&) {
                                fail(ErrorKind::parse, "bad N value '" + piece + "'");
                            }
                        }
                        pos = comma + 1;
                    }
                }
                detail::reply_json(res, cmd_cost(CostModelParams{}, Pricing{}, n_values, std::nullopt));
            });
        });
    }

    PersonaManager& manager_;
    httplib::Server server_;
};

}  // namespace synthius
