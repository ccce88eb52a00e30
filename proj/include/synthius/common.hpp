#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace synthius {

using json = nlohmann::json;

enum class ErrorKind {
    parse,             // malformed input documents
    validation,        // a fact or record violates its schema
    scope,             // wrong person / cross-persona access
    not_found,         // unknown persona, fact id, or version
    version_conflict,  // stale changeset
    non_queryable,     // style domain requested through the query path
    io,                // filesystem problems
    config,            // bad application configuration
    port,              // an external model port failed
    contract,          // caller broke an operation precondition
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::validation: return "validation";
        case ErrorKind::scope: return "scope";
        case ErrorKind::not_found: return "not_found";
        case ErrorKind::version_conflict: return "version_conflict";
        case ErrorKind::non_queryable: return "non_queryable";
        case ErrorKind::io: return "io";
        case ErrorKind::config: return "config";
        case ErrorKind::port: return "port";
        case ErrorKind::contract: return "contract";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace synthius
