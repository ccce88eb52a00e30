#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/persona/store.hpp"

namespace synthius {

namespace fs = std::filesystem;

inline constexpr int kStoreSchemaVersion = 1;

namespace detail {

inline void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << content;
    if (!out.good()) fail(ErrorKind::io, "short write to " + path.string());
}

inline std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot read " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

inline json read_json_file(const fs::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        fail(ErrorKind::io, path.filename().string() + ": " + e.what());
    }
}

}  // namespace detail

// Layout: one directory per persona; one JSON document per domain; changelog
// as an append-only JSON-lines file; manifest.json records versions.
inline void save_store(const PersonaStore& store, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create " + dir.string());

    json manifest = {{"schema_version", kStoreSchemaVersion},
                     {"person_id", store.person_id()},
                     {"version", store.version()},
                     {"next_fact_seq", store.next_fact_seq()}};
    detail::write_text_file(dir / "manifest.json", manifest.dump(2));

    const json snapshot = store.to_json();
    for (Domain d : kAllDomains) {
        json doc = {{"domain", to_string(d)}, {"facts", snapshot.at("facts").at(to_string(d))}};
        detail::write_text_file(dir / (std::string(to_string(d)) + ".json"), doc.dump(2));
    }
    detail::write_text_file(dir / "narrative.json", snapshot.at("narrative").dump(2));

    std::string changelog;
    for (const auto& cs : store.changelog()) changelog += to_json(cs).dump() + "\n";
    detail::write_text_file(dir / "changelog.jsonl", changelog);
}

inline PersonaStore load_store(const fs::path& dir) {
    if (!fs::exists(dir / "manifest.json"))
        fail(ErrorKind::io, "manifest.json missing in " + dir.string());
    const json manifest = detail::read_json_file(dir / "manifest.json");
    if (manifest.value("schema_version", 0) != kStoreSchemaVersion)
        fail(ErrorKind::io, "manifest.json: unsupported schema version");

    PersonaStore store(manifest.at("person_id").get<std::string>());
    std::vector<DomainFact> pending;
    for (Domain d : kAllDomains) {
        const fs::path path = dir / (std::string(to_string(d)) + ".json");
        if (!fs::exists(path)) fail(ErrorKind::io, path.filename().string() + " missing");
        const json doc = detail::read_json_file(path);
        for (const auto& jf : doc.at("facts")) pending.push_back(fact_from_json(jf));
    }
    // Multi-pass so experience children insert after their parents.
    while (!pending.empty()) {
        std::vector<DomainFact> deferred;
        for (auto& f : pending) {
            const auto* exp = std::get_if<ExperienceNode>(&f);
            if (exp && exp->parent_id && store.find_fact(*exp->parent_id) == nullptr)
                deferred.push_back(std::move(f));
            else
                store.insert_fact(std::move(f));
        }
        if (deferred.size() == pending.size())
            fail(ErrorKind::io, "experiences.json: unresolved parent links");
        pending = std::move(deferred);
    }

    const json narrative = detail::read_json_file(dir / "narrative.json");
    if (!narrative.is_null()) store.set_narrative(summary_from_json(narrative));

    const std::string changelog_text = detail::read_text_file(dir / "changelog.jsonl");
    std::size_t pos = 0, line_no = 0;
    while (pos < changelog_text.size()) {
        auto nl = changelog_text.find('\n', pos);
        if (nl == std::string::npos) nl = changelog_text.size();
        const std::string line = changelog_text.substr(pos, nl - pos);
        ++line_no;
        if (!trim(line).empty()) {
            try {
                store.commit_changeset(changeset_from_json(json::parse(line)));
            } catch (const json::parse_error& e) {
                fail(ErrorKind::io,
                     "changelog.jsonl line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        pos = nl + 1;
    }

    if (store.version() != manifest.value("version", std::int64_t{-1}))
        fail(ErrorKind::io, "changelog.jsonl is truncated: version mismatch with manifest.json");
    store.set_next_fact_seq(manifest.value("next_fact_seq", std::int64_t{1}));
    return store;
}

}  // namespace synthius
