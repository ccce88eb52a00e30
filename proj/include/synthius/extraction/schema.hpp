#pragma once

#include <string>

#include <json.hpp>

#include "synthius/persona/taxonomy.hpp"

namespace synthius {

// Output-schema descriptors embedded in model-port requests. The canonical
// copies ship under assets/schemas/; these constants are the compiled-in
// fallback so reference-port runs never touch the filesystem.
inline json extraction_schema(Domain domain) {
    json fields;
    switch (domain) {
        case Domain::biography:
            fields = {{"category", "string: one of the 19 biography categories"},
                      {"statement", "string: atomic subject-predicate-object assertion"},
                      {"time_anchor", "string|null: ISO-8601 date prefix"}};
            break;
        case Domain::experiences:
            fields = {{"title", "string"},
                      {"narrative", "string"},
                      {"emotions", "array of {label, intensity in [0,1]}"},
                      {"time_anchor", "string|null"},
                      {"participants", "array of string"}};
            break;
        case Domain::preferences:
            fields = {{"target", "string"},
                      {"polarity", "positive|negative|ambivalent"},
                      {"strength", "number in [0,1]"},
                      {"temporal_status", "current|past|aspirational"},
                      {"original_phrasing", "string: verbatim span from the source message"}};
            break;
        case Domain::social:
            fields = {{"name", "string"},
                      {"aliases", "array of string"},
                      {"relationship_role", "string"},
                      {"closeness", "number in [0,1]"},
                      {"trust", "number in [0,1]"},
                      {"relationship_events", "array of {time_anchor, description}"}};
            break;
        case Domain::work:
            fields = {{"organization", "string"},
                      {"role", "string"},
                      {"start", "string|null"},
                      {"end", "string|null"},
                      {"projects", "array of string"},
                      {"skills", "array of string"},
                      {"tools", "array of string"},
                      {"outcomes", "array of string"}};
            break;
        case Domain::psychometrics:
            fields = {{"framework", "string: one of the nine framework names"},
                      {"dimension_scores", "object: dimension -> number in [0,1]"},
                      {"evidence_quotes", "array of verbatim spans"}};
            break;
        case Domain::style:
            fields = {{"features", "object: feature name -> number"}};
            break;
    }
    return {{"schema_version", 1},
            {"domain", to_string(domain)},
            {"fact_fields",
             {{"upper_category", "string"},
              {"confidence", "number in [0,1]"},
              {"salience", "number in [0,1]"},
              {"message_id", "string: id of the supporting message"}}},
            {"payload_fields", fields}};
}

inline std::string extraction_prompt(Domain domain, const std::string& person,
                                     const std::string& chunk_text) {
    std::string p;
    p += "Extract " + std::string(to_string(domain)) + " facts about " + person +
         " from the dialogue below.\n";
    p += "Only include statements made by " + person + " in the first person, or statements by "
         "others that explicitly name " + person + ".\n";
    p += "Respond with JSON: {\"facts\": [per-fact objects matching the schema]}. "
         "Report a salience score per fact; peripheral one-off mentions get low salience.\n\n";
    p += chunk_text;
    return p;
}

}  // namespace synthius
