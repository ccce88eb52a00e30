#pragma once

#include <cstdio>
#include <string>

#include "synthius/persona/fact.hpp"

namespace synthius {

// Deterministic one-line rendering of a fact, shared by the reference answer
// port and the reference narrative builder.
inline std::string render_fact(const DomainFact& fact) {
    const FactCore& c = core(fact);
    const std::string& person = c.person_id;
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                std::string out = person + " " + v.statement;
                if (v.time_anchor) out += " (" + *v.time_anchor + ")";
                return out;
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                std::string out = person;
                if (!v.organization.empty()) {
                    out += " works at " + v.organization;
                    if (!v.role.empty()) out += " as a " + v.role;
                } else {
                    out += " is a " + v.role;
                }
                if (v.start) out += " (since " + *v.start + ")";
                return out;
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                const char* verb = "";
                switch (v.polarity) {
                    case Polarity::positive:
                        verb = v.temporal_status == TemporalStatus::past ? "used to like"
                               : v.temporal_status == TemporalStatus::aspirational ? "wants to try"
                                                                                   : "likes";
                        break;
                    case Polarity::negative:
                        verb = v.temporal_status == TemporalStatus::past ? "used to dislike"
                                                                         : "dislikes";
                        break;
                    case Polarity::ambivalent: verb = "is ambivalent about"; break;
                }
                std::string out = person + " " + verb + " " + v.target;
                if (!v.original_phrasing.empty()) out += " (\"" + v.original_phrasing + "\")";
                return out;
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                std::string out = v.name;
                if (!v.relationship_role.empty()) out += " is " + person + "'s " + v.relationship_role;
                for (const auto& e : v.relationship_events) {
                    out += "; " + e.description;
                    if (e.time_anchor) out += " (" + *e.time_anchor + ")";
                }
                return out;
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                std::string out = person + ": " + v.title;
                if (v.time_anchor) out += " (" + *v.time_anchor + ")";
                if (!v.narrative.empty() && v.narrative != v.title) out += " — \"" + v.narrative + "\"";
                return out;
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                std::string out = person + " " + to_string(v.framework) + " profile:";
                bool first = true;
                for (const auto& [dim, score] : v.dimension_scores) {
                    char buf[16];
                    std::snprintf(buf, sizeof(buf), "%.2f", score);
                    out += std::string(first ? " " : ", ") + dim + " " + buf;
                    first = false;
                }
                return out;
            } else {
                return person + " style fingerprint";
            }
        },
        fact);
}

}  // namespace synthius
