#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/persona/taxonomy.hpp"
#include "synthius/text.hpp"

namespace synthius {

enum class FactStatus { active, superseded };

inline const char* to_string(FactStatus s) {
    return s == FactStatus::active ? "active" : "superseded";
}

struct Provenance {
    std::string conversation_id;
    std::size_t chunk_index = 0;
    std::string message_id;

    auto operator<=>(const Provenance&) const = default;
};

struct FactCore {
    std::string fact_id;
    std::string person_id;
    Domain domain = Domain::biography;
    std::string upper_category;
    double confidence = 1.0;
    std::vector<Provenance> provenance;
    std::int64_t created_version = 0;
    FactStatus status = FactStatus::active;
    std::optional<std::string> superseded_by;

    bool operator==(const FactCore&) const = default;
};

struct BiographyFact {
    FactCore core;  // upper_category is the biography category (19-way taxonomy)
    std::string statement;  // one atomic subject-predicate-object assertion
    std::optional<std::string> time_anchor;

    bool operator==(const BiographyFact&) const = default;
};

struct Emotion {
    std::string label;
    double intensity = 0.0;

    bool operator==(const Emotion&) const = default;
};

struct ExperienceNode {
    FactCore core;
    std::optional<std::string> parent_id;
    std::string title;
    std::string narrative;
    std::vector<Emotion> emotions;
    std::optional<std::string> time_anchor;
    std::vector<std::string> participants;

    bool operator==(const ExperienceNode&) const = default;
};

enum class Polarity { positive, negative, ambivalent };
enum class TemporalStatus { current, past, aspirational };

inline const char* to_string(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::ambivalent: return "ambivalent";
    }
    return "positive";
}

inline Polarity polarity_from(const std::string& s) {
    if (s == "positive") return Polarity::positive;
    if (s == "negative") return Polarity::negative;
    if (s == "ambivalent") return Polarity::ambivalent;
    fail(ErrorKind::validation, "unknown polarity '" + s + "'");
}

inline const char* to_string(TemporalStatus t) {
    switch (t) {
        case TemporalStatus::current: return "current";
        case TemporalStatus::past: return "past";
        case TemporalStatus::aspirational: return "aspirational";
    }
    return "current";
}

inline TemporalStatus temporal_status_from(const std::string& s) {
    if (s == "current") return TemporalStatus::current;
    if (s == "past") return TemporalStatus::past;
    if (s == "aspirational") return TemporalStatus::aspirational;
    fail(ErrorKind::validation, "unknown temporal status '" + s + "'");
}

struct PreferenceFact {
    FactCore core;  // upper_category is the normalized preference target
    std::string target;
    Polarity polarity = Polarity::positive;
    double strength = 0.5;
    TemporalStatus temporal_status = TemporalStatus::current;
    std::string original_phrasing;  // verbatim span from a provenance message

    bool operator==(const PreferenceFact&) const = default;
};

struct RelationshipEvent {
    std::optional<std::string> time_anchor;
    std::string description;

    bool operator==(const RelationshipEvent&) const = default;
};

struct PersonModel {
    FactCore core;  // upper_category is the canonical (alias-resolved) name
    std::string name;
    std::vector<std::string> aliases;
    std::string relationship_role;
    double closeness = 0.5;
    double trust = 0.5;
    std::vector<RelationshipEvent> relationship_events;

    bool operator==(const PersonModel&) const = default;
};

struct WorkEngagement {
    FactCore core;  // upper_category is the normalized organization
    std::string organization;
    std::string role;
    std::optional<std::string> start;
    std::optional<std::string> end;
    std::vector<std::string> projects;
    std::vector<std::string> skills;
    std::vector<std::string> tools;
    std::vector<std::string> outcomes;

    bool operator==(const WorkEngagement&) const = default;
};

struct PsychometricProfile {
    FactCore core;  // upper_category is the framework name
    Framework framework = Framework::big_five;
    std::map<std::string, double> dimension_scores;
    std::vector<std::string> evidence_quotes;  // verbatim spans from provenance messages

    bool operator==(const PsychometricProfile&) const = default;
};

struct StyleFingerprint {
    FactCore core;  // never surfaced through the query path
    std::map<std::string, double> features;

    bool operator==(const StyleFingerprint&) const = default;
};

using DomainFact = std::variant<BiographyFact, ExperienceNode, PreferenceFact, PersonModel,
                                WorkEngagement, PsychometricProfile, StyleFingerprint>;

inline const FactCore& core(const DomainFact& f) {
    return std::visit([](const auto& v) -> const FactCore& { return v.core; }, f);
}

inline FactCore& core(DomainFact& f) {
    return std::visit([](auto& v) -> FactCore& { return v.core; }, f);
}

inline Domain domain_of(const DomainFact& f) { return core(f).domain; }

namespace detail {

inline void check_fraction(double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0))
        fail(ErrorKind::validation,
             std::string(field) + " must be within [0,1], got " + std::to_string(v));
}

}  // namespace detail

inline void validate_fact(const DomainFact& fact, bool require_provenance = true) {
    const FactCore& c = core(fact);
    if (c.person_id.empty()) fail(ErrorKind::validation, "person_id must be non-empty");
    detail::check_fraction(c.confidence, "confidence");
    if (require_provenance && c.provenance.empty())
        fail(ErrorKind::validation, "provenance must be non-empty for extracted facts");
    if (c.status == FactStatus::superseded && !c.superseded_by)
        fail(ErrorKind::validation, "superseded fact must carry a superseded_by link");

    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                if (c.domain != Domain::biography) fail(ErrorKind::validation, "domain must be biography");
                if (!is_biography_category(c.upper_category))
                    fail(ErrorKind::validation,
                         "category '" + c.upper_category + "' is not in the biography taxonomy");
                if (v.statement.empty()) fail(ErrorKind::validation, "statement must be non-empty");
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                if (c.domain != Domain::experiences) fail(ErrorKind::validation, "domain must be experiences");
                if (v.title.empty()) fail(ErrorKind::validation, "title must be non-empty");
                for (const auto& e : v.emotions) detail::check_fraction(e.intensity, "emotion intensity");
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                if (c.domain != Domain::preferences) fail(ErrorKind::validation, "domain must be preferences");
                if (v.target.empty()) fail(ErrorKind::validation, "target must be non-empty");
                detail::check_fraction(v.strength, "strength");
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                if (c.domain != Domain::social) fail(ErrorKind::validation, "domain must be social");
                if (v.name.empty()) fail(ErrorKind::validation, "name must be non-empty");
                detail::check_fraction(v.closeness, "closeness");
                detail::check_fraction(v.trust, "trust");
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                if (c.domain != Domain::work) fail(ErrorKind::validation, "domain must be work");
                if (v.organization.empty() && v.role.empty())
                    fail(ErrorKind::validation, "organization and role cannot both be empty");
                if (v.start && v.end && *v.end < *v.start)
                    fail(ErrorKind::validation, "end must not precede start");
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                if (c.domain != Domain::psychometrics)
                    fail(ErrorKind::validation, "domain must be psychometrics");
                const auto& dims = framework_dimensions(v.framework);
                for (const auto& [name, score] : v.dimension_scores) {
                    detail::check_fraction(score, "dimension score");
                    bool known = false;
                    for (const auto& d : dims) known = known || d == name;
                    if (!known)
                        fail(ErrorKind::validation,
                             "dimension '" + name + "' is not part of " + to_string(v.framework));
                }
            } else if constexpr (std::is_same_v<T, StyleFingerprint>) {
                if (c.domain != Domain::style) fail(ErrorKind::validation, "domain must be style");
            }
        },
        fact);
}

// --- JSON round-trip (flat object with a "domain" discriminator) ---

inline json to_json(const Provenance& p) {
    return {{"conversation_id", p.conversation_id},
            {"chunk_index", p.chunk_index},
            {"message_id", p.message_id}};
}

inline Provenance provenance_from_json(const json& j) {
    Provenance p;
    p.conversation_id = j.value("conversation_id", "");
    p.chunk_index = j.value("chunk_index", std::size_t{0});
    p.message_id = j.value("message_id", "");
    return p;
}

namespace detail {

inline json core_to_json(const FactCore& c) {
    json prov = json::array();
    for (const auto& p : c.provenance) prov.push_back(to_json(p));
    json j = {{"fact_id", c.fact_id},
              {"person_id", c.person_id},
              {"domain", to_string(c.domain)},
              {"upper_category", c.upper_category},
              {"confidence", c.confidence},
              {"provenance", prov},
              {"created_version", c.created_version},
              {"status", to_string(c.status)}};
    j["superseded_by"] = c.superseded_by ? json(*c.superseded_by) : json(nullptr);
    return j;
}

inline FactCore core_from_json(const json& j) {
    FactCore c;
    c.fact_id = j.value("fact_id", "");
    c.person_id = j.value("person_id", "");
    c.domain = domain_from(j.value("domain", "biography"));
    c.upper_category = j.value("upper_category", "");
    c.confidence = j.value("confidence", 1.0);
    if (j.contains("provenance"))
        for (const auto& p : j.at("provenance")) c.provenance.push_back(provenance_from_json(p));
    c.created_version = j.value("created_version", std::int64_t{0});
    c.status = j.value("status", std::string("active")) == "superseded" ? FactStatus::superseded
                                                                        : FactStatus::active;
    if (j.contains("superseded_by") && !j.at("superseded_by").is_null())
        c.superseded_by = j.at("superseded_by").get<std::string>();
    return c;
}

inline json opt_str(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<std::string> opt_str_from(const json& j, const char* key) {
    if (j.contains(key) && !j.at(key).is_null()) return j.at(key).get<std::string>();
    return std::nullopt;
}

}  // namespace detail

inline json to_json(const DomainFact& fact) {
    json j = detail::core_to_json(core(fact));
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                j["statement"] = v.statement;
                j["time_anchor"] = detail::opt_str(v.time_anchor);
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                j["parent_id"] = detail::opt_str(v.parent_id);
                j["title"] = v.title;
                j["narrative"] = v.narrative;
                json emotions = json::array();
                for (const auto& e : v.emotions)
                    emotions.push_back({{"label", e.label}, {"intensity", e.intensity}});
                j["emotions"] = emotions;
                j["time_anchor"] = detail::opt_str(v.time_anchor);
                j["participants"] = v.participants;
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                j["target"] = v.target;
                j["polarity"] = to_string(v.polarity);
                j["strength"] = v.strength;
                j["temporal_status"] = to_string(v.temporal_status);
                j["original_phrasing"] = v.original_phrasing;
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                j["name"] = v.name;
                j["aliases"] = v.aliases;
                j["relationship_role"] = v.relationship_role;
                j["closeness"] = v.closeness;
                j["trust"] = v.trust;
                json events = json::array();
                for (const auto& e : v.relationship_events)
                    events.push_back({{"time_anchor", detail::opt_str(e.time_anchor)},
                                      {"description", e.description}});
                j["relationship_events"] = events;
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                j["organization"] = v.organization;
                j["role"] = v.role;
                j["start"] = detail::opt_str(v.start);
                j["end"] = detail::opt_str(v.end);
                j["projects"] = v.projects;
                j["skills"] = v.skills;
                j["tools"] = v.tools;
                j["outcomes"] = v.outcomes;
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                j["framework"] = to_string(v.framework);
                j["dimension_scores"] = v.dimension_scores;
                j["evidence_quotes"] = v.evidence_quotes;
            } else if constexpr (std::is_same_v<T, StyleFingerprint>) {
                j["features"] = v.features;
            }
        },
        fact);
    return j;
}

inline DomainFact fact_from_json(const json& j) {
    const FactCore c = detail::core_from_json(j);
    auto strings = [&](const char* key) {
        std::vector<std::string> out;
        if (j.contains(key))
            for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
        return out;
    };
    switch (c.domain) {
        case Domain::biography: {
            BiographyFact f{c, j.value("statement", ""), detail::opt_str_from(j, "time_anchor")};
            return f;
        }
        case Domain::experiences: {
            ExperienceNode f;
            f.core = c;
            f.parent_id = detail::opt_str_from(j, "parent_id");
            f.title = j.value("title", "");
            f.narrative = j.value("narrative", "");
            if (j.contains("emotions"))
                for (const auto& e : j.at("emotions"))
                    f.emotions.push_back({e.value("label", ""), e.value("intensity", 0.0)});
            f.time_anchor = detail::opt_str_from(j, "time_anchor");
            f.participants = strings("participants");
            return f;
        }
        case Domain::preferences: {
            PreferenceFact f;
            f.core = c;
            f.target = j.value("target", "");
            f.polarity = polarity_from(j.value("polarity", "positive"));
            f.strength = j.value("strength", 0.5);
            f.temporal_status = temporal_status_from(j.value("temporal_status", "current"));
            f.original_phrasing = j.value("original_phrasing", "");
            return f;
        }
        case Domain::social: {
            PersonModel f;
            f.core = c;
            f.name = j.value("name", "");
            f.aliases = strings("aliases");
            f.relationship_role = j.value("relationship_role", "");
            f.closeness = j.value("closeness", 0.5);
            f.trust = j.value("trust", 0.5);
            if (j.contains("relationship_events"))
                for (const auto& e : j.at("relationship_events"))
                    f.relationship_events.push_back(
                        {detail::opt_str_from(e, "time_anchor"), e.value("description", "")});
            return f;
        }
        case Domain::work: {
            WorkEngagement f;
            f.core = c;
            f.organization = j.value("organization", "");
            f.role = j.value("role", "");
            f.start = detail::opt_str_from(j, "start");
            f.end = detail::opt_str_from(j, "end");
            f.projects = strings("projects");
            f.skills = strings("skills");
            f.tools = strings("tools");
            f.outcomes = strings("outcomes");
            return f;
        }
        case Domain::psychometrics: {
            PsychometricProfile f;
            f.core = c;
            f.framework = framework_from(j.value("framework", "big_five"));
            if (j.contains("dimension_scores"))
                f.dimension_scores = j.at("dimension_scores").get<std::map<std::string, double>>();
            f.evidence_quotes = strings("evidence_quotes");
            return f;
        }
        case Domain::style: {
            StyleFingerprint f;
            f.core = c;
            if (j.contains("features"))
                f.features = j.at("features").get<std::map<std::string, double>>();
            return f;
        }
    }
    fail(ErrorKind::validation, "unknown fact domain in JSON");
}

inline bool facts_equal(const DomainFact& a, const DomainFact& b) {
    return to_json(a) == to_json(b);
}

// Primary time anchor used for recency-based conflict resolution.
inline std::optional<std::string> anchor_of(const DomainFact& fact) {
    return std::visit(
        [](const auto& v) -> std::optional<std::string> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) return v.time_anchor;
            else if constexpr (std::is_same_v<T, ExperienceNode>) return v.time_anchor;
            else if constexpr (std::is_same_v<T, WorkEngagement>) return v.start;
            else return std::nullopt;
        },
        fact);
}

}  // namespace synthius
