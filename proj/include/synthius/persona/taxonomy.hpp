#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "synthius/common.hpp"

namespace synthius {

enum class Domain { biography, experiences, preferences, social, work, psychometrics, style };

inline constexpr std::array<Domain, 6> kQueryableDomains = {
    Domain::biography, Domain::experiences, Domain::preferences,
    Domain::social,    Domain::work,        Domain::psychometrics};

inline constexpr std::array<Domain, 7> kAllDomains = {
    Domain::biography, Domain::experiences, Domain::preferences, Domain::social,
    Domain::work,      Domain::psychometrics, Domain::style};

inline const char* to_string(Domain d) {
    switch (d) {
        case Domain::biography: return "biography";
        case Domain::experiences: return "experiences";
        case Domain::preferences: return "preferences";
        case Domain::social: return "social";
        case Domain::work: return "work";
        case Domain::psychometrics: return "psychometrics";
        case Domain::style: return "style";
    }
    return "biography";
}

inline Domain domain_from(const std::string& name) {
    for (Domain d : kAllDomains)
        if (name == to_string(d)) return d;
    fail(ErrorKind::validation, "unknown domain '" + name + "'");
}

inline bool is_queryable(Domain d) { return d != Domain::style; }

// Fixed upper-category taxonomy for biography facts.
inline const std::vector<std::string>& biography_categories() {
    static const std::vector<std::string> cats = {
        "identity",      "demographics", "education",   "employment_history",
        "family",        "romantic_relationships",      "health",
        "residence",     "finances",     "legal",       "languages",
        "skills",        "possessions",  "routines",    "goals",
        "beliefs",       "hobbies",      "life_events", "contact_info",
    };
    return cats;
}

inline bool is_biography_category(const std::string& c) {
    for (const auto& cat : biography_categories())
        if (cat == c) return true;
    return false;
}

enum class Framework {
    big_five,
    schwartz_values,
    panas,
    via_character_strengths,
    cognitive_ability,
    iri_empathy,
    moral_foundations,
    political_compass,
    kohlberg_moral_development,
};

inline const char* to_string(Framework f) {
    switch (f) {
        case Framework::big_five: return "big_five";
        case Framework::schwartz_values: return "schwartz_values";
        case Framework::panas: return "panas";
        case Framework::via_character_strengths: return "via_character_strengths";
        case Framework::cognitive_ability: return "cognitive_ability";
        case Framework::iri_empathy: return "iri_empathy";
        case Framework::moral_foundations: return "moral_foundations";
        case Framework::political_compass: return "political_compass";
        case Framework::kohlberg_moral_development: return "kohlberg_moral_development";
    }
    return "big_five";
}

inline Framework framework_from(const std::string& name) {
    static const std::array<Framework, 9> all = {
        Framework::big_five,          Framework::schwartz_values,
        Framework::panas,             Framework::via_character_strengths,
        Framework::cognitive_ability, Framework::iri_empathy,
        Framework::moral_foundations, Framework::political_compass,
        Framework::kohlberg_moral_development};
    for (Framework f : all)
        if (name == to_string(f)) return f;
    fail(ErrorKind::validation, "unknown psychometric framework '" + name + "'");
}

// Stable dimension sets per framework; profiles may score a subset but never
// a dimension outside the schema.
inline const std::vector<std::string>& framework_dimensions(Framework f) {
    static const std::map<Framework, std::vector<std::string>> dims = {
        {Framework::big_five,
         {"openness", "conscientiousness", "extraversion", "agreeableness", "neuroticism"}},
        {Framework::schwartz_values,
         {"self_direction", "stimulation", "hedonism", "achievement", "power", "security",
          "conformity", "tradition", "benevolence", "universalism"}},
        {Framework::panas, {"positive_affect", "negative_affect"}},
        {Framework::via_character_strengths,
         {"wisdom", "courage", "humanity", "justice", "temperance", "transcendence"}},
        {Framework::cognitive_ability,
         {"verbal_reasoning", "numerical_reasoning", "spatial_reasoning", "memory",
          "processing_speed"}},
        {Framework::iri_empathy,
         {"perspective_taking", "fantasy", "empathic_concern", "personal_distress"}},
        {Framework::moral_foundations,
         {"care", "fairness", "loyalty", "authority", "sanctity", "liberty"}},
        {Framework::political_compass, {"economic", "social"}},
        {Framework::kohlberg_moral_development,
         {"preconventional", "conventional", "postconventional"}},
    };
    return dims.at(f);
}

}  // namespace synthius
