#pragma once

#include <string>
#include <vector>

#include "synthius/consolidation/dates.hpp"
#include "synthius/persona/fact.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Normalized duplicate-candidate key. Equal keys identify duplicates; equal
// (domain, upper_category, subject, predicate) with a differing object is a
// conflict in domains where a key can hold only one current value.
struct FactKey {
    Domain domain = Domain::biography;
    std::string upper_category;
    std::string subject;
    std::string predicate;
    std::string object;

    auto operator<=>(const FactKey&) const = default;

    bool conflicts_with(const FactKey& other) const {
        return domain == other.domain && upper_category == other.upper_category &&
               subject == other.subject && predicate == other.predicate && object != other.object;
    }
};

// Domains where one (subject, predicate) holds a single current value.
inline bool has_conflict_semantics(Domain d) {
    return d == Domain::biography || d == Domain::preferences || d == Domain::social ||
           d == Domain::work;
}

namespace detail {

// Case-folded, stemmed token join; function words survive so predicate
// boundaries stay visible.
inline std::string normalize_phrase(std::string_view text) {
    std::string out;
    scan_tokens(text, [&](std::string_view tok) {
        std::string norm;
        for (char ch : tok) {
            const auto c = static_cast<unsigned char>(ch);
            if (std::isalnum(c) || c >= 0x80) norm += static_cast<char>(std::tolower(c));
        }
        if (norm.empty()) return;
        norm = stem(std::move(norm));
        if (!out.empty()) out += ' ';
        out += norm;
    });
    return out;
}

// Tokens arrive stemmed ("were" -> "wer", "have" -> "hav").
inline bool is_function_word(const std::string& tok) {
    static const std::set<std::string> words = {"in", "at",  "on",  "to",  "from", "of",  "as",
                                                "with", "for", "by",  "near", "a",   "an",  "the",
                                                "is",  "are", "was", "wer", "has",  "hav", "had",
                                                "my"};
    return words.count(tok) > 0;
}

// Split a normalized statement at its first function-word run:
// "liv in boston" -> ("liv in", "boston").
inline std::pair<std::string, std::string> split_statement(const std::string& normalized) {
    std::vector<std::string> toks;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        auto sp = normalized.find(' ', pos);
        if (sp == std::string::npos) sp = normalized.size();
        toks.push_back(normalized.substr(pos, sp - pos));
        pos = sp + 1;
    }
    std::size_t split = toks.size();
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (is_function_word(toks[i])) {
            split = i + 1;
            while (split < toks.size() && is_function_word(toks[split])) ++split;
            break;
        }
    }
    if (split >= toks.size()) {
        // No function word: first token is the predicate head.
        split = toks.size() > 1 ? 1 : toks.size();
    }
    std::string predicate, object;
    for (std::size_t i = 0; i < split; ++i) {
        if (!predicate.empty()) predicate += ' ';
        predicate += toks[i];
    }
    for (std::size_t i = split; i < toks.size(); ++i) {
        if (!object.empty()) object += ' ';
        object += toks[i];
    }
    return {predicate, object};
}

inline std::string canonical_person_name(const PersonModel& p) {
    std::string best = normalize_phrase(p.name);
    for (const auto& a : p.aliases) {
        const std::string n = normalize_phrase(a);
        if (!n.empty() && (best.empty() || n < best)) best = n;
    }
    return best;
}

}  // namespace detail

inline FactKey fact_key(const DomainFact& fact) {
    const FactCore& c = core(fact);
    FactKey key;
    key.domain = c.domain;
    key.upper_category = to_lower(c.upper_category);
    key.subject = to_lower(c.person_id);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                auto [pred, obj] = detail::split_statement(detail::normalize_phrase(v.statement));
                key.predicate = pred;
                if (auto date = canonicalize_date(obj))
                    key.object = *date;
                else
                    key.object = obj;
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                key.predicate = "pref " + detail::normalize_phrase(v.target);
                key.object = to_string(v.polarity);
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                key.predicate = "person " + detail::canonical_person_name(v);
                key.object = detail::normalize_phrase(v.relationship_role);
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                key.predicate = "work " + detail::normalize_phrase(v.organization);
                key.object = detail::normalize_phrase(v.role);
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                key.predicate = "exp " + detail::normalize_phrase(v.title);
                key.object = v.time_anchor ? canonicalize_date(*v.time_anchor).value_or(*v.time_anchor) : "";
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                key.predicate = "psy " + std::string(to_string(v.framework));
            } else if constexpr (std::is_same_v<T, StyleFingerprint>) {
                key.predicate = "style";
            }
        },
        fact);
    return key;
}

// Text used for near-duplicate Jaccard comparison within a category. The
// value-bearing parts are included, so facts asserting different values stay
// dissimilar and fall through to conflict resolution instead of merging.
inline std::string similarity_text(const DomainFact& fact) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                return detail::normalize_phrase(v.statement);
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                return detail::normalize_phrase(v.target) + " " + to_string(v.polarity);
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                return detail::canonical_person_name(v) + " " +
                       detail::normalize_phrase(v.relationship_role);
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                return detail::normalize_phrase(v.organization) + " " +
                       detail::normalize_phrase(v.role);
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                return detail::normalize_phrase(v.title) + " " + v.time_anchor.value_or("");
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                return std::string(to_string(v.framework));
            } else {
                return "style";
            }
        },
        fact);
}

}  // namespace synthius
