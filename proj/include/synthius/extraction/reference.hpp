#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "synthius/consolidation/dates.hpp"
#include "synthius/consolidation/fact_key.hpp"
#include "synthius/extraction/port.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Deterministic rule/lexicon extractor. It exists so the whole pipeline runs
// and is testable without any external model; the rule table is documented in
// docs/reference-extractor.md and mirrored by the fixture corpus.

namespace refextract {

struct Sentence {
    std::string text;  // verbatim slice of the message body
    const Message* message = nullptr;
};

inline std::vector<Sentence> split_sentences(const Message& m) {
    std::vector<Sentence> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= m.body.size(); ++i) {
        if (i == m.body.size() || m.body[i] == '.' || m.body[i] == '!' || m.body[i] == '?') {
            const std::string piece = trim(m.body.substr(start, i - start));
            if (!piece.empty()) out.push_back({piece, &m});
            start = i + 1;
        }
    }
    return out;
}

inline bool same_person(const std::string& a, const std::string& b) {
    return to_lower(a) == to_lower(b);
}

// PANAS affect lexicons.
inline const std::vector<std::string>& positive_affect_words() {
    static const std::vector<std::string> words = {"happy",    "excited",  "proud",  "glad",
                                                   "wonderful", "joyful",  "enthusiastic",
                                                   "inspired", "delighted", "cheerful"};
    return words;
}

inline const std::vector<std::string>& negative_affect_words() {
    static const std::vector<std::string> words = {"sad",     "upset",   "scared", "nervous",
                                                   "angry",   "afraid",  "ashamed", "guilty",
                                                   "irritable", "anxious"};
    return words;
}

struct RelationInfo {
    std::string group;  // family | romantic | friends | colleagues | other
    double closeness;
    double trust;
};

inline std::optional<RelationInfo> relation_info(const std::string& role_lower) {
    static const std::map<std::string, RelationInfo> table = {
        {"sister", {"family", 0.8, 0.8}},       {"brother", {"family", 0.8, 0.8}},
        {"mother", {"family", 0.9, 0.9}},       {"father", {"family", 0.9, 0.9}},
        {"mom", {"family", 0.9, 0.9}},          {"dad", {"family", 0.9, 0.9}},
        {"daughter", {"family", 0.9, 0.9}},     {"son", {"family", 0.9, 0.9}},
        {"cousin", {"family", 0.6, 0.6}},       {"aunt", {"family", 0.6, 0.6}},
        {"uncle", {"family", 0.6, 0.6}},        {"grandmother", {"family", 0.8, 0.8}},
        {"grandfather", {"family", 0.8, 0.8}},  {"wife", {"romantic", 0.95, 0.95}},
        {"husband", {"romantic", 0.95, 0.95}},  {"partner", {"romantic", 0.9, 0.9}},
        {"boyfriend", {"romantic", 0.85, 0.85}},{"girlfriend", {"romantic", 0.85, 0.85}},
        {"friend", {"friends", 0.7, 0.7}},      {"roommate", {"friends", 0.6, 0.6}},
        {"neighbor", {"friends", 0.5, 0.5}},    {"colleague", {"colleagues", 0.5, 0.5}},
        {"coworker", {"colleagues", 0.5, 0.5}}, {"boss", {"colleagues", 0.4, 0.5}},
    };
    auto it = table.find(role_lower);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

inline std::string strip_trailing_punct(std::string s) {
    while (!s.empty() && !std::isalnum(static_cast<unsigned char>(s.back())) &&
           static_cast<unsigned char>(s.back()) < 0x80)
        s.pop_back();
    return trim(s);
}

// Splits "<object> in 2019" / "<object> last spring" style tails into the
// bare object and a canonical anchor. Reference date comes from the session.
struct ObjectAnchor {
    std::string object;
    std::optional<std::string> anchor;
};

inline ObjectAnchor split_time_tail(const std::string& raw,
                                    const std::optional<std::string>& reference) {
    static const std::regex in_year(R"((.*?)\s+in\s+((?:19|20)\d{2})\s*$)", std::regex::icase);
    static const std::regex in_month_year(
        R"((.*?)\s+in\s+([A-Za-z]+)\s+((?:19|20)\d{2})\s*$)", std::regex::icase);
    static const std::regex relative(
        R"((.*?)\s+(last\s+(?:year|month|spring|summer|fall|autumn|winter)|yesterday|today|\d+\s+(?:years?|months?)\s+ago)\s*$)",
        std::regex::icase);
    std::smatch m;
    if (std::regex_match(raw, m, in_month_year)) {
        if (auto d = canonicalize_date(m[2].str() + " " + m[3].str()))
            return {strip_trailing_punct(m[1].str()), d};
    }
    if (std::regex_match(raw, m, in_year))
        return {strip_trailing_punct(m[1].str()), canonicalize_date(m[2].str())};
    if (std::regex_match(raw, m, relative)) {
        if (auto d = canonicalize_date(m[2].str(), reference))
            return {strip_trailing_punct(m[1].str()), d};
    }
    return {strip_trailing_punct(raw), std::nullopt};
}

inline FactCore make_core(const Chunk& chunk, const Message& msg, const std::string& person_id,
                          Domain domain, const std::string& upper, double confidence) {
    FactCore c;
    c.person_id = person_id;
    c.domain = domain;
    c.upper_category = upper;
    c.confidence = confidence;
    c.provenance.push_back({chunk.conversation_id, chunk.index, msg.id});
    return c;
}

inline std::optional<std::string> session_date(const Message& msg) {
    if (!msg.timestamp) return std::nullopt;
    return canonicalize_date(msg.timestamp->substr(0, 10));
}

// --- per-domain sentence rules ---

inline void extract_biography(const Chunk& chunk, const Sentence& s, const std::string& person,
                              bool first_person, std::vector<Candidate>& out) {
    const auto ref = session_date(*s.message);
    auto emit = [&](const std::string& category, const std::string& statement,
                    std::optional<std::string> anchor, double confidence, double salience = 1.0) {
        BiographyFact f;
        f.core = make_core(chunk, *s.message, person, Domain::biography, category, confidence);
        f.statement = statement;
        f.time_anchor = anchor ? anchor : ref;
        out.push_back({f, salience});
    };

    std::smatch m;
    if (first_person) {
        static const std::regex live(R"(^I live in\s+(.+)$)", std::regex::icase);
        static const std::regex lived(R"(^I (?:used to live|lived) in\s+(.+)$)", std::regex::icase);
        static const std::regex moved(R"(^I moved to\s+(.+)$)", std::regex::icase);
        static const std::regex grew(R"(^I grew up in\s+(.+)$)", std::regex::icase);
        static const std::regex born(R"(^I was born in\s+(.+)$)", std::regex::icase);
        static const std::regex studied(R"(^I studied\s+(.+?)\s+at\s+(.+)$)", std::regex::icase);
        static const std::regex graduated(R"(^I graduated from\s+(.+)$)", std::regex::icase);
        static const std::regex speak(R"(^I speak\s+(.+)$)", std::regex::icase);
        static const std::regex have_named(R"(^I have (?:a|an|two|three|\d+)\s+(.+?)\s+named\s+(.+)$)",
                                           std::regex::icase);
        static const std::regex have(R"(^I have (?:a|an|two|three|\d+)\s+(.+)$)", std::regex::icase);
        static const std::regex want(R"(^I want to\s+(.+)$)", std::regex::icase);
        static const std::regex is_a(R"(^I(?: am|'m) (a|an)\s+(.+)$)", std::regex::icase);

        if (std::regex_match(s.text, m, live)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("residence", "lives in " + obj, anchor, 0.9);
        } else if (std::regex_match(s.text, m, lived)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("residence", "lived in " + obj, anchor, 0.85);
        } else if (std::regex_match(s.text, m, moved)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("residence", "moved to " + obj, anchor, 0.9);
        } else if (std::regex_match(s.text, m, grew)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("residence", "grew up in " + obj, anchor, 0.85);
        } else if (std::regex_match(s.text, m, born)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            if (auto year = canonicalize_date(obj))
                emit("demographics", "born in " + obj, year, 0.9);
            else
                emit("demographics", "born in " + obj, anchor, 0.9);
        } else if (std::regex_match(s.text, m, studied)) {
            auto [obj, anchor] = split_time_tail(m[2].str(), ref);
            emit("education", "studied " + strip_trailing_punct(m[1].str()) + " at " + obj, anchor, 0.9);
        } else if (std::regex_match(s.text, m, graduated)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("education", "graduated from " + obj, anchor, 0.9);
        } else if (std::regex_match(s.text, m, speak)) {
            emit("languages", "speaks " + strip_trailing_punct(m[1].str()), std::nullopt, 0.85);
        } else if (std::regex_match(s.text, m, have_named)) {
            emit("possessions",
                 "has a " + strip_trailing_punct(m[1].str()) + " named " + strip_trailing_punct(m[2].str()),
                 std::nullopt, 0.85);
        } else if (std::regex_match(s.text, m, have)) {
            const std::string thing = strip_trailing_punct(m[1].str());
            const std::string head = to_lower(thing.substr(0, thing.find(' ')));
            emit(relation_info(head) ? "family" : "possessions", "has a " + thing, std::nullopt, 0.8);
        } else if (std::regex_match(s.text, m, want)) {
            emit("goals", "wants to " + strip_trailing_punct(m[1].str()), std::nullopt, 0.7);
        } else if (std::regex_match(s.text, m, is_a)) {
            const std::string rest = m[2].str();
            if (to_lower(rest).find(" at ") == std::string::npos)  // work rule owns that shape
                emit("identity", "is " + to_lower(m[1].str()) + " " + strip_trailing_punct(rest),
                     std::nullopt, 0.75);
        }
    } else {
        // Third-person statements naming the target person.
        const std::regex tp_lives("^" + person + R"( lives in\s+(.+)$)", std::regex::icase);
        const std::regex tp_is(std::string("^") + person + R"( is (a|an)\s+(.+)$)", std::regex::icase);
        if (std::regex_match(s.text, m, tp_lives)) {
            auto [obj, anchor] = split_time_tail(m[1].str(), ref);
            emit("residence", "lives in " + obj, anchor, 0.7);
        } else if (std::regex_match(s.text, m, tp_is)) {
            emit("identity", "is " + to_lower(m[1].str()) + " " + strip_trailing_punct(m[2].str()),
                 std::nullopt, 0.6);
        }
    }
}

inline void extract_work(const Chunk& chunk, const Sentence& s, const std::string& person,
                         bool first_person, std::vector<Candidate>& out) {
    auto emit = [&](const std::string& org, const std::string& role,
                    std::optional<std::string> start, double confidence) {
        WorkEngagement f;
        f.core = make_core(chunk, *s.message, person, Domain::work, to_lower(org), confidence);
        f.organization = org;
        f.role = role;
        f.start = std::move(start);
        out.push_back({f, 1.0});
    };

    std::smatch m;
    const auto ref = session_date(*s.message);
    if (first_person) {
        static const std::regex work_as(R"(^I work(?:ed)? (?:at|for)\s+(.+?)\s+as (?:a|an)\s+(.+)$)",
                                        std::regex::icase);
        static const std::regex work_at(R"(^I work(?:ed)? (?:at|for)\s+(.+)$)", std::regex::icase);
        static const std::regex role_at(R"(^I(?: am|'m) (?:a|an)\s+(.+?)\s+at\s+(.+)$)",
                                        std::regex::icase);
        static const std::regex teach(R"(^I (?:teach|taught)\s+(?:.+?\s+)?at\s+(.+)$)",
                                      std::regex::icase);
        if (std::regex_match(s.text, m, work_as)) {
            auto [org, anchor] = split_time_tail(m[1].str(), ref);
            emit(org, strip_trailing_punct(m[2].str()), anchor, 0.9);
        } else if (std::regex_match(s.text, m, teach)) {
            auto [org, anchor] = split_time_tail(m[1].str(), ref);
            emit(org, "teacher", anchor, 0.9);
        } else if (std::regex_match(s.text, m, role_at)) {
            auto [org, anchor] = split_time_tail(m[2].str(), ref);
            emit(org, strip_trailing_punct(m[1].str()), anchor, 0.85);
        } else if (std::regex_match(s.text, m, work_at)) {
            auto [org, anchor] = split_time_tail(m[1].str(), ref);
            emit(org, "", anchor, 0.85);
        }
    } else {
        const std::regex tp_works("^" + person + R"( works (?:at|for)\s+(.+)$)", std::regex::icase);
        if (std::regex_match(s.text, m, tp_works)) {
            auto [org, anchor] = split_time_tail(m[1].str(), ref);
            emit(org, "", anchor, 0.7);
        }
    }
}

inline void extract_preferences(const Chunk& chunk, const Sentence& s, const std::string& person,
                                bool first_person, std::vector<Candidate>& out) {
    if (!first_person) return;
    auto emit = [&](const std::string& target, Polarity polarity, double strength,
                    TemporalStatus status, double confidence, double salience = 1.0) {
        PreferenceFact f;
        f.core = make_core(chunk, *s.message, person, Domain::preferences,
                           detail::normalize_phrase(target), confidence);
        f.target = target;
        f.polarity = polarity;
        f.strength = strength;
        f.temporal_status = status;
        f.original_phrasing = s.text;
        out.push_back({f, salience});
    };

    std::smatch m;
    static const std::regex used_to(R"(^I used to (?:love|like|enjoy)\s+(.+)$)", std::regex::icase);
    static const std::regex love(R"(^I (?:really love|love|adore)\s+(.+)$)", std::regex::icase);
    static const std::regex really_like(R"(^I really like\s+(.+)$)", std::regex::icase);
    static const std::regex like(R"(^I like\s+(.+)$)", std::regex::icase);
    static const std::regex enjoy(R"(^I enjoy\s+(.+)$)", std::regex::icase);
    static const std::regex hate(R"(^I (?:hate|can't stand)\s+(.+)$)", std::regex::icase);
    static const std::regex dislike(R"(^I dislike\s+(.+)$)", std::regex::icase);
    static const std::regex not_fan(R"(^I(?: am|'m) not a fan of\s+(.+)$)", std::regex::icase);
    static const std::regex want_try(R"(^I want to try\s+(.+)$)", std::regex::icase);
    static const std::regex once_tried(R"(^I once tried\s+(.+)$)", std::regex::icase);

    auto target = [&](const std::smatch& match) { return strip_trailing_punct(match[1].str()); };

    if (std::regex_match(s.text, m, used_to))
        emit(target(m), Polarity::positive, 0.6, TemporalStatus::past, 0.8);
    else if (std::regex_match(s.text, m, love))
        emit(target(m), Polarity::positive, 0.9, TemporalStatus::current, 0.9);
    else if (std::regex_match(s.text, m, really_like))
        emit(target(m), Polarity::positive, 0.8, TemporalStatus::current, 0.9);
    else if (std::regex_match(s.text, m, like))
        emit(target(m), Polarity::positive, 0.6, TemporalStatus::current, 0.85);
    else if (std::regex_match(s.text, m, enjoy))
        emit(target(m), Polarity::positive, 0.7, TemporalStatus::current, 0.85);
    else if (std::regex_match(s.text, m, hate))
        emit(target(m), Polarity::negative, 0.9, TemporalStatus::current, 0.9);
    else if (std::regex_match(s.text, m, dislike))
        emit(target(m), Polarity::negative, 0.6, TemporalStatus::current, 0.85);
    else if (std::regex_match(s.text, m, not_fan))
        emit(target(m), Polarity::negative, 0.5, TemporalStatus::current, 0.8);
    else if (std::regex_match(s.text, m, want_try))
        emit(target(m), Polarity::positive, 0.5, TemporalStatus::aspirational, 0.7);
    else if (std::regex_match(s.text, m, once_tried))
        emit(target(m), Polarity::positive, 0.3, TemporalStatus::past, 0.5, /*salience=*/0.25);
}

inline void extract_social(const Chunk& chunk, const Sentence& s, const std::string& person,
                           bool first_person, std::vector<Candidate>& out) {
    if (!first_person) return;
    auto emit = [&](const std::string& name, const std::string& role, const RelationInfo& info) {
        PersonModel f;
        f.core = make_core(chunk, *s.message, person, Domain::social, to_lower(name), 0.85);
        f.name = name;
        f.relationship_role = to_lower(role);
        f.closeness = info.closeness;
        f.trust = info.trust;
        out.push_back({f, 1.0});
    };

    std::smatch m;
    static const std::regex my_rel(R"(^My (?:best )?([a-zA-Z]+)\s+([A-Z][a-zA-Z]+)\b.*$)");
    static const std::regex is_my(R"(^([A-Z][a-zA-Z]+) is my (?:best )?([a-zA-Z]+)\s*$)");
    if (std::regex_match(s.text, m, my_rel)) {
        const std::string role = to_lower(m[1].str());
        if (auto info = relation_info(role)) emit(m[2].str(), role, *info);
    } else if (std::regex_match(s.text, m, is_my)) {
        const std::string role = to_lower(m[2].str());
        if (auto info = relation_info(role)) emit(m[1].str(), role, *info);
    }
}

inline void extract_experiences(const Chunk& chunk, const Sentence& s, const std::string& person,
                                bool first_person, std::vector<Candidate>& out) {
    if (!first_person) return;
    const auto ref = session_date(*s.message);
    auto emit = [&](const std::string& title, const std::string& upper,
                    std::optional<std::string> anchor, double confidence, double salience = 1.0) {
        ExperienceNode f;
        f.core = make_core(chunk, *s.message, person, Domain::experiences, upper, confidence);
        f.title = title;
        f.narrative = s.text;
        f.time_anchor = anchor ? anchor : ref;
        f.participants = {person};
        const std::string lower = to_lower(s.text);
        for (const auto& w : positive_affect_words())
            if (lower.find(w) != std::string::npos) f.emotions.push_back({w, 0.7});
        for (const auto& w : negative_affect_words())
            if (lower.find(w) != std::string::npos) f.emotions.push_back({w, 0.7});
        out.push_back({f, salience});
    };

    std::smatch m;
    static const std::regex visited(R"(^I (?:visited|travell?ed to)\s+(.+)$)", std::regex::icase);
    static const std::regex went(R"(^I went to\s+(.+)$)", std::regex::icase);
    static const std::regex saw(R"(^I saw\s+(.+)$)", std::regex::icase);
    if (std::regex_match(s.text, m, visited)) {
        auto [obj, anchor] = split_time_tail(m[1].str(), ref);
        emit("trip to " + obj, "travel", anchor, 0.85);
    } else if (std::regex_match(s.text, m, went)) {
        auto [obj, anchor] = split_time_tail(m[1].str(), ref);
        emit("trip to " + obj, "travel", anchor, 0.8);
    } else if (std::regex_match(s.text, m, saw)) {
        auto [obj, anchor] = split_time_tail(m[1].str(), ref);
        emit("saw " + obj, "event", anchor, 0.5, /*salience=*/0.25);
    }
}

inline void extract_psychometrics(const Chunk& chunk, const std::string& person,
                                  std::vector<Candidate>& out) {
    int pos = 0, neg = 0;
    std::vector<std::string> quotes;
    std::vector<Provenance> provenance;
    for (const auto& msg : chunk.messages) {
        if (!same_person(msg.speaker, person)) continue;
        const std::string lower = to_lower(msg.body);
        int hits = 0;
        for (const auto& w : positive_affect_words())
            if (lower.find(w) != std::string::npos) {
                ++pos;
                ++hits;
            }
        for (const auto& w : negative_affect_words())
            if (lower.find(w) != std::string::npos) {
                ++neg;
                ++hits;
            }
        if (hits > 0) {
            quotes.push_back(msg.body);
            provenance.push_back({chunk.conversation_id, chunk.index, msg.id});
        }
    }
    if (pos + neg == 0) return;
    PsychometricProfile f;
    f.core.person_id = person;
    f.core.domain = Domain::psychometrics;
    f.core.upper_category = to_string(Framework::panas);
    f.core.confidence = std::min(1.0, (pos + neg) / 10.0);
    f.core.provenance = std::move(provenance);
    f.framework = Framework::panas;
    f.dimension_scores["positive_affect"] = static_cast<double>(pos) / (pos + neg);
    f.dimension_scores["negative_affect"] = static_cast<double>(neg) / (pos + neg);
    f.evidence_quotes = std::move(quotes);
    out.push_back({f, 1.0});
}

inline void extract_style(const Chunk& chunk, const std::string& person,
                          std::vector<Candidate>& out) {
    long total_tokens = 0, punct = 0, exclaim = 0, question = 0;
    std::size_t messages = 0;
    std::vector<Provenance> provenance;
    for (const auto& msg : chunk.messages) {
        if (!same_person(msg.speaker, person)) continue;
        ++messages;
        total_tokens += msg.token_count;
        scan_tokens(msg.body, [&](std::string_view tok) {
            if (tok.size() == 1 && !detail::is_word_byte(static_cast<unsigned char>(tok[0]))) {
                ++punct;
                if (tok[0] == '!') ++exclaim;
                if (tok[0] == '?') ++question;
            }
        });
        provenance.push_back({chunk.conversation_id, chunk.index, msg.id});
    }
    if (messages == 0) return;
    StyleFingerprint f;
    f.core.person_id = person;
    f.core.domain = Domain::style;
    f.core.upper_category = "style";
    f.core.confidence = 1.0;
    f.core.provenance = std::move(provenance);
    f.features["mean_message_tokens"] = static_cast<double>(total_tokens) / messages;
    f.features["punctuation_rate"] = total_tokens ? static_cast<double>(punct) / total_tokens : 0.0;
    f.features["exclamation_rate"] = messages ? static_cast<double>(exclaim) / messages : 0.0;
    f.features["question_rate"] = messages ? static_cast<double>(question) / messages : 0.0;
    out.push_back({f, 1.0});
}

}  // namespace refextract

// Pure pattern-rule extraction of statements attributable to `person`:
// first-person statements by the speaker, or third-person statements naming
// the person.
inline std::vector<Candidate> reference_extract(const Chunk& chunk, const std::string& person,
                                                Domain domain) {
    std::vector<Candidate> out;
    if (domain == Domain::psychometrics) {
        refextract::extract_psychometrics(chunk, person, out);
        return out;
    }
    if (domain == Domain::style) {
        refextract::extract_style(chunk, person, out);
        return out;
    }
    for (const auto& msg : chunk.messages) {
        const bool first_person = refextract::same_person(msg.speaker, person);
        for (const auto& s : refextract::split_sentences(msg)) {
            switch (domain) {
                case Domain::biography:
                    refextract::extract_biography(chunk, s, person, first_person, out);
                    break;
                case Domain::work:
                    refextract::extract_work(chunk, s, person, first_person, out);
                    break;
                case Domain::preferences:
                    refextract::extract_preferences(chunk, s, person, first_person, out);
                    break;
                case Domain::social:
                    refextract::extract_social(chunk, s, person, first_person, out);
                    break;
                case Domain::experiences:
                    refextract::extract_experiences(chunk, s, person, first_person, out);
                    break;
                default:
                    break;
            }
        }
    }
    return out;
}

class ReferenceExtractor : public ExtractorPort {
public:
    std::vector<Candidate> extract(const ExtractRequest& request) override {
        if (request.chunk == nullptr) fail(ErrorKind::contract, "extract request missing chunk");
        return reference_extract(*request.chunk, request.person_id, request.domain);
    }
};

}  // namespace synthius
