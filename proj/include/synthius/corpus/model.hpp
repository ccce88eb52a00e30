#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/text.hpp"

namespace synthius {

enum class SourceFormat { canonical, locomo, whatsapp, jsonl };

inline const char* to_string(SourceFormat f) {
    switch (f) {
        case SourceFormat::canonical: return "canonical";
        case SourceFormat::locomo: return "locomo";
        case SourceFormat::whatsapp: return "whatsapp";
        case SourceFormat::jsonl: return "jsonl";
    }
    return "canonical";
}

inline SourceFormat source_format_from(const std::string& name) {
    if (name == "canonical") return SourceFormat::canonical;
    if (name == "locomo") return SourceFormat::locomo;
    if (name == "whatsapp") return SourceFormat::whatsapp;
    if (name == "jsonl") return SourceFormat::jsonl;
    fail(ErrorKind::parse, "unsupported conversation format: " + name);
}

struct Message {
    std::string id;
    std::string speaker;
    std::optional<std::string> timestamp;  // ISO-8601 text
    std::string body;
    long token_count = 0;

    bool operator==(const Message&) const = default;
};

struct Session {
    std::string id;
    std::optional<std::string> timestamp;
    std::vector<Message> messages;

    bool operator==(const Session&) const = default;
};

struct Conversation {
    std::string id;
    std::vector<std::string> participants;
    std::vector<Session> sessions;
    SourceFormat source_format = SourceFormat::canonical;

    bool operator==(const Conversation&) const = default;

    std::size_t message_count() const {
        std::size_t n = 0;
        for (const auto& s : sessions) n += s.messages.size();
        return n;
    }

    std::vector<const Message*> all_messages() const {
        std::vector<const Message*> out;
        out.reserve(message_count());
        for (const auto& s : sessions)
            for (const auto& m : s.messages) out.push_back(&m);
        return out;
    }

    bool has_participant(const std::string& name) const {
        for (const auto& p : participants)
            if (to_lower(p) == to_lower(name)) return true;
        return false;
    }
};

inline void validate(const Conversation& conv) {
    if (conv.participants.empty()) fail(ErrorKind::validation, "conversation has no participants");
    for (const auto& s : conv.sessions) {
        if (s.messages.empty())
            fail(ErrorKind::validation, "session " + s.id + " has no messages");
        for (const auto& m : s.messages) {
            if (m.speaker.empty())
                fail(ErrorKind::validation, "message " + m.id + " has an empty speaker");
            if (!conv.has_participant(m.speaker))
                fail(ErrorKind::validation,
                     "message " + m.id + " speaker '" + m.speaker + "' is not a participant");
        }
    }
}

inline json to_json(const Message& m) {
    json j = {{"id", m.id}, {"speaker", m.speaker}, {"body", m.body}};
    j["ts"] = m.timestamp ? json(*m.timestamp) : json(nullptr);
    return j;
}

inline json to_json(const Session& s) {
    json msgs = json::array();
    for (const auto& m : s.messages) msgs.push_back(to_json(m));
    return {{"id", s.id},
            {"timestamp", s.timestamp ? json(*s.timestamp) : json(nullptr)},
            {"messages", msgs}};
}

// Canonical conversation document:
// {id, participants:[...], sessions:[{id, timestamp, messages:[{id, speaker, ts, body}]}]}
inline json to_canonical_json(const Conversation& conv) {
    json sessions = json::array();
    for (const auto& s : conv.sessions) sessions.push_back(to_json(s));
    return {{"id", conv.id}, {"participants", conv.participants}, {"sessions", sessions}};
}

inline std::string serialize_canonical(const Conversation& conv) {
    return to_canonical_json(conv).dump(2);
}

inline std::string render_dialogue(const std::vector<const Message*>& messages) {
    std::string out;
    for (const auto* m : messages) {
        out += m->speaker;
        out += ": ";
        out += m->body;
        out += '\n';
    }
    return out;
}

}  // namespace synthius
