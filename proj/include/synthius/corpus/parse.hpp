#pragma once

#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/corpus/model.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Pluggable token counter; the default is the deterministic rule in text.hpp.
using TokenCounter = std::function<long(std::string_view)>;

inline TokenCounter default_token_counter() {
    return [](std::string_view s) { return count_tokens(s); };
}

namespace detail {

inline std::string seq_id(const char* prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%06zu", prefix, n);
    return buf;
}

inline void finish_conversation(Conversation& conv, const TokenCounter& counter) {
    for (auto& s : conv.sessions)
        for (auto& m : s.messages) m.token_count = counter(m.body);
    if (conv.participants.empty()) {
        // Infer participants as the distinct speaker set, in order of first appearance.
        for (const auto& s : conv.sessions)
            for (const auto& m : s.messages)
                if (!conv.has_participant(m.speaker)) conv.participants.push_back(m.speaker);
    }
    validate(conv);
}

inline json parse_json_document(std::string_view raw, const std::string& what) {
    try {
        return json::parse(raw);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, what + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
    }
}

}  // namespace detail

inline Conversation parse_canonical(std::string_view raw, const TokenCounter& counter) {
    const json doc = detail::parse_json_document(raw, "canonical conversation");
    if (!doc.is_object() || !doc.contains("sessions"))
        fail(ErrorKind::parse, "canonical conversation: missing 'sessions'");
    Conversation conv;
    conv.source_format = SourceFormat::canonical;
    conv.id = doc.value("id", "conversation");
    if (doc.contains("participants")) {
        for (const auto& p : doc.at("participants")) conv.participants.push_back(p.get<std::string>());
    }
    for (const auto& js : doc.at("sessions")) {
        Session s;
        s.id = js.value("id", detail::seq_id("s", conv.sessions.size()));
        if (js.contains("timestamp") && !js.at("timestamp").is_null())
            s.timestamp = js.at("timestamp").get<std::string>();
        if (!js.contains("messages")) fail(ErrorKind::parse, "session " + s.id + ": missing 'messages'");
        for (const auto& jm : js.at("messages")) {
            Message m;
            m.id = jm.value("id", detail::seq_id("m", conv.message_count() + s.messages.size()));
            m.speaker = jm.value("speaker", "");
            if (jm.contains("ts") && !jm.at("ts").is_null()) m.timestamp = jm.at("ts").get<std::string>();
            m.body = jm.value("body", "");
            s.messages.push_back(std::move(m));
        }
        conv.sessions.push_back(std::move(s));
    }
    try {
        detail::finish_conversation(conv, counter);
    } catch (const Error& e) {
        fail(ErrorKind::parse, std::string("canonical conversation: ") + e.what());
    }
    return conv;
}

// LoCoMo-style conversation object: string speakers plus numbered session
// arrays ("session_1": [{speaker, text, ...}], "session_1_date_time": "...").
// Each numbered session is a contiguous block of turns sharing one timestamp.
inline Conversation parse_locomo_conversation(const json& doc, const std::string& conv_id,
                                              const TokenCounter& counter) {
    const json& body = doc.contains("conversation") ? doc.at("conversation") : doc;
    if (!body.is_object()) fail(ErrorKind::parse, "locomo conversation: not an object");
    Conversation conv;
    conv.source_format = SourceFormat::locomo;
    conv.id = conv_id;
    if (body.contains("speaker_a")) conv.participants.push_back(body.at("speaker_a").get<std::string>());
    if (body.contains("speaker_b")) conv.participants.push_back(body.at("speaker_b").get<std::string>());

    std::size_t msg_seq = 0;
    for (std::size_t k = 1;; ++k) {
        const std::string key = "session_" + std::to_string(k);
        if (!body.contains(key)) break;
        Session s;
        s.id = key;
        const std::string ts_key = key + "_date_time";
        if (body.contains(ts_key) && body.at(ts_key).is_string())
            s.timestamp = body.at(ts_key).get<std::string>();
        if (!body.at(key).is_array()) fail(ErrorKind::parse, "locomo " + key + ": not an array");
        for (const auto& jm : body.at(key)) {
            Message m;
            m.id = jm.value("dia_id", detail::seq_id("m", msg_seq));
            ++msg_seq;
            m.speaker = jm.value("speaker", "");
            m.body = jm.contains("text") ? jm.value("text", "") : jm.value("body", "");
            m.timestamp = s.timestamp;
            s.messages.push_back(std::move(m));
        }
        if (!s.messages.empty()) conv.sessions.push_back(std::move(s));
    }
    detail::finish_conversation(conv, counter);
    return conv;
}

inline Conversation parse_locomo(std::string_view raw, const TokenCounter& counter) {
    const json doc = detail::parse_json_document(raw, "locomo conversation");
    return parse_locomo_conversation(doc, doc.is_object() ? doc.value("id", "locomo-0") : "locomo-0",
                                     counter);
}

namespace detail {

// "12/03/24, 09:15 - Ana: hi" -> header fields. Day-first dates.
struct WhatsAppHeader {
    std::string date_iso;   // yyyy-mm-dd
    std::string time;       // HH:MM[:SS]
    std::string rest;       // everything after " - "
};

inline std::optional<WhatsAppHeader> parse_whatsapp_header(const std::string& line) {
    const auto comma = line.find(", ");
    if (comma == std::string::npos) return std::nullopt;
    const auto dash = line.find(" - ", comma);
    if (dash == std::string::npos) return std::nullopt;

    const std::string date = line.substr(0, comma);
    const std::string time = line.substr(comma + 2, dash - comma - 2);

    int d = 0, mo = 0, y = 0;
    if (std::sscanf(date.c_str(), "%d/%d/%d", &d, &mo, &y) != 3) return std::nullopt;
    if (d < 1 || d > 31 || mo < 1 || mo > 12) return std::nullopt;
    if (y < 100) y += 2000;

    int hh = 0, mi = 0;
    if (std::sscanf(time.c_str(), "%d:%d", &hh, &mi) != 2) return std::nullopt;
    if (hh < 0 || hh > 23 || mi < 0 || mi > 59) return std::nullopt;

    char date_buf[16], time_buf[16];
    std::snprintf(date_buf, sizeof(date_buf), "%04d-%02d-%02d", y, mo, d);
    std::snprintf(time_buf, sizeof(time_buf), "%02d:%02d:00", hh, mi);
    return WhatsAppHeader{date_buf, time_buf, line.substr(dash + 3)};
}

}  // namespace detail

// WhatsApp text export: "<date>, <time> - <name>: <text>". Continuation lines
// are appended to the previous message body. Lines with a header but no
// "name: " part are export system notices and are skipped. Messages are
// grouped into one session per calendar date.
inline Conversation parse_whatsapp(std::string_view raw, const TokenCounter& counter) {
    Conversation conv;
    conv.source_format = SourceFormat::whatsapp;
    conv.id = "whatsapp";

    Message* current = nullptr;
    std::size_t line_no = 0;
    std::size_t msg_seq = 0;
    std::string current_date;

    std::size_t pos = 0;
    while (pos <= raw.size()) {
        const auto nl = raw.find('\n', pos);
        std::string line(raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos : nl - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;

        if (!line.empty()) {
            if (auto header = detail::parse_whatsapp_header(line)) {
                const auto colon = header->rest.find(": ");
                if (colon == std::string::npos) {
                    current = nullptr;  // system notice, no author
                } else {
                    if (header->date_iso != current_date) {
                        Session s;
                        s.id = detail::seq_id("s", conv.sessions.size());
                        s.timestamp = header->date_iso;
                        conv.sessions.push_back(std::move(s));
                        current_date = header->date_iso;
                    }
                    Message m;
                    m.id = detail::seq_id("m", msg_seq++);
                    m.speaker = header->rest.substr(0, colon);
                    m.body = header->rest.substr(colon + 2);
                    m.timestamp = header->date_iso + "T" + header->time;
                    conv.sessions.back().messages.push_back(std::move(m));
                    current = &conv.sessions.back().messages.back();
                }
            } else if (current != nullptr) {
                current->body += "\n" + line;
            } else {
                fail(ErrorKind::parse,
                     "whatsapp export: line " + std::to_string(line_no) + " is neither a message header nor a continuation");
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (conv.sessions.empty()) fail(ErrorKind::parse, "whatsapp export: no messages found");
    detail::finish_conversation(conv, counter);
    return conv;
}

// Generic JSONL: one message object per line with {speaker, body|text,
// ts?, session?}. Consecutive lines sharing the same "session" value form one
// session; without the field the whole file is a single session.
inline Conversation parse_jsonl(std::string_view raw, const TokenCounter& counter) {
    Conversation conv;
    conv.source_format = SourceFormat::jsonl;
    conv.id = "jsonl";

    std::size_t line_no = 0;
    std::size_t msg_seq = 0;
    std::string current_session_tag;
    bool have_session = false;

    std::size_t pos = 0;
    while (pos <= raw.size()) {
        const auto nl = raw.find('\n', pos);
        const std::string_view line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos : nl - pos);
        ++line_no;
        if (!trim(line).empty()) {
            json jm;
            try {
                jm = json::parse(line);
            } catch (const json::parse_error& e) {
                fail(ErrorKind::parse, "jsonl line " + std::to_string(line_no) + ": " + e.what());
            }
            if (!jm.is_object() || !jm.contains("speaker"))
                fail(ErrorKind::parse, "jsonl line " + std::to_string(line_no) + ": missing 'speaker'");
            const std::string tag = jm.contains("session") ? jm.at("session").dump() : "";
            if (!have_session || tag != current_session_tag) {
                Session s;
                s.id = detail::seq_id("s", conv.sessions.size());
                conv.sessions.push_back(std::move(s));
                current_session_tag = tag;
                have_session = true;
            }
            Message m;
            m.id = jm.value("id", detail::seq_id("m", msg_seq));
            ++msg_seq;
            m.speaker = jm.at("speaker").get<std::string>();
            m.body = jm.contains("text") ? jm.value("text", "") : jm.value("body", "");
            if (jm.contains("ts") && jm.at("ts").is_string()) m.timestamp = jm.at("ts").get<std::string>();
            if (conv.sessions.back().timestamp == std::nullopt && m.timestamp)
                conv.sessions.back().timestamp = m.timestamp;
            conv.sessions.back().messages.push_back(std::move(m));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (conv.sessions.empty()) fail(ErrorKind::parse, "jsonl: no messages found");
    detail::finish_conversation(conv, counter);
    return conv;
}

inline Conversation parse_conversation(std::string_view raw, SourceFormat format,
                                       const TokenCounter& counter = default_token_counter()) {
    switch (format) {
        case SourceFormat::canonical: return parse_canonical(raw, counter);
        case SourceFormat::locomo: return parse_locomo(raw, counter);
        case SourceFormat::whatsapp: return parse_whatsapp(raw, counter);
        case SourceFormat::jsonl: return parse_jsonl(raw, counter);
    }
    fail(ErrorKind::parse, "unsupported conversation format");
}

}  // namespace synthius
