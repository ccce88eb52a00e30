#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/corpus/parse.hpp"

namespace synthius {

enum class ReasoningCategory { single_hop, multi_hop, temporal, open_domain, adversarial };
enum class KnowledgeCategory { adversarial, core_fact, temporal_precision, open_inference, peripheral_detail };

inline const char* to_string(ReasoningCategory c) {
    switch (c) {
        case ReasoningCategory::single_hop: return "single_hop";
        case ReasoningCategory::multi_hop: return "multi_hop";
        case ReasoningCategory::temporal: return "temporal";
        case ReasoningCategory::open_domain: return "open_domain";
        case ReasoningCategory::adversarial: return "adversarial";
    }
    return "single_hop";
}

inline const char* to_string(KnowledgeCategory c) {
    switch (c) {
        case KnowledgeCategory::adversarial: return "adversarial";
        case KnowledgeCategory::core_fact: return "core_fact";
        case KnowledgeCategory::temporal_precision: return "temporal_precision";
        case KnowledgeCategory::open_inference: return "open_inference";
        case KnowledgeCategory::peripheral_detail: return "peripheral_detail";
    }
    return "core_fact";
}

inline ReasoningCategory reasoning_category_from(const json& v) {
    if (v.is_number_integer()) {
        // LoCoMo numeric convention: 1 multi-hop, 2 temporal, 3 open-domain,
        // 4 single-hop, 5 adversarial.
        switch (v.get<int>()) {
            case 1: return ReasoningCategory::multi_hop;
            case 2: return ReasoningCategory::temporal;
            case 3: return ReasoningCategory::open_domain;
            case 4: return ReasoningCategory::single_hop;
            case 5: return ReasoningCategory::adversarial;
        }
        fail(ErrorKind::parse, "unknown numeric reasoning category " + v.dump());
    }
    const std::string s = v.get<std::string>();
    if (s == "single_hop") return ReasoningCategory::single_hop;
    if (s == "multi_hop") return ReasoningCategory::multi_hop;
    if (s == "temporal") return ReasoningCategory::temporal;
    if (s == "open_domain") return ReasoningCategory::open_domain;
    if (s == "adversarial") return ReasoningCategory::adversarial;
    fail(ErrorKind::parse, "unknown reasoning category '" + s + "'");
}

inline KnowledgeCategory knowledge_category_from(const std::string& s) {
    if (s == "adversarial") return KnowledgeCategory::adversarial;
    if (s == "core_fact") return KnowledgeCategory::core_fact;
    if (s == "temporal_precision") return KnowledgeCategory::temporal_precision;
    if (s == "open_inference") return KnowledgeCategory::open_inference;
    if (s == "peripheral_detail") return KnowledgeCategory::peripheral_detail;
    fail(ErrorKind::parse, "unknown knowledge category '" + s + "'");
}

struct QAItem {
    std::string id;
    std::string question;
    std::string gold_answer;
    std::vector<std::string> gold_aliases;  // accepted paraphrases of the gold answer
    ReasoningCategory reasoning_category = ReasoningCategory::single_hop;
    std::optional<KnowledgeCategory> knowledge_category;
    std::string target_person;
    std::vector<std::string> evidence;  // optional message-id references
};

struct LocomoRecord {
    Conversation conversation;
    std::vector<QAItem> qa;
};

namespace detail {

inline std::string infer_target_person(const std::string& question,
                                       const std::vector<std::string>& participants) {
    const std::string q = to_lower(question);
    for (const auto& p : participants) {
        if (q.find(to_lower(p)) != std::string::npos) return p;
    }
    return participants.front();
}

inline QAItem parse_qa_item(const json& jq, const Conversation& conv, std::size_t record_idx,
                            std::size_t qa_idx) {
    const std::string where =
        "record " + std::to_string(record_idx) + " qa " + std::to_string(qa_idx);
    if (!jq.is_object() || !jq.contains("question"))
        fail(ErrorKind::parse, where + ": missing 'question'");
    QAItem item;
    item.id = jq.value("id", conv.id + "-q" + std::to_string(qa_idx));
    item.question = jq.at("question").get<std::string>();
    if (jq.contains("answer"))
        item.gold_answer = jq.at("answer").is_string() ? jq.at("answer").get<std::string>()
                                                       : jq.at("answer").dump();
    if (jq.contains("answer_aliases"))
        for (const auto& a : jq.at("answer_aliases")) item.gold_aliases.push_back(a.get<std::string>());
    if (!jq.contains("category")) fail(ErrorKind::parse, where + ": missing 'category'");
    item.reasoning_category = reasoning_category_from(jq.at("category"));
    if (jq.contains("knowledge_category") && !jq.at("knowledge_category").is_null())
        item.knowledge_category = knowledge_category_from(jq.at("knowledge_category").get<std::string>());
    if (jq.contains("evidence"))
        for (const auto& e : jq.at("evidence")) item.evidence.push_back(e.get<std::string>());
    item.target_person = jq.contains("target_person")
                             ? jq.at("target_person").get<std::string>()
                             : infer_target_person(item.question, conv.participants);

    if (!conv.has_participant(item.target_person))
        fail(ErrorKind::parse,
             where + ": target person '" + item.target_person + "' is not a participant");
    if (item.knowledge_category) {
        const bool ra = item.reasoning_category == ReasoningCategory::adversarial;
        const bool ka = *item.knowledge_category == KnowledgeCategory::adversarial;
        if (ra != ka)
            fail(ErrorKind::parse, where + ": adversarial tags disagree between taxonomies");
    }
    return item;
}

}  // namespace detail

inline std::vector<LocomoRecord> load_locomo_text(std::string_view raw,
                                                  const TokenCounter& counter = default_token_counter()) {
    const json doc = detail::parse_json_document(raw, "locomo dataset");
    const json records = doc.is_array() ? doc : json::array({doc});
    std::vector<LocomoRecord> out;
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
        const json& jr = records.at(idx);
        if (!jr.is_object() || !jr.contains("conversation"))
            fail(ErrorKind::parse, "record " + std::to_string(idx) + ": missing 'conversation'");
        LocomoRecord rec;
        rec.conversation = parse_locomo_conversation(
            jr, jr.value("id", "locomo-" + std::to_string(idx)), counter);
        if (jr.contains("qa")) {
            for (std::size_t q = 0; q < jr.at("qa").size(); ++q)
                rec.qa.push_back(detail::parse_qa_item(jr.at("qa").at(q), rec.conversation, idx, q));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<LocomoRecord> load_locomo(const std::string& path,
                                             const TokenCounter& counter = default_token_counter()) {
    return load_locomo_text(read_file(path), counter);
}

}  // namespace synthius
