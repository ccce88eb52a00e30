#pragma once

#include <string>
#include <vector>

#include "synthius/persona/render.hpp"
#include "synthius/ports/model_client.hpp"
#include "synthius/retrieval/rag.hpp"

namespace synthius {

enum class AnswerKind { grounded, refusal };

// Fixed refusal wording; the bench refusal-phrase patterns must keep matching it.
inline constexpr const char* kRefusalText =
    "I don't have any information about that in this persona's memory.";

struct Answer {
    AnswerKind kind = AnswerKind::refusal;
    std::string text;
    std::vector<std::string> cited_fact_ids;  // empty iff refusal
    bool degraded = false;                    // grounded path fell back to refusal

    json to_json() const {
        return {{"kind", kind == AnswerKind::grounded ? "grounded" : "refusal"},
                {"text", text},
                {"cited_fact_ids", cited_fact_ids},
                {"degraded", degraded}};
    }
};

struct EvidenceItem {
    const DomainFact* fact = nullptr;
    Match match;
};

class AnswerPort {
public:
    virtual ~AnswerPort() = default;
    virtual std::string answer(const std::string& question, const std::vector<EvidenceItem>& evidence) = 0;
};

// Template rendering of the matched facts, one line each.
class ReferenceAnswerer : public AnswerPort {
public:
    std::string answer(const std::string& question, const std::vector<EvidenceItem>& evidence) override {
        (void)question;
        std::string out;
        for (const auto& item : evidence) {
            if (!out.empty()) out += ' ';
            out += render_fact(*item.fact) + ".";
        }
        return out;
    }
};

class HttpAnswerer : public AnswerPort {
public:
    explicit HttpAnswerer(PortConfig cfg, int max_output_tokens = 200)
        : client_(std::move(cfg)), max_output_tokens_(max_output_tokens) {}

    std::string answer(const std::string& question, const std::vector<EvidenceItem>& evidence) override {
        std::string context;
        for (const auto& item : evidence) context += "- " + render_fact(*item.fact) + "\n";
        const json res = client_.complete(
            "Answer the question strictly from these memory facts.\n\nFacts:\n" + context +
                "\nQuestion: " + question,
            json{{"answer", "string"}}, max_output_tokens_);
        if (!res.is_object() || !res.contains("answer"))
            fail(ErrorKind::port, "answer response missing 'answer'");
        return res.at("answer").get<std::string>();
    }

private:
    HttpModelClient client_;
    int max_output_tokens_;
};

// Refusal-on-absence policy: no evidence means refusal, no exceptions; a port
// failure on the grounded path degrades to refusal rather than guessing.
inline Answer answer(const std::string& question, const PersonaStore& store,
                     const RetrievalResult& result, AnswerPort& port,
                     const RetrievalConfig& cfg = {}) {
    Answer out;
    if (!result.evidence_found) {
        out.kind = AnswerKind::refusal;
        out.text = kRefusalText;
        return out;
    }

    std::vector<EvidenceItem> evidence;
    long budget = cfg.render_cap_tokens;
    for (const auto& m : result.matches) {
        const DomainFact* fact = store.find_fact(m.fact_id);
        if (fact == nullptr) continue;
        const long cost = count_tokens(render_fact(*fact));
        if (!evidence.empty() && cost > budget) break;
        budget -= cost;
        evidence.push_back({fact, m});
    }
    if (evidence.empty()) {
        out.kind = AnswerKind::refusal;
        out.text = kRefusalText;
        return out;
    }

    try {
        out.text = port.answer(question, evidence);
        out.kind = AnswerKind::grounded;
        for (const auto& item : evidence) out.cited_fact_ids.push_back(item.match.fact_id);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::port) throw;
        out.kind = AnswerKind::refusal;
        out.text = kRefusalText;
        out.degraded = true;
        out.cited_fact_ids.clear();
    }
    return out;
}

}  // namespace synthius
