#pragma once

#include <string>
#include <vector>

#include "synthius/corpus/locomo.hpp"
#include "synthius/ports/model_client.hpp"
#include "synthius/retrieval/answer.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Documented refusal-phrase pattern set for scoring answers that arrive as
// plain text from an external system under test.
inline bool looks_like_refusal(const std::string& answer_text) {
    static const std::vector<std::string> patterns = {
        "i don't have any information", "i do not have any information",
        "i don't know",                 "i do not know",
        "no information about",         "i have no record",
        "i'm not aware",                "i am not aware",
        "cannot find",                  "can't find",
        "not mentioned",                "never mentioned",
    };
    const std::string norm = normalize_for_compare(answer_text);
    for (const auto& p : patterns)
        if (norm.find(normalize_for_compare(p)) != std::string::npos) return true;
    return norm.empty();
}

class JudgePort {
public:
    virtual ~JudgePort() = default;
    virtual int verdict(const QAItem& qa, const std::string& answer_text, bool is_refusal) = 0;
};

// Binary reference judge: adversarial items score 1 iff the answer is a
// refusal; everything else scores 1 iff the normalized gold answer (or any
// alias) is contained in the normalized answer.
class ReferenceJudge : public JudgePort {
public:
    int verdict(const QAItem& qa, const std::string& answer_text, bool is_refusal) override {
        if (qa.reasoning_category == ReasoningCategory::adversarial) return is_refusal ? 1 : 0;
        if (is_refusal) return 0;
        const std::string norm = normalize_for_compare(answer_text);
        std::vector<std::string> accepted = qa.gold_aliases;
        accepted.push_back(qa.gold_answer);
        for (const auto& gold : accepted) {
            const std::string g = normalize_for_compare(gold);
            if (!g.empty() && norm.find(g) != std::string::npos) return 1;
        }
        return 0;
    }
};

class HttpJudge : public JudgePort {
public:
    explicit HttpJudge(PortConfig cfg) : client_(std::move(cfg)) {}

    int verdict(const QAItem& qa, const std::string& answer_text, bool is_refusal) override {
        const json res = client_.complete(
            "Grade the answer 1 (correct) or 0 (wrong). Adversarial questions with an "
            "unsupported premise are correct only when the answer refuses.\nQuestion: " +
                qa.question + "\nGold: " + qa.gold_answer + "\nAnswer: " + answer_text +
                (is_refusal ? "\n(The answer is a refusal.)" : ""),
            json{{"verdict", "0 or 1"}}, 10);
        if (!res.is_object() || !res.contains("verdict"))
            fail(ErrorKind::port, "judge response missing 'verdict'");
        return res.at("verdict").get<int>() == 1 ? 1 : 0;
    }

private:
    HttpModelClient client_;
};

inline int judge_binary(const QAItem& qa, const Answer& answer, JudgePort& port) {
    const bool is_refusal = answer.kind == AnswerKind::refusal || looks_like_refusal(answer.text);
    return port.verdict(qa, answer.text, is_refusal);
}

}  // namespace synthius
