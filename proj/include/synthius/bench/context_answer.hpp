#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "synthius/ports/model_client.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Answering over raw dialogue context, used by the baseline systems under
// test. An empty return means the context did not support an answer.
class ContextAnswerPort {
public:
    virtual ~ContextAnswerPort() = default;
    virtual std::string answer(const std::string& question, const std::string& context) = 0;
};

// Deterministic stand-in: rank context lines by query-term overlap and return
// the best-supported lines verbatim; zero overlap refuses.
class ReferenceContextAnswerer : public ContextAnswerPort {
public:
    std::string answer(const std::string& question, const std::string& context) override {
        const auto q_terms = term_set(question);
        struct Scored {
            std::size_t hits = 0;
            std::size_t idx = 0;
            std::string line;
        };
        std::vector<Scored> lines;
        std::size_t pos = 0, idx = 0;
        while (pos <= context.size()) {
            auto nl = context.find('\n', pos);
            if (nl == std::string::npos) nl = context.size();
            const std::string line = context.substr(pos, nl - pos);
            if (!trim(line).empty()) {
                std::size_t hits = 0;
                for (const auto& t : term_set(line)) hits += q_terms.count(t);
                lines.push_back({hits, idx++, line});
            }
            pos = nl + 1;
            if (nl == context.size()) break;
        }
        std::sort(lines.begin(), lines.end(), [](const Scored& a, const Scored& b) {
            if (a.hits != b.hits) return a.hits > b.hits;
            return a.idx < b.idx;
        });
        std::string out;
        for (std::size_t i = 0; i < lines.size() && i < 3; ++i) {
            if (lines[i].hits == 0) break;
            if (!out.empty()) out += ' ';
            out += trim(lines[i].line);
        }
        return out;
    }
};

class HttpContextAnswerer : public ContextAnswerPort {
public:
    explicit HttpContextAnswerer(PortConfig cfg, int max_output_tokens = 200)
        : client_(std::move(cfg)), max_output_tokens_(max_output_tokens) {}

    std::string answer(const std::string& question, const std::string& context) override {
        const json res = client_.complete(
            "Answer from the conversation below. Say you don't know when it isn't "
            "covered.\n\n" + context + "\nQuestion: " + question,
            json{{"answer", "string"}}, max_output_tokens_);
        if (!res.is_object() || !res.contains("answer"))
            fail(ErrorKind::port, "answer response missing 'answer'");
        return res.at("answer").get<std::string>();
    }

private:
    HttpModelClient client_;
    int max_output_tokens_;
};

}  // namespace synthius
