#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthius/bench/sut.hpp"
#include "synthius/corpus/locomo.hpp"

namespace synthius {

// 100 * correct / total, rounded half-up to 2 decimals with exact integer
// arithmetic before rounding.
inline double percentage(std::size_t correct, std::size_t total) {
    if (total == 0) fail(ErrorKind::contract, "percentage of zero questions");
    const unsigned long long hundredths =
        (static_cast<unsigned long long>(correct) * 10000ull * 2ull + total) /
        (2ull * static_cast<unsigned long long>(total));
    return static_cast<double>(hundredths) / 100.0;
}

struct VerdictRecord {
    std::string qa_id;
    SutKind sut = SutKind::synthius;
    std::string question;
    std::string answer_text;
    AnswerKind answer_kind = AnswerKind::refusal;
    int verdict = -1;  // 1 correct, 0 wrong, -1 judge/answer error (excluded from totals)
    double latency_ms = 0.0;
    long tokens = 0;
    ReasoningCategory reasoning_category = ReasoningCategory::single_hop;
    std::optional<KnowledgeCategory> knowledge_category;
    std::string target_person;
    std::vector<std::string> cited_fact_ids;
    std::string error;

    json log_json() const {  // verdict-log record; includes measured latency
        json j = {{"qa_id", qa_id},
                  {"sut", to_string(sut)},
                  {"question", question},
                  {"answer", answer_text},
                  {"answer_kind", answer_kind == AnswerKind::grounded ? "grounded" : "refusal"},
                  {"verdict", verdict},
                  {"latency_ms", latency_ms},
                  {"tokens", tokens},
                  {"reasoning_category", to_string(reasoning_category)},
                  {"target_person", target_person},
                  {"cited_fact_ids", cited_fact_ids}};
        j["knowledge_category"] =
            knowledge_category ? json(to_string(*knowledge_category)) : json(nullptr);
        if (!error.empty()) j["error"] = error;
        return j;
    }

    json report_json() const {  // report entry; latency excluded so reports are reproducible
        json j = log_json();
        j.erase("latency_ms");
        return j;
    }
};

struct CategoryScore {
    std::size_t total = 0;
    std::size_t correct = 0;

    double pct() const { return percentage(correct, total); }
};

struct ScoreReport {
    SutKind sut = SutKind::synthius;
    CategoryScore overall;
    std::map<std::string, CategoryScore> by_reasoning;
    std::map<std::string, CategoryScore> by_knowledge;
    std::size_t errors = 0;  // verdicts excluded from totals
    std::vector<VerdictRecord> verdicts;

    json to_json() const {
        auto categories = [](const std::map<std::string, CategoryScore>& m) {
            json out = json::object();
            for (const auto& [name, score] : m)
                out[name] = {{"total", score.total}, {"correct", score.correct}, {"pct", score.pct()}};
            return out;
        };
        json per_question = json::array();
        for (const auto& v : verdicts) per_question.push_back(v.report_json());
        return {{"sut", to_string(sut)},
                {"overall", {{"total", overall.total}, {"correct", overall.correct}, {"pct", overall.pct()}}},
                {"by_reasoning_category", categories(by_reasoning)},
                {"by_knowledge_category", categories(by_knowledge)},
                {"errors", errors},
                {"verdicts", per_question}};
    }

    std::string render_text() const {
        char line[160];
        std::string out;
        std::snprintf(line, sizeof(line), "SUT: %s\n", to_string(sut));
        out += line;
        std::snprintf(line, sizeof(line), "overall: %zu/%zu = %.2f%%\n", overall.correct,
                      overall.total, overall.pct());
        out += line;
        out += "reasoning categories:\n";
        for (const auto& [name, s] : by_reasoning) {
            std::snprintf(line, sizeof(line), "  %-14s %4zu/%-4zu %.2f%%\n", name.c_str(), s.correct,
                          s.total, s.pct());
            out += line;
        }
        if (!by_knowledge.empty()) {
            out += "knowledge categories:\n";
            for (const auto& [name, s] : by_knowledge) {
                std::snprintf(line, sizeof(line), "  %-18s %4zu/%-4zu %.2f%%\n", name.c_str(),
                              s.correct, s.total, s.pct());
                out += line;
            }
        }
        if (errors > 0) {
            std::snprintf(line, sizeof(line), "errors excluded from totals: %zu\n", errors);
            out += line;
        }
        return out;
    }
};

// Aggregate judged verdicts under both taxonomies. Categories with zero
// questions are omitted rather than reported as 0%.
inline ScoreReport score_by_category(std::vector<VerdictRecord> verdicts) {
    ScoreReport report;
    if (!verdicts.empty()) report.sut = verdicts.front().sut;
    for (const auto& v : verdicts) {
        if (v.verdict < 0) {
            ++report.errors;
            continue;
        }
        const std::size_t ok = v.verdict == 1 ? 1 : 0;
        report.overall.total += 1;
        report.overall.correct += ok;
        auto& r = report.by_reasoning[to_string(v.reasoning_category)];
        r.total += 1;
        r.correct += ok;
        if (v.knowledge_category) {
            auto& k = report.by_knowledge[to_string(*v.knowledge_category)];
            k.total += 1;
            k.correct += ok;
        }
    }
    if (report.overall.total == 0)
        fail(ErrorKind::contract, "no judged questions to score");
    report.verdicts = std::move(verdicts);
    return report;
}

}  // namespace synthius
