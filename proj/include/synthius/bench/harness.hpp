#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "synthius/bench/score.hpp"
#include "synthius/bench/sut.hpp"

namespace synthius {

// Run every question of the dataset through one system under test. Persona
// building (prepare) is a serialized per-conversation phase; questions then
// run on up to question_parallelism workers into fixed slots, so the verdict
// order never depends on scheduling. Per-question failures are recorded and
// the run continues.
inline ScoreReport run_benchmark(const std::vector<LocomoRecord>& dataset, SutKind kind,
                                 Ports& ports, const BenchConfig& cfg = {},
                                 const std::filesystem::path* verdict_log = nullptr) {
    std::size_t questions = 0;
    for (const auto& rec : dataset) questions += rec.qa.size();
    if (dataset.empty() || questions == 0)
        fail(ErrorKind::contract, "benchmark dataset has no questions");

    std::vector<VerdictRecord> verdicts;
    auto sut = make_sut(kind, ports, cfg);

    for (const auto& rec : dataset) {
        std::vector<VerdictRecord> slots(rec.qa.size());
        sut->prepare(rec.conversation);

        auto run_question = [&](std::size_t qi) {
            const QAItem& qa = rec.qa[qi];
            VerdictRecord v;
            v.qa_id = qa.id;
            v.sut = kind;
            v.question = qa.question;
            v.reasoning_category = qa.reasoning_category;
            v.knowledge_category = qa.knowledge_category;
            v.target_person = qa.target_person;
            try {
                const SutOutcome outcome = sut->answer_question(rec.conversation, qa);
                v.answer_text = outcome.answer.text;
                v.answer_kind = outcome.answer.kind;
                v.latency_ms = outcome.latency_ms;
                v.tokens = outcome.tokens;
                v.cited_fact_ids = outcome.answer.cited_fact_ids;
                v.verdict = judge_binary(qa, outcome.answer, *ports.judge);
            } catch (const Error& e) {
                v.verdict = -1;
                v.error = e.what();
            }
            slots[qi] = std::move(v);
        };

        if (cfg.question_parallelism <= 1) {
            for (std::size_t qi = 0; qi < rec.qa.size(); ++qi) run_question(qi);
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (;;) {
                    const std::size_t qi = next.fetch_add(1);
                    if (qi >= rec.qa.size()) return;
                    run_question(qi);
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < cfg.question_parallelism; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (auto& v : slots) verdicts.push_back(std::move(v));
    }

    if (verdict_log != nullptr) {
        std::ofstream out(*verdict_log, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot write " + verdict_log->string());
        for (const auto& v : verdicts) out << v.log_json().dump() << "\n";
    }
    return score_by_category(std::move(verdicts));
}

}  // namespace synthius
