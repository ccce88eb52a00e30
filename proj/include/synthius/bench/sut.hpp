#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "synthius/bench/embed.hpp"
#include "synthius/consolidation/store_build.hpp"
#include "synthius/corpus/locomo.hpp"
#include "synthius/extraction/pipeline.hpp"
#include "synthius/ports/ports.hpp"
#include "synthius/retrieval/answer.hpp"
#include "synthius/retrieval/index.hpp"

namespace synthius {

enum class SutKind { synthius, full_context, sliding_window, summarization, embedding_rag };

inline const char* to_string(SutKind k) {
    switch (k) {
        case SutKind::synthius: return "synthius";
        case SutKind::full_context: return "full_context";
        case SutKind::sliding_window: return "sliding_window";
        case SutKind::summarization: return "summarization";
        case SutKind::embedding_rag: return "embedding_rag";
    }
    return "synthius";
}

inline SutKind sut_from(const std::string& name) {
    for (SutKind k : {SutKind::synthius, SutKind::full_context, SutKind::sliding_window,
                      SutKind::summarization, SutKind::embedding_rag})
        if (name == to_string(k)) return k;
    fail(ErrorKind::config, "unknown system under test '" + name + "'");
}

struct BenchConfig {
    ChunkingConfig chunking;
    ExtractionConfig extraction;
    RetrievalConfig retrieval;
    int window_turns = 20;            // sliding-window size in turns
    long summary_cap_tokens = 2500;   // maintained-summary budget
    long summary_recent_tokens = 500; // raw dialogue tail appended to the summary
    int summary_every_turns = 20;     // compaction cadence
    int rag_top_k = 3;                // sessions retrieved by the embedding baseline
    int question_parallelism = 1;
};

struct ContextResult {
    std::string text;
    long tokens = 0;
};

// Context-construction rules for the baseline variants:
//   full_context   - every message, oldest first
//   sliding_window - only the most recent window_turns messages
//   summarization  - streaming summary state compacted every
//                    summary_every_turns turns (cap summary_cap_tokens),
//                    then the most recent summary_recent_tokens of dialogue
// The synthius variant answers through retrieval, never through raw context.
inline ContextResult build_context(SutKind variant, const Conversation& conv,
                                   const std::string& question, const BenchConfig& cfg,
                                   SummarizerPort* summarizer = nullptr) {
    (void)question;
    const auto messages = conv.all_messages();
    ContextResult out;
    switch (variant) {
        case SutKind::full_context:
            out.text = render_dialogue(messages);
            break;
        case SutKind::sliding_window: {
            std::vector<const Message*> window;
            const std::size_t n = std::min<std::size_t>(messages.size(), cfg.window_turns);
            window.assign(messages.end() - n, messages.end());
            out.text = render_dialogue(window);
            break;
        }
        case SutKind::summarization: {
            if (summarizer == nullptr) fail(ErrorKind::contract, "summarization needs a summarizer");
            std::string summary;
            std::string pending;
            int pending_turns = 0;
            for (const auto* m : messages) {
                pending += m->speaker + ": " + m->body + "\n";
                if (++pending_turns >= cfg.summary_every_turns) {
                    summary = summarizer->summarize(summary + "\n" + pending, cfg.summary_cap_tokens);
                    pending.clear();
                    pending_turns = 0;
                }
            }
            if (!pending.empty())
                summary = summarizer->summarize(summary + "\n" + pending, cfg.summary_cap_tokens);
            // Most recent raw dialogue rides along uncompressed.
            ReferenceSummarizer tail;
            out.text = summary + "\n" + tail.summarize(render_dialogue(messages),
                                                       cfg.summary_recent_tokens);
            break;
        }
        case SutKind::embedding_rag:
        case SutKind::synthius:
            fail(ErrorKind::contract,
                 std::string(to_string(variant)) + " does not answer from raw context");
    }
    out.tokens = count_tokens(out.text);
    return out;
}

struct SutOutcome {
    Answer answer;
    long tokens = 0;
    double latency_ms = 0.0;
};

class SystemUnderTest {
public:
    virtual ~SystemUnderTest() = default;
    virtual SutKind kind() const = 0;
    virtual void prepare(const Conversation& conv) = 0;
    virtual SutOutcome answer_question(const Conversation& conv, const QAItem& qa) = 0;
};

// Full pipeline: per-participant persona build, then planner + CategoryRAG +
// answer port against the target person's store only.
class SynthiusSut : public SystemUnderTest {
public:
    SynthiusSut(Ports& ports, const BenchConfig& cfg) : ports_(ports), cfg_(cfg) {}

    SutKind kind() const override { return SutKind::synthius; }

    void prepare(const Conversation& conv) override {
        personas_.clear();
        for (const auto& person : conv.participants) {
            RawExtraction raw =
                run_extraction(conv, person, cfg_.extraction, *ports_.extractor, cfg_.chunking);
            Persona p;
            p.store = consolidate_store(raw);
            p.index.build(p.store);
            personas_.emplace(to_lower(person), std::move(p));
        }
    }

    SutOutcome answer_question(const Conversation& conv, const QAItem& qa) override {
        (void)conv;
        auto it = personas_.find(to_lower(qa.target_person));
        if (it == personas_.end())
            fail(ErrorKind::scope, "no persona for '" + qa.target_person + "'");
        SutOutcome out;
        const RetrievalResult result =
            retrieve(it->second.store, it->second.index, qa.question, *ports_.planner, cfg_.retrieval);
        out.latency_ms = result.latency_ms;
        out.answer = answer(qa.question, it->second.store, result, *ports_.answerer, cfg_.retrieval);
        out.tokens = count_tokens(out.answer.text);
        return out;
    }

    const PersonaStore* store_for(const std::string& person) const {
        auto it = personas_.find(to_lower(person));
        return it == personas_.end() ? nullptr : &it->second.store;
    }

private:
    struct Persona {
        PersonaStore store;
        RetrievalIndex index;
    };
    Ports& ports_;
    BenchConfig cfg_;
    std::map<std::string, Persona> personas_;
};

// The four raw-context baselines share one implementation differing only in
// context construction.
class ContextSut : public SystemUnderTest {
public:
    ContextSut(SutKind kind, Ports& ports, const BenchConfig& cfg)
        : kind_(kind), ports_(ports), cfg_(cfg) {}

    SutKind kind() const override { return kind_; }

    void prepare(const Conversation& conv) override {
        summary_cache_.clear();
        if (kind_ == SutKind::summarization) {
            // Streaming summarizer state is question-independent, fold once.
            summary_cache_[conv.id] =
                build_context(SutKind::summarization, conv, "", cfg_, ports_.summarizer.get());
        }
    }

    SutOutcome answer_question(const Conversation& conv, const QAItem& qa) override {
        const auto start = std::chrono::steady_clock::now();
        ContextResult context;
        if (kind_ == SutKind::embedding_rag) {
            const auto sessions =
                rag_retrieve_sessions(conv, qa.question, *ports_.embedder, cfg_.rag_top_k);
            for (const auto* s : sessions)
                for (const auto& m : s->messages) context.text += m.speaker + ": " + m.body + "\n";
            context.tokens = count_tokens(context.text);
        } else if (kind_ == SutKind::summarization) {
            context = summary_cache_.at(conv.id);
        } else {
            context = build_context(kind_, conv, qa.question, cfg_);
        }

        SutOutcome out;
        out.tokens = context.tokens;
        const std::string text = ports_.context_answerer->answer(qa.question, context.text);
        if (trim(text).empty() || looks_like_refusal(text)) {
            out.answer.kind = AnswerKind::refusal;
            out.answer.text = text.empty() ? kRefusalText : text;
        } else {
            out.answer.kind = AnswerKind::grounded;
            out.answer.text = text;
        }
        out.latency_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return out;
    }

private:
    SutKind kind_;
    Ports& ports_;
    BenchConfig cfg_;
    std::map<std::string, ContextResult> summary_cache_;
};

inline std::unique_ptr<SystemUnderTest> make_sut(SutKind kind, Ports& ports,
                                                 const BenchConfig& cfg) {
    if (kind == SutKind::synthius) return std::make_unique<SynthiusSut>(ports, cfg);
    return std::make_unique<ContextSut>(kind, ports, cfg);
}

}  // namespace synthius
