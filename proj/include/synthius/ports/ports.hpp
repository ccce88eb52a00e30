#pragma once

#include <memory>

#include "synthius/bench/context_answer.hpp"
#include "synthius/bench/embed.hpp"
#include "synthius/bench/judge.hpp"
#include "synthius/consolidation/summarize.hpp"
#include "synthius/extraction/http_port.hpp"
#include "synthius/extraction/reference.hpp"
#include "synthius/retrieval/answer.hpp"
#include "synthius/retrieval/plan.hpp"

namespace synthius {

// Every pluggable model port the pipeline can consume. The reference bundle
// is fully deterministic and needs no network at all.
struct Ports {
    std::unique_ptr<ExtractorPort> extractor;
    std::unique_ptr<PlannerPort> planner;
    std::unique_ptr<AnswerPort> answerer;
    std::unique_ptr<ContextAnswerPort> context_answerer;
    std::unique_ptr<SummarizerPort> summarizer;
    std::unique_ptr<JudgePort> judge;
    std::unique_ptr<EmbedderPort> embedder;

    static Ports reference() {
        Ports p;
        p.extractor = std::make_unique<ReferenceExtractor>();
        p.planner = std::make_unique<ReferencePlanner>();
        p.answerer = std::make_unique<ReferenceAnswerer>();
        p.context_answerer = std::make_unique<ReferenceContextAnswerer>();
        p.summarizer = std::make_unique<ReferenceSummarizer>();
        p.judge = std::make_unique<ReferenceJudge>();
        p.embedder = std::make_unique<DeterministicEmbedder>();
        return p;
    }
};

}  // namespace synthius
