#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "synthius/bench/sut.hpp"
#include "synthius/corpus/locomo.hpp"
#include "synthius/ports/ports.hpp"

namespace synthius {

struct AppConfig {
    std::filesystem::path data_dir = "data";
    std::map<std::string, PortConfig> ports;  // extractor, planner, answerer, context_answerer,
                                              // summarizer, judge, embedder
    ChunkingConfig chunking;
    ExtractionConfig extraction;
    RetrievalConfig retrieval;
    BenchConfig bench;
    int http_port = 8087;

    static AppConfig from_json(const json& j) {
        AppConfig cfg;
        if (j.contains("data_dir")) cfg.data_dir = j.at("data_dir").get<std::string>();
        if (j.contains("http_port")) cfg.http_port = j.at("http_port").get<int>();
        if (j.contains("ports")) {
            for (auto it = j.at("ports").begin(); it != j.at("ports").end(); ++it) {
                PortConfig pc;
                const json& jp = it.value();
                if (jp.is_string()) {
                    pc.kind = jp.get<std::string>();
                } else {
                    pc.kind = jp.value("kind", "reference");
                    pc.base_url = jp.value("base_url", "");
                    pc.path = jp.value("path", "/v1/complete");
                    pc.model = jp.value("model", "");
                    pc.api_key_env = jp.value("api_key_env", "");
                    pc.timeout_ms = jp.value("timeout_ms", 30000);
                }
                validate(pc, it.key());
                cfg.ports[it.key()] = pc;
            }
        }
        if (j.contains("chunking")) {
            cfg.chunking.budget_tokens = j.at("chunking").value("budget_tokens", 4000);
            cfg.chunking.overlap_tokens = j.at("chunking").value("overlap_tokens", 200);
            validate(cfg.chunking);
        }
        if (j.contains("extraction")) {
            const json& je = j.at("extraction");
            cfg.extraction.parallelism = je.value("parallelism", 4);
            cfg.extraction.max_retries = je.value("max_retries", 2);
            cfg.extraction.relevance_threshold = je.value("relevance_threshold", 0.3);
            cfg.extraction.include_style = je.value("include_style", false);
            validate(cfg.extraction);
        }
        if (j.contains("retrieval")) {
            const json& jr = j.at("retrieval");
            cfg.retrieval.k = jr.value("k", 5);
            cfg.retrieval.evidence_threshold = jr.value("evidence_threshold", 1.0);
            cfg.retrieval.render_cap_tokens = jr.value("render_cap_tokens", 2000L);
            if (cfg.retrieval.k < 1) fail(ErrorKind::config, "retrieval.k must be >= 1");
        }
        if (j.contains("bench")) {
            const json& jb = j.at("bench");
            cfg.bench.window_turns = jb.value("window_turns", 20);
            cfg.bench.summary_cap_tokens = jb.value("summary_cap_tokens", 2500L);
            cfg.bench.summary_recent_tokens = jb.value("summary_recent_tokens", 500L);
            cfg.bench.summary_every_turns = jb.value("summary_every_turns", 20);
            cfg.bench.rag_top_k = jb.value("rag_top_k", 3);
            cfg.bench.question_parallelism = jb.value("question_parallelism", 1);
        }
        cfg.bench.chunking = cfg.chunking;
        cfg.bench.extraction = cfg.extraction;
        cfg.bench.retrieval = cfg.retrieval;
        return cfg;
    }

    static AppConfig from_file(const std::filesystem::path& path) {
        try {
            return from_json(json::parse(read_file(path.string())));
        } catch (const json::parse_error& e) {
            fail(ErrorKind::config, path.string() + ": " + e.what());
        }
    }

    PortConfig port(const std::string& name) const {
        auto it = ports.find(name);
        return it == ports.end() ? PortConfig{} : it->second;
    }

    Ports make_ports() const {
        Ports p = Ports::reference();
        auto want_http = [&](const std::string& name) {
            auto it = ports.find(name);
            return it != ports.end() && !it->second.is_reference();
        };
        if (want_http("extractor")) p.extractor = std::make_unique<HttpExtractor>(port("extractor"));
        if (want_http("planner")) p.planner = std::make_unique<HttpPlanner>(port("planner"));
        if (want_http("answerer")) p.answerer = std::make_unique<HttpAnswerer>(port("answerer"));
        if (want_http("context_answerer"))
            p.context_answerer = std::make_unique<HttpContextAnswerer>(port("context_answerer"));
        if (want_http("summarizer")) p.summarizer = std::make_unique<HttpSummarizer>(port("summarizer"));
        if (want_http("judge")) p.judge = std::make_unique<HttpJudge>(port("judge"));
        if (want_http("embedder")) p.embedder = std::make_unique<HttpEmbedder>(port("embedder"));
        return p;
    }
};

}  // namespace synthius
