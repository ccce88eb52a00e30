#pragma once

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "synthius/corpus/chunk.hpp"
#include "synthius/extraction/port.hpp"
#include "synthius/extraction/schema.hpp"

namespace synthius {

// Validate, scope and threshold-filter the candidates of one chunk x domain
// call. Provenance missing a chunk coordinate is filled in from the chunk.
inline std::vector<DomainFact> extract_chunk(const Chunk& chunk, const std::string& person_id,
                                             Domain domain, ExtractorPort& port,
                                             const ExtractionConfig& cfg = {},
                                             ExtractionStats* stats = nullptr) {
    ExtractRequest request{&chunk, person_id, domain, extraction_schema(domain)};
    std::vector<Candidate> candidates;
    int attempts = 0;
    for (;;) {
        try {
            if (stats) ++stats->port_calls;
            candidates = port.extract(request);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::port || attempts++ >= cfg.max_retries) throw;
        }
    }

    std::vector<DomainFact> accepted;
    for (auto& cand : candidates) {
        FactCore& c = core(cand.fact);
        if (c.provenance.empty() && !chunk.messages.empty())
            c.provenance.push_back({chunk.conversation_id, chunk.index, chunk.messages.front().id});
        try {
            if (c.person_id != person_id) fail(ErrorKind::scope, "candidate scoped to wrong person");
            if (c.domain != domain) fail(ErrorKind::validation, "candidate in wrong domain");
            if (cand.salience < 0.0 || cand.salience > 1.0)
                fail(ErrorKind::validation, "salience out of range");
            validate_fact(cand.fact, /*require_provenance=*/true);
        } catch (const Error&) {
            if (stats) ++stats->rejected_candidates;
            continue;
        }
        if (cand.salience < cfg.relevance_threshold) {
            if (stats) ++stats->rejected_candidates;
            continue;
        }
        accepted.push_back(std::move(cand.fact));
    }
    return accepted;
}

// Parallel per-chunk, per-domain extraction. Results assemble into fixed
// (chunk, domain) slots, so output order is independent of worker count.
inline RawExtraction run_extraction(const Conversation& conv, const std::string& person_id,
                                    const ExtractionConfig& cfg, ExtractorPort& port,
                                    const ChunkingConfig& chunking = {}) {
    validate(cfg);
    if (!conv.has_participant(person_id))
        fail(ErrorKind::scope, "'" + person_id + "' is not a participant of " + conv.id);

    RawExtraction result;
    result.person_id = person_id;

    const std::vector<Chunk> chunks = chunk(conv, chunking);
    result.stats.chunks_processed = chunks.size();
    if (chunks.empty()) return result;

    std::vector<Domain> domains = cfg.domains;
    if (cfg.include_style) domains.push_back(Domain::style);

    struct Task {
        std::size_t chunk_idx;
        Domain domain;
    };
    std::vector<Task> tasks;
    for (std::size_t ci = 0; ci < chunks.size(); ++ci)
        for (Domain d : domains) tasks.push_back({ci, d});

    std::vector<std::vector<DomainFact>> slots(tasks.size());
    std::vector<ExtractionStats> slot_stats(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};

    int workers = cfg.parallelism;
    if (port.concurrency_limit() > 0) workers = std::min(workers, port.concurrency_limit());

    auto run_worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            const Task& t = tasks[idx];
            try {
                slots[idx] = extract_chunk(chunks[t.chunk_idx], person_id, t.domain, port, cfg,
                                           &slot_stats[idx]);
            } catch (const Error&) {
                // Failure isolation: a failing chunk-domain pair never aborts the run.
                ++failures;
            }
        }
    };

    if (workers <= 1) {
        run_worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
        result.stats.port_calls += slot_stats[idx].port_calls;
        result.stats.rejected_candidates += slot_stats[idx].rejected_candidates;
        result.stats.input_tokens += chunks[tasks[idx].chunk_idx].token_total;
        for (auto& f : slots[idx]) {
            result.stats.facts_per_domain[to_string(domain_of(f))] += 1;
            result.stats.output_tokens += count_tokens(to_json(f).dump());
            result.facts.push_back(std::move(f));
        }
    }
    result.stats.failures = failures.load();
    return result;
}

}  // namespace synthius
