#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "synthius/retrieval/index.hpp"
#include "synthius/retrieval/plan.hpp"

namespace synthius {

struct Match {
    std::string fact_id;
    Domain domain = Domain::biography;
    double score = 0.0;
    std::vector<std::string> matched_fields;
};

struct RetrievalConfig {
    int k = 5;                        // per-domain cut
    double evidence_threshold = 1.0;  // one full-weight field hit
    long render_cap_tokens = 2000;    // grounded-answer context budget
};

// Top-k field-weighted matches within one domain; scores below the evidence
// threshold never surface.
inline std::vector<Match> category_rag(const RetrievalIndex& index, Domain domain,
                                       const std::vector<std::string>& query_terms, int k,
                                       double threshold) {
    if (domain == Domain::style) fail(ErrorKind::non_queryable, "style is not a queryable domain");
    if (k < 1) fail(ErrorKind::contract, "k must be >= 1");

    std::vector<Match> matches;
    for (const auto& [fact_id, hit] : index.query(domain, query_terms)) {
        if (hit.score < threshold || hit.score <= 0.0) continue;
        Match m;
        m.fact_id = fact_id;
        m.domain = domain;
        m.score = hit.score;
        m.matched_fields.assign(hit.matched_fields.begin(), hit.matched_fields.end());
        matches.push_back(std::move(m));
    }
    std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.fact_id < b.fact_id;
    });
    if (matches.size() > static_cast<std::size_t>(k)) matches.resize(k);
    return matches;
}

struct RetrievalResult {
    RetrievalPlan plan;
    std::vector<Match> matches;  // merged ranking: score desc, fact_id asc
    double latency_ms = 0.0;     // matching only; planning excluded
    bool evidence_found = false;
};

// Planned multi-domain retrieval. Domain scores are normalized by their
// domain's maximum before interleaving so verbose domains cannot drown quiet
// ones.
inline RetrievalResult retrieve(const PersonaStore& store, const RetrievalIndex& index,
                                const std::string& question, PlannerPort& planner,
                                const RetrievalConfig& cfg = {}) {
    RetrievalResult result;
    result.plan = plan(question, planner, store.person_id());

    const auto start = std::chrono::steady_clock::now();
    std::vector<Match> merged;
    for (Domain d : result.plan.selected_domains) {
        auto it = result.plan.query_terms.find(d);
        const std::vector<std::string> empty;
        const auto& terms = it == result.plan.query_terms.end() ? empty : it->second;
        std::vector<Match> domain_matches =
            category_rag(index, d, terms, cfg.k, cfg.evidence_threshold);
        double max_score = 0.0;
        for (const auto& m : domain_matches) max_score = std::max(max_score, m.score);
        for (auto& m : domain_matches) {
            m.score = max_score > 0.0 ? m.score / max_score : 0.0;
            merged.push_back(std::move(m));
        }
    }
    std::sort(merged.begin(), merged.end(), [](const Match& a, const Match& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.fact_id < b.fact_id;
    });
    result.matches = std::move(merged);
    result.evidence_found = !result.matches.empty();
    result.latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace synthius
