#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "synthius/consolidation/dates.hpp"
#include "synthius/persona/render.hpp"
#include "synthius/persona/store.hpp"
#include "synthius/ports/model_client.hpp"

namespace synthius {

class SummarizerPort {
public:
    virtual ~SummarizerPort() = default;
    // Compress content into at most max_tokens tokens of summary text.
    virtual std::string summarize(const std::string& content, long max_tokens) = 0;
};

// Deterministic stand-in: keeps the most recent max_tokens tokens verbatim.
// Recency-keeping mirrors what iterated LLM compaction does to old details.
class ReferenceSummarizer : public SummarizerPort {
public:
    std::string summarize(const std::string& content, long max_tokens) override {
        if (max_tokens <= 0) return "";
        std::vector<std::pair<std::size_t, std::size_t>> spans;  // token offsets
        scan_tokens(content, [&](std::string_view tok) {
            spans.emplace_back(tok.data() - content.data(), tok.size());
        });
        if (static_cast<long>(spans.size()) <= max_tokens) return content;
        const auto& first = spans[spans.size() - max_tokens];
        return content.substr(first.first);
    }
};

class HttpSummarizer : public SummarizerPort {
public:
    explicit HttpSummarizer(PortConfig cfg) : client_(std::move(cfg)) {}

    std::string summarize(const std::string& content, long max_tokens) override {
        const json schema = {{"summary", "string"}};
        const json res = client_.complete(
            "Summarize the following, preserving factual content, names, dates and "
            "relationships:\n\n" + content,
            schema, static_cast<int>(max_tokens));
        if (!res.is_object() || !res.contains("summary"))
            fail(ErrorKind::port, "summarizer response missing 'summary'");
        return res.at("summary").get<std::string>();
    }

private:
    HttpModelClient client_;
};

// Narrative plus life-event timeline. The timeline holds exactly the
// time-anchored biography facts and experience roots, sorted by anchor; the
// narrative is the port's rendering of the per-category fact render. Port
// failure omits the summary with a warning instead of invalidating the store.
inline std::optional<BiographySummary> summarize(const PersonaStore& store, SummarizerPort& port,
                                                 std::string* warning = nullptr,
                                                 long narrative_token_cap = 100000) {
    BiographySummary summary;

    struct Entry {
        std::string anchor;
        std::string event;
        std::string fact_id;
    };
    std::vector<Entry> entries;
    for (const auto& f : store.get_domain(Domain::biography)) {
        const auto& bio = std::get<BiographyFact>(f);
        if (bio.time_anchor)
            entries.push_back({*bio.time_anchor, bio.core.person_id + " " + bio.statement,
                               bio.core.fact_id});
    }
    for (const auto& f : store.get_domain(Domain::experiences)) {
        const auto& exp = std::get<ExperienceNode>(f);
        if (exp.time_anchor && !exp.parent_id)
            entries.push_back({*exp.time_anchor, exp.title, exp.core.fact_id});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        const int cmp = compare_anchor(a.anchor, b.anchor);
        if (cmp != 0) return cmp < 0;
        return a.fact_id < b.fact_id;
    });
    for (auto& e : entries) summary.timeline.push_back({e.anchor, e.event, {e.fact_id}});

    std::string content;
    for (Domain d : kQueryableDomains) {
        const auto facts = store.get_domain(d);
        if (facts.empty()) continue;
        content += std::string(to_string(d)) + ": ";
        for (std::size_t i = 0; i < facts.size(); ++i) {
            if (i) content += "; ";
            content += render_fact(facts[i]);
        }
        content += "\n";
    }
    try {
        summary.narrative = content.empty() ? "" : port.summarize(content, narrative_token_cap);
    } catch (const Error& e) {
        if (warning) *warning = std::string("summary omitted: ") + e.what();
        return std::nullopt;
    }
    return summary;
}

}  // namespace synthius
