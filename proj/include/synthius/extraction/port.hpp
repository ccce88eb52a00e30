#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthius/corpus/chunk.hpp"
#include "synthius/persona/fact.hpp"

namespace synthius {

// A candidate produced by an extractor before validation; salience below the
// configured relevance threshold drops the fact (peripheral-mention filter).
struct Candidate {
    DomainFact fact;
    double salience = 1.0;
};

struct ExtractRequest {
    const Chunk* chunk = nullptr;
    std::string person_id;
    Domain domain = Domain::biography;
    json schema;  // output schema descriptor forwarded to model-backed ports
};

class ExtractorPort {
public:
    virtual ~ExtractorPort() = default;
    // Returns schema-shaped candidates; throws Error(ErrorKind::port) on failure.
    virtual std::vector<Candidate> extract(const ExtractRequest& request) = 0;
    // Ports that cannot take concurrent calls declare a limit of 1.
    virtual int concurrency_limit() const { return 0; }  // 0 = unrestricted
};

struct ExtractionStats {
    std::size_t chunks_processed = 0;
    std::size_t port_calls = 0;
    std::size_t failures = 0;           // chunk-domain pairs abandoned after retries
    std::size_t rejected_candidates = 0;  // schema-invalid or sub-threshold
    std::map<std::string, std::size_t> facts_per_domain;
    long input_tokens = 0;
    long output_tokens = 0;

    json to_json() const {
        return {{"chunks_processed", chunks_processed},
                {"port_calls", port_calls},
                {"failures", failures},
                {"rejected_candidates", rejected_candidates},
                {"facts_per_domain", facts_per_domain},
                {"input_tokens", input_tokens},
                {"output_tokens", output_tokens}};
    }
};

struct RawExtraction {
    std::string person_id;
    std::vector<DomainFact> facts;  // pre-consolidation candidates, all domains
    ExtractionStats stats;

    std::vector<DomainFact> domain_facts(Domain d) const {
        std::vector<DomainFact> out;
        for (const auto& f : facts)
            if (domain_of(f) == d) out.push_back(f);
        return out;
    }
};

struct ExtractionConfig {
    std::vector<Domain> domains = {Domain::biography, Domain::experiences, Domain::preferences,
                                   Domain::social,    Domain::work,        Domain::psychometrics};
    bool include_style = false;
    int parallelism = 4;
    int max_retries = 2;
    double relevance_threshold = 0.3;
};

inline void validate(const ExtractionConfig& cfg) {
    if (cfg.parallelism < 1) fail(ErrorKind::config, "parallelism must be >= 1");
    if (cfg.max_retries < 0) fail(ErrorKind::config, "max_retries must be >= 0");
    if (cfg.relevance_threshold < 0.0 || cfg.relevance_threshold > 1.0)
        fail(ErrorKind::config, "relevance_threshold must be within [0,1]");
}

}  // namespace synthius
