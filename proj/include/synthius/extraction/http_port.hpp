#pragma once

#include <string>
#include <vector>

#include "synthius/extraction/port.hpp"
#include "synthius/extraction/schema.hpp"
#include "synthius/ports/model_client.hpp"

namespace synthius {

// Extractor speaking the shared model wire protocol. The response must be
// {"facts": [{...payload fields, upper_category, confidence, salience,
// message_id}]}; anything else is a port error so retries apply.
class HttpExtractor : public ExtractorPort {
public:
    explicit HttpExtractor(PortConfig cfg, int max_output_tokens = 2000)
        : client_(std::move(cfg)), max_output_tokens_(max_output_tokens) {}

    std::vector<Candidate> extract(const ExtractRequest& request) override {
        if (request.chunk == nullptr) fail(ErrorKind::contract, "extract request missing chunk");
        const json response = client_.complete(
            extraction_prompt(request.domain, request.person_id, request.chunk->text()),
            request.schema, max_output_tokens_);
        if (!response.is_object() || !response.contains("facts") || !response.at("facts").is_array())
            fail(ErrorKind::port, "extractor response missing 'facts' array");

        std::vector<Candidate> out;
        for (const auto& jf : response.at("facts")) {
            json fact = jf;
            fact["domain"] = to_string(request.domain);
            fact["person_id"] = request.person_id;
            fact.erase("fact_id");
            const std::string message_id =
                jf.value("message_id", request.chunk->messages.empty()
                                           ? std::string()
                                           : request.chunk->messages.front().id);
            fact["provenance"] = json::array({{{"conversation_id", request.chunk->conversation_id},
                                               {"chunk_index", request.chunk->index},
                                               {"message_id", message_id}}});
            Candidate cand;
            cand.salience = jf.value("salience", 1.0);
            try {
                cand.fact = fact_from_json(fact);
            } catch (const Error&) {
                // Leave schema enforcement to extract_chunk: emit a candidate
                // that fails validation rather than aborting the whole call.
                BiographyFact invalid;
                invalid.core.person_id = request.person_id;
                invalid.core.domain = Domain::biography;
                cand.fact = invalid;
                cand.salience = -1.0;
            }
            out.push_back(std::move(cand));
        }
        return out;
    }

private:
    HttpModelClient client_;
    int max_output_tokens_;
};

}  // namespace synthius
