#pragma once

#include <vector>

#include "synthius/common.hpp"
#include "synthius/corpus/model.hpp"

namespace synthius {

struct ChunkingConfig {
    long budget_tokens = 4000;
    long overlap_tokens = 200;
};

inline void validate(const ChunkingConfig& cfg) {
    if (cfg.budget_tokens <= 0) fail(ErrorKind::config, "chunk budget must be positive");
    if (cfg.overlap_tokens < 0) fail(ErrorKind::config, "chunk overlap must be non-negative");
    if (cfg.overlap_tokens >= cfg.budget_tokens)
        fail(ErrorKind::config, "chunk overlap must be smaller than the budget");
}

struct Chunk {
    std::size_t index = 0;
    std::string conversation_id;
    std::vector<Message> messages;
    long token_total = 0;
    std::size_t overlap_prefix_len = 0;  // messages repeated from the previous chunk

    std::string text() const {
        std::string out;
        for (const auto& m : messages) {
            out += m.speaker;
            out += ": ";
            out += m.body;
            out += '\n';
        }
        return out;
    }
};

// Greedy fill: append messages until the next one would exceed the budget,
// then seed the following chunk with the maximal trailing run of messages
// whose tokens total <= overlap_tokens. Messages are never split; a message
// larger than the whole budget gets a chunk of its own.
inline std::vector<Chunk> chunk(const Conversation& conv, const ChunkingConfig& cfg = {}) {
    validate(cfg);
    const auto messages = conv.all_messages();
    std::vector<Chunk> chunks;
    if (messages.empty()) return chunks;

    std::vector<const Message*> overlap;
    long overlap_total = 0;
    std::size_t i = 0;

    while (i < messages.size()) {
        Chunk c;
        c.index = chunks.size();
        c.conversation_id = conv.id;

        auto pending_overlap = overlap;
        long pending_total = overlap_total;
        // Shrink the carried overlap if it would leave no room for the next message.
        while (!pending_overlap.empty() &&
               pending_total + messages[i]->token_count > cfg.budget_tokens) {
            pending_total -= pending_overlap.front()->token_count;
            pending_overlap.erase(pending_overlap.begin());
        }
        for (const auto* m : pending_overlap) c.messages.push_back(*m);
        c.token_total = pending_total;
        c.overlap_prefix_len = pending_overlap.size();

        // Always take at least one new message, even an over-budget one.
        c.messages.push_back(*messages[i]);
        c.token_total += messages[i]->token_count;
        ++i;
        while (i < messages.size() && c.token_total + messages[i]->token_count <= cfg.budget_tokens) {
            c.messages.push_back(*messages[i]);
            c.token_total += messages[i]->token_count;
            ++i;
        }

        overlap.clear();
        overlap_total = 0;
        if (i < messages.size() && cfg.overlap_tokens > 0) {
            std::size_t take = 0;
            long total = 0;
            while (take < c.messages.size()) {
                const auto& m = c.messages[c.messages.size() - 1 - take];
                if (total + m.token_count > cfg.overlap_tokens) break;
                total += m.token_count;
                ++take;
            }
            for (std::size_t k = c.messages.size() - take; k < c.messages.size(); ++k)
                overlap.push_back(messages[i - (c.messages.size() - k)]);
            overlap_total = total;
        }

        chunks.push_back(std::move(c));
    }
    return chunks;
}

// De-overlapped concatenation; equals the conversation's message sequence.
inline std::vector<Message> reconstruct(const std::vector<Chunk>& chunks) {
    std::vector<Message> out;
    for (const auto& c : chunks)
        for (std::size_t k = c.overlap_prefix_len; k < c.messages.size(); ++k)
            out.push_back(c.messages[k]);
    return out;
}

}  // namespace synthius
