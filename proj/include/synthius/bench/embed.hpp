#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "synthius/corpus/model.hpp"
#include "synthius/ports/model_client.hpp"
#include "synthius/text.hpp"

namespace synthius {

inline constexpr std::size_t kEmbedDim = 256;

// Hashed bag-of-words embedding: every normalized token lands in an FNV-1a
// bucket, counts accumulate, the vector is L2-normalized. Empty text stays
// the all-zero vector with cosine 0 against anything by convention.
inline std::vector<double> deterministic_embed(const std::string& text) {
    std::vector<double> v(kEmbedDim, 0.0);
    for (const auto& tok : normalized_terms(text)) {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : tok) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        v[h % kEmbedDim] += 1.0;
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) return 0.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

class EmbedderPort {
public:
    virtual ~EmbedderPort() = default;
    virtual std::vector<double> embed(const std::string& text) = 0;
};

class DeterministicEmbedder : public EmbedderPort {
public:
    std::vector<double> embed(const std::string& text) override { return deterministic_embed(text); }
};

class HttpEmbedder : public EmbedderPort {
public:
    explicit HttpEmbedder(PortConfig cfg) : client_(std::move(cfg)) {}

    std::vector<double> embed(const std::string& text) override {
        const json res =
            client_.complete(text, json{{"embedding", "array of numbers"}}, 0);
        if (!res.is_object() || !res.contains("embedding"))
            fail(ErrorKind::port, "embedder response missing 'embedding'");
        return res.at("embedding").get<std::vector<double>>();
    }

private:
    HttpModelClient client_;
};

// Per-session chunks ranked by cosine similarity against the question; the
// embedding-RAG baseline's retrieval step.
inline std::vector<const Session*> rag_retrieve_sessions(const Conversation& conv,
                                                         const std::string& question,
                                                         EmbedderPort& embedder, int k = 3) {
    if (conv.sessions.empty()) fail(ErrorKind::contract, "conversation has no sessions");
    const auto query = embedder.embed(question);

    struct Scored {
        double score;
        std::size_t idx;
    };
    std::vector<Scored> scored;
    for (std::size_t i = 0; i < conv.sessions.size(); ++i) {
        std::string text;
        for (const auto& m : conv.sessions[i].messages) text += m.speaker + ": " + m.body + "\n";
        scored.push_back({cosine(query, embedder.embed(text)), i});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.idx < b.idx;
    });
    std::vector<const Session*> out;
    for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(k); ++i)
        out.push_back(&conv.sessions[scored[i].idx]);
    return out;
}

}  // namespace synthius
