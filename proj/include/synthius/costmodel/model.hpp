#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include <json.hpp>

#include "synthius/common.hpp"

namespace synthius {

enum class Approach { full_context, synthius_mem, embedding_rag, summarization, sliding_window };

inline constexpr Approach kAllApproaches[] = {Approach::full_context, Approach::synthius_mem,
                                              Approach::embedding_rag, Approach::summarization,
                                              Approach::sliding_window};

inline const char* to_string(Approach a) {
    switch (a) {
        case Approach::full_context: return "full_context";
        case Approach::synthius_mem: return "synthius_mem";
        case Approach::embedding_rag: return "embedding_rag";
        case Approach::summarization: return "summarization";
        case Approach::sliding_window: return "sliding_window";
    }
    return "full_context";
}

inline Approach approach_from(const std::string& name) {
    for (Approach a : kAllApproaches)
        if (name == to_string(a)) return a;
    fail(ErrorKind::config, "unknown approach '" + name + "'");
}

// All token-model symbols with their published defaults.
struct CostModelParams {
    double system_prompt = 1000;        // S_sys
    double output = 200;                // O_out
    double mean_message = 50;           // m_avg
    double retrieved_context = 2000;    // R_ctx
    double planner_call = 1100;         // P_plan
    double extraction = 370000;         // E_extract, one-time
    double window_context = 1000;       // W_window
    double summary_context = 3000;      // W_summary
    double summary_amortized = 75;      // A_summary
    double rag_context = 1900;          // W_rag
    // Optional re-extraction cadence in messages (0 = extract once). Affects
    // cumulative totals only; lets periodic re-extraction scenarios be priced.
    long reextract_every = 0;
};

inline void validate(const CostModelParams& p) {
    const double fields[] = {p.system_prompt,  p.output,           p.mean_message,
                             p.retrieved_context, p.planner_call,  p.extraction,
                             p.window_context, p.summary_context,  p.summary_amortized,
                             p.rag_context};
    for (double f : fields)
        if (f < 0) fail(ErrorKind::config, "cost model parameters must be non-negative");
    if (p.reextract_every < 0) fail(ErrorKind::config, "reextract_every must be >= 0");
}

struct Pricing {
    double usd_per_m_input = 2.50;
    double usd_per_m_output = 15.00;
};

inline void validate(const Pricing& p) {
    if (p.usd_per_m_input <= 0 || p.usd_per_m_output <= 0)
        fail(ErrorKind::config, "prices must be positive");
}

struct CostBreakdown {
    Approach approach = Approach::full_context;
    long n = 0;
    bool cumulative = false;
    double input_tokens = 0;
    double output_tokens = 0;
    double amortized_tokens = 0;  // one-time pipeline overhead spread over messages
    double total_tokens = 0;
    std::optional<double> usd;
};

// Per-message token cost at conversation length N.
inline CostBreakdown per_message_tokens(Approach approach, long n,
                                        const CostModelParams& p = {}) {
    validate(p);
    if (n < 1) fail(ErrorKind::contract, "N must be >= 1");
    CostBreakdown b;
    b.approach = approach;
    b.n = n;
    b.output_tokens = p.output;
    switch (approach) {
        case Approach::full_context:
            b.input_tokens = p.system_prompt + p.mean_message * static_cast<double>(n);
            break;
        case Approach::synthius_mem:
            b.input_tokens = p.system_prompt + p.retrieved_context + p.planner_call;
            b.amortized_tokens = p.extraction / static_cast<double>(n);
            break;
        case Approach::embedding_rag:
            b.input_tokens = p.system_prompt + p.rag_context;
            break;
        case Approach::summarization:
            b.input_tokens = p.system_prompt + p.summary_context;
            b.amortized_tokens = p.summary_amortized;
            break;
        case Approach::sliding_window:
            b.input_tokens = p.system_prompt + p.window_context;
            break;
    }
    b.total_tokens = b.input_tokens + b.output_tokens + b.amortized_tokens;
    return b;
}

// Number of extraction passes over an N-message conversation.
inline double extraction_passes(long n, const CostModelParams& p) {
    if (p.reextract_every <= 0) return 1.0;
    return static_cast<double>((n + p.reextract_every - 1) / p.reextract_every);
}

inline CostBreakdown cumulative_breakdown(Approach approach, long n,
                                          const CostModelParams& p = {}) {
    validate(p);
    if (n < 1) fail(ErrorKind::contract, "N must be >= 1");
    const double dn = static_cast<double>(n);
    CostBreakdown b;
    b.approach = approach;
    b.n = n;
    b.cumulative = true;
    b.output_tokens = p.output * dn;
    switch (approach) {
        case Approach::full_context:
            // sum_{i=1..N} (S + m*i + O) has the closed form below.
            b.input_tokens = p.system_prompt * dn + p.mean_message * dn * (dn + 1) / 2.0;
            break;
        case Approach::synthius_mem:
            b.input_tokens = (p.system_prompt + p.retrieved_context + p.planner_call) * dn;
            b.amortized_tokens = p.extraction * extraction_passes(n, p);
            break;
        case Approach::embedding_rag:
            b.input_tokens = (p.system_prompt + p.rag_context) * dn;
            break;
        case Approach::summarization:
            b.input_tokens = (p.system_prompt + p.summary_context) * dn;
            b.amortized_tokens = p.summary_amortized * dn;
            break;
        case Approach::sliding_window:
            b.input_tokens = (p.system_prompt + p.window_context) * dn;
            break;
    }
    b.total_tokens = b.input_tokens + b.output_tokens + b.amortized_tokens;
    return b;
}

inline double cumulative_tokens(Approach approach, long n, const CostModelParams& p = {}) {
    return cumulative_breakdown(approach, n, p).total_tokens;
}

// Amortized pipeline tokens are priced as input.
inline double usd_cost(const CostBreakdown& b, const Pricing& pricing = {}) {
    validate(pricing);
    return (b.input_tokens + b.amortized_tokens) * pricing.usd_per_m_input / 1e6 +
           b.output_tokens * pricing.usd_per_m_output / 1e6;
}

// Smallest N where the per-message structured-memory cost drops below
// full-context replay and stays below through the scan horizon. Brute-force
// integer scan by construction.
inline long crossover_n0(const CostModelParams& p = {}, long horizon = 1000000) {
    long candidate = -1;
    for (long n = 1; n <= horizon; ++n) {
        const double synthius = per_message_tokens(Approach::synthius_mem, n, p).total_tokens;
        const double full = per_message_tokens(Approach::full_context, n, p).total_tokens;
        if (synthius < full) {
            candidate = n;
            break;
        }
    }
    if (candidate < 0) return -1;
    // Verify the inequality keeps holding on a sample of the remaining range.
    for (long n = candidate; n <= std::min(horizon, candidate + 10000); ++n) {
        if (per_message_tokens(Approach::synthius_mem, n, p).total_tokens >=
            per_message_tokens(Approach::full_context, n, p).total_tokens)
            return -1;
    }
    return candidate;
}

inline json to_json(const CostBreakdown& b) {
    json j = {{"approach", to_string(b.approach)},
              {"N", b.n},
              {"cumulative", b.cumulative},
              {"input_tokens", b.input_tokens},
              {"output_tokens", b.output_tokens},
              {"amortized_tokens", b.amortized_tokens},
              {"total_tokens", b.total_tokens}};
    if (b.usd) j["usd"] = *b.usd;
    return j;
}

}  // namespace synthius
