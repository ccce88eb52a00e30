#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "synthius/costmodel/comparison.hpp"
#include "synthius/costmodel/model.hpp"

namespace synthius {

namespace detail {

inline std::string num2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string num4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::string cost_csv_row(const CostBreakdown& b, const Pricing& pricing) {
    return std::string(to_string(b.approach)) + "," + std::to_string(b.n) + "," +
           num2(b.input_tokens) + "," + num2(b.output_tokens) + "," + num2(b.amortized_tokens) +
           "," + num2(b.total_tokens) + "," + num4(usd_cost(b, pricing)) + "\n";
}

inline void write_file_or_fail(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << content;
    if (!out.good()) fail(ErrorKind::io, "short write to " + path.string());
}

}  // namespace detail

inline constexpr const char* kCostCsvHeader =
    "approach,N,input_tokens,output_tokens,amortized_tokens,total_tokens,usd\n";

struct CostReportFiles {
    std::filesystem::path per_message;
    std::filesystem::path cumulative;
    std::filesystem::path comparison;
};

// Writes cost_per_message.csv and cost_cumulative.csv over the requested N
// values plus comparison.csv with the static published-survey dataset.
inline CostReportFiles emit_cost_report(const CostModelParams& params, const Pricing& pricing,
                                        const std::vector<long>& n_values,
                                        const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create " + out_dir.string());

    CostReportFiles files{out_dir / "cost_per_message.csv", out_dir / "cost_cumulative.csv",
                          out_dir / "comparison.csv"};

    std::string per_message(kCostCsvHeader);
    std::string cumulative(kCostCsvHeader);
    for (long n : n_values) {
        for (Approach a : kAllApproaches) {
            per_message += detail::cost_csv_row(per_message_tokens(a, n, params), pricing);
            cumulative += detail::cost_csv_row(cumulative_breakdown(a, n, params), pricing);
        }
    }
    detail::write_file_or_fail(files.per_message, per_message);
    detail::write_file_or_fail(files.cumulative, cumulative);

    std::string comparison =
        "system,overall_pct,adversarial_pct,single_hop_pct,multi_hop_pct,temporal_pct,"
        "open_domain_pct,retrieved_tokens_per_query,total_tokens_per_msg,confidence,metric\n";
    auto cell = [](const std::optional<double>& v) { return v ? detail::num2(*v) : std::string(); };
    for (const auto& row : system_comparisons()) {
        comparison += row.system + "," + cell(row.overall_pct) + "," + cell(row.adversarial_pct) +
                      "," + cell(row.single_hop_pct) + "," + cell(row.multi_hop_pct) + "," +
                      cell(row.temporal_pct) + "," + cell(row.open_domain_pct) + "," +
                      cell(row.retrieved_tokens_per_query) + "," + cell(row.total_tokens_per_msg) +
                      "," + row.confidence + "," + row.metric + "\n";
    }
    detail::write_file_or_fail(files.comparison, comparison);
    return files;
}

// Per-message table at one N, shaped like the published cost table.
inline std::string render_cost_table(const CostModelParams& params, const Pricing& pricing,
                                     long n) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof(line), "Per-message token cost at N=%ld\n", n);
    out += line;
    std::snprintf(line, sizeof(line), "%-16s %14s %14s %14s %10s\n", "approach", "input_tok",
                  "amortized_tok", "total_tok", "usd/msg");
    out += line;
    for (Approach a : kAllApproaches) {
        const CostBreakdown b = per_message_tokens(a, n, params);
        std::snprintf(line, sizeof(line), "%-16s %14.0f %14.0f %14.0f %10.4f\n", to_string(a),
                      b.input_tokens + b.output_tokens, b.amortized_tokens, b.total_tokens,
                      usd_cost(b, pricing));
        out += line;
    }
    return out;
}

}  // namespace synthius
