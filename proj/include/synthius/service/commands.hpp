#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "synthius/bench/harness.hpp"
#include "synthius/costmodel/report.hpp"
#include "synthius/service/manager.hpp"

namespace synthius {

// Command layer shared verbatim by the CLI and the HTTP service; parity between
// the two surfaces is parity of these return values.

inline json cmd_ingest(PersonaManager& manager, const std::string& person,
                       const std::string& content, const std::string& format_name) {
    return manager.ingest(person, content, source_format_from(format_name));
}

inline json cmd_ingest_file(PersonaManager& manager, const std::string& person,
                            const std::filesystem::path& input, const std::string& format_name) {
    return cmd_ingest(manager, person, read_file(input.string()), format_name);
}

inline json cmd_query(PersonaManager& manager, const std::string& person,
                      const std::string& question, const std::vector<std::string>& domains = {}) {
    return manager.query(person, question, domains);
}

inline json cmd_facts(PersonaManager& manager, const std::string& person,
                      const std::string& domain, const std::optional<std::string>& category = {}) {
    return manager.facts(person, domain, category);
}

inline json cmd_history(PersonaManager& manager, const std::string& person) {
    return manager.history_of(person);
}

inline json cmd_rollback(PersonaManager& manager, const std::string& person,
                         std::int64_t to_version) {
    return manager.rollback_to(person, to_version);
}

inline json cmd_cost(const CostModelParams& params, const Pricing& pricing,
                     const std::vector<long>& n_values,
                     const std::optional<std::filesystem::path>& out_dir) {
    validate(params);
    validate(pricing);
    json rows = json::array();
    for (long n : n_values) {
        for (Approach a : kAllApproaches) {
            CostBreakdown per_msg = per_message_tokens(a, n, params);
            per_msg.usd = usd_cost(per_msg, pricing);
            CostBreakdown cumulative = cumulative_breakdown(a, n, params);
            cumulative.usd = usd_cost(cumulative, pricing);
            rows.push_back({{"per_message", to_json(per_msg)}, {"cumulative", to_json(cumulative)}});
        }
    }
    json out = {{"rows", rows}, {"crossover_n0", crossover_n0(params)}};
    if (!n_values.empty()) out["table"] = render_cost_table(params, pricing, n_values.back());
    if (out_dir) {
        const CostReportFiles files = emit_cost_report(params, pricing, n_values, *out_dir);
        out["files"] = {{"per_message", files.per_message.string()},
                        {"cumulative", files.cumulative.string()},
                        {"comparison", files.comparison.string()}};
    }
    return out;
}

inline json cmd_bench(const std::filesystem::path& dataset_path, const std::string& sut_name,
                      Ports& ports, const BenchConfig& cfg,
                      const std::optional<std::filesystem::path>& out_dir) {
    const auto dataset = load_locomo(dataset_path.string());
    std::vector<SutKind> kinds;
    if (sut_name == "all") {
        kinds = {SutKind::synthius, SutKind::full_context, SutKind::sliding_window,
                 SutKind::summarization, SutKind::embedding_rag};
    } else {
        kinds = {sut_from(sut_name)};
    }

    json reports = json::array();
    for (SutKind kind : kinds) {
        std::optional<std::filesystem::path> verdict_path;
        if (out_dir) {
            std::error_code ec;
            std::filesystem::create_directories(*out_dir, ec);
            if (ec) fail(ErrorKind::io, "cannot create " + out_dir->string());
            verdict_path = *out_dir / (std::string("verdicts_") + to_string(kind) + ".jsonl");
        }
        const ScoreReport report =
            run_benchmark(dataset, kind, ports, cfg, verdict_path ? &*verdict_path : nullptr);
        if (out_dir) {
            const auto report_json_path = *out_dir / (std::string("report_") + to_string(kind) + ".json");
            const auto report_text_path = *out_dir / (std::string("report_") + to_string(kind) + ".txt");
            std::ofstream js(report_json_path, std::ios::binary | std::ios::trunc);
            js << report.to_json().dump(2) << "\n";
            std::ofstream txt(report_text_path, std::ios::binary | std::ios::trunc);
            txt << report.render_text();
        }
        reports.push_back(report.to_json());
    }
    return sut_name == "all" ? json{{"reports", reports}} : reports.at(0);
}

}  // namespace synthius
