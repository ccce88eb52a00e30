#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthius/service/commands.hpp"
#include "synthius/service/http.hpp"

namespace {

// Documented exit codes: 0 success, 1 internal, 2 usage/config, 3 parse,
// 4 scope, 5 port failure, 6 state (unknown persona/version conflict).
int exit_code_for(synthius::ErrorKind kind) {
    using synthius::ErrorKind;
    switch (kind) {
        case ErrorKind::config:
        case ErrorKind::contract: return 2;
        case ErrorKind::parse:
        case ErrorKind::validation: return 3;
        case ErrorKind::scope:
        case ErrorKind::non_queryable: return 4;
        case ErrorKind::port: return 5;
        case ErrorKind::not_found:
        case ErrorKind::version_conflict: return 6;
        case ErrorKind::io: return 1;
    }
    return 1;
}

synthius::HttpService* g_service = nullptr;

void handle_signal(int) {
    if (g_service != nullptr) g_service->stop();
}

synthius::CostModelParams apply_overrides(const std::vector<std::string>& overrides) {
    synthius::CostModelParams params;
    for (const auto& raw : overrides) {
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            synthius::fail(synthius::ErrorKind::config, "override must look like NAME=VALUE: " + raw);
        const std::string name = raw.substr(0, eq);
        const double value = std::stod(raw.substr(eq + 1));
        if (name == "S_sys") params.system_prompt = value;
        else if (name == "O_out") params.output = value;
        else if (name == "m_avg") params.mean_message = value;
        else if (name == "R_ctx") params.retrieved_context = value;
        else if (name == "P_plan") params.planner_call = value;
        else if (name == "E_extract") params.extraction = value;
        else if (name == "W_window") params.window_context = value;
        else if (name == "W_summary") params.summary_context = value;
        else if (name == "A_summary") params.summary_amortized = value;
        else if (name == "W_rag") params.rag_context = value;
        else if (name == "reextract_every") params.reextract_every = static_cast<long>(value);
        else synthius::fail(synthius::ErrorKind::config, "unknown cost parameter '" + name + "'");
    }
    return params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthius-mem: structured persona memory engine"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_dir;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--data-dir", data_dir, "persona store directory (overrides config)");

    std::string person, format = "canonical", question, input_path;
    auto* ingest = app.add_subcommand("ingest", "parse a conversation and update a persona");
    ingest->add_option("input", input_path, "conversation file")->required();
    ingest->add_option("--person", person, "persona to build")->required();
    ingest->add_option("--format", format, "canonical|locomo|whatsapp|jsonl");

    auto* query = app.add_subcommand("query", "answer a question from a persona");
    std::vector<std::string> query_domains;
    query->add_option("--person", person, "persona to query")->required();
    query->add_option("question", question, "the question")->required();
    query->add_option("--domain", query_domains, "restrict to specific domains");

    auto* facts = app.add_subcommand("facts", "list active facts of a domain");
    std::string domain, category;
    facts->add_option("--person", person, "persona")->required();
    facts->add_option("--domain", domain, "memory domain")->required();
    facts->add_option("--category", category, "upper category filter");

    auto* hist = app.add_subcommand("history", "list applied changesets");
    hist->add_option("--person", person, "persona")->required();

    auto* roll = app.add_subcommand("rollback", "restore a prior persona version");
    std::int64_t to_version = 0;
    roll->add_option("--person", person, "persona")->required();
    roll->add_option("--to-version", to_version, "target version")->required();

    auto* bench = app.add_subcommand("bench", "run the benchmark harness");
    std::string dataset_path, sut = "synthius", out_dir;
    bench->add_option("dataset", dataset_path, "dataset file")->required();
    bench->add_option("--sut", sut, "synthius|full_context|sliding_window|summarization|embedding_rag|all");
    bench->add_option("--out", out_dir, "directory for verdict logs and reports");

    auto* cost = app.add_subcommand("cost", "token/USD cost model tables");
    std::vector<long> n_values;
    std::vector<std::string> overrides;
    double p_in = 2.50, p_out = 15.00;
    cost->add_option("--N", n_values, "conversation lengths (repeatable)");
    cost->add_option("--override", overrides, "cost parameter override NAME=VALUE (repeatable)");
    cost->add_option("--p-in", p_in, "USD per million input tokens");
    cost->add_option("--p-out", p_out, "USD per million output tokens");
    cost->add_option("--out", out_dir, "directory for CSV emission");

    auto* serve = app.add_subcommand("serve", "run the local HTTP service");
    std::string host = "127.0.0.1";
    int port = 0;
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "bind port (default from config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        synthius::AppConfig cfg = config_path.empty()
                                      ? synthius::AppConfig{}
                                      : synthius::AppConfig::from_file(config_path);
        if (!data_dir.empty()) cfg.data_dir = data_dir;

        synthius::json out;
        if (*ingest || *query || *facts || *hist || *roll) {
            synthius::PersonaManager manager(cfg);
            if (*ingest) out = synthius::cmd_ingest_file(manager, person, input_path, format);
            if (*query) out = synthius::cmd_query(manager, person, question, query_domains);
            if (*facts)
                out = synthius::cmd_facts(manager, person, domain,
                                          category.empty() ? std::nullopt
                                                           : std::optional<std::string>(category));
            if (*hist) out = synthius::cmd_history(manager, person);
            if (*roll) out = synthius::cmd_rollback(manager, person, to_version);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*bench) {
            auto ports = cfg.make_ports();
            out = synthius::cmd_bench(dataset_path, sut, ports, cfg.bench,
                                      out_dir.empty() ? std::nullopt
                                                      : std::optional<std::filesystem::path>(out_dir));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*cost) {
            if (n_values.empty()) n_values = {100, 500, 1000};
            const auto params = apply_overrides(overrides);
            out = synthius::cmd_cost(params, synthius::Pricing{p_in, p_out}, n_values,
                                     out_dir.empty() ? std::nullopt
                                                     : std::optional<std::filesystem::path>(out_dir));
            if (out.contains("table")) std::cout << out.at("table").get<std::string>() << "\n";
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*serve) {
            synthius::PersonaManager manager(cfg);
            synthius::HttpService service(manager);
            g_service = &service;
            std::signal(SIGINT, handle_signal);
            std::signal(SIGTERM, handle_signal);
            const int bind_port = port > 0 ? port : cfg.http_port;
            std::fprintf(stderr, "listening on http://%s:%d\n", host.c_str(), bind_port);
            if (!service.listen(host, bind_port)) {
                std::fprintf(stderr, "error: cannot bind %s:%d\n", host.c_str(), bind_port);
                return 2;
            }
            return 0;
        }
    } catch (const synthius::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
