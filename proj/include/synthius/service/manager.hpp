#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "synthius/bench/harness.hpp"
#include "synthius/consolidation/summarize.hpp"
#include "synthius/corpus/parse.hpp"
#include "synthius/evolution/engine.hpp"
#include "synthius/persona/persist.hpp"
#include "synthius/retrieval/answer.hpp"
#include "synthius/retrieval/index.hpp"
#include "synthius/service/config.hpp"

namespace synthius {

// Advisory cross-process writer lock on a persona directory.
class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) fail(ErrorKind::io, "cannot open lock file " + path.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            fail(ErrorKind::io, "cannot lock " + path.string());
        }
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

// Persona stores on disk plus their retrieval indexes, behind a
// readers-or-one-writer lock per persona. Every mutation persists before the
// lock drops, so readers only ever see fully applied versions.
class PersonaManager {
public:
    explicit PersonaManager(AppConfig cfg) : cfg_(std::move(cfg)), ports_(cfg_.make_ports()) {}

    const AppConfig& config() const { return cfg_; }
    Ports& ports() { return ports_; }

    bool persona_exists(const std::string& person) {
        std::lock_guard<std::mutex> guard(registry_mutex_);
        if (entries_.count(key_of(person))) return true;
        return std::filesystem::exists(persona_dir(person) / "manifest.json");
    }

    json ingest(const std::string& person, const std::string& content, SourceFormat format) {
        const Conversation conv = parse_conversation(content, format);
        if (!conv.has_participant(person))
            fail(ErrorKind::scope, "'" + person + "' is not a participant of the conversation");

        Entry& entry = entry_for(person, /*create=*/true);
        std::unique_lock<std::shared_mutex> guard(entry.mutex);
        FileLock disk_lock(persona_dir(person) / ".lock");

        RawExtraction raw = run_extraction(conv, person, cfg_.extraction, *ports_.extractor,
                                           cfg_.chunking);
        const ChangeSet cs = propose_diff(entry.store, raw);
        std::size_t added = 0, edited = 0;
        for (const auto& op : cs.ops) {
            if (std::holds_alternative<AddOp>(op)) ++added;
            if (std::holds_alternative<EditOp>(op)) ++edited;
        }
        apply(entry.store, cs);
        entry.index.apply_changeset(entry.store, cs);

        std::string warning;
        entry.store.set_narrative(summarize(entry.store, *ports_.summarizer, &warning));
        save_store(entry.store, persona_dir(person));

        json facts_per_domain = json::object();
        for (Domain d : kQueryableDomains)
            facts_per_domain[to_string(d)] = entry.store.get_domain(d).size();
        json out = {{"person", entry.store.person_id()},
                    {"version", entry.store.version()},
                    {"changeset", cs.id},
                    {"ops_added", added},
                    {"ops_edited", edited},
                    {"active_facts_per_domain", facts_per_domain},
                    {"extraction", raw.stats.to_json()}};
        if (!warning.empty()) out["warning"] = warning;
        return out;
    }

    json query(const std::string& person, const std::string& question,
               const std::vector<std::string>& domain_override = {}) {
        Entry& entry = entry_for(person, /*create=*/false);
        std::shared_lock<std::shared_mutex> guard(entry.mutex);

        RetrievalResult result;
        if (domain_override.empty()) {
            result = retrieve(entry.store, entry.index, question, *ports_.planner, cfg_.retrieval);
        } else {
            if (trim(question).empty()) fail(ErrorKind::contract, "question must be non-empty");
            RetrievalPlan plan;
            plan.question = question;
            for (const auto& name : domain_override) {
                const Domain d = domain_from(name);
                if (d == Domain::style)
                    fail(ErrorKind::non_queryable, "style is not a queryable domain");
                plan.selected_domains.push_back(d);
                plan.query_terms[d] = normalized_terms(question);
            }
            const auto start = std::chrono::steady_clock::now();
            std::vector<Match> merged;
            for (Domain d : plan.selected_domains) {
                auto matches = category_rag(entry.index, d, plan.query_terms[d], cfg_.retrieval.k,
                                            cfg_.retrieval.evidence_threshold);
                double max_score = 0.0;
                for (const auto& m : matches) max_score = std::max(max_score, m.score);
                for (auto& m : matches) {
                    m.score = max_score > 0.0 ? m.score / max_score : 0.0;
                    merged.push_back(std::move(m));
                }
            }
            std::sort(merged.begin(), merged.end(), [](const Match& a, const Match& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.fact_id < b.fact_id;
            });
            result.plan = std::move(plan);
            result.matches = std::move(merged);
            result.evidence_found = !result.matches.empty();
            result.latency_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
        }

        const Answer ans = answer(question, entry.store, result, *ports_.answerer, cfg_.retrieval);
        json matches = json::array();
        for (const auto& m : result.matches)
            matches.push_back({{"fact_id", m.fact_id},
                               {"domain", to_string(m.domain)},
                               {"score", m.score},
                               {"matched_fields", m.matched_fields}});
        json selected = json::array();
        for (Domain d : result.plan.selected_domains) selected.push_back(to_string(d));
        return {{"person", entry.store.person_id()},
                {"question", question},
                {"answer", ans.to_json()},
                {"evidence_found", result.evidence_found},
                {"matches", matches},
                {"selected_domains", selected},
                {"latency_ms", result.latency_ms}};
    }

    json facts(const std::string& person, const std::string& domain_name,
               const std::optional<std::string>& category) {
        Entry& entry = entry_for(person, /*create=*/false);
        std::shared_lock<std::shared_mutex> guard(entry.mutex);
        const Domain d = domain_from(domain_name);
        json facts = json::array();
        for (const auto& f : entry.store.get_domain(d, category)) facts.push_back(to_json(f));
        return {{"person", entry.store.person_id()},
                {"domain", domain_name},
                {"count", facts.size()},
                {"facts", facts}};
    }

    json history_of(const std::string& person) {
        Entry& entry = entry_for(person, /*create=*/false);
        std::shared_lock<std::shared_mutex> guard(entry.mutex);
        json entries = json::array();
        for (const auto& h : history(entry.store)) entries.push_back(h.to_json());
        return {{"person", entry.store.person_id()},
                {"version", entry.store.version()},
                {"entries", entries}};
    }

    json rollback_to(const std::string& person, std::int64_t to_version) {
        Entry& entry = entry_for(person, /*create=*/false);
        std::unique_lock<std::shared_mutex> guard(entry.mutex);
        FileLock disk_lock(persona_dir(person) / ".lock");
        rollback(entry.store, to_version);
        entry.index.build(entry.store);
        save_store(entry.store, persona_dir(person));
        return {{"person", entry.store.person_id()},
                {"version", entry.store.version()},
                {"rolled_back_to", to_version}};
    }

    std::filesystem::path persona_dir(const std::string& person) const {
        return cfg_.data_dir / key_of(person);
    }

private:
    struct Entry {
        PersonaStore store;
        RetrievalIndex index;
        std::shared_mutex mutex;
    };

    static std::string key_of(const std::string& person) { return to_lower(person); }

    Entry& entry_for(const std::string& person, bool create) {
        std::lock_guard<std::mutex> guard(registry_mutex_);
        const std::string key = key_of(person);
        auto it = entries_.find(key);
        if (it != entries_.end()) return *it->second;

        auto entry = std::make_unique<Entry>();
        const auto dir = persona_dir(person);
        if (std::filesystem::exists(dir / "manifest.json")) {
            entry->store = load_store(dir);
        } else if (create) {
            entry->store = PersonaStore(person);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) fail(ErrorKind::io, "cannot create " + dir.string());
        } else {
            fail(ErrorKind::not_found, "unknown persona '" + person + "'");
        }
        entry->index.build(entry->store);
        auto [inserted, ok] = entries_.emplace(key, std::move(entry));
        return *inserted->second;
    }

    AppConfig cfg_;
    Ports ports_;
    std::mutex registry_mutex_;
    std::map<std::string, std::unique_ptr<Entry>> entries_;
};

}  // namespace synthius
