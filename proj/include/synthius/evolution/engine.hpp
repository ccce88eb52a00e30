#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include "synthius/consolidation/consolidate.hpp"
#include "synthius/evolution/change.hpp"
#include "synthius/extraction/port.hpp"
#include "synthius/persona/store.hpp"

namespace synthius {

inline std::string now_iso() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

namespace detail {

inline std::string changeset_id(std::int64_t base_version) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "cs-%06lld", static_cast<long long>(base_version + 1));
    return buf;
}

// Parse the trailing "-fNNNNNN" of generated fact ids so replayed stores
// resume id allocation past everything they have seen.
inline std::int64_t fact_seq_of(const std::string& fact_id) {
    const auto pos = fact_id.rfind("-f");
    if (pos == std::string::npos) return 0;
    long long seq = 0;
    if (std::sscanf(fact_id.c_str() + pos + 2, "%lld", &seq) != 1) return 0;
    return seq;
}

inline EditOp make_edit(const DomainFact& before, const DomainFact& after) {
    const json a = to_json(before), b = to_json(after);
    EditOp op;
    op.fact_id = core(before).fact_id;
    op.patch = json::object();
    op.prior = json::object();
    for (auto it = b.begin(); it != b.end(); ++it) {
        if (!a.contains(it.key()) || a.at(it.key()) != it.value()) {
            op.patch[it.key()] = it.value();
            op.prior[it.key()] = a.contains(it.key()) ? a.at(it.key()) : json(nullptr);
        }
    }
    return op;
}

}  // namespace detail

// ChangeSet whose application makes the store's active facts equal a full
// re-consolidation of (store actives + incoming). Pure: the store is not
// touched; incoming candidates get provisional ids that only commit on apply.
inline ChangeSet propose_diff(const PersonaStore& store, std::vector<DomainFact> incoming,
                              const std::string& timestamp = "") {
    ChangeSet cs;
    cs.base_version = store.version();
    cs.id = detail::changeset_id(cs.base_version);
    cs.timestamp = timestamp.empty() ? now_iso() : timestamp;
    if (incoming.empty()) return cs;

    std::int64_t seq = store.next_fact_seq();
    std::vector<DomainFact> combined;
    std::set<std::string> existing_ids;
    for (const auto* f : store.active_facts()) {
        combined.push_back(*f);
        existing_ids.insert(core(*f).fact_id);
    }
    for (auto& f : incoming) {
        FactCore& c = core(f);
        if (c.person_id != store.person_id())
            fail(ErrorKind::scope, "incoming fact scoped to '" + c.person_id + "'");
        if (c.fact_id.empty()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "-f%06lld", static_cast<long long>(seq++));
            c.fact_id = store.person_id() + buf;
        }
        c.created_version = store.version() + 1;
        c.status = FactStatus::active;
        c.superseded_by.reset();
        combined.push_back(std::move(f));
    }

    CategoryOutcome outcome = consolidate_facts(std::move(combined));

    std::vector<ChangeOp> adds, edits;
    for (auto& f : outcome.facts) {
        const std::string& id = core(f).fact_id;
        if (existing_ids.count(id)) {
            const DomainFact& before = *store.find_fact(id);
            if (!facts_equal(before, f)) edits.push_back(detail::make_edit(before, f));
        } else {
            adds.push_back(AddOp{std::move(f)});
        }
    }
    // Existing facts absorbed into another survivor are archived, not deleted.
    for (const auto& [absorbed_id, survivor_id] : outcome.absorbed) {
        if (!existing_ids.count(absorbed_id)) continue;
        DomainFact archived = *store.find_fact(absorbed_id);
        FactCore& c = core(archived);
        c.status = FactStatus::superseded;
        c.superseded_by = survivor_id;
        edits.push_back(detail::make_edit(*store.find_fact(absorbed_id), archived));
    }

    std::sort(adds.begin(), adds.end(), [](const ChangeOp& a, const ChangeOp& b) {
        return core(std::get<AddOp>(a).fact).fact_id < core(std::get<AddOp>(b).fact).fact_id;
    });
    std::sort(edits.begin(), edits.end(), [](const ChangeOp& a, const ChangeOp& b) {
        return std::get<EditOp>(a).fact_id < std::get<EditOp>(b).fact_id;
    });
    cs.ops = std::move(adds);
    cs.ops.insert(cs.ops.end(), std::make_move_iterator(edits.begin()),
                  std::make_move_iterator(edits.end()));
    return cs;
}

inline ChangeSet propose_diff(const PersonaStore& store, const RawExtraction& raw,
                              const std::string& timestamp = "") {
    return propose_diff(store, raw.facts, timestamp);
}

// All-or-nothing application; the store is untouched when any op fails.
inline std::int64_t apply(PersonaStore& store, const ChangeSet& cs) {
    if (store.version() != cs.base_version)
        fail(ErrorKind::version_conflict,
             "changeset targets version " + std::to_string(cs.base_version) + ", store is at " +
                 std::to_string(store.version()));

    PersonaStore next = store;
    std::int64_t max_seq = next.next_fact_seq() - 1;
    for (const auto& op : cs.ops) {
        if (const auto* add = std::get_if<AddOp>(&op)) {
            if (core(add->fact).fact_id.empty())
                fail(ErrorKind::contract, "add op carries a fact without an id");
            next.insert_fact(add->fact);
            max_seq = std::max(max_seq, detail::fact_seq_of(core(add->fact).fact_id));
        } else if (const auto* edit = std::get_if<EditOp>(&op)) {
            const DomainFact* current = next.find_fact(edit->fact_id);
            if (current == nullptr)
                fail(ErrorKind::not_found, "edit of unknown fact '" + edit->fact_id + "'");
            json merged = to_json(*current);
            for (auto it = edit->patch.begin(); it != edit->patch.end(); ++it)
                merged[it.key()] = it.value();
            next.replace_fact(edit->fact_id, fact_from_json(merged));
        } else {
            const auto& del = std::get<DeleteOp>(op);
            if (next.find_fact(del.fact_id) == nullptr)
                fail(ErrorKind::not_found, "delete of unknown fact '" + del.fact_id + "'");
            next.erase_fact(del.fact_id);
        }
    }
    next.set_next_fact_seq(max_seq + 1);
    next.commit_changeset(cs);
    store = std::move(next);
    return store.version();
}

// Rebuild a store by replaying a changelog prefix from empty; the oracle for
// rollback and the recovery path when domain files are suspect.
inline PersonaStore replay(const std::string& person_id, const std::vector<ChangeSet>& changelog,
                           std::int64_t up_to_version = -1) {
    PersonaStore store(person_id);
    const std::size_t limit = up_to_version < 0 ? changelog.size()
                                                : static_cast<std::size_t>(up_to_version);
    if (limit > changelog.size())
        fail(ErrorKind::not_found, "changelog has only " + std::to_string(changelog.size()) +
                                       " entries, cannot replay to " + std::to_string(limit));
    for (std::size_t i = 0; i < limit; ++i) apply(store, changelog[i]);
    return store;
}

// Forward application of inverses recorded as a new changelog entry; history
// is never truncated.
inline std::int64_t rollback(PersonaStore& store, std::int64_t to_version,
                             const std::string& timestamp = "") {
    if (to_version < 0 || to_version > store.version())
        fail(ErrorKind::not_found, "unknown version " + std::to_string(to_version));

    ChangeSet cs;
    cs.base_version = store.version();
    cs.id = detail::changeset_id(cs.base_version);
    cs.timestamp = timestamp.empty() ? now_iso() : timestamp;
    cs.kind = ChangeKind::rollback;
    cs.rollback_target = to_version;
    const auto& log = store.changelog();
    for (std::size_t i = log.size(); i > static_cast<std::size_t>(to_version); --i) {
        const ChangeSet& past = log[i - 1];
        for (auto it = past.ops.rbegin(); it != past.ops.rend(); ++it) cs.ops.push_back(invert(*it));
    }
    return apply(store, cs);
}

struct HistoryEntry {
    std::string id;
    std::int64_t version = 0;  // version the changeset produced
    std::size_t op_count = 0;
    ChangeKind kind = ChangeKind::update;
    std::int64_t rollback_target = -1;
    std::string timestamp;

    json to_json() const {
        return {{"id", id},
                {"version", version},
                {"op_count", op_count},
                {"kind", kind == ChangeKind::rollback ? "rollback" : "update"},
                {"rollback_target", rollback_target},
                {"timestamp", timestamp}};
    }
};

inline std::vector<HistoryEntry> history(const PersonaStore& store) {
    std::vector<HistoryEntry> out;
    const auto& log = store.changelog();
    for (std::size_t i = 0; i < log.size(); ++i) {
        out.push_back({log[i].id, static_cast<std::int64_t>(i + 1), log[i].ops.size(), log[i].kind,
                       log[i].rollback_target, log[i].timestamp});
    }
    return out;
}

}  // namespace synthius
