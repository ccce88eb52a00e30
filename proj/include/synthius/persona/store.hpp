#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/evolution/change.hpp"
#include "synthius/persona/fact.hpp"

namespace synthius {

struct TimelineEntry {
    std::string time_anchor;
    std::string event;
    std::vector<std::string> source_fact_ids;

    bool operator==(const TimelineEntry&) const = default;
};

struct BiographySummary {
    std::string narrative;
    std::vector<TimelineEntry> timeline;  // sorted by time_anchor

    bool operator==(const BiographySummary&) const = default;
};

inline json to_json(const BiographySummary& s) {
    json timeline = json::array();
    for (const auto& e : s.timeline)
        timeline.push_back({{"time_anchor", e.time_anchor},
                            {"event", e.event},
                            {"source_fact_ids", e.source_fact_ids}});
    return {{"narrative", s.narrative}, {"timeline", timeline}};
}

inline BiographySummary summary_from_json(const json& j) {
    BiographySummary s;
    s.narrative = j.value("narrative", "");
    if (j.contains("timeline"))
        for (const auto& e : j.at("timeline")) {
            TimelineEntry t;
            t.time_anchor = e.value("time_anchor", "");
            t.event = e.value("event", "");
            if (e.contains("source_fact_ids"))
                for (const auto& id : e.at("source_fact_ids"))
                    t.source_fact_ids.push_back(id.get<std::string>());
            s.timeline.push_back(std::move(t));
        }
    return s;
}

// Versioned, person-scoped container of the six queryable domains plus Style.
// All versioned mutation goes through ChangeSets (evolution/engine.hpp);
// insert/replace/erase here are the raw sub-versioning primitives.
class PersonaStore {
public:
    PersonaStore() = default;

    explicit PersonaStore(std::string person_id) : person_id_(std::move(person_id)) {
        if (person_id_.empty()) fail(ErrorKind::validation, "person_id must be non-empty");
    }

    const std::string& person_id() const { return person_id_; }
    std::int64_t version() const { return version_; }

    std::string allocate_fact_id() {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "-f%06lld", static_cast<long long>(next_fact_seq_++));
        return person_id_ + buf;
    }

    std::string insert_fact(DomainFact fact) {
        FactCore& c = core(fact);
        if (c.person_id != person_id_)
            fail(ErrorKind::scope,
                 "fact belongs to '" + c.person_id + "', store is scoped to '" + person_id_ + "'");
        if (c.fact_id.empty()) c.fact_id = allocate_fact_id();
        // Provenance-free facts are allowed here: manual ops have no source
        // messages. Extraction enforces non-empty provenance on candidates.
        validate_fact(fact, /*require_provenance=*/false);
        if (facts_.count(c.fact_id))
            fail(ErrorKind::validation, "duplicate fact_id '" + c.fact_id + "'");
        check_parent_link(fact);
        const std::string id = c.fact_id;
        facts_.emplace(id, std::move(fact));
        return id;
    }

    const DomainFact* find_fact(const std::string& fact_id) const {
        auto it = facts_.find(fact_id);
        return it == facts_.end() ? nullptr : &it->second;
    }

    void replace_fact(const std::string& fact_id, DomainFact fact) {
        auto it = facts_.find(fact_id);
        if (it == facts_.end()) fail(ErrorKind::not_found, "unknown fact_id '" + fact_id + "'");
        if (core(fact).fact_id != fact_id)
            fail(ErrorKind::contract, "replacement fact id differs from '" + fact_id + "'");
        if (core(fact).person_id != person_id_)
            fail(ErrorKind::scope, "replacement fact is scoped to another person");
        validate_fact(fact, /*require_provenance=*/false);
        check_parent_link(fact);
        it->second = std::move(fact);
    }

    void erase_fact(const std::string& fact_id) {
        if (facts_.erase(fact_id) == 0)
            fail(ErrorKind::not_found, "unknown fact_id '" + fact_id + "'");
    }

    // Query path: active facts only, stable (upper_category, fact_id) order.
    // Style is reachable only through style_fingerprints().
    std::vector<DomainFact> get_domain(Domain domain,
                                       const std::optional<std::string>& upper_filter = {}) const {
        if (domain == Domain::style)
            fail(ErrorKind::non_queryable, "style is not a queryable domain");
        std::vector<DomainFact> out;
        for (const auto& [id, f] : facts_) {
            const FactCore& c = core(f);
            if (c.domain != domain || c.status != FactStatus::active) continue;
            if (upper_filter && c.upper_category != *upper_filter) continue;
            out.push_back(f);
        }
        std::sort(out.begin(), out.end(), [](const DomainFact& a, const DomainFact& b) {
            return std::tie(core(a).upper_category, core(a).fact_id) <
                   std::tie(core(b).upper_category, core(b).fact_id);
        });
        return out;
    }

    std::vector<StyleFingerprint> style_fingerprints() const {
        std::vector<StyleFingerprint> out;
        for (const auto& [id, f] : facts_)
            if (const auto* s = std::get_if<StyleFingerprint>(&f))
                if (s->core.status == FactStatus::active) out.push_back(*s);
        return out;
    }

    std::vector<const DomainFact*> active_facts() const {
        std::vector<const DomainFact*> out;
        for (const auto& [id, f] : facts_)
            if (core(f).status == FactStatus::active) out.push_back(&f);
        return out;
    }

    std::vector<const DomainFact*> all_facts() const {
        std::vector<const DomainFact*> out;
        for (const auto& [id, f] : facts_) out.push_back(&f);
        return out;
    }

    std::size_t fact_count() const { return facts_.size(); }

    const std::optional<BiographySummary>& narrative() const { return narrative_; }
    void set_narrative(std::optional<BiographySummary> n) { narrative_ = std::move(n); }

    const std::vector<ChangeSet>& changelog() const { return changelog_; }

    // Used by the evolution engine after successfully applying a ChangeSet.
    void commit_changeset(ChangeSet cs) {
        changelog_.push_back(std::move(cs));
        version_ = static_cast<std::int64_t>(changelog_.size());
    }

    std::int64_t next_fact_seq() const { return next_fact_seq_; }
    void set_next_fact_seq(std::int64_t v) { next_fact_seq_ = v; }

    json to_json() const {
        json facts = json::object();
        for (Domain d : kAllDomains) facts[to_string(d)] = json::array();
        for (const auto& [id, f] : facts_)
            facts[to_string(domain_of(f))].push_back(synthius::to_json(f));
        json changelog = json::array();
        for (const auto& cs : changelog_) changelog.push_back(synthius::to_json(cs));
        return {{"person_id", person_id_},
                {"version", version_},
                {"next_fact_seq", next_fact_seq_},
                {"facts", facts},
                {"narrative", narrative_ ? synthius::to_json(*narrative_) : json(nullptr)},
                {"changelog", changelog}};
    }

    // Versioned fact state only: what rollback restores and replay reproduces.
    // The narrative is derived (re-run summarize) and id allocation moves
    // forward monotonically, so neither belongs here.
    json state_json() const {
        json facts = json::object();
        for (Domain d : kAllDomains) facts[to_string(d)] = json::array();
        for (const auto& [id, f] : facts_)
            facts[to_string(domain_of(f))].push_back(synthius::to_json(f));
        return {{"person_id", person_id_}, {"facts", facts}};
    }

    bool operator==(const PersonaStore& other) const { return to_json() == other.to_json(); }

private:
    void check_parent_link(const DomainFact& fact) const {
        const auto* exp = std::get_if<ExperienceNode>(&fact);
        if (!exp || !exp->parent_id) return;
        // Parent chains must stay a forest rooted at already-present nodes.
        std::string cursor = *exp->parent_id;
        std::size_t hops = 0;
        while (!cursor.empty()) {
            if (cursor == exp->core.fact_id)
                fail(ErrorKind::validation, "experience parent link forms a cycle");
            auto it = facts_.find(cursor);
            if (it == facts_.end())
                fail(ErrorKind::validation, "experience parent '" + cursor + "' does not exist");
            const auto* parent = std::get_if<ExperienceNode>(&it->second);
            if (!parent) fail(ErrorKind::validation, "experience parent must be an experience");
            cursor = parent->parent_id.value_or("");
            if (++hops > facts_.size())
                fail(ErrorKind::validation, "experience parent link forms a cycle");
        }
    }

    std::string person_id_;
    std::map<std::string, DomainFact> facts_;
    std::optional<BiographySummary> narrative_;
    std::vector<ChangeSet> changelog_;
    std::int64_t version_ = 0;
    std::int64_t next_fact_seq_ = 1;
};

inline PersonaStore new_store(const std::string& person_id) { return PersonaStore(person_id); }

}  // namespace synthius
