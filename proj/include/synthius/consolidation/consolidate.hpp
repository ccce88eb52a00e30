#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "synthius/consolidation/fact_key.hpp"
#include "synthius/persona/fact.hpp"

namespace synthius {

enum class ConflictRule { recency, confidence, order, merge };

inline const char* to_string(ConflictRule r) {
    switch (r) {
        case ConflictRule::recency: return "recency";
        case ConflictRule::confidence: return "confidence";
        case ConflictRule::order: return "order";
        case ConflictRule::merge: return "merge";
    }
    return "merge";
}

struct ConflictResolution {
    std::string winner_fact_id;
    std::vector<std::string> loser_fact_ids;
    ConflictRule rule = ConflictRule::recency;
};

struct CategoryOutcome {
    std::vector<DomainFact> facts;  // merged actives, conflict losers (superseded), passthrough
    std::vector<ConflictResolution> conflicts;
    std::map<std::string, std::string> absorbed;  // absorbed fact_id -> surviving fact_id
};

namespace detail {

inline Provenance latest_provenance(const DomainFact& f) {
    Provenance latest;
    for (const auto& p : core(f).provenance)
        if (std::tie(p.chunk_index, p.message_id) >= std::tie(latest.chunk_index, latest.message_id))
            latest = p;
    return latest;
}

// Total order deciding conflicts: recency, then confidence, then conversation
// order, then fact id. Returns the rule that separated the pair.
inline std::pair<bool, ConflictRule> beats(const DomainFact& a, const DomainFact& b) {
    const auto anchor_a = anchor_of(a), anchor_b = anchor_of(b);
    if (anchor_a && anchor_b) {
        const int cmp = compare_anchor(*anchor_a, *anchor_b);
        if (cmp != 0) return {cmp > 0, ConflictRule::recency};
    }
    if (core(a).confidence != core(b).confidence)
        return {core(a).confidence > core(b).confidence, ConflictRule::confidence};
    const Provenance pa = latest_provenance(a), pb = latest_provenance(b);
    if (pa != pb)
        return {std::tie(pa.chunk_index, pa.message_id) > std::tie(pb.chunk_index, pb.message_id),
                ConflictRule::order};
    return {core(a).fact_id > core(b).fact_id, ConflictRule::order};
}

template <typename T>
inline std::vector<T> sorted_union(std::vector<T> a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline void merge_payload(DomainFact& rep, const DomainFact& other) {
    std::visit(
        [&](auto& r) {
            using T = std::decay_t<decltype(r)>;
            const auto& o = std::get<T>(other);
            if constexpr (std::is_same_v<T, BiographyFact>) {
                // The latest attestation anchors the merged fact; anything else
                // makes incremental ingest diverge from one-shot consolidation
                // when a re-asserted value later fights a conflict on recency.
                if (!r.time_anchor ||
                    (o.time_anchor && compare_anchor(*o.time_anchor, *r.time_anchor) > 0))
                    r.time_anchor = o.time_anchor;
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                for (const auto& e : o.emotions) {
                    auto it = std::find_if(r.emotions.begin(), r.emotions.end(),
                                           [&](const Emotion& x) { return x.label == e.label; });
                    if (it == r.emotions.end())
                        r.emotions.push_back(e);
                    else
                        it->intensity = std::max(it->intensity, e.intensity);
                }
                std::sort(r.emotions.begin(), r.emotions.end(),
                          [](const Emotion& x, const Emotion& y) { return x.label < y.label; });
                r.participants = sorted_union(r.participants, o.participants);
                if (!r.time_anchor) r.time_anchor = o.time_anchor;
                if (r.narrative.size() < o.narrative.size()) r.narrative = o.narrative;
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                r.strength = std::max(r.strength, o.strength);
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                std::vector<std::string> extra = o.aliases;
                if (o.name != r.name) extra.push_back(o.name);
                extra.erase(std::remove(extra.begin(), extra.end(), r.name), extra.end());
                r.aliases = sorted_union(r.aliases, extra);
                r.closeness = std::max(r.closeness, o.closeness);
                r.trust = std::max(r.trust, o.trust);
                auto all = r.relationship_events;
                all.insert(all.end(), o.relationship_events.begin(), o.relationship_events.end());
                std::sort(all.begin(), all.end(), [](const RelationshipEvent& x, const RelationshipEvent& y) {
                    return std::tie(x.time_anchor, x.description) < std::tie(y.time_anchor, y.description);
                });
                all.erase(std::unique(all.begin(), all.end()), all.end());
                r.relationship_events = std::move(all);
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                if (o.start && (!r.start || *o.start < *r.start)) r.start = o.start;
                if (o.end && (!r.end || *o.end > *r.end)) r.end = o.end;
                r.projects = sorted_union(r.projects, o.projects);
                r.skills = sorted_union(r.skills, o.skills);
                r.tools = sorted_union(r.tools, o.tools);
                r.outcomes = sorted_union(r.outcomes, o.outcomes);
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                r.evidence_quotes = sorted_union(r.evidence_quotes, o.evidence_quotes);
            } else if constexpr (std::is_same_v<T, StyleFingerprint>) {
                for (const auto& [k, v] : o.features)
                    if (!r.features.count(k)) r.features[k] = v;
            }
        },
        rep);
}

// Psychometric scores merge by arithmetic mean over the group members that
// carry the dimension; handled outside merge_payload because it needs the
// whole group at once.
inline void merge_psychometric_scores(DomainFact& rep, const std::vector<const DomainFact*>& group) {
    auto* profile = std::get_if<PsychometricProfile>(&rep);
    if (!profile) return;
    std::map<std::string, std::pair<double, int>> sums;
    for (const auto* f : group)
        for (const auto& [dim, score] : std::get<PsychometricProfile>(*f).dimension_scores) {
            sums[dim].first += score;
            sums[dim].second += 1;
        }
    profile->dimension_scores.clear();
    for (const auto& [dim, sc] : sums) profile->dimension_scores[dim] = sc.first / sc.second;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Duplicates are key-equal facts, or same-category facts whose value-inclusive
// similarity text overlaps at Jaccard >= 0.8. Facts asserting different values
// ("lives in Boston" vs "lives in Denver") stay dissimilar by construction and
// reach conflict resolution instead.
inline bool mergeable(const FactKey& ka, const std::set<std::string>& ta, const FactKey& kb,
                      const std::set<std::string>& tb) {
    if (ka == kb) return true;
    if (ka.domain != kb.domain || ka.upper_category != kb.upper_category) return false;
    return jaccard(ta, tb) >= 0.8;
}

}  // namespace detail

// Duplicate two facts must be to merge; see detail::mergeable.
inline constexpr double kNearDuplicateJaccard = 0.8;

inline ConflictResolution resolve_conflict(const DomainFact& a, const DomainFact& b) {
    const FactKey ka = fact_key(a), kb = fact_key(b);
    if (!ka.conflicts_with(kb))
        fail(ErrorKind::contract, "resolve_conflict called on a non-conflicting pair");
    const auto [a_wins, rule] = detail::beats(a, b);
    const DomainFact& winner = a_wins ? a : b;
    const DomainFact& loser = a_wins ? b : a;
    return ConflictResolution{core(winner).fact_id, {core(loser).fact_id}, rule};
}

// Deduplicate, merge and conflict-resolve facts sharing one
// (domain, upper_category). Inputs must carry fact ids. Superseded inputs
// pass through untouched; output order is by fact_id.
inline CategoryOutcome consolidate_category_full(std::vector<DomainFact> input) {
    CategoryOutcome out;
    if (input.empty()) return out;

    for (const auto& f : input) {
        if (core(f).fact_id.empty())
            fail(ErrorKind::contract, "consolidation requires fact ids on every input");
        if (core(f).domain != core(input.front()).domain ||
            to_lower(core(f).upper_category) != to_lower(core(input.front()).upper_category))
            fail(ErrorKind::contract, "consolidate_category received mixed categories");
    }
    std::sort(input.begin(), input.end(), [](const DomainFact& a, const DomainFact& b) {
        return core(a).fact_id < core(b).fact_id;
    });

    std::vector<DomainFact> work;
    for (auto& f : input) {
        if (core(f).status == FactStatus::superseded)
            out.facts.push_back(std::move(f));  // already resolved history, not re-litigated
        else
            work.push_back(std::move(f));
    }
    if (work.empty()) return out;

    std::vector<FactKey> keys;
    std::vector<std::set<std::string>> texts;
    keys.reserve(work.size());
    for (const auto& f : work) {
        keys.push_back(fact_key(f));
        texts.push_back(term_set(similarity_text(f)));
    }

    detail::UnionFind uf(work.size());
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j)
            if (detail::mergeable(keys[i], texts[i], keys[j], texts[j])) uf.unite(i, j);

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < work.size(); ++i) groups[uf.find(i)].push_back(i);

    std::vector<DomainFact> merged;
    for (const auto& [root, members] : groups) {
        DomainFact rep = work[members.front()];  // min fact_id in the group
        std::vector<const DomainFact*> group_ptrs;
        for (std::size_t idx : members) group_ptrs.push_back(&work[idx]);
        FactCore& rc = core(rep);
        for (std::size_t k = 1; k < members.size(); ++k) {
            const DomainFact& other = work[members[k]];
            rc.provenance = detail::sorted_union(rc.provenance, core(other).provenance);
            rc.confidence = std::max(rc.confidence, core(other).confidence);
            rc.created_version = std::min(rc.created_version, core(other).created_version);
            detail::merge_payload(rep, other);
            out.absorbed[core(other).fact_id] = rc.fact_id;
        }
        if (members.size() > 1) detail::merge_psychometric_scores(rep, group_ptrs);
        merged.push_back(std::move(rep));
    }

    // Conflict resolution among merged survivors sharing (subject, predicate).
    if (has_conflict_semantics(core(work.front()).domain)) {
        std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_sp;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            const FactKey k = fact_key(merged[i]);
            by_sp[{k.subject, k.predicate}].push_back(i);
        }
        for (const auto& [sp, members] : by_sp) {
            if (members.size() < 2) continue;
            // Pairwise `beats` is not a total order across mixed
            // anchored/unanchored facts, so the winner comes from a
            // deterministic fold over fact_id order.
            std::size_t winner = members.front();
            ConflictRule deciding = ConflictRule::order;
            for (std::size_t k = 1; k < members.size(); ++k) {
                const auto [wins, rule] = detail::beats(merged[winner], merged[members[k]]);
                deciding = rule;
                if (!wins) winner = members[k];
            }
            ConflictResolution res;
            res.winner_fact_id = core(merged[winner]).fact_id;
            res.rule = deciding;
            for (std::size_t idx : members) {
                if (idx == winner) continue;
                FactCore& lc = core(merged[idx]);
                lc.status = FactStatus::superseded;
                lc.superseded_by = res.winner_fact_id;
                res.loser_fact_ids.push_back(lc.fact_id);
            }
            std::sort(res.loser_fact_ids.begin(), res.loser_fact_ids.end());
            out.conflicts.push_back(std::move(res));
        }
    }

    for (auto& f : merged) out.facts.push_back(std::move(f));
    std::sort(out.facts.begin(), out.facts.end(), [](const DomainFact& a, const DomainFact& b) {
        return core(a).fact_id < core(b).fact_id;
    });
    return out;
}

inline std::vector<DomainFact> consolidate_category(std::vector<DomainFact> input) {
    return consolidate_category_full(std::move(input)).facts;
}

// Apply consolidate_category independently to every (domain, upper_category)
// group of the input.
inline CategoryOutcome consolidate_facts(std::vector<DomainFact> input) {
    std::map<std::pair<std::string, std::string>, std::vector<DomainFact>> groups;
    for (auto& f : input)
        groups[{std::string(to_string(core(f).domain)), to_lower(core(f).upper_category)}].push_back(
            std::move(f));
    CategoryOutcome out;
    for (auto& [key, facts] : groups) {
        CategoryOutcome part = consolidate_category_full(std::move(facts));
        for (auto& f : part.facts) out.facts.push_back(std::move(f));
        for (auto& c : part.conflicts) out.conflicts.push_back(std::move(c));
        out.absorbed.insert(part.absorbed.begin(), part.absorbed.end());
    }
    std::sort(out.facts.begin(), out.facts.end(), [](const DomainFact& a, const DomainFact& b) {
        return core(a).fact_id < core(b).fact_id;
    });
    return out;
}

}  // namespace synthius
