#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "synthius/evolution/change.hpp"
#include "synthius/persona/render.hpp"
#include "synthius/persona/store.hpp"
#include "synthius/text.hpp"

namespace synthius {

// Field weights behind the CategoryRAG scorer. Primary attested-text fields
// and the rendered summary weigh 1.0 so a single hit clears the default
// evidence threshold; metadata fields contribute fractions. The canonical
// copy ships under assets/retrieval_weights.json.
inline const std::map<Domain, std::vector<std::pair<std::string, double>>>& field_weights() {
    static const std::map<Domain, std::vector<std::pair<std::string, double>>> weights = {
        {Domain::biography,
         {{"statement", 1.0}, {"summary", 1.0}, {"upper_category", 0.5}, {"time_anchor", 0.25}}},
        {Domain::preferences,
         {{"target", 1.0}, {"original_phrasing", 1.0}, {"summary", 1.0}, {"upper_category", 0.5}}},
        {Domain::social,
         {{"name", 1.0},
          {"aliases", 1.0},
          {"relationship_role", 1.0},
          {"summary", 1.0},
          {"relationship_events", 0.5}}},
        {Domain::work,
         {{"organization", 1.0},
          {"role", 1.0},
          {"summary", 1.0},
          {"projects", 0.6},
          {"skills", 0.6},
          {"tools", 0.6},
          {"outcomes", 0.5}}},
        {Domain::experiences,
         {{"title", 1.0},
          {"narrative", 1.0},
          {"summary", 1.0},
          {"participants", 0.5},
          {"emotions", 0.4},
          {"time_anchor", 0.25}}},
        {Domain::psychometrics,
         {{"framework", 1.0}, {"summary", 1.0}, {"dimensions", 0.5}, {"evidence_quotes", 0.4}}},
    };
    return weights;
}

// Text of one weighted field; joined lists index as one field. The synthetic
// "summary" field is the rendered fact, so natural question verbs ("work",
// "likes") can hit facts whose structured fields only carry proper nouns.
inline std::string field_text(const DomainFact& fact, const std::string& field) {
    if (field == "summary") return render_fact(fact);
    auto joined = [](const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& p : parts) {
            if (!out.empty()) out += ' ';
            out += p;
        }
        return out;
    };
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            const FactCore& c = v.core;
            if (field == "upper_category") return c.upper_category;
            if constexpr (std::is_same_v<T, BiographyFact>) {
                if (field == "statement") return v.statement;
                if (field == "time_anchor") return v.time_anchor.value_or("");
            } else if constexpr (std::is_same_v<T, PreferenceFact>) {
                if (field == "target") return v.target;
                if (field == "original_phrasing") return v.original_phrasing;
            } else if constexpr (std::is_same_v<T, PersonModel>) {
                if (field == "name") return v.name;
                if (field == "aliases") return joined(v.aliases);
                if (field == "relationship_role") return v.relationship_role;
                if (field == "relationship_events") {
                    std::string out;
                    for (const auto& e : v.relationship_events) out += e.description + " ";
                    return out;
                }
            } else if constexpr (std::is_same_v<T, WorkEngagement>) {
                if (field == "organization") return v.organization;
                if (field == "role") return v.role;
                if (field == "projects") return joined(v.projects);
                if (field == "skills") return joined(v.skills);
                if (field == "tools") return joined(v.tools);
                if (field == "outcomes") return joined(v.outcomes);
            } else if constexpr (std::is_same_v<T, ExperienceNode>) {
                if (field == "title") return v.title;
                if (field == "narrative") return v.narrative;
                if (field == "participants") return joined(v.participants);
                if (field == "time_anchor") return v.time_anchor.value_or("");
                if (field == "emotions") {
                    std::string out;
                    for (const auto& e : v.emotions) out += e.label + " ";
                    return out;
                }
            } else if constexpr (std::is_same_v<T, PsychometricProfile>) {
                if (field == "framework") return to_string(v.framework);
                if (field == "dimensions") {
                    std::string out;
                    for (const auto& [dim, score] : v.dimension_scores) out += dim + " ";
                    return out;
                }
                if (field == "evidence_quotes") return joined(v.evidence_quotes);
            }
            return "";
        },
        fact);
}

// Per-domain inverted index over normalized field tokens; active queryable
// facts only. Style facts are never indexed, so no query can reach them.
class RetrievalIndex {
public:
    RetrievalIndex() = default;

    explicit RetrievalIndex(const PersonaStore& store) { build(store); }

    void build(const PersonaStore& store) {
        postings_.clear();
        fact_terms_.clear();
        for (const auto* f : store.active_facts()) add_fact(*f);
        version_ = store.version();
    }

    // Incremental maintenance driven by the ops of an applied ChangeSet.
    void apply_changeset(const PersonaStore& store_after, const ChangeSet& cs) {
        for (const auto& op : cs.ops) {
            if (const auto* add = std::get_if<AddOp>(&op)) {
                const DomainFact* now = store_after.find_fact(core(add->fact).fact_id);
                if (now) add_fact(*now);
            } else if (const auto* edit = std::get_if<EditOp>(&op)) {
                remove_fact(edit->fact_id);
                const DomainFact* now = store_after.find_fact(edit->fact_id);
                if (now) add_fact(*now);
            } else {
                remove_fact(std::get<DeleteOp>(op).fact_id);
            }
        }
        version_ = store_after.version();
    }

    std::int64_t version() const { return version_; }

    struct Hit {
        double score = 0.0;
        std::set<std::string> matched_fields;
    };

    // Accumulated binary (term x field) weighted hits per fact.
    std::map<std::string, Hit> query(Domain domain, const std::vector<std::string>& terms) const {
        std::map<std::string, Hit> hits;
        auto domain_it = postings_.find(domain);
        if (domain_it == postings_.end()) return hits;
        std::set<std::string> seen_terms;
        for (const auto& raw : terms) {
            const std::string term = normalize_token(raw);
            if (term.empty() || !seen_terms.insert(term).second) continue;
            auto it = domain_it->second.find(term);
            if (it == domain_it->second.end()) continue;
            for (const auto& posting : it->second) {
                Hit& h = hits[posting.fact_id];
                h.score += posting.weight;
                h.matched_fields.insert(posting.field);
            }
        }
        return hits;
    }

private:
    struct Posting {
        std::string fact_id;
        std::string field;
        double weight;
    };

    void add_fact(const DomainFact& fact) {
        const FactCore& c = core(fact);
        if (c.domain == Domain::style || c.status != FactStatus::active) return;
        auto weights_it = field_weights().find(c.domain);
        if (weights_it == field_weights().end()) return;
        for (const auto& [field, weight] : weights_it->second) {
            std::set<std::string> terms;
            for (const auto& t : normalized_terms(field_text(fact, field))) terms.insert(t);
            for (const auto& t : terms) {
                postings_[c.domain][t].push_back({c.fact_id, field, weight});
                fact_terms_[c.fact_id].push_back({c.domain, t});
            }
        }
    }

    void remove_fact(const std::string& fact_id) {
        auto it = fact_terms_.find(fact_id);
        if (it == fact_terms_.end()) return;
        for (const auto& [domain, term] : it->second) {
            auto dit = postings_.find(domain);
            if (dit == postings_.end()) continue;
            auto tit = dit->second.find(term);
            if (tit == dit->second.end()) continue;
            auto& vec = tit->second;
            vec.erase(std::remove_if(vec.begin(), vec.end(),
                                     [&](const Posting& p) { return p.fact_id == fact_id; }),
                      vec.end());
            if (vec.empty()) dit->second.erase(tit);
        }
        fact_terms_.erase(it);
    }

    std::map<Domain, std::unordered_map<std::string, std::vector<Posting>>> postings_;
    std::unordered_map<std::string, std::vector<std::pair<Domain, std::string>>> fact_terms_;
    std::int64_t version_ = 0;
};

}  // namespace synthius
