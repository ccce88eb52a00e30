#pragma once

#include <map>
#include <string>
#include <vector>

#include "synthius/persona/taxonomy.hpp"
#include "synthius/ports/model_client.hpp"
#include "synthius/text.hpp"

namespace synthius {

struct RetrievalPlan {
    std::string question;
    std::vector<Domain> selected_domains;  // non-empty subset of the queryable six
    std::map<Domain, std::vector<std::string>> query_terms;  // normalized terms per domain
    std::map<Domain, std::vector<std::string>> upper_category_hints;
};

class PlannerPort {
public:
    virtual ~PlannerPort() = default;
    virtual RetrievalPlan plan(const std::string& question, const std::string& person_id) = 0;
};

// Keyword -> domain routing lexicon (stored stemmed; the canonical copy ships
// under assets/planner_lexicon.json).
inline const std::map<std::string, std::vector<Domain>>& planner_lexicon() {
    static const std::map<std::string, std::vector<Domain>> lex = [] {
        const std::map<Domain, std::vector<std::string>> raw = {
            {Domain::biography,
             {"live", "reside", "city", "home", "town", "born", "birthday", "age", "study",
              "school", "college", "university", "graduate", "education", "degree", "language",
              "speak", "move", "grew", "pet", "dog", "cat", "own", "goal", "believe", "religion",
              "health", "address"}},
            {Domain::work,
             {"work", "job", "company", "career", "office", "profession", "colleague", "project",
              "skill", "employer", "organization", "business", "teach", "teacher", "role"}},
            {Domain::preferences,
             {"like", "love", "enjoy", "hate", "dislike", "favorite", "prefer", "hobby", "passion",
              "fan", "interest"}},
            {Domain::social,
             {"friend", "sister", "brother", "mother", "father", "mom", "dad", "family", "wife",
              "husband", "partner", "boyfriend", "girlfriend", "daughter", "son", "cousin", "aunt",
              "uncle", "grandmother", "grandfather", "relationship", "married", "sibling", "niece",
              "nephew", "child", "kid"}},
            {Domain::experiences,
             {"visit", "trip", "travel", "went", "happen", "event", "experience", "remember",
              "adventure", "vacation", "holiday", "accident", "concert", "festival"}},
            {Domain::psychometrics,
             {"personality", "trait", "value", "character", "empathy", "emotional", "mood",
              "temperament", "outlook"}},
        };
        std::map<std::string, std::vector<Domain>> out;
        for (const auto& [domain, words] : raw)
            for (const auto& w : words) out[normalize_token(w)].push_back(domain);
        return out;
    }();
    return lex;
}

// Deterministic keyword planner used whenever no model port is configured.
class ReferencePlanner : public PlannerPort {
public:
    RetrievalPlan plan(const std::string& question, const std::string& person_id) override {
        RetrievalPlan plan;
        plan.question = question;

        std::set<std::string> person_terms;
        for (const auto& t : normalized_terms(person_id)) person_terms.insert(t);

        std::vector<std::string> terms;
        for (auto& t : normalized_terms(question)) {
            if (person_terms.count(t)) continue;  // the whole store is about this person
            if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
        }

        std::set<Domain> routed;
        const auto& lex = planner_lexicon();
        for (const auto& t : terms) {
            auto it = lex.find(t);
            if (it != lex.end())
                for (Domain d : it->second) routed.insert(d);
        }
        if (routed.empty()) {
            for (Domain d : kQueryableDomains) plan.selected_domains.push_back(d);
        } else {
            for (Domain d : kQueryableDomains)
                if (routed.count(d)) plan.selected_domains.push_back(d);
        }
        for (Domain d : plan.selected_domains) plan.query_terms[d] = terms;
        return plan;
    }
};

class HttpPlanner : public PlannerPort {
public:
    explicit HttpPlanner(PortConfig cfg) : client_(std::move(cfg)) {}

    RetrievalPlan plan(const std::string& question, const std::string& person_id) override {
        const json schema = {{"selected_domains", "array of domain names (style excluded)"},
                             {"query_terms", "object: domain -> array of search terms"}};
        const json res = client_.complete(
            "Pick which memory domains answer this question about " + person_id +
                " and give search terms per domain.\nQuestion: " + question,
            schema, 200);
        if (!res.is_object() || !res.contains("selected_domains"))
            fail(ErrorKind::port, "planner response missing 'selected_domains'");
        RetrievalPlan plan;
        plan.question = question;
        for (const auto& name : res.at("selected_domains")) {
            const Domain d = domain_from(name.get<std::string>());
            if (d == Domain::style) continue;  // style is never planner-selectable
            plan.selected_domains.push_back(d);
        }
        if (plan.selected_domains.empty()) fail(ErrorKind::port, "planner selected no domains");
        for (Domain d : plan.selected_domains) {
            std::vector<std::string> terms;
            const std::string key = to_string(d);
            if (res.contains("query_terms") && res.at("query_terms").contains(key))
                for (const auto& t : res.at("query_terms").at(key))
                    terms.push_back(normalize_token(t.get<std::string>()));
            if (terms.empty()) terms = normalized_terms(question);
            plan.query_terms[d] = std::move(terms);
        }
        return plan;
    }

private:
    HttpModelClient client_;
};

// Planner with the spec'd outage fallback: a failing port degrades to
// querying all six domains with the question's own terms.
inline RetrievalPlan plan(const std::string& question, PlannerPort& port,
                          const std::string& person_id) {
    if (trim(question).empty()) fail(ErrorKind::contract, "question must be non-empty");
    try {
        return port.plan(question, person_id);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::port) throw;
        RetrievalPlan fallback;
        fallback.question = question;
        const auto terms = normalized_terms(question);
        for (Domain d : kQueryableDomains) {
            fallback.selected_domains.push_back(d);
            fallback.query_terms[d] = terms;
        }
        return fallback;
    }
}

}  // namespace synthius
