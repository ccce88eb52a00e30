#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "synthius/evolution/engine.hpp"
#include "synthius/retrieval/answer.hpp"
#include "synthius/retrieval/index.hpp"
#include "synthius/retrieval/plan.hpp"
#include "synthius/retrieval/rag.hpp"

using namespace synthius;

namespace {

BiographyFact bio(const std::string& person, const std::string& category,
                  const std::string& statement, const std::string& anchor = "") {
    BiographyFact f;
    f.core.person_id = person;
    f.core.domain = Domain::biography;
    f.core.upper_category = category;
    f.core.confidence = 0.9;
    f.core.provenance = {{"conv", 0, "m0"}};
    f.statement = statement;
    if (!anchor.empty()) f.time_anchor = anchor;
    return f;
}

PersonaStore caroline_store() {
    PersonaStore store = new_store("Caroline");
    std::vector<DomainFact> facts;
    facts.push_back(bio("Caroline", "residence", "lives in Boston", "2019"));
    facts.push_back(bio("Caroline", "education", "studied biology at Boston University"));
    WorkEngagement w;
    w.core.person_id = "Caroline";
    w.core.domain = Domain::work;
    w.core.upper_category = "northbridge labs";
    w.core.provenance = {{"conv", 0, "m1"}};
    w.organization = "Northbridge Labs";
    w.role = "research engineer";
    facts.push_back(w);
    PersonModel sister;
    sister.core.person_id = "Caroline";
    sister.core.domain = Domain::social;
    sister.core.upper_category = "ana";
    sister.core.provenance = {{"conv", 0, "m2"}};
    sister.name = "Ana";
    sister.relationship_role = "sister";
    facts.push_back(sister);
    PreferenceFact pref;
    pref.core.person_id = "Caroline";
    pref.core.domain = Domain::preferences;
    pref.core.upper_category = "hiking";
    pref.core.provenance = {{"conv", 0, "m3"}};
    pref.target = "hiking";
    pref.polarity = Polarity::positive;
    pref.strength = 0.9;
    pref.original_phrasing = "I love hiking";
    facts.push_back(pref);
    StyleFingerprint style;
    style.core.person_id = "Caroline";
    style.core.domain = Domain::style;
    style.core.upper_category = "style";
    style.features["mean_message_tokens"] = 8.0;
    facts.push_back(style);
    apply(store, propose_diff(store, facts));
    return store;
}

// Exhaustive-scan oracle: score every active fact directly from the weight
// table, independent of the inverted index.
std::vector<Match> oracle_rag(const PersonaStore& store, Domain domain,
                              const std::vector<std::string>& terms, int k, double threshold) {
    std::vector<Match> out;
    for (const auto& fact : store.get_domain(domain)) {
        std::set<std::string> unique_terms;
        for (const auto& t : terms) {
            const std::string n = normalize_token(t);
            if (!n.empty()) unique_terms.insert(n);
        }
        double score = 0.0;
        std::set<std::string> fields;
        for (const auto& [field, weight] : field_weights().at(domain)) {
            std::set<std::string> toks;
            for (const auto& t : normalized_terms(field_text(fact, field))) toks.insert(t);
            for (const auto& term : unique_terms) {
                if (toks.count(term)) {
                    score += weight;
                    fields.insert(field);
                }
            }
        }
        if (score >= threshold && score > 0.0) {
            Match m;
            m.fact_id = core(fact).fact_id;
            m.domain = domain;
            m.score = score;
            m.matched_fields.assign(fields.begin(), fields.end());
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.fact_id < b.fact_id;
    });
    if (out.size() > static_cast<std::size_t>(k)) out.resize(k);
    return out;
}

}  // namespace

TEST_CASE("reference planner routes questions to the right domains") {
    ReferencePlanner planner;
    const RetrievalPlan p = plan("Where does Ana work?", planner, "Ana");
    bool has_work = false;
    for (Domain d : p.selected_domains) has_work = has_work || d == Domain::work;
    CHECK(has_work);
    // the persona's own name is not an informative query term
    for (const auto& [d, terms] : p.query_terms)
        for (const auto& t : terms) CHECK(t != "ana");

    CHECK_THROWS_AS(plan("", planner, "Ana"), Error);

    const RetrievalPlan all = plan("zxqv frobnicates?", planner, "Ana");
    CHECK(all.selected_domains.size() == 6);  // nothing routed: all queryable domains
}

TEST_CASE("planner port outage falls back to all six domains") {
    class DownPlanner : public PlannerPort {
        RetrievalPlan plan(const std::string&, const std::string&) override {
            fail(ErrorKind::port, "planner down");
        }
    };
    DownPlanner port;
    const RetrievalPlan p = plan("Where does Ana work?", port, "Ana");
    CHECK(p.selected_domains.size() == 6);
    CHECK_FALSE(p.query_terms.at(Domain::work).empty());
}

TEST_CASE("category_rag: empty store, unique candidate, style guard") {
    const PersonaStore empty = new_store("Nobody");
    RetrievalIndex empty_index(empty);
    CHECK(category_rag(empty_index, Domain::biography, {"anything"}, 5, 1.0).empty());

    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    const auto matches = category_rag(index, Domain::biography, {"boston", "lives"}, 5, 1.0);
    REQUIRE_FALSE(matches.empty());
    const DomainFact* top = store.find_fact(matches[0].fact_id);
    CHECK(std::get<BiographyFact>(*top).statement == "lives in Boston");
    CHECK(matches[0].score >= 1.0);
    REQUIRE_FALSE(matches[0].matched_fields.empty());

    CHECK_THROWS_AS(category_rag(index, Domain::style, {"style"}, 5, 1.0), Error);
    CHECK_THROWS_AS(category_rag(index, Domain::biography, {"x"}, 0, 1.0), Error);
}

TEST_CASE("category_rag equals the exhaustive-scan oracle on a 20-fact store") {
    PersonaStore store = new_store("Ana");
    std::vector<DomainFact> facts;
    const std::vector<std::string> cities = {"Boston", "Denver", "Lisbon", "Austin", "Toronto"};
    const std::vector<std::string> verbs = {"lives in", "moved to", "grew up in", "lived in"};
    for (int i = 0; i < 20; ++i)
        facts.push_back(bio("Ana", i % 2 ? "residence" : "life_events",
                            verbs[i % 4] + " " + cities[i % 5],
                            i % 3 ? "20" + std::to_string(10 + i) : ""));
    apply(store, propose_diff(store, facts));
    RetrievalIndex index(store);

    std::mt19937_64 rng(5);
    const std::vector<std::string> vocab = {"boston", "denver",  "lisbon", "austin",
                                            "toronto", "lives",  "moved",  "grew",
                                            "2013",    "unknown", "city"};
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::string> terms;
        const int n = 1 + rng() % 3;
        for (int t = 0; t < n; ++t) terms.push_back(vocab[rng() % vocab.size()]);
        const int k = 1 + rng() % 5;
        const double threshold = (rng() % 2) ? 1.0 : 0.25;

        const auto got = category_rag(index, Domain::biography, terms, k, threshold);
        const auto expected = oracle_rag(store, Domain::biography, terms, k, threshold);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].fact_id == expected[i].fact_id);
            CHECK(got[i].score == Catch::Approx(expected[i].score));
        }
    }
}

TEST_CASE("retrieve: grounded evidence vs refusal on absent premises") {
    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    ReferencePlanner planner;

    const RetrievalResult found = retrieve(store, index, "Where does Caroline live?", planner);
    CHECK(found.evidence_found);
    REQUIRE_FALSE(found.matches.empty());
    CHECK(found.latency_ms >= 0.0);
    // ranking is strictly ordered
    for (std::size_t i = 1; i < found.matches.size(); ++i) {
        const bool ordered = found.matches[i - 1].score > found.matches[i].score ||
                             (found.matches[i - 1].score == found.matches[i].score &&
                              found.matches[i - 1].fact_id < found.matches[i].fact_id);
        CHECK(ordered);
    }

    const RetrievalResult sibling =
        retrieve(store, index, "Does Caroline have a brother?", planner);
    CHECK_FALSE(sibling.evidence_found);

    const PersonaStore empty = new_store("Kim");
    RetrievalIndex empty_index(empty);
    CHECK_FALSE(retrieve(empty, empty_index, "anything at all?", planner).evidence_found);
}

TEST_CASE("no match ever references a style fact") {
    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    ReferencePlanner planner;
    for (const std::string q : {"Where does Caroline live?", "style fingerprint tokens?",
                                "mean message punctuation?"}) {
        for (const auto& m : retrieve(store, index, q, planner).matches) {
            const DomainFact* f = store.find_fact(m.fact_id);
            REQUIRE(f != nullptr);
            CHECK(domain_of(*f) != Domain::style);
        }
    }
}

TEST_CASE("answer policy: refusal on no evidence, citations when grounded") {
    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    ReferencePlanner planner;
    ReferenceAnswerer answerer;

    const RetrievalResult miss = retrieve(store, index, "Does Caroline have a brother?", planner);
    const Answer refusal = answer("Does Caroline have a brother?", store, miss, answerer);
    CHECK(refusal.kind == AnswerKind::refusal);
    CHECK(refusal.cited_fact_ids.empty());
    CHECK(refusal.text == kRefusalText);

    const RetrievalResult hit = retrieve(store, index, "Where does Caroline live?", planner);
    const Answer grounded = answer("Where does Caroline live?", store, hit, answerer);
    CHECK(grounded.kind == AnswerKind::grounded);
    CHECK_FALSE(grounded.cited_fact_ids.empty());
    CHECK(grounded.text.find("Boston") != std::string::npos);
}

TEST_CASE("answer port failure degrades to a flagged refusal") {
    class DownAnswerer : public AnswerPort {
        std::string answer(const std::string&, const std::vector<EvidenceItem>&) override {
            fail(ErrorKind::port, "answer model down");
        }
    };
    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    ReferencePlanner planner;
    DownAnswerer port;
    const RetrievalResult hit = retrieve(store, index, "Where does Caroline live?", planner);
    const Answer degraded = answer("Where does Caroline live?", store, hit, port);
    CHECK(degraded.kind == AnswerKind::refusal);
    CHECK(degraded.degraded);
    CHECK(degraded.cited_fact_ids.empty());
}

TEST_CASE("retrieval is deterministic for identical inputs") {
    const PersonaStore store = caroline_store();
    RetrievalIndex index(store);
    ReferencePlanner planner;
    const auto a = retrieve(store, index, "Where does Caroline work?", planner);
    const auto b = retrieve(store, index, "Where does Caroline work?", planner);
    REQUIRE(a.matches.size() == b.matches.size());
    for (std::size_t i = 0; i < a.matches.size(); ++i) {
        CHECK(a.matches[i].fact_id == b.matches[i].fact_id);
        CHECK(a.matches[i].score == b.matches[i].score);
    }
    CHECK(a.evidence_found == b.evidence_found);
}

TEST_CASE("index updates incrementally from applied changesets") {
    PersonaStore store = caroline_store();
    RetrievalIndex index(store);

    std::vector<DomainFact> incoming;
    incoming.push_back(bio("Caroline", "languages", "speaks Portuguese"));
    const ChangeSet cs = propose_diff(store, incoming);
    apply(store, cs);
    index.apply_changeset(store, cs);

    const auto matches = category_rag(index, Domain::biography, {"portuguese"}, 5, 1.0);
    REQUIRE(matches.size() == 1);

    // a full rebuild agrees with the incremental state
    RetrievalIndex rebuilt(store);
    const auto again = category_rag(rebuilt, Domain::biography, {"portuguese"}, 5, 1.0);
    REQUIRE(again.size() == 1);
    CHECK(again[0].fact_id == matches[0].fact_id);
    CHECK(again[0].score == matches[0].score);
}
