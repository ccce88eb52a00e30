#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "synthius/evolution/engine.hpp"
#include "synthius/persona/persist.hpp"
#include "synthius/persona/store.hpp"

using namespace synthius;

namespace {

BiographyFact bio(const std::string& person, const std::string& category,
                  const std::string& statement, const std::string& id = "") {
    BiographyFact f;
    f.core.fact_id = id;
    f.core.person_id = person;
    f.core.domain = Domain::biography;
    f.core.upper_category = category;
    f.core.confidence = 0.9;
    f.core.provenance = {{"conv", 0, "m0"}};
    f.statement = statement;
    return f;
}

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("synthius_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("new_store starts empty at version zero") {
    const PersonaStore store = new_store("caroline");
    CHECK(store.version() == 0);
    for (Domain d : kQueryableDomains) CHECK(store.get_domain(d).empty());
    CHECK(store.style_fingerprints().empty());
    CHECK_THROWS_AS(new_store(""), Error);
}

TEST_CASE("insert_fact validates, scopes and does not bump the version") {
    PersonaStore store = new_store("ana");
    const std::string id = store.insert_fact(bio("ana", "residence", "lives in Boston"));
    CHECK_FALSE(id.empty());
    CHECK(store.find_fact(id) != nullptr);
    CHECK(store.version() == 0);

    PreferenceFact bad;
    bad.core.person_id = "ana";
    bad.core.domain = Domain::preferences;
    bad.core.upper_category = "x";
    bad.target = "hiking";
    bad.strength = 1.3;  // out of range
    CHECK_THROWS_AS(store.insert_fact(bad), Error);

    try {
        store.insert_fact(bio("melanie", "residence", "lives in Denver"));
        FAIL("expected scope error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::scope);
    }

    // unknown biography category is a validation error naming the field value
    CHECK_THROWS_AS(store.insert_fact(bio("ana", "astrology", "reads charts")), Error);
}

TEST_CASE("fact ids are unique and disjoint across stores") {
    PersonaStore a = new_store("ana");
    PersonaStore b = new_store("ben");
    std::set<std::string> ids;
    for (int i = 0; i < 5; ++i) {
        ids.insert(a.insert_fact(bio("ana", "residence", "statement " + std::to_string(i))));
        ids.insert(b.insert_fact(bio("ben", "residence", "statement " + std::to_string(i))));
    }
    CHECK(ids.size() == 10);
    CHECK_THROWS_AS(a.insert_fact(bio("ana", "residence", "dup", *ids.begin())), Error);
}

TEST_CASE("get_domain returns active facts ordered by (upper_category, fact_id)") {
    PersonaStore store = new_store("ana");
    store.insert_fact(bio("ana", "health", "runs daily"));
    store.insert_fact(bio("ana", "education", "studied math at MIT"));
    store.insert_fact(bio("ana", "education", "graduated in 2015"));
    store.insert_fact(bio("ana", "health", "sleeps well"));
    BiographyFact superseded = bio("ana", "education", "old statement");
    superseded.core.status = FactStatus::superseded;
    superseded.core.superseded_by = "ana-f000001";
    store.insert_fact(superseded);

    const auto education = store.get_domain(Domain::biography, std::string("education"));
    CHECK(education.size() == 2);
    const auto all = store.get_domain(Domain::biography);
    REQUIRE(all.size() == 4);
    for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK(std::tie(core(all[i - 1]).upper_category, core(all[i - 1]).fact_id) <=
              std::tie(core(all[i]).upper_category, core(all[i]).fact_id));
    }
}

TEST_CASE("style is never reachable through the query path") {
    PersonaStore store = new_store("ana");
    StyleFingerprint style;
    style.core.person_id = "ana";
    style.core.domain = Domain::style;
    style.core.upper_category = "style";
    style.features["mean_message_tokens"] = 9.5;
    store.insert_fact(style);

    try {
        store.get_domain(Domain::style);
        FAIL("expected non-queryable error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_queryable);
    }
    CHECK(store.style_fingerprints().size() == 1);  // generation consumers only
}

TEST_CASE("experience parent links must form a forest") {
    PersonaStore store = new_store("ana");
    ExperienceNode root;
    root.core.person_id = "ana";
    root.core.domain = Domain::experiences;
    root.core.upper_category = "travel";
    root.core.provenance = {{"conv", 0, "m0"}};
    root.title = "trip to Japan";
    const std::string root_id = store.insert_fact(root);

    ExperienceNode child = root;
    child.core.fact_id = "";
    child.title = "day in Kyoto";
    child.parent_id = root_id;
    store.insert_fact(child);

    ExperienceNode orphan = root;
    orphan.core.fact_id = "";
    orphan.title = "dangling";
    orphan.parent_id = "ana-f999999";
    CHECK_THROWS_AS(store.insert_fact(orphan), Error);
}

TEST_CASE("psychometric scores outside the framework schema are rejected") {
    PersonaStore store = new_store("ana");
    PsychometricProfile p;
    p.core.person_id = "ana";
    p.core.domain = Domain::psychometrics;
    p.core.upper_category = "big_five";
    p.framework = Framework::big_five;
    p.dimension_scores["openness"] = 0.7;
    store.insert_fact(p);

    PsychometricProfile bad = p;
    bad.core.fact_id = "";
    bad.dimension_scores["charisma"] = 0.5;  // not a big_five dimension
    CHECK_THROWS_AS(store.insert_fact(bad), Error);

    PsychometricProfile out_of_range = p;
    out_of_range.core.fact_id = "";
    out_of_range.dimension_scores["openness"] = 1.5;
    CHECK_THROWS_AS(store.insert_fact(out_of_range), Error);
}

TEST_CASE("save/load round-trip is value identity including changelog") {
    const auto dir = temp_dir("roundtrip");
    PersonaStore store = new_store("ana");

    ChangeSet cs = propose_diff(store, std::vector<DomainFact>{
                                           bio("ana", "residence", "lives in Boston"),
                                           bio("ana", "education", "studied math at MIT"),
                                       },
                                "2024-01-01T00:00:00Z");
    apply(store, cs);

    // An edit and a delete exercise superseded facts and inverses.
    const auto facts = store.get_domain(Domain::biography);
    REQUIRE(facts.size() == 2);
    ChangeSet manual;
    manual.id = "cs-000002";
    manual.base_version = store.version();
    manual.timestamp = "2024-01-02T00:00:00Z";
    json patch = {{"status", "superseded"}, {"superseded_by", core(facts[1]).fact_id}};
    json prior = {{"status", "active"}, {"superseded_by", nullptr}};
    manual.ops.push_back(EditOp{core(facts[0]).fact_id, patch, prior});
    apply(store, manual);

    save_store(store, dir);
    const PersonaStore loaded = load_store(dir);
    CHECK(loaded == store);
    CHECK(loaded.version() == 2);
    CHECK(loaded.changelog().size() == 2);

    // Replay of the loaded changelog reproduces the fact state exactly.
    const PersonaStore replayed = replay("ana", loaded.changelog());
    CHECK(replayed.state_json() == store.state_json());
}

TEST_CASE("load fails with the file name when the changelog is truncated") {
    const auto dir = temp_dir("truncated");
    PersonaStore store = new_store("ana");
    apply(store, propose_diff(store, std::vector<DomainFact>{bio("ana", "residence", "lives in Oslo")}));
    save_store(store, dir);

    std::ofstream out(dir / "changelog.jsonl", std::ios::trunc);
    out << "{\"id\": \"cs-0000";  // cut mid-record
    out.close();
    try {
        load_store(dir);
        FAIL("expected load error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
        CHECK(std::string(e.what()).find("changelog.jsonl") != std::string::npos);
    }
    CHECK_THROWS_AS(load_store(temp_dir("missing")), Error);
}

TEST_CASE("round-trip preserves superseded facts and links after edits") {
    const auto dir = temp_dir("superseded");
    PersonaStore store = new_store("ana");
    apply(store, propose_diff(store, std::vector<DomainFact>{bio("ana", "residence", "lives in Boston")}));

    BiographyFact newer = bio("ana", "residence", "lives in Denver");
    newer.time_anchor = "2024-01";
    apply(store, propose_diff(store, std::vector<DomainFact>{newer}));

    BiographyFact newest = bio("ana", "residence", "lives in Lisbon");
    newest.time_anchor = "2025-03";
    apply(store, propose_diff(store, std::vector<DomainFact>{newest}));

    save_store(store, dir);
    const PersonaStore loaded = load_store(dir);
    CHECK(loaded == store);

    std::size_t superseded = 0;
    for (const auto* f : loaded.all_facts())
        if (core(*f).status == FactStatus::superseded) {
            ++superseded;
            CHECK(core(*f).superseded_by.has_value());
            CHECK(loaded.find_fact(*core(*f).superseded_by) != nullptr);
        }
    CHECK(superseded >= 1);
}
