#include <random>
#include <catch2/catch_amalgamated.hpp>

#include "synthius/corpus/chunk.hpp"
#include "synthius/corpus/locomo.hpp"
#include "synthius/corpus/parse.hpp"

using namespace synthius;

namespace {

const std::string kFixtures = SYNTHIUS_FIXTURE_DIR;

Conversation uniform_conversation(std::size_t messages, long tokens_each) {
    Conversation conv;
    conv.id = "uniform";
    conv.participants = {"a", "b"};
    Session s;
    s.id = "s0";
    for (std::size_t i = 0; i < messages; ++i) {
        Message m;
        m.id = "m" + std::to_string(100 + i);
        m.speaker = i % 2 == 0 ? "a" : "b";
        m.body = "x";
        m.token_count = tokens_each;  // synthetic counts, chunking only looks at these
        s.messages.push_back(m);
    }
    conv.sessions.push_back(s);
    return conv;
}

}  // namespace

TEST_CASE("count_tokens matches the hand-tokenized oracle fixture") {
    // Rule: maximal alphanumeric runs are words (non-ASCII bytes join words);
    // every other non-whitespace byte is a single token.
    const std::vector<std::pair<std::string, long>> oracle = {
        {"", 0},
        {"hello world", 2},
        {"Hi, there!", 4},
        {"don't", 3},
        {"I live in Boston.", 5},
        {"a  b   c", 3},
        {"...", 3},
        {"42 is the answer", 4},
        {"well-known fact", 4},
        {"e.g. this", 5},
        {"(parentheses)", 3},
        {"C++20", 4},
        {"one,two,three", 5},
        {"  leading and trailing  ", 3},
        {"line1\nline2", 2},
        {"tab\tsep", 2},
        {"12/03/24, 09:15 - Ana: hi", 13},
        {"na\xc3\xafve caf\xc3\xa9", 2},
        {"$5.99", 4},
        {"emoji \xf0\x9f\x98\x80 end", 3},
    };
    for (const auto& [text, expected] : oracle) {
        INFO("text: " << text);
        CHECK(count_tokens(text) == expected);
    }
}

TEST_CASE("count_tokens is deterministic and monotone under concatenation") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "ab c.,!x9 \t";
    for (int i = 0; i < 500; ++i) {
        std::string a, b;
        for (int k = 0; k < static_cast<int>(rng() % 30); ++k) a += alphabet[rng() % alphabet.size()];
        for (int k = 0; k < static_cast<int>(rng() % 30); ++k) b += alphabet[rng() % alphabet.size()];
        CHECK(count_tokens(a) == count_tokens(a));
        CHECK(count_tokens(a + b) >= std::max(count_tokens(a), count_tokens(b)));
    }
}

TEST_CASE("canonical parse: two speakers, three messages, one session") {
    const std::string doc = R"({
        "id": "c1",
        "participants": ["Ana", "Ben"],
        "sessions": [{"id": "s0", "timestamp": "2024-01-01", "messages": [
            {"id": "m0", "speaker": "Ana", "ts": null, "body": "hello there"},
            {"id": "m1", "speaker": "Ben", "ts": null, "body": "hi"},
            {"id": "m2", "speaker": "Ana", "ts": null, "body": "how are you?"}
        ]}]
    })";
    const Conversation conv = parse_conversation(doc, SourceFormat::canonical);
    CHECK(conv.participants.size() == 2);
    CHECK(conv.sessions.size() == 1);
    CHECK(conv.message_count() == 3);
    CHECK(conv.sessions[0].messages[0].token_count == 2);
    CHECK(conv.sessions[0].messages[2].token_count == 4);
}

TEST_CASE("canonical parse errors") {
    CHECK_THROWS_AS(parse_conversation("{not json", SourceFormat::canonical), Error);
    // speaker missing from the participant list
    const std::string doc = R"({"id":"c","participants":["Ana"],"sessions":[
        {"id":"s0","timestamp":null,"messages":[{"id":"m0","speaker":"Zoe","ts":null,"body":"x"}]}]})";
    CHECK_THROWS_AS(parse_conversation(doc, SourceFormat::canonical), Error);
    CHECK_THROWS_AS(source_format_from("pdf"), Error);
}

TEST_CASE("canonical serialize-parse round trip is the identity") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        Conversation conv;
        conv.id = "conv" + std::to_string(iter);
        conv.participants = {"Ana", "Ben", "Cyr"};
        const std::size_t sessions = 1 + rng() % 3;
        std::size_t mid = 0;
        for (std::size_t si = 0; si < sessions; ++si) {
            Session s;
            s.id = "s" + std::to_string(si);
            if (rng() % 2) s.timestamp = "2024-0" + std::to_string(1 + si) + "-15";
            const std::size_t messages = 1 + rng() % 5;
            for (std::size_t mi = 0; mi < messages; ++mi) {
                Message m;
                m.id = "m" + std::to_string(mid++);
                m.speaker = conv.participants[rng() % conv.participants.size()];
                if (rng() % 2) m.timestamp = s.timestamp;
                m.body = "word" + std::to_string(rng() % 100) + (rng() % 2 ? ", punct!" : "");
                m.token_count = count_tokens(m.body);
                s.messages.push_back(m);
            }
            conv.sessions.push_back(s);
        }
        const Conversation reparsed =
            parse_conversation(serialize_canonical(conv), SourceFormat::canonical);
        CHECK(reparsed == conv);
    }
}

TEST_CASE("locomo-style sessions become one Session per numbered block") {
    const std::string doc = R"({
        "conversation": {
            "speaker_a": "Ana", "speaker_b": "Ben",
            "session_1": [{"speaker": "Ana", "text": "one"}, {"speaker": "Ben", "text": "two"}],
            "session_1_date_time": "2023-05-01",
            "session_2": [{"speaker": "Ana", "text": "three"}],
            "session_2_date_time": "2023-05-08"
        }
    })";
    const Conversation conv = parse_conversation(doc, SourceFormat::locomo);
    REQUIRE(conv.sessions.size() == 2);
    CHECK(conv.sessions[0].timestamp == "2023-05-01");
    CHECK(conv.sessions[1].messages.size() == 1);
    CHECK(conv.sessions[0].messages[0].timestamp == "2023-05-01");
    CHECK(conv.participants == std::vector<std::string>{"Ana", "Ben"});
}

TEST_CASE("whatsapp export fixture parses to the expected canonical form") {
    const Conversation conv =
        parse_conversation(read_file(kFixtures + "/whatsapp_export.txt"), SourceFormat::whatsapp);
    REQUIRE(conv.sessions.size() == 2);  // one session per calendar date
    CHECK(conv.sessions[0].messages.size() == 5);
    CHECK(conv.sessions[1].messages.size() == 3);  // system notice skipped
    CHECK(conv.participants == std::vector<std::string>{"Ana", "Ben"});

    const Message& first = conv.sessions[0].messages[0];
    CHECK(first.speaker == "Ana");
    CHECK(first.body == "hi");
    CHECK(first.timestamp == "2024-03-12T09:15:00");  // day-first dates

    // Continuation line appended to the prior message.
    const Message& multiline = conv.sessions[0].messages[4];
    CHECK(multiline.speaker == "Ben");
    CHECK(multiline.body == "Nice! Did you see the game?\nIt went to penalties.");
}

TEST_CASE("whatsapp export with an orphan continuation line fails with the line number") {
    try {
        parse_conversation("free floating text\n", SourceFormat::whatsapp);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("jsonl parse groups contiguous session tags") {
    const std::string doc =
        R"({"speaker":"Ana","text":"one","session":1})" "\n"
        R"({"speaker":"Ben","text":"two","session":1})" "\n"
        R"({"speaker":"Ana","text":"three","session":2})" "\n";
    const Conversation conv = parse_conversation(doc, SourceFormat::jsonl);
    REQUIRE(conv.sessions.size() == 2);
    CHECK(conv.sessions[0].messages.size() == 2);
    CHECK_THROWS_AS(parse_conversation("{\"no_speaker\":1}\n", SourceFormat::jsonl), Error);
}

TEST_CASE("chunking: single small conversation fits one chunk") {
    const Conversation conv = uniform_conversation(4, 25);  // 100 tokens
    const auto chunks = chunk(conv, {4000, 200});
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].overlap_prefix_len == 0);
    CHECK(chunks[0].token_total == 100);
}

TEST_CASE("chunking: hand-simulated greedy fill, budget 35 overlap 10") {
    // 10 messages x 10 tokens. Greedy fill takes 3 per chunk; each next chunk
    // carries exactly one 10-token overlap message:
    //   [m0 m1 m2] [m2 m3 m4] [m4 m5 m6] [m6 m7 m8] [m8 m9]
    const Conversation conv = uniform_conversation(10, 10);
    const auto chunks = chunk(conv, {35, 10});
    REQUIRE(chunks.size() == 5);
    const std::vector<std::size_t> sizes = {3, 3, 3, 3, 2};
    const std::vector<std::size_t> prefixes = {0, 1, 1, 1, 1};
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        CHECK(chunks[i].messages.size() == sizes[i]);
        CHECK(chunks[i].overlap_prefix_len == prefixes[i]);
        CHECK(chunks[i].token_total <= 35);
    }
    CHECK(chunks[1].messages[0].id == "m102");

    const auto rebuilt = reconstruct(chunks);
    const auto original = conv.all_messages();
    REQUIRE(rebuilt.size() == original.size());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) CHECK(rebuilt[i].id == original[i]->id);
}

TEST_CASE("chunking: an over-budget message gets its own chunk") {
    Conversation conv = uniform_conversation(3, 10);
    conv.sessions[0].messages[1].token_count = 5000;
    const auto chunks = chunk(conv, {4000, 200});
    REQUIRE(chunks.size() == 3);  // nothing fits alongside the 5000-token message
    // the oversized message is alone and flagged by its token_total
    bool found = false;
    for (const auto& c : chunks) {
        if (c.token_total > 4000) {
            CHECK(c.messages.size() - c.overlap_prefix_len >= 1);
            bool has_big = false;
            for (const auto& m : c.messages) has_big = has_big || m.token_count == 5000;
            CHECK(has_big);
            found = true;
        }
    }
    CHECK(found);
    CHECK(reconstruct(chunks).size() == 3);
}

TEST_CASE("chunking: empty conversation yields an empty list") {
    Conversation conv;
    conv.id = "empty";
    conv.participants = {"a"};
    CHECK(chunk(conv, {4000, 200}).empty());
    CHECK_THROWS_AS(chunk(conv, {100, 100}), Error);  // overlap must be < budget
}

TEST_CASE("locomo loader: bundled fixture has 2 conversations and 24 qa items") {
    const auto records = load_locomo(kFixtures + "/locomo_small.json");
    REQUIRE(records.size() == 2);
    std::size_t qa = 0;
    for (const auto& rec : records) {
        qa += rec.qa.size();
        for (const auto& item : rec.qa) {
            CHECK(rec.conversation.has_participant(item.target_person));
            if (item.knowledge_category) {
                CHECK((item.reasoning_category == ReasoningCategory::adversarial) ==
                      (*item.knowledge_category == KnowledgeCategory::adversarial));
            }
        }
    }
    CHECK(qa == 24);
}

TEST_CASE("locomo loader: qa naming a non-participant fails with the record index") {
    const std::string doc = R"([{
        "id": "bad",
        "conversation": {"speaker_a": "Ana", "speaker_b": "Ben",
            "session_1": [{"speaker": "Ana", "text": "hello"}],
            "session_1_date_time": "2023-01-01"},
        "qa": [{"question": "Where does Zoe live?", "answer": "x",
                "category": "single_hop", "target_person": "Zoe"}]
    }])";
    try {
        load_locomo_text(doc);
        FAIL("expected load error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("record 0") != std::string::npos);
    }
}

TEST_CASE("locomo loader accepts the numeric category convention") {
    CHECK(reasoning_category_from(json(1)) == ReasoningCategory::multi_hop);
    CHECK(reasoning_category_from(json(2)) == ReasoningCategory::temporal);
    CHECK(reasoning_category_from(json(3)) == ReasoningCategory::open_domain);
    CHECK(reasoning_category_from(json(4)) == ReasoningCategory::single_hop);
    CHECK(reasoning_category_from(json(5)) == ReasoningCategory::adversarial);
    CHECK_THROWS_AS(reasoning_category_from(json(9)), Error);
}
