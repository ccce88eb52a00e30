#!/usr/bin/env python3
"""Regenerates locomo_small.json and adversarial.json.

The gold facts sit in each conversation's first session; the filler sessions
that follow are long enough (>2,500 tokens) that a 20-turn window or a
tail-keeping summary provably no longer contains them. Filler lines never
start with "I <verb>", "My <relation>", or a participant name, so the
rule-based extractor provably produces no facts from them, and they avoid
every gold/adversarial content word and every PANAS affect word.
"""

import itertools
import json
import os

TEMPLATES = [
    "Did you catch the documentary about {} last night? The photography alone made it worth staying up for.",
    "The weather this week has been all over the place, one day warm and the next completely grey again.",
    "By the way, the farmers market near the old station added a stall that sells fresh bread and preserves.",
    "Honestly the traffic lights on the main road are still broken, the council keeps promising to fix them.",
    "Have you tried that little bakery on the corner yet? People keep recommending their rye loaf to everyone.",
    "Apparently the library is extending its opening hours during the renovation, which seems backwards but fine.",
    "That reminds me, the neighbours finally repainted their fence, and the colour is surprisingly pleasant.",
    "The podcast episode about {} ran long but the second half was genuinely worth the time.",
    "Someone at the bus stop today was carrying the largest umbrella either of us had ever seen, easily two metres.",
    "There was a long queue at the post office again, they really need to open a second counter in the mornings.",
    "The community garden posted a signup sheet for spring plots, and half the slots were gone within a day.",
    "Did the repair shop ever call you back about the bicycle wheel, or are they still waiting on parts?",
    "The newsletter said the bridge closure moves to weekends only, which should make commuting less painful.",
    "Everyone keeps talking about that new series, but the reviews for the middle episodes look pretty mixed.",
    "A street vendor near the square sells roasted chestnuts now, and the smell carries for a whole block.",
    "The printers on the third floor jammed twice today, and nobody can find where the spare toner went.",
    "Word is the ferry schedule changes next month, so the early crossing leaves twenty minutes sooner.",
    "That lecture on {} filled the hall, people were standing along the back wall taking notes on their phones.",
    "The crossword this morning had the most unfair clue about rivers, even the solution seemed a stretch.",
    "Rumour has it the corner shop is finally getting a refrigerated section, which would save so many trips.",
    "The choir rehearsal shifted to Thursdays, which clashes with absolutely everything as usual.",
    "Did you notice the scaffolding came down from the clock tower? The stonework looks brand new again.",
    "The recipe swap at the office went well, though two people brought nearly identical lentil dishes.",
    "Trains were delayed again this morning, something about signalling repairs near the junction.",
    "The quiz night question about {} stumped every single table, nobody even wrote an answer down.",
    "Those new benches along the river path are already a popular spot for the lunchtime crowd.",
    "The hardware store finally restocked the paint we looked at, but the price went up a little.",
    "Meeting ran long today because the projector refused to cooperate for the first twenty minutes.",
    "The bake sale raised more than expected, mostly thanks to whoever made the enormous cinnamon rolls.",
    "Apparently the cinema is doing a retrospective month, mostly films from the seventies and eighties.",
]

TOPICS = [
    "coral reefs", "glaciers", "typography", "beekeeping", "old maps", "radio history",
    "tide pools", "meteor showers", "fermentation", "wind farms", "canal boats", "fossils",
]

BANNED = {
    # gold and adversarial content words (plus obvious variants)
    "boston", "denver", "austin", "northbridge", "labs", "riverside", "clinic", "nurse",
    "engineer", "research", "ana", "tom", "hiking", "biology", "pepper", "dog", "cat",
    "japan", "portugal", "spanish", "summit", "college", "toronto", "maple", "analytics",
    "scientist", "chess", "ravi", "iceland", "statistics", "crestwood", "seattle",
    "pediatrician", "harborview", "hospital", "pottery", "lina", "arabic", "sister",
    "brother", "friend", "daughter", "son", "instrument", "play", "plays", "guitar",
    "band", "married", "wife", "university", "attend", "cook", "festival", "motorcycle",
    "award", "sport", "coach", "sue", "museum", "marathon", "boat", "poetry", "teach",
    "love", "loves", "like", "likes", "enjoy", "enjoys", "hate", "hates", "visit",
    "visited", "name", "named", "work", "works", "worked", "live", "lives", "lived",
    "moved", "move", "grew", "speak", "speaks", "studied", "study", "graduated",
    # PANAS affect lexicon
    "happy", "excited", "proud", "glad", "wonderful", "joyful", "enthusiastic",
    "inspired", "delighted", "cheerful", "sad", "upset", "scared", "nervous", "angry",
    "afraid", "ashamed", "guilty", "irritable", "anxious",
}


def make_filler(speakers, count, start_idx):
    lines = []
    topic_cycle = itertools.cycle(TOPICS)
    for i in range(count):
        # Two sentences per turn keeps the filler sessions comfortably larger
        # than the summarization baseline's 2,500-token summary budget.
        parts = []
        for j in range(2):
            template = TEMPLATES[(start_idx + 2 * i + j) % len(TEMPLATES)]
            parts.append(template.format(next(topic_cycle)) if "{}" in template else template)
        text = " ".join(parts)
        for word in text.lower().replace(",", " ").replace(".", " ").replace("?", " ").split():
            assert word not in BANNED, f"banned filler word: {word} in {text!r}"
        lines.append({"speaker": speakers[i % 2], "text": text})
    return lines


def session(messages):
    return messages


def conversation_one():
    caroline, melanie = "Caroline", "Melanie"
    s1 = [
        {"speaker": caroline, "text": "Hey! How have you been lately?"},
        {"speaker": melanie, "text": "Pretty well, thanks for asking. Catching up on everything."},
        {"speaker": caroline, "text": "I live in Boston."},
        {"speaker": caroline, "text": "I moved to Boston in 2019."},
        {"speaker": caroline, "text": "I work at Northbridge Labs as a research engineer."},
        {"speaker": melanie, "text": "I live in Denver."},
        {"speaker": melanie, "text": "I work at Riverside Clinic as a nurse."},
        {"speaker": caroline, "text": "My sister Ana visits me every summer."},
        {"speaker": melanie, "text": "My friend Tom is in town this week."},
        {"speaker": caroline, "text": "I love hiking."},
        {"speaker": melanie, "text": "I hate traffic."},
        {"speaker": caroline, "text": "I studied biology at Boston University."},
        {"speaker": caroline, "text": "I have a dog named Pepper."},
        {"speaker": melanie, "text": "I visited Japan in 2022."},
        {"speaker": caroline, "text": "I visited Portugal last spring."},
        {"speaker": melanie, "text": "I graduated from Summit College in 2015."},
        {"speaker": caroline, "text": "I am so happy and excited about the conference!"},
        {"speaker": melanie, "text": "That sounds great."},
    ]
    return {
        "id": "fixture-conv-1",
        "conversation": {
            "speaker_a": caroline,
            "speaker_b": melanie,
            "session_1": s1,
            "session_1_date_time": "2023-05-10",
            "session_2": session(make_filler([caroline, melanie], 30, 0)),
            "session_2_date_time": "2023-06-14",
            "session_3": session(make_filler([melanie, caroline], 30, 7)),
            "session_3_date_time": "2023-07-09",
            "session_4": session(make_filler([caroline, melanie], 32, 17)),
            "session_4_date_time": "2023-08-21",
        },
        "qa": [
            {"question": "Where does Caroline live?", "answer": "Boston",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": caroline},
            {"question": "When did Caroline move to Boston?", "answer": "2019",
             "category": "temporal", "knowledge_category": "temporal_precision",
             "target_person": caroline},
            {"question": "Where does Caroline work?", "answer": "Northbridge Labs",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": caroline},
            {"question": "Who is Caroline's sister?", "answer": "Ana",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": caroline},
            {"question": "What does Caroline love to do?", "answer": "hiking",
             "category": "open_domain", "knowledge_category": "open_inference",
             "target_person": caroline},
            {"question": "What is the name of Caroline's dog?", "answer": "Pepper",
             "category": "single_hop", "knowledge_category": "peripheral_detail",
             "target_person": caroline},
            {"question": "Where does Melanie live?", "answer": "Denver",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": melanie},
            {"question": "Which city does the person who works at Riverside Clinic live in?",
             "answer": "Denver", "category": "multi_hop", "knowledge_category": "core_fact",
             "target_person": melanie},
            {"question": "When did Melanie visit Japan?", "answer": "2022",
             "category": "temporal", "knowledge_category": "temporal_precision",
             "target_person": melanie},
            {"question": "Does Caroline have a brother?", "answer": "No brother was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": caroline},
            {"question": "What instrument does Caroline play?",
             "answer": "No instrument was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": caroline},
            {"question": "What is the name of Melanie's cat?",
             "answer": "No cat was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": melanie},
        ],
    }


def conversation_two():
    deepak, farah = "Deepak", "Farah"
    s1 = [
        {"speaker": deepak, "text": "Good morning! Long time no chat."},
        {"speaker": farah, "text": "Morning! Agreed, it has been a while."},
        {"speaker": deepak, "text": "I live in Toronto."},
        {"speaker": deepak, "text": "I work at Maple Analytics as a data scientist."},
        {"speaker": farah, "text": "I live in Seattle."},
        {"speaker": farah, "text": "I moved to Seattle in 2018."},
        {"speaker": farah, "text": "I am a pediatrician at Harborview Hospital."},
        {"speaker": deepak, "text": "I enjoy chess."},
        {"speaker": farah, "text": "I love pottery."},
        {"speaker": deepak, "text": "My brother Ravi is coming over tonight."},
        {"speaker": farah, "text": "My daughter Lina started school this week."},
        {"speaker": deepak, "text": "I studied statistics at Crestwood University."},
        {"speaker": deepak, "text": "I visited Iceland in 2021."},
        {"speaker": farah, "text": "I speak Arabic."},
        {"speaker": deepak, "text": "Nice. Quite the catch-up."},
        {"speaker": farah, "text": "It really is."},
    ]
    return {
        "id": "fixture-conv-2",
        "conversation": {
            "speaker_a": deepak,
            "speaker_b": farah,
            "session_1": s1,
            "session_1_date_time": "2023-09-05",
            "session_2": session(make_filler([deepak, farah], 30, 3)),
            "session_2_date_time": "2023-10-02",
            "session_3": session(make_filler([farah, deepak], 30, 11)),
            "session_3_date_time": "2023-11-18",
            "session_4": session(make_filler([deepak, farah], 32, 23)),
            "session_4_date_time": "2023-12-30",
        },
        "qa": [
            {"question": "Where does Deepak live?", "answer": "Toronto",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": deepak},
            {"question": "Where does Deepak work?", "answer": "Maple Analytics",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": deepak},
            {"question": "What does Deepak enjoy?", "answer": "chess",
             "category": "open_domain", "knowledge_category": "open_inference",
             "target_person": deepak},
            {"question": "Who is Deepak's brother?", "answer": "Ravi",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": deepak},
            {"question": "When did Deepak visit Iceland?", "answer": "2021",
             "category": "temporal", "knowledge_category": "temporal_precision",
             "target_person": deepak},
            {"question": "What did Deepak study at Crestwood University?", "answer": "statistics",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": deepak},
            {"question": "Where does Farah work?", "answer": "Harborview Hospital",
             "answer_aliases": ["Harborview"], "category": "single_hop",
             "knowledge_category": "core_fact", "target_person": farah},
            {"question": "When did Farah move to Seattle?", "answer": "2018",
             "category": "temporal", "knowledge_category": "temporal_precision",
             "target_person": farah},
            {"question": "Who is Farah's daughter?", "answer": "Lina",
             "category": "single_hop", "knowledge_category": "core_fact",
             "target_person": farah},
            {"question": "Does Farah have a son?", "answer": "No son was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": farah},
            {"question": "What sport does Deepak coach?",
             "answer": "No coaching was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": deepak},
            {"question": "Which country did Farah visit in 2019?",
             "answer": "No such trip was ever mentioned.",
             "category": "adversarial", "knowledge_category": "adversarial",
             "target_person": farah},
        ],
    }


def adversarial_fixture():
    iris, jonas = "Iris", "Jonas"
    s1 = [
        {"speaker": iris, "text": "Hello again! Ready to compare notes?"},
        {"speaker": jonas, "text": "Always. Go ahead."},
        {"speaker": iris, "text": "I live in Lisbon."},
        {"speaker": iris, "text": "I work at Atlantic Cartography as a mapmaker."},
        {"speaker": iris, "text": "I love sailing."},
        {"speaker": iris, "text": "My sister Beatriz lives nearby."},
        {"speaker": iris, "text": "I visited Morocco in 2020."},
        {"speaker": iris, "text": "I have a parrot named Rio."},
        {"speaker": jonas, "text": "I live in Hamburg."},
        {"speaker": jonas, "text": "I am a violinist at the city orchestra."},
        {"speaker": jonas, "text": "I hate cold coffee."},
        {"speaker": jonas, "text": "My friend Mateo is a chef."},
        {"speaker": jonas, "text": "I went to Vienna last year."},
        {"speaker": jonas, "text": "I speak German."},
    ]
    questions = [
        # (question, target)
        ("Does Iris have a brother?", iris),
        ("What instrument does Iris play?", iris),
        ("When did Iris get married?", iris),
        ("Does Iris have a cat?", iris),
        ("Which university did Iris attend?", iris),
        ("What did Iris cook for the festival?", iris),
        ("Does Iris own a motorcycle?", iris),
        ("What award did Iris win in 2019?", iris),
        ("What is Iris's favorite movie?", iris),
        ("Does Iris have a daughter?", iris),
        ("What sport does Iris coach?", iris),
        ("Which company did Iris sue?", iris),
        ("Does Jonas have a sister?", jonas),
        ("What is the name of Jonas's dog?", jonas),
        ("Which country did Jonas grow up in?", jonas),
        ("What does Jonas teach?", jonas),
        ("When did Jonas buy his boat?", jonas),
        ("Does Jonas like gardening?", jonas),
        ("What marathon did Jonas run?", jonas),
        ("Who is Jonas's wife?", jonas),
        ("What dessert does Jonas love?", jonas),
        ("Which museum did Jonas visit in 2022?", jonas),
        ("What language does Jonas write poetry in?", jonas),
        ("Does Jonas have a roommate?", jonas),
    ]
    qa = [
        {"id": f"adv-{i:02d}", "question": q, "answer": "Never mentioned.",
         "category": "adversarial", "knowledge_category": "adversarial", "target_person": t}
        for i, (q, t) in enumerate(questions)
    ]
    return {
        "id": "fixture-adversarial",
        "conversation": {
            "speaker_a": iris,
            "speaker_b": jonas,
            "session_1": s1,
            "session_1_date_time": "2024-03-02",
            "session_2": [
                {"speaker": iris, "text": "The harbour was beautiful at sunrise today."},
                {"speaker": jonas, "text": "Rehearsal ran late again, the hall was freezing."},
                {"speaker": iris, "text": "New charts arrived for the northern coastline survey."},
                {"speaker": jonas, "text": "That sounds like a satisfying stack of paper."},
            ],
            "session_2_date_time": "2024-03-09",
        },
        "qa": qa,
    }


def main():
    out_dir = os.path.dirname(os.path.abspath(__file__))
    small = [conversation_one(), conversation_two()]
    with open(os.path.join(out_dir, "locomo_small.json"), "w") as f:
        json.dump(small, f, indent=1)
        f.write("\n")
    with open(os.path.join(out_dir, "adversarial.json"), "w") as f:
        json.dump([adversarial_fixture()], f, indent=1)
        f.write("\n")
    total_qa = sum(len(c["qa"]) for c in small)
    print(f"locomo_small.json: {len(small)} conversations, {total_qa} qa items")
    print("adversarial.json: 1 conversation,", len(adversarial_fixture()["qa"]), "qa items")


if __name__ == "__main__":
    main()
