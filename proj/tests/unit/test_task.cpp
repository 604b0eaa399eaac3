#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/oracle.hpp"
#include "seekgen/text.hpp"

using namespace seekgen;
using namespace seekgen::testutil;

namespace {

std::set<std::string> second_layer(const TaskSpec& task) {
    std::set<std::string> out;
    for (const auto& e : task.target_entities) {
        if (e.layer == EntityLayer::second) out.insert(e.value);
    }
    return out;
}

UnionGroup mine_single_group(const std::vector<ReasoningTree>& trees) {
    auto groups = enumerate_maximal_bicliques(build_graph(trees), MinerConfig{});
    REQUIRE(groups.size() == 1);
    return groups[0];
}

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("synth_basic: all anchors and attributes become targets") {
    auto trees = award_pair_trees();
    SynthConfig cfg;
    auto task = synth_basic(trees[0], cfg);

    CHECK(task.variant == TaskVariant::basic);
    CHECK(task.source_tag == SourceTag::synthesized);
    CHECK(task.question_entities == trees[0].root_entities);
    auto anchors = second_layer(task);
    CHECK(anchors.count("William Golding"));
    CHECK(anchors.count("J. M. Coetzee"));
    CHECK(anchors.count("Toni Morrison"));
    // 4 anchors x (1 + 3 attributes) = 16 target entities.
    CHECK(task.target_entities.size() == 16);
    CHECK(task.question_text ==
          "List all Nobel Prize in Literature. For each, provide name, nationality, gender.");
}

TEST_CASE("synth_basic: a configured relation subset narrows R") {
    auto trees = award_pair_trees();
    SynthConfig cfg;
    cfg.basic_relations = {"has_nationality"};
    auto task = synth_basic(trees[0], cfg);
    CHECK(task.predicate.requested_relations == std::vector<std::string>{"has_nationality"});
    // 4 anchors x (1 + 1 attribute); repeated values stay distinct per parent.
    CHECK(task.target_entities.size() == 8);
    CHECK(verify_task(task, TreeCorpus{{trees[0]}}).passed);
}

TEST_CASE("synth_basic: single-subtree tree gives one anchor plus attributes") {
    auto tree = make_tree("solo", {"Tiny Prize"}, {"Only Winner"},
                          {{"has_country", {"X"}}, {"has_year", {"1980"}}});
    SynthConfig cfg;
    auto task = synth_basic(tree, cfg);
    CHECK(second_layer(task).size() == 1);
    CHECK(task.target_entities.size() == 3);
}

TEST_CASE("synth_basic: renderer failure falls back to the template") {
    auto trees = award_pair_trees();
    NullOracle null;
    SynthConfig cfg;
    cfg.renderer = &null;
    auto task = synth_basic(trees[0], cfg);
    CHECK(task.question_text.rfind("List all ", 0) == 0);
}

TEST_CASE("synth_basic: mock renderer output preserves the payload") {
    auto trees = award_pair_trees();
    MockOracle mock;
    SynthConfig cfg;
    cfg.renderer = &mock;
    auto task = synth_basic(trees[0], cfg);
    auto norm = text::normalize(task.question_text);
    for (const auto& root : trees[0].root_entities)
        CHECK(text::contains_token_bounded(norm, text::normalize(root)));
}

TEST_CASE("synth_union: intersection anchors with shared attributes") {
    auto trees = award_pair_trees();
    auto group = mine_single_group(trees);
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    auto task = synth_union(group, corpus, cfg);

    auto anchors = second_layer(task);
    CHECK(anchors == std::set<std::string>{"William Golding", "J. M. Coetzee", "Kazuo Ishiguro"});
    // Shared relations only: has_gender (tree-nobel only) must not appear.
    bool gender_attr = false;
    for (const auto& e : task.target_entities) {
        if (e.layer == EntityLayer::third && e.value == "man") gender_attr = true;
    }
    CHECK_FALSE(gender_attr);
    // 3 anchors x (1 + has_name + has_nationality) = 9 targets.
    CHECK(task.target_entities.size() == 9);
    // Cardinality bound: |R| <= min anchor count x (1 + shared relations).
    CHECK(task.target_entities.size() <= 4 * (1 + group.shared_relations.size()));
}

TEST_CASE("synth_union: disjoint trees -> NoIntersection") {
    auto a = make_tree("a", {"Prize A"}, {"Anna Ab", "Ben Bc"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}});
    auto b = make_tree("b", {"Prize B"}, {"Cara Cd", "Dan De"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1982", "1983"}}});
    auto group = mine_single_group({a, b});
    TreeCorpus corpus({a, b});
    SynthConfig cfg;
    CHECK_THROWS_AS(synth_union(group, corpus, cfg), NoIntersectionError);
}

TEST_CASE("synth_union: three-tree intersection matches the hand count") {
    auto a = make_tree("a", {"Prize A"}, {"Alice Aa", "Bob Bb", "Cora Cc"},
                       {{"has_country", {"X", "Y", "Z"}}, {"has_year", {"1980", "1981", "1982"}}});
    auto b = make_tree("b", {"Prize B"}, {"Bob Bb", "Cora Cc", "Dina Dd"},
                       {{"has_country", {"Y", "Z", "W"}}, {"has_year", {"1983", "1984", "1985"}}});
    auto c = make_tree("c", {"Prize C"}, {"Cora Cc", "Bob Bb", "Evan Ee"},
                       {{"has_country", {"Z", "Y", "V"}}, {"has_year", {"1986", "1987", "1988"}}});
    auto group = mine_single_group({a, b, c});
    REQUIRE(group.tree_ids.size() == 3);
    TreeCorpus corpus({a, b, c});
    SynthConfig cfg;
    auto task = synth_union(group, corpus, cfg);
    // Hand intersection: {Bob Bb, Cora Cc}.
    CHECK(second_layer(task) == std::set<std::string>{"Bob Bb", "Cora Cc"});
    // Attribute values come from the first provenance tree.
    for (const auto& e : task.target_entities) {
        if (e.layer == EntityLayer::third && e.parent_anchor == "Bob Bb" &&
            e.category == EntityCategory::year)
            CHECK(e.value == "1981");
    }
}

TEST_CASE("reverse-union predicate reproduces the pivot construction") {
    auto trees = award_pair_trees();
    TreeCorpus corpus(trees);
    TaskPredicate pred;
    pred.variant = TaskVariant::reverse_union;
    pred.tree_ids = {"tree-booker", "tree-nobel"};
    pred.requested_relations = {"has_name", "has_nationality"};
    // Clues pin down William Golding without naming him.
    pred.clues = {{"", "has_nationality", "United Kingdom"}, {"", "has_gender", "man"}};
    pred.pivot_relation = "has_nationality";

    // "United Kingdom" + "man" matches Golding and Ishiguro: ambiguous.
    std::string note;
    CHECK(evaluate_predicate(pred, corpus, &note).empty());
    CHECK(note.find("2 anchors") != std::string::npos);

    // Toni Morrison is the only US anchor; with a unique clue set the pivot
    // then spans every UK anchor of the intersection.
    pred.clues = {{"", "has_nationality", "South Africa"}, {"", "has_gender", "man"}};
    auto targets = evaluate_predicate(pred, corpus, &note);
    std::set<std::string> anchors;
    for (const auto& e : targets) {
        if (e.layer == EntityLayer::second) anchors.insert(e.value);
    }
    // Anchor resolves to Coetzee; pivot nationality = South Africa; only he
    // shares it within the intersection.
    CHECK(anchors == std::set<std::string>{"J. M. Coetzee"});
}

TEST_CASE("reverse-union synthesis: invariants hold for every seed") {
    auto trees = award_pair_trees_rich();
    auto group = mine_single_group(trees);
    TreeCorpus corpus(trees);
    for (uint64_t seed = 0; seed < 12; ++seed) {
        SynthConfig cfg;
        cfg.seed = seed;
        auto task = synth_reverse_union(group, corpus, cfg);

        // Clue set resolves to exactly one anchor, and R is non-empty.
        std::string note;
        auto resolved = evaluate_predicate(task.predicate, corpus, &note);
        CHECK(note.empty());
        CHECK_FALSE(resolved.empty());
        CHECK(task.predicate.clues.size() >= 2);

        // Anti-shortcut: the question must never contain any second-layer
        // anchor name, least of all the fuzzed one.
        auto norm_q = text::normalize(task.question_text);
        for (const auto& anchor : second_layer(task)) {
            CHECK_FALSE(text::contains_token_bounded(norm_q, text::normalize(anchor)));
        }
        // Determinism: same seed, same task bytes.
        auto again = synth_reverse_union(group, corpus, cfg);
        CHECK(again.question_text == task.question_text);
        CHECK(again.target_entities.size() == task.target_entities.size());
    }
}

TEST_CASE("reverse-union: identical attribute twins are ambiguous") {
    auto a = make_tree("a", {"Prize A"}, {"Ann Aa", "Bee Bb"},
                       {{"has_country", {"X", "X"}}, {"has_gender", {"w", "w"}}});
    auto b = make_tree("b", {"Prize B"}, {"Ann Aa", "Bee Bb"},
                       {{"has_country", {"X", "X"}}, {"has_gender", {"w", "w"}}});
    auto group = mine_single_group({a, b});
    TreeCorpus corpus({a, b});
    SynthConfig cfg;
    CHECK_THROWS_AS(synth_reverse_union(group, corpus, cfg), CluesAmbiguousError);
}

TEST_CASE("reverse-union: pivot value unique to the anchor keeps |R| = 1 anchor") {
    auto a = make_tree("a", {"Prize A"}, {"Ann Aa", "Bee Bb"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}});
    auto b = make_tree("b", {"Prize B"}, {"Ann Aa", "Bee Bb"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1982", "1983"}}});
    auto group = mine_single_group({a, b});
    TreeCorpus corpus({a, b});
    SynthConfig cfg;
    cfg.seed = 3;
    auto task = synth_reverse_union(group, corpus, cfg);
    // Countries and years are unique per anchor, so every pivot has breadth 1.
    CHECK(second_layer(task).size() == 1);
}

TEST_CASE("verify_task: fresh tasks pass, injected faults are caught") {
    auto trees = award_pair_trees();
    auto group = mine_single_group(trees);
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    auto task = synth_union(group, corpus, cfg);

    auto clean = verify_task(task, corpus);
    CHECK(clean.passed);
    CHECK(clean.missing.empty());
    CHECK(clean.extra.empty());

    // Delete one entity from R -> one missing.
    auto broken = task;
    broken.target_entities.pop_back();
    auto rep = verify_task(broken, corpus);
    CHECK_FALSE(rep.passed);
    CHECK(rep.missing.size() == 1);
    CHECK(rep.extra.empty());

    // Add a bogus entity -> one extra.
    auto padded = task;
    TargetEntity bogus;
    bogus.value = "Nobody Nowhere";
    bogus.layer = EntityLayer::second;
    bogus.category = EntityCategory::person_name;
    padded.target_entities.push_back(bogus);
    rep = verify_task(padded, corpus);
    CHECK_FALSE(rep.passed);
    CHECK(rep.extra.size() == 1);
    CHECK(rep.missing.empty());
}

TEST_CASE("verify_task: corpus perturbation is detected") {
    auto trees = award_pair_trees();
    auto group = mine_single_group(trees);
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    auto task = synth_union(group, corpus, cfg);

    // Rename one anchor in the corpus; the stored R no longer matches.
    auto perturbed = trees;
    for (auto& sub : perturbed[0].subtrees) {
        if (sub.anchor == "Kazuo Ishiguro") sub.anchor = "Kazuo Ishiguru";
    }
    auto rep = verify_task(task, TreeCorpus(perturbed));
    CHECK_FALSE(rep.passed);
    bool drift = false;
    for (const auto& e : rep.extra) {
        if (e.value == "Kazuo Ishiguro") drift = true;
    }
    CHECK(drift);
}

TEST_CASE("verify_task: missing provenance tree throws") {
    auto trees = award_pair_trees();
    auto group = mine_single_group(trees);
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    auto task = synth_union(group, corpus, cfg);
    TreeCorpus partial({trees[0]});
    CHECK_THROWS_AS(verify_task(task, partial), MissingArtifactError);
}

TEST_CASE("synthesize_all: every emitted task verifies; skips are counted") {
    auto trees = award_pair_trees_rich();
    // Add a disjoint pair so one group has no intersection.
    trees.push_back(make_tree("x1", {"Prize X"}, {"Pia Pp", "Quin Qq"},
                              {{"has_city", {"A", "B"}}, {"has_code", {"C1", "C2"}}}));
    trees.push_back(make_tree("x2", {"Prize Y"}, {"Rex Rr", "Sam Ss"},
                              {{"has_city", {"C", "D"}}, {"has_code", {"C3", "C4"}}}));
    auto groups = enumerate_maximal_bicliques(build_graph(trees), MinerConfig{});
    REQUIRE(groups.size() == 2);
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    cfg.seed = 5;

    auto [tasks, report] = synthesize_all(
        corpus, groups,
        {TaskVariant::basic, TaskVariant::task_union, TaskVariant::reverse_union}, cfg);
    CHECK(report.synthesized.at("basic") == 4);
    CHECK(report.synthesized.at("union") == 1);
    CHECK(report.synthesized.at("reverse_union") == 1);
    CHECK(report.skipped.size() == 2);  // the disjoint group, twice
    for (const auto& task : tasks) CHECK(verify_task(task, corpus).passed);
}

TEST_CASE("task files serialize deterministically and load back") {
    auto trees = award_pair_trees_rich();
    auto groups = enumerate_maximal_bicliques(build_graph(trees), MinerConfig{});
    TreeCorpus corpus(trees);
    SynthConfig cfg;
    cfg.seed = 42;
    auto [tasks, report] = synthesize_all(
        corpus, groups,
        {TaskVariant::basic, TaskVariant::task_union, TaskVariant::reverse_union}, cfg);

    auto dir = std::filesystem::temp_directory_path();
    auto p1 = dir / "seekgen_tasks_a.jsonl";
    auto p2 = dir / "seekgen_tasks_b.jsonl";
    save_tasks(p1, tasks);
    auto [tasks2, report2] = synthesize_all(
        corpus, groups,
        {TaskVariant::basic, TaskVariant::task_union, TaskVariant::reverse_union}, cfg);
    save_tasks(p2, tasks2);
    CHECK(file_bytes(p1) == file_bytes(p2));

    auto loaded = load_tasks(p1);
    REQUIRE(loaded.size() == tasks.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].task_id == tasks[i].task_id);
        CHECK(loaded[i].target_entities.size() == tasks[i].target_entities.size());
        CHECK(verify_task(loaded[i], corpus).passed);
    }
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("categorize_entity uses type first, then label, then shape") {
    CHECK(categorize_entity("1980", "has_year", DataType::year) == EntityCategory::year);
    CHECK(categorize_entity("1980-10-09", "has_born", DataType::date) == EntityCategory::date);
    CHECK(categorize_entity("Poland", "has_country", DataType::text) == EntityCategory::location);
    CHECK(categorize_entity("Ajax", "has_club", DataType::text) == EntityCategory::organization);
    CHECK(categorize_entity("Wole Soyinka", "has_name", DataType::text) ==
          EntityCategory::person_name);
    CHECK(categorize_entity("Kurt Hamrin", "has_scorer", DataType::text) ==
          EntityCategory::person_name);  // value shape
    CHECK(categorize_entity("Rites of Passage", "has_work", DataType::text) ==
          EntityCategory::free_text);
    CHECK(categorize_entity("474", "has_goals", DataType::number) == EntityCategory::free_text);
}
