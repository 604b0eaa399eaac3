#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/metrics.hpp"

using namespace seekgen;
using namespace seekgen::testutil;

namespace {

TaskSpec small_task() {
    TaskSpec task;
    task.task_id = "task-1";
    task.variant = TaskVariant::basic;
    task.source_tag = SourceTag::synthesized;
    auto add = [&](const std::string& v) {
        TargetEntity e;
        e.value = v;
        e.layer = EntityLayer::second;
        e.category = EntityCategory::person_name;
        task.target_entities.push_back(e);
    };
    for (const char* v : {"Czesław Miłosz", "William Golding", "Octavio Paz",
                          "United States", "Poland", "1980", "1983", "1990", "Mexico",
                          "Kazuo Ishiguro"})
        add(v);
    return task;  // |R| = 10
}

Trajectory manual_trajectory(const std::string& task_id,
                             const std::vector<std::pair<bool, std::string>>& steps) {
    Trajectory t;
    t.task_id = task_id;
    t.trajectory_id = "manual";
    int i = 0;
    for (const auto& [visit, obs] : steps) {
        StepRecord s;
        s.thought = "step " + std::to_string(++i);
        s.action = visit ? Action::visit({"https://example.org/" + std::to_string(i)}, "read")
                         : Action::search({"query " + std::to_string(i)}, std::nullopt);
        s.observation = obs;
        t.steps.push_back(std::move(s));
    }
    return t;
}

}  // namespace

TEST_CASE("extract_entities: occurrences, aliases, first steps, sources") {
    auto task = small_task();
    EntityMatcher matcher;
    matcher.add_alias("USA", "United States");

    auto traj = manual_trajectory(
        task.task_id,
        {{false, "Czesław Miłosz won in 1980"},            // search: two targets
         {true, "nothing useful"},                                    // no targets
         {true, "profile of William Golding, born in the USA? No."},  // Golding + USA alias
         {true, "Czeslaw Milosz again"}});                            // duplicate, folded form
    auto ext = extract_entities(traj, task.target_entities, matcher);

    REQUIRE(ext.per_step.size() == 4);
    CHECK(ext.per_step[0].size() == 2);
    CHECK(ext.per_step[1].empty());
    CHECK(ext.per_step[2].size() == 2);
    CHECK(ext.per_step[3].size() == 1);
    CHECK(ext.discovered.size() == 4);  // Miłosz, 1980, Golding, United States
    CHECK(ext.first_step.at(0) == 1);   // Miłosz found at step 1
    CHECK(ext.first_source.at(0) == Action::Kind::search);
    CHECK(ext.first_source.at(1) == Action::Kind::visit);  // William Golding
    // Visit credit excludes the search-only discoveries.
    CHECK(ext.visit_discovered.size() == 3);

    // Cumulative O equals the union of per-step sets.
    std::set<std::size_t> union_steps;
    for (const auto& s : ext.per_step) union_steps.insert(s.begin(), s.end());
    CHECK(std::set<std::size_t>(ext.discovered.begin(), ext.discovered.end()) == union_steps);
}

TEST_CASE("extract_entities: absent target never appears") {
    auto task = small_task();
    EntityMatcher matcher;
    auto traj = manual_trajectory(task.task_id, {{true, "an observation about nothing"}});
    auto ext = extract_entities(traj, task.target_entities, matcher);
    CHECK(ext.discovered.empty());
}

TEST_CASE("compute_isr: set form follows |R ∩ O| / |R|") {
    EntityMatcher matcher;
    std::vector<std::string> R = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    CHECK(compute_isr(R, R, matcher) == doctest::Approx(1.0));
    CHECK(compute_isr({"x", "y"}, R, matcher) == doctest::Approx(0.0));
    CHECK(compute_isr({"a", "b", "c"}, R, matcher) == doctest::Approx(0.3));
    CHECK_THROWS_AS(compute_isr({"a"}, {}, matcher), EmptyTargetsError);
}

TEST_CASE("compute_ise: n == |R| over total steps") {
    auto task = small_task();  // |R| = 10... ISE uses the target count directly
    EntityMatcher matcher;

    // n = 12, T = 60 -> 0.2
    TaskSpec twelve = task;
    twelve.target_entities.resize(10);
    for (int i = 0; i < 2; ++i) {
        TargetEntity e;
        e.value = "extra " + std::to_string(i);
        e.layer = EntityLayer::third;
        e.parent_anchor = "x";
        twelve.target_entities.push_back(e);
    }
    std::vector<std::pair<bool, std::string>> steps(60, {true, "nothing"});
    auto traj = manual_trajectory(task.task_id, steps);
    auto ext = extract_entities(traj, twelve.target_entities, matcher);
    CHECK(compute_ise(traj, twelve.target_entities.size(), ext).ise == doctest::Approx(0.2));

    // n = 5, T = 5 -> 1.0
    std::vector<std::pair<bool, std::string>> five(5, {true, "nothing"});
    auto traj5 = manual_trajectory(task.task_id, five);
    auto ext5 = extract_entities(traj5, task.target_entities, matcher);
    CHECK(compute_ise(traj5, 5, ext5).ise == doctest::Approx(1.0));

    // T = 0 -> error
    Trajectory empty;
    empty.task_id = task.task_id;
    CHECK_THROWS_AS(compute_ise(empty, 5, ext5), EmptyTrajectoryError);
}

TEST_CASE("valid_action_rate: counts steps that discover something new") {
    auto task = small_task();
    EntityMatcher matcher;

    // 10 steps; new targets only at steps 2, 5, 9 -> 0.3
    std::vector<std::pair<bool, std::string>> steps(10, {true, "nothing here"});
    steps[1].second = "William Golding appears";
    steps[4].second = "Octavio Paz appears";
    steps[8].second = "Poland appears, William Golding repeats";
    auto traj = manual_trajectory(task.task_id, steps);
    auto ext = extract_entities(traj, task.target_entities, matcher);
    CHECK(valid_action_rate(traj, ext) == doctest::Approx(0.3));

    // Every step discovers something new -> 1.0
    std::vector<std::pair<bool, std::string>> all = {{true, "William Golding"},
                                                     {true, "Octavio Paz"},
                                                     {true, "Poland"}};
    auto traj2 = manual_trajectory(task.task_id, all);
    auto ext2 = extract_entities(traj2, task.target_entities, matcher);
    CHECK(valid_action_rate(traj2, ext2) == doctest::Approx(1.0));

    // No discoveries -> 0.0
    auto traj3 = manual_trajectory(task.task_id, {{true, "x"}, {false, "y"}});
    auto ext3 = extract_entities(traj3, task.target_entities, matcher);
    CHECK(valid_action_rate(traj3, ext3) == doctest::Approx(0.0));

    // Bound: rate <= min(1, |R|/T).
    CHECK(valid_action_rate(traj, ext) <=
          std::min(1.0, static_cast<double>(task.target_entities.size()) / traj.steps.size()));
}

TEST_CASE("ISR grows and ISE shrinks as steps are appended") {
    auto task = small_task();
    EntityMatcher matcher;
    std::vector<std::pair<bool, std::string>> steps = {{true, "William Golding"}};
    double last_isr = 0.0, last_ise = 1e18;
    for (int i = 0; i < 6; ++i) {
        auto traj = manual_trajectory(task.task_id, steps);
        auto ext = extract_entities(traj, task.target_entities, matcher);
        FilterConfig cfg;
        double isr = compute_isr(ext, task.target_entities.size(), cfg);
        double ise = compute_ise(traj, task.target_entities.size(), ext).ise;
        CHECK(isr >= last_isr);
        CHECK(ise < last_ise);
        last_isr = isr;
        last_ise = ise;
        steps.push_back({true, i % 2 == 0 ? "Octavio Paz visits" : "nothing new"});
    }
}

TEST_CASE("filter_trajectories: strict thresholds, reasons, idempotence") {
    auto task = small_task();  // |R| = 10
    std::map<std::string, TaskSpec> tasks = {{task.task_id, task}};
    EntityMatcher matcher;
    FilterConfig cfg;  // alpha 0.3, beta 0.1

    auto mk = [&](const std::string& id, int hits, int total_steps) {
        std::vector<std::pair<bool, std::string>> steps;
        for (int i = 0; i < total_steps; ++i) {
            if (i < hits)
                steps.push_back({true, task.target_entities[i].value + " found"});
            else
                steps.push_back({true, "nothing"});
        }
        auto t = manual_trajectory(task.task_id, steps);
        t.trajectory_id = id;
        return t;
    };

    std::vector<Trajectory> batch = {
        mk("keep-easy", 5, 9),     // ISR 0.5,  ISE 10/9  -> kept
        mk("isr-boundary", 3, 9),  // ISR 0.3 exactly     -> rejected (strict)
        mk("isr-low", 1, 5),       // ISR 0.1             -> rejected
        mk("ise-boundary", 9, 100),// ISE 0.1 exactly     -> rejected (strict)
        mk("ise-low", 10, 150),    // ISR 1.0, ISE 1/15   -> rejected
        mk("keep-dense", 10, 10),  // ISR 1.0, ISE 1.0    -> kept
    };
    auto outcome = filter_trajectories(batch, tasks, cfg, matcher);
    REQUIRE(outcome.kept.size() == 2);
    CHECK(outcome.kept[0].trajectory_id == "keep-easy");
    CHECK(outcome.kept[1].trajectory_id == "keep-dense");
    REQUIRE(outcome.rejected.size() == 4);
    std::map<std::string, std::vector<std::string>> why;
    for (const auto& r : outcome.rejected) why[r.trajectory_id] = r.failed;
    CHECK(why["isr-boundary"] == std::vector<std::string>{"isr"});
    CHECK(why["isr-low"] == std::vector<std::string>{"isr"});
    CHECK(why["ise-boundary"] == std::vector<std::string>{"ise"});
    CHECK(why["ise-low"] == std::vector<std::string>{"ise"});

    // Filtering the kept set again keeps everything.
    auto again = filter_trajectories(outcome.kept, tasks, cfg, matcher);
    CHECK(again.kept.size() == outcome.kept.size());
    CHECK(again.rejected.empty());
}

TEST_CASE("filter_trajectories: unresolved task id throws") {
    EntityMatcher matcher;
    auto traj = manual_trajectory("no-such-task", {{true, "x"}});
    CHECK_THROWS_AS(filter_trajectories({traj}, {}, FilterConfig{}, matcher), Error);
}

TEST_CASE("search-only discoveries can be excluded from ISR by config") {
    auto task = small_task();
    EntityMatcher matcher;
    auto traj = manual_trajectory(task.task_id, {{false, "William Golding via search"},
                                                 {true, "Octavio Paz via visit"}});
    auto ext = extract_entities(traj, task.target_entities, matcher);
    FilterConfig cfg;
    CHECK(compute_isr(ext, 10, cfg) == doctest::Approx(0.2));
    cfg.search_counts_for_isr = false;
    CHECK(compute_isr(ext, 10, cfg) == doctest::Approx(0.1));
}
