#pragma once

// Shared test fixtures: hand-built tables and trees, random bipartite
// graphs, and a scripted synthetic-trajectory generator. Test surface only;
// the product never links this.

#include <cstdint>
#include <string>
#include <vector>

#include "seekgen/biclique.hpp"
#include "seekgen/corpus.hpp"
#include "seekgen/rng.hpp"
#include "seekgen/task.hpp"
#include "seekgen/trajectory.hpp"
#include "seekgen/tree.hpp"

namespace seekgen::testutil {

RawTable make_table(std::string id, std::string title, std::vector<std::string> headers,
                    std::vector<std::vector<std::string>> rows, std::string domain = "general");

CleanTable make_clean(const RawTable& raw);

/// A reasoning tree assembled directly from anchors and attribute columns,
/// bypassing table parsing. `columns` is {relation name -> column values},
/// one value per anchor ("" = missing).
ReasoningTree make_tree(std::string tree_id, std::vector<std::string> roots,
                        std::vector<std::string> anchors,
                        std::vector<std::pair<std::string, std::vector<std::string>>> columns,
                        std::string domain = "general", DataType anchor_type = DataType::text,
                        std::string anchor_label = "Name");

/// The two-tree fixture from the award-winners example: one tree carrying
/// {has_name, has_nationality, has_gender}, the other only the first two.
std::vector<ReasoningTree> award_pair_trees();

/// Same pair plus a per-anchor award year on the first tree, so every
/// intersection anchor has a uniquely identifying clue set.
std::vector<ReasoningTree> award_pair_trees_rich();

/// Random bipartite graph over `left_n` trees and `right_n` relations; each
/// edge present with probability `edge_prob`.
BipartiteGraph random_graph(std::size_t left_n, std::size_t right_n, double edge_prob, Rng& rng);

struct TrajectoryPlan {
    std::size_t reveal = 0;             // how many targets the agent finds
    std::size_t steps_with_targets = 1; // spread discoveries over this many steps
    std::size_t filler_steps = 0;       // extra steps with no discoveries
    bool search_first = true;           // lead with a search step
    bool alias_surfaces = false;        // swap known surfaces for their aliases
    bool with_final_answer = false;
    std::size_t junk_answers = 0;       // extra junk entries in the final answer
};

/// Deterministic scripted trajectory for `task`: observations embed the
/// first `reveal` target surfaces (task order), padded with filler steps.
Trajectory make_synthetic_trajectory(const TaskSpec& task, const TrajectoryPlan& plan,
                                     uint64_t seed, const std::string& trajectory_id);

}  // namespace seekgen::testutil
