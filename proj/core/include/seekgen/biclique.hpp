#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "seekgen/tree.hpp"

namespace seekgen {

/// Tree-relation bipartite graph. Left vertices are trees (sorted by id),
/// right vertices are distinct relation signatures (sorted); an edge means
/// the relation occurs in at least one subtree of the tree.
struct BipartiteGraph {
    struct LeftVertex {
        std::string tree_id;
        AnchorType anchor_type;
    };

    std::vector<LeftVertex> left;
    std::vector<RelationSig> right;
    std::vector<std::vector<uint32_t>> adjacency;  // left index -> sorted right indices
    std::vector<std::vector<uint32_t>> support;    // right index -> sorted left indices

    std::size_t edge_count() const;
};

BipartiteGraph build_graph(const std::vector<ReasoningTree>& trees);

struct MinerConfig {
    int k_min = 2;  // minimum trees in a group
    int m_min = 2;  // minimum common relations
    bool semantic_check = true;
    std::size_t max_left_vertices = 5000;
    std::size_t max_expansions = 200000;

    void validate() const;
};

/// A maximal union: a maximal biclique that passed the size and semantic
/// filters. tree_ids and shared_relations are sorted.
struct UnionGroup {
    std::string group_id;
    std::vector<std::string> tree_ids;
    std::vector<RelationSig> shared_relations;
    AnchorType entity_type;
};

/// Enumerates every maximal biclique meeting cfg, closed-set style over
/// left-vertex sets with right-intersection pruning. Output is sorted by
/// (|trees| desc, |relations| desc, tree ids) and free of duplicates.
/// Throws BudgetExceededError (with no partial results) past the caps.
std::vector<UnionGroup> enumerate_maximal_bicliques(const BipartiteGraph& g,
                                                    const MinerConfig& cfg);

/// Exhaustive reference implementation over all 2^|left| subsets. Guarded
/// to |left| <= 20; same filtering and ordering contract as the fast path.
std::vector<UnionGroup> brute_force_bicliques(const BipartiteGraph& g, const MinerConfig& cfg);

void save_groups(const std::filesystem::path& path, const std::vector<UnionGroup>& groups);
std::vector<UnionGroup> load_groups(const std::filesystem::path& path);

}  // namespace seekgen
