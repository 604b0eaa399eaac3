#include <set>

#include "doctest.h"
#include "fixtures.hpp"

#include "seekgen/biclique.hpp"
#include "seekgen/errors.hpp"

using namespace seekgen;
using namespace seekgen::testutil;

namespace {

// Comparable shape of a result set.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> shape(
    const std::vector<UnionGroup>& groups) {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
    for (const auto& g : groups) {
        std::vector<std::string> rels;
        for (const auto& r : g.shared_relations) rels.push_back(r.name);
        out.emplace_back(g.tree_ids, rels);
    }
    return out;
}

bool is_biclique(const BipartiteGraph& g, const UnionGroup& group) {
    for (const auto& tid : group.tree_ids) {
        std::size_t li = 0;
        while (li < g.left.size() && g.left[li].tree_id != tid) ++li;
        REQUIRE(li < g.left.size());
        std::set<uint32_t> rels(g.adjacency[li].begin(), g.adjacency[li].end());
        for (const auto& sig : group.shared_relations) {
            uint32_t ri = 0;
            while (ri < g.right.size() && !(g.right[ri] == sig)) ++ri;
            if (ri == g.right.size() || !rels.count(ri)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("build_graph: edges mirror relation membership") {
    auto trees = award_pair_trees();
    auto g = build_graph(trees);
    REQUIRE(g.left.size() == 2);
    REQUIRE(g.right.size() == 3);  // has_gender, has_name, has_nationality
    CHECK(g.edge_count() == 5);

    CHECK(build_graph({}).left.empty());
    CHECK(build_graph({}).right.empty());
}

TEST_CASE("build_graph: relations keyed by (name, type, domain)") {
    auto a = make_tree("a", {"A"}, {"x1", "x2"}, {{"has_year", {"1980", "1981"}}}, "science");
    auto b = make_tree("b", {"B"}, {"y1", "y2"}, {{"has_year", {"1980", "1981"}}}, "literature");
    auto g = build_graph({a, b});
    CHECK(g.right.size() == 2);  // same name, different domain -> distinct vertices
    MinerConfig cfg;
    cfg.m_min = 1;
    CHECK(enumerate_maximal_bicliques(g, cfg).empty());  // nothing shared
}

TEST_CASE("the award-pair fixture yields exactly the shared-relation group") {
    auto trees = award_pair_trees();
    auto g = build_graph(trees);
    MinerConfig cfg;  // k_min = 2, m_min = 2
    auto groups = enumerate_maximal_bicliques(g, cfg);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].tree_ids == std::vector<std::string>{"tree-booker", "tree-nobel"});
    REQUIRE(groups[0].shared_relations.size() == 2);
    CHECK(groups[0].shared_relations[0].name == "has_name");
    CHECK(groups[0].shared_relations[1].name == "has_nationality");
    for (const auto& r : groups[0].shared_relations) CHECK(r.name != "has_gender");
}

TEST_CASE("single tree with k_min=2 yields nothing") {
    auto trees = award_pair_trees();
    trees.pop_back();
    auto g = build_graph(trees);
    MinerConfig cfg;
    CHECK(enumerate_maximal_bicliques(g, cfg).empty());
}

TEST_CASE("brute force: empty and complete graphs") {
    BipartiteGraph empty;
    MinerConfig cfg;
    CHECK(brute_force_bicliques(empty, cfg).empty());

    // Complete K_{3,2}: one maximal biclique containing everything.
    Rng rng(1);
    auto g = random_graph(3, 2, 1.1, rng);
    MinerConfig loose;
    loose.k_min = 2;
    loose.m_min = 1;
    auto groups = brute_force_bicliques(g, loose);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].tree_ids.size() == 3);
    CHECK(groups[0].shared_relations.size() == 2);
}

TEST_CASE("brute force guard rejects graphs over 20 trees") {
    Rng rng(2);
    auto g = random_graph(21, 3, 0.5, rng);
    MinerConfig cfg;
    CHECK_THROWS_AS(brute_force_bicliques(g, cfg), Error);
}

TEST_CASE("fast and brute-force enumerations agree on a seeded 4x4 graph") {
    Rng rng(7);
    auto g = random_graph(4, 4, 0.5, rng);
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    CHECK(shape(enumerate_maximal_bicliques(g, cfg)) == shape(brute_force_bicliques(g, cfg)));
}

TEST_CASE("oracle equivalence over random graphs, plus maximality checks") {
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed);
        std::size_t left = 2 + rng.below(11);   // up to 12
        std::size_t right = 1 + rng.below(10);  // up to 10
        double p = 0.15 + 0.7 * rng.uniform();
        auto g = random_graph(left, right, p, rng);

        auto fast = enumerate_maximal_bicliques(g, cfg);
        auto slow = brute_force_bicliques(g, cfg);
        REQUIRE_MESSAGE(shape(fast) == shape(slow), "seed ", seed);

        for (const auto& group : fast) {
            CHECK(is_biclique(g, group));
            // Maximality: every tree outside the group misses some shared
            // relation; every relation outside is missing from some member.
            std::set<std::string> members(group.tree_ids.begin(), group.tree_ids.end());
            std::set<std::string> shared;
            for (const auto& r : group.shared_relations) shared.insert(r.name);
            for (std::size_t li = 0; li < g.left.size(); ++li) {
                if (members.count(g.left[li].tree_id)) continue;
                std::set<std::string> rels;
                for (uint32_t ri : g.adjacency[li]) rels.insert(g.right[ri].name);
                bool contains_all = true;
                for (const auto& name : shared) {
                    if (!rels.count(name)) {
                        contains_all = false;
                        break;
                    }
                }
                CHECK_FALSE(contains_all);
            }
        }
    }
}

TEST_CASE("duplicate-heavy adjacency still enumerates each closed set once") {
    // Many left vertices sharing identical relation sets stress the
    // canonical-extension logic harder than uniform random graphs.
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    for (uint64_t seed = 100; seed < 150; ++seed) {
        Rng rng(seed);
        std::size_t patterns = 2 + rng.below(4);
        std::size_t right_n = 3 + rng.below(6);
        std::vector<std::vector<uint32_t>> pool(patterns);
        for (auto& p : pool) {
            for (uint32_t r = 0; r < right_n; ++r) {
                if (rng.uniform() < 0.5) p.push_back(r);
            }
        }
        BipartiteGraph g;
        for (uint32_t r = 0; r < right_n; ++r)
            g.right.push_back({"has_r" + std::to_string(r), DataType::text, "d"});
        g.support.resize(right_n);
        std::size_t left_n = 6 + rng.below(7);  // <= 12
        for (std::size_t l = 0; l < left_n; ++l) {
            g.left.push_back({"t" + std::to_string(10 + l), {DataType::text, "d"}});
            g.adjacency.push_back(pool[rng.below(patterns)]);
            for (uint32_t r : g.adjacency.back()) g.support[r].push_back(static_cast<uint32_t>(l));
        }
        auto fast = enumerate_maximal_bicliques(g, cfg);
        auto slow = brute_force_bicliques(g, cfg);
        REQUIRE_MESSAGE(shape(fast) == shape(slow), "seed ", seed);
        // No duplicate tree sets in the output.
        std::set<std::vector<std::string>> seen;
        for (const auto& grp : fast) CHECK(seen.insert(grp.tree_ids).second);
    }
}

TEST_CASE("identical trees collapse into one maximal group") {
    std::vector<ReasoningTree> trees;
    for (int i = 0; i < 3; ++i) {
        trees.push_back(make_tree("t" + std::to_string(i), {"Prize"},
                                  {"Anna A" + std::to_string(i), "Ben B" + std::to_string(i)},
                                  {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}}));
    }
    auto groups = enumerate_maximal_bicliques(build_graph(trees), MinerConfig{});
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].tree_ids.size() == 3);
    CHECK(groups[0].shared_relations.size() == 2);
}

TEST_CASE("relation-side maximality: no relation outside V' fits every member") {
    Rng rng(17);
    auto g = random_graph(9, 8, 0.55, rng);
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    for (const auto& group : enumerate_maximal_bicliques(g, cfg)) {
        std::set<std::string> shared;
        for (const auto& r : group.shared_relations) shared.insert(r.name);
        std::vector<std::size_t> members;
        for (const auto& id : group.tree_ids) {
            for (std::size_t li = 0; li < g.left.size(); ++li) {
                if (g.left[li].tree_id == id) members.push_back(li);
            }
        }
        for (std::size_t ri = 0; ri < g.right.size(); ++ri) {
            if (shared.count(g.right[ri].name)) continue;
            bool in_all = true;
            for (std::size_t li : members) {
                if (!std::binary_search(g.adjacency[li].begin(), g.adjacency[li].end(),
                                        static_cast<uint32_t>(ri))) {
                    in_all = false;
                    break;
                }
            }
            CHECK_FALSE(in_all);
        }
    }
}

TEST_CASE("raising thresholds never adds groups") {
    Rng rng(11);
    auto g = random_graph(10, 8, 0.5, rng);
    MinerConfig loose;
    loose.k_min = 1;
    loose.m_min = 1;
    auto base = shape(enumerate_maximal_bicliques(g, loose));
    for (int k = 1; k <= 4; ++k) {
        for (int m = 1; m <= 4; ++m) {
            MinerConfig cfg;
            cfg.k_min = k;
            cfg.m_min = m;
            auto subset = shape(enumerate_maximal_bicliques(g, cfg));
            for (const auto& s : subset) {
                CHECK(std::find(base.begin(), base.end(), s) != base.end());
                CHECK(s.first.size() >= static_cast<std::size_t>(k));
                CHECK(s.second.size() >= static_cast<std::size_t>(m));
            }
        }
    }
}

TEST_CASE("semantic check keeps only type/domain-homogeneous groups") {
    // Same relation signature everywhere, but the second tree's anchors are
    // years rather than names.
    auto a = make_tree("a", {"A"}, {"Alpha One", "Beta Two"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}}, "d");
    auto b = make_tree("b", {"B"}, {"1984", "1985"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}}, "d",
                       DataType::year, "Year");
    auto c = make_tree("c", {"C"}, {"Gamma Three", "Delta Four"},
                       {{"has_country", {"X", "Y"}}, {"has_year", {"1980", "1981"}}}, "d");
    auto g = build_graph({a, b, c});
    MinerConfig cfg;
    auto with_check = enumerate_maximal_bicliques(g, cfg);
    // The 3-tree biclique fails the check; no sub-biclique is maximal.
    CHECK(with_check.empty());

    cfg.semantic_check = false;
    auto without = enumerate_maximal_bicliques(g, cfg);
    REQUIRE(without.size() == 1);
    CHECK(without[0].tree_ids.size() == 3);
}

TEST_CASE("determinism and budget") {
    Rng rng(13);
    auto g = random_graph(12, 9, 0.6, rng);
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    auto a = enumerate_maximal_bicliques(g, cfg);
    auto b = enumerate_maximal_bicliques(g, cfg);
    CHECK(shape(a) == shape(b));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].group_id == b[i].group_id);

    MinerConfig tiny = cfg;
    tiny.max_expansions = 2;
    CHECK_THROWS_AS(enumerate_maximal_bicliques(g, tiny), BudgetExceededError);
    MinerConfig small_left = cfg;
    small_left.max_left_vertices = 5;
    CHECK_THROWS_AS(enumerate_maximal_bicliques(g, small_left), BudgetExceededError);
}
