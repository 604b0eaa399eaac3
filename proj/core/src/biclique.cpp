#include "seekgen/biclique.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

void MinerConfig::validate() const {
    if (k_min < 1) throw ConfigError("miner: k_min must be >= 1");
    if (m_min < 1) throw ConfigError("miner: m_min must be >= 1");
    if (max_left_vertices == 0 || max_expansions == 0)
        throw ConfigError("miner: enumeration budget must be positive");
}

std::size_t BipartiteGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adjacency) n += a.size();
    return n;
}

BipartiteGraph build_graph(const std::vector<ReasoningTree>& trees) {
    BipartiteGraph g;

    std::vector<std::size_t> order(trees.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return trees[a].tree_id < trees[b].tree_id;
    });

    std::map<RelationSig, uint32_t> right_index;
    std::vector<std::vector<RelationSig>> rels_per_tree;
    for (std::size_t i : order) {
        g.left.push_back({trees[i].tree_id, trees[i].anchor_type});
        rels_per_tree.push_back(trees[i].relation_set());
        for (const auto& r : rels_per_tree.back()) right_index.emplace(r, 0);
    }

    uint32_t next = 0;
    for (auto& [sig, idx] : right_index) {
        idx = next++;
        g.right.push_back(sig);
    }

    g.adjacency.resize(g.left.size());
    g.support.resize(g.right.size());
    for (std::size_t li = 0; li < g.left.size(); ++li) {
        for (const auto& r : rels_per_tree[li]) {
            uint32_t ri = right_index.at(r);
            g.adjacency[li].push_back(ri);
            g.support[ri].push_back(static_cast<uint32_t>(li));
        }
        std::sort(g.adjacency[li].begin(), g.adjacency[li].end());
        g.adjacency[li].erase(std::unique(g.adjacency[li].begin(), g.adjacency[li].end()),
                              g.adjacency[li].end());
    }
    return g;
}

namespace {

using IndexSet = std::vector<uint32_t>;  // sorted, unique

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const IndexSet& s, uint32_t v) {
    return std::binary_search(s.begin(), s.end(), v);
}

// Trees containing every relation in V: intersection of the support lists.
IndexSet closure(const BipartiteGraph& g, const IndexSet& relations) {
    if (relations.empty()) {
        IndexSet all(g.left.size());
        for (uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    IndexSet acc = g.support[relations[0]];
    for (std::size_t i = 1; i < relations.size() && !acc.empty(); ++i) {
        acc = intersect(acc, g.support[relations[i]]);
    }
    return acc;
}

bool semantic_compatible(const BipartiteGraph& g, const IndexSet& trees) {
    if (trees.empty()) return false;
    const AnchorType& ref = g.left[trees[0]].anchor_type;
    for (uint32_t t : trees) {
        if (!(g.left[t].anchor_type == ref)) return false;
    }
    return true;
}

struct RawBiclique {
    IndexSet trees;
    IndexSet relations;
};

UnionGroup to_group(const BipartiteGraph& g, const RawBiclique& b) {
    UnionGroup out;
    for (uint32_t t : b.trees) out.tree_ids.push_back(g.left[t].tree_id);
    for (uint32_t r : b.relations) out.shared_relations.push_back(g.right[r]);
    std::sort(out.shared_relations.begin(), out.shared_relations.end());
    out.entity_type = g.left[b.trees[0]].anchor_type;
    return out;
}

std::vector<UnionGroup> finalize(const BipartiteGraph& g, std::vector<RawBiclique> raw,
                                 const MinerConfig& cfg) {
    std::vector<UnionGroup> groups;
    groups.reserve(raw.size());
    for (const auto& b : raw) {
        if (static_cast<int>(b.trees.size()) < cfg.k_min) continue;
        if (static_cast<int>(b.relations.size()) < cfg.m_min) continue;
        if (cfg.semantic_check && !semantic_compatible(g, b.trees)) continue;
        groups.push_back(to_group(g, b));
    }
    std::sort(groups.begin(), groups.end(), [](const UnionGroup& a, const UnionGroup& b) {
        if (a.tree_ids.size() != b.tree_ids.size()) return a.tree_ids.size() > b.tree_ids.size();
        if (a.shared_relations.size() != b.shared_relations.size())
            return a.shared_relations.size() > b.shared_relations.size();
        return a.tree_ids < b.tree_ids;
    });
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::ostringstream id;
        id << "g" << std::setw(4) << std::setfill('0') << i;
        groups[i].group_id = id.str();
    }
    return groups;
}

class ClosedSetMiner {
public:
    ClosedSetMiner(const BipartiteGraph& g, const MinerConfig& cfg) : g_(g), cfg_(cfg) {}

    std::vector<RawBiclique> run() {
        for (uint32_t t = 0; t < g_.left.size(); ++t) {
            IndexSet v = g_.adjacency[t];
            if (static_cast<int>(v.size()) < cfg_.m_min) continue;
            IndexSet u = closure(g_, v);
            if (!u.empty() && u[0] == t) expand(u, v, t + 1);
        }
        return std::move(found_);
    }

private:
    // U is closed (= all trees containing V), V = common relations of U.
    // Extensions only consider trees with index >= next; a closure that pulls
    // in a smaller unseen index was already reachable elsewhere and is skipped.
    void expand(const IndexSet& u, const IndexSet& v, uint32_t next) {
        if (++expansions_ > cfg_.max_expansions) {
            throw BudgetExceededError("biclique enumeration exceeded " +
                                      std::to_string(cfg_.max_expansions) + " expansions");
        }
        found_.push_back({u, v});

        for (uint32_t t = next; t < g_.left.size(); ++t) {
            if (contains(u, t)) continue;
            IndexSet v2 = intersect(v, g_.adjacency[t]);
            if (static_cast<int>(v2.size()) < cfg_.m_min) continue;
            IndexSet u2 = closure(g_, v2);
            bool canonical = true;
            for (uint32_t w : u2) {
                if (w >= t) break;
                if (!contains(u, w)) {
                    canonical = false;
                    break;
                }
            }
            if (canonical) expand(u2, v2, t + 1);
        }
    }

    const BipartiteGraph& g_;
    const MinerConfig& cfg_;
    std::vector<RawBiclique> found_;
    std::size_t expansions_ = 0;
};

}  // namespace

std::vector<UnionGroup> enumerate_maximal_bicliques(const BipartiteGraph& g,
                                                    const MinerConfig& cfg) {
    cfg.validate();
    if (g.left.size() > cfg.max_left_vertices) {
        throw BudgetExceededError("graph has " + std::to_string(g.left.size()) +
                                  " trees, budget allows " +
                                  std::to_string(cfg.max_left_vertices));
    }
    ClosedSetMiner miner(g, cfg);
    return finalize(g, miner.run(), cfg);
}

std::vector<UnionGroup> brute_force_bicliques(const BipartiteGraph& g, const MinerConfig& cfg) {
    cfg.validate();
    if (g.left.size() > 20) {
        throw Error("brute_force_bicliques guard: graph has more than 20 trees");
    }
    std::vector<RawBiclique> raw;
    const uint32_t n = static_cast<uint32_t>(g.left.size());
    for (uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        IndexSet subset;
        for (uint32_t t = 0; t < n; ++t) {
            if (mask & (1ULL << t)) subset.push_back(t);
        }
        IndexSet common = g.adjacency[subset[0]];
        for (std::size_t i = 1; i < subset.size() && !common.empty(); ++i) {
            common = intersect(common, g.adjacency[subset[i]]);
        }
        if (common.empty()) continue;
        // Maximal iff the subset is exactly the support of its common relations.
        if (closure(g, common) == subset) raw.push_back({subset, common});
    }
    return finalize(g, std::move(raw), cfg);
}

namespace {

ordered_json relation_to_json(const RelationSig& r) {
    return {{"name", r.name}, {"data_type", to_string(r.data_type)}, {"domain", r.domain}};
}

}  // namespace

void save_groups(const std::filesystem::path& path, const std::vector<UnionGroup>& groups) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write groups file: " + path.string());
    for (const auto& g : groups) {
        ordered_json rec;
        rec["group_id"] = g.group_id;
        rec["tree_ids"] = g.tree_ids;
        ordered_json rels = ordered_json::array();
        for (const auto& r : g.shared_relations) rels.push_back(relation_to_json(r));
        rec["shared_relations"] = rels;
        rec["entity_type"] = {{"data_type", to_string(g.entity_type.data_type)},
                              {"domain", g.entity_type.domain}};
        out << rec.dump() << '\n';
    }
}

std::vector<UnionGroup> load_groups(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open groups file: " + path.string());
    std::vector<UnionGroup> groups;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        ordered_json rec = ordered_json::parse(line);
        UnionGroup g;
        g.group_id = rec.at("group_id").get<std::string>();
        for (const auto& id : rec.at("tree_ids")) g.tree_ids.push_back(id.get<std::string>());
        for (const auto& r : rec.at("shared_relations")) {
            g.shared_relations.push_back({r.at("name").get<std::string>(),
                                          data_type_from_string(r.value("data_type", "text")),
                                          r.value("domain", "general")});
        }
        g.entity_type.data_type = data_type_from_string(rec["entity_type"].value("data_type", "text"));
        g.entity_type.domain = rec["entity_type"].value("domain", "general");
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace seekgen
