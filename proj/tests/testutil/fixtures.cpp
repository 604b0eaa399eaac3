#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace seekgen::testutil {

RawTable make_table(std::string id, std::string title, std::vector<std::string> headers,
                    std::vector<std::vector<std::string>> rows, std::string domain) {
    RawTable t;
    t.id = std::move(id);
    t.title = std::move(title);
    t.headers = std::move(headers);
    t.rows = std::move(rows);
    t.domain = std::move(domain);
    return t;
}

CleanTable make_clean(const RawTable& raw) {
    CleanTable ct;
    static_cast<RawTable&>(ct) = raw;
    ct.group_key = header_signature(ct.headers);
    return ct;
}

ReasoningTree make_tree(std::string tree_id, std::vector<std::string> roots,
                        std::vector<std::string> anchors,
                        std::vector<std::pair<std::string, std::vector<std::string>>> columns,
                        std::string domain, DataType anchor_type, std::string anchor_label) {
    ReasoningTree tree;
    tree.tree_id = tree_id;
    tree.source_table_id = tree_id;
    tree.title = roots.empty() ? tree_id : roots.front();
    tree.root_entities = std::move(roots);
    tree.anchor_label = std::move(anchor_label);
    tree.anchor_type = {anchor_type, domain};

    TreeConfig cfg;
    for (auto& [name, values] : columns) {
        std::vector<std::string> present;
        for (const auto& v : values) {
            if (!v.empty()) present.push_back(v);
        }
        DataType dt = present.empty() ? DataType::text : infer_column_type(present, cfg);
        tree.relations.push_back({name, dt, domain});
    }
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        Subtree sub;
        sub.anchor = anchors[i];
        for (auto& [name, values] : columns) {
            const std::string& v = i < values.size() ? values[i] : std::string{};
            sub.values.push_back({v, v.empty()});
        }
        tree.subtrees.push_back(std::move(sub));
    }
    return tree;
}

std::vector<ReasoningTree> award_pair_trees() {
    // Second-layer authors; has_gender exists only in the first tree.
    auto nobel = make_tree(
        "tree-nobel", {"Nobel Prize in Literature"},
        {"William Golding", "J. M. Coetzee", "Kazuo Ishiguro", "Toni Morrison"},
        {{"has_name", {"William Golding", "J. M. Coetzee", "Kazuo Ishiguro", "Toni Morrison"}},
         {"has_nationality",
          {"United Kingdom", "South Africa", "United Kingdom", "United States"}},
         {"has_gender", {"man", "man", "man", "woman"}}},
        "literature");
    auto booker = make_tree(
        "tree-booker", {"Booker Prize"},
        {"William Golding", "J. M. Coetzee", "Kazuo Ishiguro", "Salman Rushdie"},
        {{"has_name", {"William Golding", "J. M. Coetzee", "Kazuo Ishiguro", "Salman Rushdie"}},
         {"has_nationality",
          {"United Kingdom", "South Africa", "United Kingdom", "United Kingdom"}}},
        "literature");
    return {nobel, booker};
}

std::vector<ReasoningTree> award_pair_trees_rich() {
    auto trees = award_pair_trees();
    auto& nobel = trees[0];
    nobel.relations.push_back({"has_award_year", DataType::year, "literature"});
    const std::vector<std::string> years = {"1983", "2003", "2017", "1993"};
    for (std::size_t i = 0; i < nobel.subtrees.size(); ++i) {
        nobel.subtrees[i].values.push_back({years[i], false});
    }
    return trees;
}

BipartiteGraph random_graph(std::size_t left_n, std::size_t right_n, double edge_prob, Rng& rng) {
    BipartiteGraph g;
    g.right.reserve(right_n);
    for (std::size_t r = 0; r < right_n; ++r) {
        std::ostringstream name;
        name << "has_r" << r;
        g.right.push_back({name.str(), DataType::text, "general"});
    }
    g.adjacency.resize(left_n);
    g.support.resize(right_n);
    for (std::size_t l = 0; l < left_n; ++l) {
        std::ostringstream id;
        id << "tree" << (l < 10 ? "0" : "") << l;
        g.left.push_back({id.str(), {DataType::text, "general"}});
        for (std::size_t r = 0; r < right_n; ++r) {
            if (rng.uniform() < edge_prob) {
                g.adjacency[l].push_back(static_cast<uint32_t>(r));
                g.support[r].push_back(static_cast<uint32_t>(l));
            }
        }
    }
    // Right vertices with no support would never come from build_graph.
    std::vector<uint32_t> keep;
    for (uint32_t r = 0; r < right_n; ++r) {
        if (!g.support[r].empty()) keep.push_back(r);
    }
    if (keep.size() != right_n) {
        std::vector<RelationSig> right;
        std::vector<std::vector<uint32_t>> support;
        std::map<uint32_t, uint32_t> remap;
        for (uint32_t nr = 0; nr < keep.size(); ++nr) {
            remap[keep[nr]] = nr;
            right.push_back(g.right[keep[nr]]);
            support.push_back(g.support[keep[nr]]);
        }
        for (auto& adj : g.adjacency) {
            std::vector<uint32_t> next;
            for (uint32_t r : adj) {
                if (remap.count(r)) next.push_back(remap[r]);
            }
            adj = std::move(next);
        }
        g.right = std::move(right);
        g.support = std::move(support);
    }
    return g;
}

Trajectory make_synthetic_trajectory(const TaskSpec& task, const TrajectoryPlan& plan,
                                     uint64_t seed, const std::string& trajectory_id) {
    Rng rng(derive_seed(seed, "traj:" + trajectory_id));
    Trajectory traj;
    traj.task_id = task.task_id;
    traj.trajectory_id = trajectory_id;

    std::vector<std::string> surfaces;
    for (const auto& e : task.target_entities) surfaces.push_back(e.value);
    // Distinct surfaces in task order, so `reveal` counts discovered targets
    // the same way the matcher will.
    {
        std::vector<std::string> distinct;
        std::map<std::string, bool> seen;
        for (auto& s : surfaces) {
            if (!seen.count(s)) {
                seen[s] = true;
                distinct.push_back(s);
            }
        }
        surfaces = std::move(distinct);
    }
    const std::size_t reveal = std::min(plan.reveal, surfaces.size());

    auto aliased = [&](const std::string& s) {
        if (!plan.alias_surfaces) return s;
        if (s == "United Kingdom") return std::string("UK");
        if (s == "United States") return std::string("USA");
        if (s == "Soviet Union") return std::string("USSR");
        return s;
    };

    const std::size_t buckets = std::max<std::size_t>(1, plan.steps_with_targets);
    std::vector<std::vector<std::string>> batches(buckets);
    for (std::size_t i = 0; i < reveal; ++i) batches[i % buckets].push_back(aliased(surfaces[i]));

    if (plan.search_first) {
        StepRecord step;
        step.thought = "Start broad and collect candidate pages.";
        step.action = Action::search({task.question_text.substr(0, 60)}, std::nullopt);
        step.observation = "Top results: encyclopedia pages and award archives.";
        traj.steps.push_back(std::move(step));
    }
    std::size_t page = 0;
    for (const auto& batch : batches) {
        StepRecord step;
        step.thought = "Open the most promising page and pull the listed entries.";
        std::ostringstream url;
        url << "https://example.org/page/" << ++page;
        step.action = Action::visit({url.str()}, "collect the required entities");
        if (batch.empty()) {
            step.observation = "The page text is unrelated to the request.";
        } else {
            std::ostringstream obs;
            obs << "The page lists";
            for (std::size_t i = 0; i < batch.size(); ++i) {
                obs << (i == 0 ? " " : (i + 1 == batch.size() ? " and " : ", ")) << batch[i];
            }
            obs << " among the relevant entries.";
            step.observation = obs.str();
        }
        traj.steps.push_back(std::move(step));
    }
    for (std::size_t f = 0; f < plan.filler_steps; ++f) {
        StepRecord step;
        step.thought = "Cross-check another source.";
        if (rng.uniform() < 0.5) {
            step.action = Action::search({"additional context " + std::to_string(f)}, std::nullopt);
            step.observation = "No new relevant results.";
        } else {
            std::ostringstream url;
            url << "https://example.org/misc/" << f;
            step.action = Action::visit({url.str()}, "verify details");
            step.observation = "Nothing relevant on this page.";
        }
        traj.steps.push_back(std::move(step));
    }

    if (plan.with_final_answer) {
        std::ostringstream ans;
        for (std::size_t i = 0; i < reveal; ++i) {
            if (i) ans << "; ";
            ans << surfaces[i];
        }
        for (std::size_t j = 0; j < plan.junk_answers; ++j) {
            if (reveal > 0 || j > 0) ans << "; ";
            ans << "Unrelated entry " << (j + 1);
        }
        traj.final_answer = ans.str();
    }
    return traj;
}

}  // namespace seekgen::testutil
