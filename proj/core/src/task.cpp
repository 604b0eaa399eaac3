#include "seekgen/task.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/oracle.hpp"
#include "seekgen/rng.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

std::string to_string(TaskVariant v) {
    switch (v) {
        case TaskVariant::basic: return "basic";
        case TaskVariant::task_union: return "union";
        case TaskVariant::reverse_union: return "reverse_union";
    }
    return "basic";
}

TaskVariant task_variant_from_string(const std::string& s) {
    if (s == "basic") return TaskVariant::basic;
    if (s == "union") return TaskVariant::task_union;
    if (s == "reverse_union") return TaskVariant::reverse_union;
    throw ParseError("unknown task variant: " + s);
}

std::string to_string(EntityLayer l) {
    return l == EntityLayer::second ? "second" : "third";
}

std::string to_string(EntityCategory c) {
    switch (c) {
        case EntityCategory::person_name: return "person_name";
        case EntityCategory::date: return "date";
        case EntityCategory::year: return "year";
        case EntityCategory::organization: return "organization";
        case EntityCategory::location: return "location";
        case EntityCategory::free_text: return "free_text";
    }
    return "free_text";
}

EntityCategory entity_category_from_string(const std::string& s) {
    if (s == "person_name") return EntityCategory::person_name;
    if (s == "date") return EntityCategory::date;
    if (s == "year") return EntityCategory::year;
    if (s == "organization") return EntityCategory::organization;
    if (s == "location") return EntityCategory::location;
    if (s == "free_text") return EntityCategory::free_text;
    throw ParseError("unknown entity category: " + s);
}

std::string to_string(SourceTag t) {
    return t == SourceTag::synthesized ? "synthesized" : "legacy";
}

SourceTag source_tag_from_string(const std::string& s) {
    if (s == "synthesized") return SourceTag::synthesized;
    if (s == "legacy") return SourceTag::legacy;
    throw ParseError("unknown source tag: " + s);
}

std::string TargetEntity::identity_key() const {
    return text::normalize(value) + '\x1f' + to_string(layer) + '\x1f' +
           text::normalize(parent_anchor);
}

TreeCorpus::TreeCorpus(std::vector<ReasoningTree> trees) : trees_(std::move(trees)) {
    for (std::size_t i = 0; i < trees_.size(); ++i) by_id_[trees_[i].tree_id] = i;
}

const ReasoningTree* TreeCorpus::find(const std::string& tree_id) const {
    auto it = by_id_.find(tree_id);
    return it == by_id_.end() ? nullptr : &trees_[it->second];
}

namespace {

const std::set<std::string>& location_keywords() {
    static const std::set<std::string> kw = {"country",    "nation", "nationality", "city",
                                             "place",      "location", "birthplace", "residence",
                                             "state",      "region",   "hometown"};
    return kw;
}

const std::set<std::string>& organization_keywords() {
    static const std::set<std::string> kw = {"team",        "club",        "company",
                                             "organization", "organisation", "university",
                                             "party",       "studio",      "institution",
                                             "publisher",   "employer",    "affiliation"};
    return kw;
}

const std::set<std::string>& person_keywords() {
    static const std::set<std::string> kw = {"name",      "author",   "winner",   "laureate",
                                             "player",    "champion", "person",   "director",
                                             "artist",    "recipient", "writer",  "discoverer"};
    return kw;
}

bool label_has_keyword(const std::string& label, const std::set<std::string>& kw) {
    std::string s = text::slug(label);
    for (const auto& tok : text::split(s, '_')) {
        if (kw.count(tok)) return true;
    }
    return false;
}

bool person_name_shape(const std::string& value) {
    std::string folded = text::fold_diacritics(value);
    std::vector<std::string> toks;
    for (auto& t : text::split(folded, ' ')) {
        if (!text::trim(t).empty()) toks.push_back(text::trim(t));
    }
    if (toks.size() < 2 || toks.size() > 4) return false;
    for (const auto& t : toks) {
        if (!std::isupper(static_cast<unsigned char>(t[0]))) return false;
        for (char c : t) {
            unsigned char u = static_cast<unsigned char>(c);
            if (!std::isalpha(u) && c != '.' && c != '\'' && c != '-') return false;
        }
    }
    return true;
}

}  // namespace

EntityCategory categorize_entity(const std::string& value, const std::string& label,
                                 DataType data_type) {
    if (data_type == DataType::year) return EntityCategory::year;
    if (data_type == DataType::date) return EntityCategory::date;
    if (label_has_keyword(label, location_keywords())) return EntityCategory::location;
    if (label_has_keyword(label, organization_keywords())) return EntityCategory::organization;
    if (label_has_keyword(label, person_keywords())) return EntityCategory::person_name;
    if (data_type == DataType::text && person_name_shape(value)) return EntityCategory::person_name;
    return EntityCategory::free_text;
}

namespace {

struct AnchorRef {
    std::string norm;
    std::string surface;  // representative form, from the first provenance tree
};

std::string relation_phrase(const std::string& name) {
    std::string s = name;
    if (s.rfind("has_", 0) == 0) s = s.substr(4);
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string roots_phrase(const ReasoningTree& tree) {
    return join(tree.root_entities, " ");
}

std::vector<const ReasoningTree*> fetch_trees(const std::vector<std::string>& ids,
                                              const TreeCorpus& corpus) {
    std::vector<const ReasoningTree*> out;
    for (const auto& id : ids) {
        const ReasoningTree* t = corpus.find(id);
        if (t == nullptr) throw MissingArtifactError("provenance tree not found: " + id);
        out.push_back(t);
    }
    return out;
}

// First subtree of `tree` whose anchor normalizes to `norm`.
const Subtree* find_subtree(const ReasoningTree& tree, const std::string& norm) {
    for (const auto& sub : tree.subtrees) {
        if (text::normalize(sub.anchor) == norm) return &sub;
    }
    return nullptr;
}

// Anchors present in every tree, joined on normalized names. Surfaces come
// from the first tree; output is sorted by normalized name.
std::vector<AnchorRef> anchor_intersection(const std::vector<const ReasoningTree*>& trees) {
    std::vector<AnchorRef> inter;
    if (trees.empty()) return inter;
    std::set<std::string> seen;
    for (const auto& sub : trees[0]->subtrees) {
        std::string norm = text::normalize(sub.anchor);
        if (norm.empty() || !seen.insert(norm).second) continue;
        bool everywhere = true;
        for (std::size_t i = 1; i < trees.size(); ++i) {
            if (find_subtree(*trees[i], norm) == nullptr) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) inter.push_back({norm, text::trim(sub.anchor)});
    }
    std::sort(inter.begin(), inter.end(),
              [](const AnchorRef& a, const AnchorRef& b) { return a.norm < b.norm; });
    return inter;
}

// Attribute value for (anchor, relation name): first provenance tree whose
// subtree carries it non-missing, along with that tree's relation sig.
std::optional<std::pair<std::string, RelationSig>> sourced_attribute(
    const std::vector<const ReasoningTree*>& trees, const std::string& anchor_norm,
    const std::string& relation_name) {
    for (const ReasoningTree* t : trees) {
        const Subtree* sub = find_subtree(*t, anchor_norm);
        if (sub == nullptr) continue;
        auto v = t->attribute_value(*sub, relation_name);
        if (v) {
            int idx = t->relation_index(relation_name);
            return std::make_pair(*v, t->relations[idx]);
        }
    }
    return std::nullopt;
}

void sort_and_dedupe(std::vector<TargetEntity>& targets) {
    std::sort(targets.begin(), targets.end(), [](const TargetEntity& a, const TargetEntity& b) {
        return a.identity_key() < b.identity_key();
    });
    targets.erase(std::unique(targets.begin(), targets.end(),
                              [](const TargetEntity& a, const TargetEntity& b) {
                                  return a.identity_key() == b.identity_key();
                              }),
                  targets.end());
}

// R for a set of anchors: the anchors themselves (second layer) plus their
// requested attributes (third layer).
std::vector<TargetEntity> build_targets(const std::vector<const ReasoningTree*>& trees,
                                        const std::vector<AnchorRef>& anchors,
                                        const std::vector<std::string>& requested) {
    std::vector<TargetEntity> targets;
    const ReasoningTree& first = *trees.front();
    for (const auto& a : anchors) {
        TargetEntity second;
        second.value = a.surface;
        second.layer = EntityLayer::second;
        second.category =
            categorize_entity(a.surface, first.anchor_label, first.anchor_type.data_type);
        targets.push_back(std::move(second));

        for (const auto& rel_name : requested) {
            auto attr = sourced_attribute(trees, a.norm, rel_name);
            if (!attr) continue;
            TargetEntity third;
            third.value = attr->first;
            third.layer = EntityLayer::third;
            third.category = categorize_entity(attr->first, attr->second.name, attr->second.data_type);
            third.parent_anchor = a.surface;
            targets.push_back(std::move(third));
        }
    }
    sort_and_dedupe(targets);
    return targets;
}

std::vector<std::string> relation_phrases(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(relation_phrase(n));
    return out;
}

// Optional oracle polish. The rendered text must still carry every payload
// (normalized token match) and none of the forbidden strings, otherwise the
// deterministic draft wins.
std::string render_question(OracleClient* renderer, const std::string& draft,
                            const std::vector<std::string>& payloads,
                            const std::vector<std::string>& forbidden) {
    if (renderer == nullptr) return draft;
    std::ostringstream prompt;
    prompt << "Rewrite the following task as a single natural-language question. "
           << "Keep every fact from the draft.\nDRAFT: " << draft;
    auto reply = renderer->complete("render", prompt.str());
    if (!reply) return draft;
    std::string norm = text::normalize(*reply);
    for (const auto& p : payloads) {
        if (!text::contains_token_bounded(norm, text::normalize(p))) return draft;
    }
    for (const auto& f : forbidden) {
        if (text::contains_token_bounded(norm, text::normalize(f))) return draft;
    }
    return *reply;
}

std::vector<std::string> requested_for_basic(const ReasoningTree& tree, const SynthConfig& cfg) {
    std::vector<std::string> names;
    for (const auto& r : tree.relations) {
        if (cfg.basic_relations.empty() ||
            std::find(cfg.basic_relations.begin(), cfg.basic_relations.end(), r.name) !=
                cfg.basic_relations.end())
            names.push_back(r.name);
    }
    return names;
}

std::vector<std::string> shared_relation_names(const UnionGroup& group) {
    std::vector<std::string> names;
    for (const auto& r : group.shared_relations) names.push_back(r.name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

std::vector<AnchorRef> all_anchors(const std::vector<const ReasoningTree*>& trees) {
    std::vector<AnchorRef> out;
    std::set<std::string> seen;
    for (const ReasoningTree* t : trees) {
        for (const auto& sub : t->subtrees) {
            std::string norm = text::normalize(sub.anchor);
            if (norm.empty() || !seen.insert(norm).second) continue;
            out.push_back({norm, text::trim(sub.anchor)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const AnchorRef& a, const AnchorRef& b) { return a.norm < b.norm; });
    return out;
}

bool clue_matches(const std::vector<const ReasoningTree*>& trees, const std::string& anchor_norm,
                  const FuzzClue& clue) {
    std::string want = text::normalize(clue.value);
    for (const ReasoningTree* t : trees) {
        const Subtree* sub = find_subtree(*t, anchor_norm);
        if (sub == nullptr) continue;
        auto v = t->attribute_value(*sub, clue.relation);
        if (v && text::normalize(*v) == want) return true;
    }
    return false;
}

std::vector<std::string> resolve_anchor_from_clues(const std::vector<const ReasoningTree*>& trees,
                                                   const std::vector<FuzzClue>& clues) {
    std::vector<std::string> matches;
    for (const auto& a : all_anchors(trees)) {
        bool all = !clues.empty();
        for (const auto& c : clues) {
            if (!clue_matches(trees, a.norm, c)) {
                all = false;
                break;
            }
        }
        if (all) matches.push_back(a.norm);
    }
    return matches;
}

bool shares_pivot(const std::vector<const ReasoningTree*>& trees, const std::string& anchor_norm,
                  const std::string& pivot_relation, const std::string& pivot_value_norm) {
    for (const ReasoningTree* t : trees) {
        const Subtree* sub = find_subtree(*t, anchor_norm);
        if (sub == nullptr) continue;
        auto v = t->attribute_value(*sub, pivot_relation);
        if (v && text::normalize(*v) == pivot_value_norm) return true;
    }
    return false;
}

}  // namespace

TaskSpec synth_basic(const ReasoningTree& tree, const SynthConfig& cfg) {
    if (tree.subtrees.empty()) throw Error("basic synthesis needs at least one subtree");

    TaskSpec task;
    task.task_id = "basic-" + tree.tree_id;
    task.variant = TaskVariant::basic;
    task.source_tag = SourceTag::synthesized;
    task.question_entities = tree.root_entities;
    task.predicate.variant = TaskVariant::basic;
    task.predicate.tree_ids = {tree.tree_id};
    task.predicate.requested_relations = requested_for_basic(tree, cfg);

    std::string note;
    task.target_entities = evaluate_predicate(task.predicate, TreeCorpus{{tree}}, &note);

    std::string draft = "List all " + join(tree.root_entities, ", ") + ". For each, provide " +
                        join(relation_phrases(task.predicate.requested_relations), ", ") + ".";
    task.question_text = render_question(cfg.renderer, draft, tree.root_entities, {});
    return task;
}

TaskSpec synth_union(const UnionGroup& group, const TreeCorpus& corpus, const SynthConfig& cfg) {
    if (group.tree_ids.size() < 2) throw Error("union synthesis needs at least two trees");
    auto trees = fetch_trees(group.tree_ids, corpus);
    auto inter = anchor_intersection(trees);
    if (inter.empty()) {
        throw NoIntersectionError("group " + group.group_id + " has no common anchors");
    }

    TaskSpec task;
    task.task_id = "union-" + group.group_id;
    task.variant = TaskVariant::task_union;
    task.source_tag = SourceTag::synthesized;
    task.group_id = group.group_id;
    task.predicate.variant = TaskVariant::task_union;
    task.predicate.tree_ids = group.tree_ids;
    task.predicate.requested_relations = shared_relation_names(group);
    task.target_entities = build_targets(trees, inter, task.predicate.requested_relations);

    std::vector<std::string> scopes;
    std::vector<std::string> payloads;
    for (const ReasoningTree* t : trees) {
        scopes.push_back(roots_phrase(*t));
        for (const auto& r : t->root_entities) payloads.push_back(r);
        task.question_entities.insert(task.question_entities.end(), t->root_entities.begin(),
                                      t->root_entities.end());
    }
    std::set<std::string> seen;
    std::vector<std::string> dedup;
    for (auto& q : task.question_entities) {
        if (seen.insert(text::normalize(q)).second) dedup.push_back(q);
    }
    task.question_entities = std::move(dedup);

    std::string label = text::to_lower_ascii(trees.front()->anchor_label);
    std::string draft = "Which " + label + " entries appear in every one of: " +
                        join(scopes, "; ") + "? For each, provide " +
                        join(relation_phrases(task.predicate.requested_relations), ", ") + ".";
    task.question_text = render_question(cfg.renderer, draft, payloads, {});
    return task;
}

TaskSpec synth_reverse_union(const UnionGroup& group, const TreeCorpus& corpus,
                             const SynthConfig& cfg) {
    if (group.tree_ids.size() < 2) throw Error("reverse-union synthesis needs at least two trees");
    auto trees = fetch_trees(group.tree_ids, corpus);
    auto inter = anchor_intersection(trees);
    if (inter.empty()) {
        throw NoIntersectionError("group " + group.group_id + " has no common anchors");
    }

    Rng rng(derive_seed(cfg.seed, "reverse_union:" + group.group_id));

    // Clue pool per anchor: every non-missing attribute across the group's
    // trees whose value does not give the anchor name away.
    auto clue_pool = [&](const AnchorRef& a) {
        std::vector<FuzzClue> pool;
        std::set<std::pair<std::string, std::string>> seen;
        for (const ReasoningTree* t : trees) {
            const Subtree* sub = find_subtree(*t, a.norm);
            if (sub == nullptr) continue;
            for (std::size_t i = 0; i < t->relations.size(); ++i) {
                if (sub->values[i].missing) continue;
                const std::string& value = sub->values[i].value;
                std::string vn = text::normalize(value);
                if (vn.empty() || vn == a.norm) continue;
                if (text::contains_token_bounded(vn, a.norm) ||
                    text::contains_token_bounded(a.norm, vn))
                    continue;
                if (!seen.insert({t->relations[i].name, vn}).second) continue;
                FuzzClue clue;
                clue.relation = t->relations[i].name;
                clue.value = value;
                clue.clue_text = "whose " + relation_phrase(clue.relation) + " is " + value;
                pool.push_back(std::move(clue));
            }
        }
        std::sort(pool.begin(), pool.end(), [](const FuzzClue& x, const FuzzClue& y) {
            return std::tie(x.relation, x.value) < std::tie(y.relation, y.value);
        });
        return pool;
    };

    std::vector<std::pair<AnchorRef, std::vector<FuzzClue>>> candidates;
    for (const auto& a : inter) {
        auto pool = clue_pool(a);
        if (pool.size() >= 2) candidates.emplace_back(a, std::move(pool));
    }
    if (candidates.empty()) {
        throw CluesAmbiguousError("group " + group.group_id +
                                  ": no anchor has two distinctive attributes");
    }

    const auto& [anchor, full_pool] = candidates[rng.below(candidates.size())];

    std::vector<FuzzClue> clues = full_pool;
    {
        auto resolved = resolve_anchor_from_clues(trees, clues);
        if (resolved.size() != 1 || resolved[0] != anchor.norm) {
            throw CluesAmbiguousError("group " + group.group_id + ": clue set matches " +
                                      std::to_string(resolved.size()) + " anchors");
        }
    }
    // Greedy minimization in seeded order; keep at least two clues.
    {
        std::vector<std::size_t> order(clues.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        for (std::size_t idx : order) {
            if (clues.size() <= 2) break;
            std::vector<FuzzClue> trial;
            for (std::size_t j = 0; j < clues.size(); ++j) {
                if (clues[j].relation != full_pool[idx].relation ||
                    clues[j].value != full_pool[idx].value)
                    trial.push_back(clues[j]);
            }
            if (trial.size() < 2 || trial.size() == clues.size()) continue;
            auto resolved = resolve_anchor_from_clues(trees, trial);
            if (resolved.size() == 1 && resolved[0] == anchor.norm) clues = std::move(trial);
        }
        std::sort(clues.begin(), clues.end(), [](const FuzzClue& x, const FuzzClue& y) {
            return std::tie(x.relation, x.value) < std::tie(y.relation, y.value);
        });
    }

    // Pivot: a shared relation the anchor has a value for, preferring the one
    // shared by the most intersection anchors (search breadth), seeded ties.
    auto shared_names = shared_relation_names(group);
    struct PivotOption {
        std::string relation;
        std::string value_norm;
        std::string value_surface;
        std::size_t breadth = 0;
    };
    std::vector<PivotOption> pivots;
    for (const auto& rel : shared_names) {
        auto attr = sourced_attribute(trees, anchor.norm, rel);
        if (!attr) continue;
        PivotOption opt;
        opt.relation = rel;
        opt.value_surface = attr->first;
        opt.value_norm = text::normalize(attr->first);
        for (const auto& a : inter) {
            if (shares_pivot(trees, a.norm, rel, opt.value_norm)) ++opt.breadth;
        }
        pivots.push_back(std::move(opt));
    }
    if (pivots.empty()) {
        throw CluesAmbiguousError("group " + group.group_id + ": anchor '" + anchor.norm +
                                  "' has no shared attribute usable as a pivot");
    }
    std::size_t best = 0;
    for (const auto& p : pivots) best = std::max(best, p.breadth);
    std::vector<PivotOption> best_pivots;
    for (auto& p : pivots) {
        if (p.breadth == best) best_pivots.push_back(std::move(p));
    }
    const PivotOption pivot = best_pivots[rng.below(best_pivots.size())];

    std::vector<AnchorRef> final_anchors;
    for (const auto& a : inter) {
        if (shares_pivot(trees, a.norm, pivot.relation, pivot.value_norm))
            final_anchors.push_back(a);
    }

    TaskSpec task;
    task.task_id = "reverse_union-" + group.group_id;
    task.variant = TaskVariant::reverse_union;
    task.source_tag = SourceTag::synthesized;
    task.group_id = group.group_id;
    task.predicate.variant = TaskVariant::reverse_union;
    task.predicate.tree_ids = group.tree_ids;
    task.predicate.requested_relations = shared_names;
    task.predicate.clues = clues;
    task.predicate.pivot_relation = pivot.relation;
    task.target_entities = build_targets(trees, final_anchors, shared_names);

    std::vector<std::string> clue_texts;
    std::vector<std::string> payloads;
    for (const auto& c : clues) {
        clue_texts.push_back(c.clue_text);
        payloads.push_back(c.value);
        payloads.push_back(relation_phrase(c.relation));
    }
    task.question_entities = clue_texts;

    std::vector<std::string> scopes;
    for (const ReasoningTree* t : trees) scopes.push_back(roots_phrase(*t));
    std::string label = text::to_lower_ascii(trees.front()->anchor_label);
    std::string draft =
        "Consider the " + label + " " + join(clue_texts, " and ") + ". Find every " + label +
        " that shares its " + relation_phrase(pivot.relation) +
        " and appears in every one of: " + join(scopes, "; ") + ". For each, provide " +
        join(relation_phrases(shared_names), ", ") + ".";
    task.question_text =
        render_question(cfg.renderer, draft, payloads, {anchor.surface});

    // Anti-shortcut guard: the anchor name must never leak into the question.
    if (text::contains_token_bounded(text::normalize(task.question_text), anchor.norm)) {
        throw CluesAmbiguousError("group " + group.group_id +
                                  ": anchor name leaked into the question text");
    }
    return task;
}

std::vector<TargetEntity> evaluate_predicate(const TaskPredicate& predicate,
                                             const TreeCorpus& corpus, std::string* note) {
    auto trees = fetch_trees(predicate.tree_ids, corpus);
    auto set_note = [&](const std::string& n) {
        if (note != nullptr) *note = n;
    };

    switch (predicate.variant) {
        case TaskVariant::basic: {
            std::vector<AnchorRef> anchors;
            std::set<std::string> seen;
            for (const auto& sub : trees.front()->subtrees) {
                std::string norm = text::normalize(sub.anchor);
                if (norm.empty() || !seen.insert(norm).second) continue;
                anchors.push_back({norm, text::trim(sub.anchor)});
            }
            std::sort(anchors.begin(), anchors.end(),
                      [](const AnchorRef& a, const AnchorRef& b) { return a.norm < b.norm; });
            return build_targets(trees, anchors, predicate.requested_relations);
        }
        case TaskVariant::task_union: {
            auto inter = anchor_intersection(trees);
            if (inter.empty()) set_note("anchor intersection is empty");
            return build_targets(trees, inter, predicate.requested_relations);
        }
        case TaskVariant::reverse_union: {
            auto resolved = resolve_anchor_from_clues(trees, predicate.clues);
            if (resolved.size() != 1) {
                set_note("clues resolve to " + std::to_string(resolved.size()) +
                         " anchors, expected exactly 1");
                return {};
            }
            auto pivot_attr = sourced_attribute(trees, resolved[0], predicate.pivot_relation);
            if (!pivot_attr) {
                set_note("resolved anchor has no value for pivot relation " +
                         predicate.pivot_relation);
                return {};
            }
            std::string pivot_norm = text::normalize(pivot_attr->first);
            auto inter = anchor_intersection(trees);
            std::vector<AnchorRef> final_anchors;
            for (const auto& a : inter) {
                if (shares_pivot(trees, a.norm, predicate.pivot_relation, pivot_norm))
                    final_anchors.push_back(a);
            }
            if (final_anchors.empty()) set_note("no anchors share the pivot value");
            return build_targets(trees, final_anchors, predicate.requested_relations);
        }
    }
    return {};
}

VerificationReport verify_task(const TaskSpec& task, const TreeCorpus& corpus) {
    VerificationReport report;
    auto extension = evaluate_predicate(task.predicate, corpus, &report.note);

    std::map<std::string, const TargetEntity*> in_r, in_ext;
    for (const auto& t : task.target_entities) in_r.emplace(t.identity_key(), &t);
    for (const auto& t : extension) in_ext.emplace(t.identity_key(), &t);

    for (const auto& [key, entity] : in_ext) {
        if (!in_r.count(key)) report.missing.push_back(*entity);
    }
    for (const auto& [key, entity] : in_r) {
        if (!in_ext.count(key)) report.extra.push_back(*entity);
    }
    report.passed = report.missing.empty() && report.extra.empty();
    return report;
}

std::pair<std::vector<TaskSpec>, SynthesisReport> synthesize_all(
    const TreeCorpus& corpus, const std::vector<UnionGroup>& groups,
    const std::vector<TaskVariant>& variants, const SynthConfig& cfg) {
    std::vector<TaskSpec> tasks;
    SynthesisReport report;
    for (auto v : variants) report.synthesized[to_string(v)] = 0;

    auto wants = [&](TaskVariant v) {
        return std::find(variants.begin(), variants.end(), v) != variants.end();
    };

    auto push_verified = [&](TaskSpec task) {
        auto check = verify_task(task, corpus);
        if (!check.passed) {
            throw Error("synthesis postcondition violated for " + task.task_id + ": " +
                        std::to_string(check.missing.size()) + " missing, " +
                        std::to_string(check.extra.size()) + " extra");
        }
        ++report.synthesized[to_string(task.variant)];
        tasks.push_back(std::move(task));
    };

    if (wants(TaskVariant::basic)) {
        for (const auto& tree : corpus.trees()) {
            try {
                push_verified(synth_basic(tree, cfg));
            } catch (const MissingArtifactError&) {
                throw;
            } catch (const Error& e) {
                report.skipped.push_back({tree.tree_id, "basic", e.what()});
            }
        }
    }
    if (wants(TaskVariant::task_union)) {
        for (const auto& group : groups) {
            try {
                push_verified(synth_union(group, corpus, cfg));
            } catch (const MissingArtifactError&) {
                throw;
            } catch (const NoIntersectionError& e) {
                report.skipped.push_back({group.group_id, "union", e.what()});
            } catch (const Error& e) {
                report.skipped.push_back({group.group_id, "union", e.what()});
            }
        }
    }
    if (wants(TaskVariant::reverse_union)) {
        for (const auto& group : groups) {
            try {
                push_verified(synth_reverse_union(group, corpus, cfg));
            } catch (const MissingArtifactError&) {
                throw;
            } catch (const Error& e) {
                report.skipped.push_back({group.group_id, "reverse_union", e.what()});
            }
        }
    }
    return {std::move(tasks), std::move(report)};
}

namespace {

ordered_json task_to_json(const TaskSpec& t) {
    ordered_json rec;
    rec["task_id"] = t.task_id;
    rec["variant"] = to_string(t.variant);
    rec["question_text"] = t.question_text;
    rec["question_entities"] = t.question_entities;
    ordered_json targets = ordered_json::array();
    for (const auto& e : t.target_entities) {
        ordered_json te;
        te["value"] = e.value;
        te["layer"] = to_string(e.layer);
        te["category"] = to_string(e.category);
        if (e.layer == EntityLayer::third) te["parent_anchor"] = e.parent_anchor;
        targets.push_back(std::move(te));
    }
    rec["target_entities"] = targets;

    ordered_json prov;
    prov["tree_ids"] = t.predicate.tree_ids;
    if (!t.group_id.empty()) prov["group_id"] = t.group_id;
    prov["requested_relations"] = t.predicate.requested_relations;
    if (!t.predicate.clues.empty()) {
        ordered_json clues = ordered_json::array();
        for (const auto& c : t.predicate.clues) {
            clues.push_back(
                {{"clue_text", c.clue_text}, {"relation", c.relation}, {"value", c.value}});
        }
        prov["clues"] = clues;
    }
    if (!t.predicate.pivot_relation.empty()) prov["pivot_relation"] = t.predicate.pivot_relation;
    rec["provenance"] = prov;
    rec["source_tag"] = to_string(t.source_tag);
    return rec;
}

TaskSpec task_from_json(const ordered_json& rec) {
    TaskSpec t;
    t.task_id = rec.at("task_id").get<std::string>();
    t.variant = task_variant_from_string(rec.at("variant").get<std::string>());
    t.question_text = rec.value("question_text", std::string{});
    if (rec.contains("question_entities")) {
        for (const auto& q : rec["question_entities"]) t.question_entities.push_back(q.get<std::string>());
    }
    for (const auto& e : rec.at("target_entities")) {
        TargetEntity te;
        te.value = e.at("value").get<std::string>();
        te.layer = e.value("layer", "second") == "third" ? EntityLayer::third : EntityLayer::second;
        te.category = entity_category_from_string(e.value("category", "free_text"));
        te.parent_anchor = e.value("parent_anchor", std::string{});
        t.target_entities.push_back(std::move(te));
    }
    t.predicate.variant = t.variant;
    if (rec.contains("provenance")) {
        const auto& prov = rec["provenance"];
        if (prov.contains("tree_ids")) {
            for (const auto& id : prov["tree_ids"]) t.predicate.tree_ids.push_back(id.get<std::string>());
        }
        t.group_id = prov.value("group_id", std::string{});
        if (prov.contains("requested_relations")) {
            for (const auto& r : prov["requested_relations"])
                t.predicate.requested_relations.push_back(r.get<std::string>());
        }
        if (prov.contains("clues")) {
            for (const auto& c : prov["clues"]) {
                t.predicate.clues.push_back({c.value("clue_text", std::string{}),
                                             c.at("relation").get<std::string>(),
                                             c.at("value").get<std::string>()});
            }
        }
        t.predicate.pivot_relation = prov.value("pivot_relation", std::string{});
    }
    t.source_tag = source_tag_from_string(rec.value("source_tag", "synthesized"));
    return t;
}

}  // namespace

void save_tasks(const std::filesystem::path& path, const std::vector<TaskSpec>& tasks) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write tasks file: " + path.string());
    for (const auto& t : tasks) out << task_to_json(t).dump() << '\n';
}

std::vector<TaskSpec> load_tasks(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tasks file: " + path.string());
    std::vector<TaskSpec> tasks;
    std::string line;
    long index = 0;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        try {
            tasks.push_back(task_from_json(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad task record: ") + e.what(), index);
        }
        ++index;
    }
    return tasks;
}

}  // namespace seekgen
