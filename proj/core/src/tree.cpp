#include "seekgen/tree.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/oracle.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

std::string to_string(DataType t) {
    switch (t) {
        case DataType::text: return "text";
        case DataType::number: return "number";
        case DataType::year: return "year";
        case DataType::date: return "date";
    }
    return "text";
}

DataType data_type_from_string(const std::string& s) {
    if (s == "number") return DataType::number;
    if (s == "year") return DataType::year;
    if (s == "date") return DataType::date;
    if (s == "text") return DataType::text;
    throw ParseError("unknown data type: " + s);
}

bool is_missing_cell(const std::string& cell, const TreeConfig& cfg) {
    std::string t = text::trim(cell);
    std::string low = text::to_lower_ascii(t);
    for (const auto& m : cfg.missing_markers) {
        if (low == text::to_lower_ascii(m)) return true;
    }
    return false;
}

DataType infer_column_type(const std::vector<std::string>& cells, const TreeConfig& cfg) {
    std::size_t years = 0, dates = 0, numbers = 0, present = 0;
    for (const auto& c : cells) {
        if (is_missing_cell(c, cfg)) continue;
        ++present;
        if (text::looks_date(c)) ++dates;
        else if (text::looks_year(c)) ++years;
        else if (text::looks_numeric(c)) ++numbers;
    }
    if (present == 0) return DataType::text;
    const double denom = static_cast<double>(present);
    const double th = cfg.type_inference_threshold;
    if (static_cast<double>(years) / denom >= th) return DataType::year;
    if (static_cast<double>(dates) / denom >= th) return DataType::date;
    if (static_cast<double>(numbers + years) / denom >= th) return DataType::number;
    return DataType::text;
}

namespace {

struct ColumnStats {
    bool candidate = false;  // fully populated, no duplicate normalized values
    DataType type = DataType::text;
};

std::vector<ColumnStats> column_stats(const CleanTable& table, const TreeConfig& cfg) {
    std::vector<ColumnStats> stats(table.headers.size());
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        std::vector<std::string> cells;
        cells.reserve(table.rows.size());
        std::set<std::string> seen;
        bool ok = true;
        for (const auto& row : table.rows) {
            const std::string& cell = row[c];
            cells.push_back(cell);
            if (is_missing_cell(cell, cfg)) {
                ok = false;
                continue;
            }
            if (!seen.insert(text::normalize(cell)).second) ok = false;
        }
        stats[c].candidate = ok && !table.rows.empty();
        stats[c].type = infer_column_type(cells, cfg);
    }
    return stats;
}

int heuristic_key_column(const std::vector<ColumnStats>& stats) {
    int first_any = -1;
    for (std::size_t c = 0; c < stats.size(); ++c) {
        if (!stats[c].candidate) continue;
        if (stats[c].type == DataType::text) return static_cast<int>(c);
        if (first_any < 0) first_any = static_cast<int>(c);
    }
    return first_any;
}

}  // namespace

int select_key_column(const CleanTable& table, const KeySelector& selector, const TreeConfig& cfg) {
    auto stats = column_stats(table, cfg);
    const int heuristic_pick = heuristic_key_column(stats);
    if (heuristic_pick < 0) {
        throw NoKeyColumnError("table '" + table.id + "' has no duplicate-free column");
    }

    if (selector.mode == KeySelector::Mode::external_llm && selector.oracle != nullptr) {
        std::ostringstream prompt;
        prompt << "Pick the column that uniquely identifies each row.\n"
               << "TITLE: " << table.title << "\nCOLUMNS: ";
        for (std::size_t c = 0; c < table.headers.size(); ++c) {
            if (c) prompt << '|';
            prompt << table.headers[c];
        }
        prompt << "\nAnswer with the column header only.";
        auto reply = selector.oracle->complete("select_key", prompt.str());
        if (reply) {
            std::string want = text::normalize(*reply);
            for (std::size_t c = 0; c < table.headers.size(); ++c) {
                if (text::normalize(table.headers[c]) == want && stats[c].candidate) {
                    return static_cast<int>(c);
                }
            }
        }
        // Bad pick or no reply: the heuristic result is always valid.
    }
    return heuristic_pick;
}

namespace {

std::vector<std::string> heuristic_root_entities(const std::string& title, const TreeConfig& cfg);

}  // namespace

std::vector<std::string> extract_root_entities(const std::string& title, const TreeConfig& cfg,
                                               OracleClient* refiner) {
    auto roots = heuristic_root_entities(title, cfg);
    if (refiner == nullptr) return roots;

    std::ostringstream prompt;
    prompt << "Extract the question entities from this table title. "
           << "Answer with entities separated by '|'.\nTITLE: " << title << "\nDRAFT: ";
    for (std::size_t i = 0; i < roots.size(); ++i) prompt << (i ? "|" : "") << roots[i];
    auto reply = refiner->complete("refine_roots", prompt.str());
    if (!reply) return roots;

    std::string norm_title = text::normalize(title);
    std::vector<std::string> refined;
    std::set<std::string> seen;
    for (auto& part : text::split(*reply, '|')) {
        std::string entity = text::trim(part);
        if (entity.empty()) continue;
        // Refinement may only select spans of the title, never invent text.
        if (!text::contains_token_bounded(norm_title, text::normalize(entity))) return roots;
        if (seen.insert(text::normalize(entity)).second) refined.push_back(entity);
    }
    return refined.empty() ? roots : refined;
}

namespace {

std::vector<std::string> heuristic_root_entities(const std::string& title, const TreeConfig& cfg) {
    // Split on every configured delimiter.
    std::vector<std::string> fragments{title};
    for (const auto& delim : cfg.title_delimiters) {
        if (delim.empty()) continue;
        std::vector<std::string> next;
        for (const auto& frag : fragments) {
            std::size_t start = 0, pos;
            while ((pos = frag.find(delim, start)) != std::string::npos) {
                next.push_back(frag.substr(start, pos - start));
                start = pos + delim.size();
            }
            next.push_back(frag.substr(start));
        }
        fragments = std::move(next);
    }

    // Strip stop phrases, longest first, from both ends of each fragment.
    std::vector<std::string> phrases = cfg.stop_phrases;
    std::sort(phrases.begin(), phrases.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::vector<std::string> roots;
    std::set<std::string> seen;
    for (auto& frag : fragments) {
        std::string s = text::trim(frag);
        bool changed = true;
        while (changed && !s.empty()) {
            changed = false;
            std::string low = text::to_lower_ascii(s);
            for (const auto& p : phrases) {
                if (p.empty()) continue;
                if (low.size() > p.size() && low.rfind(p + " ", 0) == 0) {
                    s = text::trim(s.substr(p.size()));
                    changed = true;
                    break;
                }
                if (low.size() > p.size() &&
                    low.compare(low.size() - p.size() - 1, p.size() + 1, " " + p) == 0) {
                    s = text::trim(s.substr(0, s.size() - p.size()));
                    changed = true;
                    break;
                }
            }
        }
        const bool has_signal = std::any_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isupper(c) || std::isdigit(c);
        });
        if (s.empty() || !has_signal) continue;
        if (seen.insert(text::normalize(s)).second) roots.push_back(s);
    }

    if (!cfg.constraint.empty() && seen.insert(text::normalize(cfg.constraint)).second)
        roots.push_back(cfg.constraint);
    if (roots.empty()) {
        std::string t = text::trim(title);
        if (!t.empty()) roots.push_back(t);
    }
    return roots;
}

}  // namespace

ReasoningTree build_tree(const CleanTable& table, int key_col, const TreeConfig& cfg,
                         OracleClient* root_refiner) {
    if (key_col < 0 || key_col >= static_cast<int>(table.headers.size()))
        throw Error("build_tree: key column out of range");

    ReasoningTree tree;
    tree.tree_id = table.id;
    tree.source_table_id = table.id;
    tree.title = table.title;
    tree.root_entities = extract_root_entities(table.title, cfg, root_refiner);
    tree.anchor_label = table.headers[key_col];

    // Key column type under the same inference rule as attribute columns.
    {
        std::vector<std::string> key_cells;
        for (const auto& row : table.rows) key_cells.push_back(row[key_col]);
        tree.anchor_type = {infer_column_type(key_cells, cfg), table.domain};
    }

    // One relation per non-key column that has at least one usable cell.
    std::vector<std::size_t> attr_cols;
    std::set<std::string> used_names;
    for (std::size_t c = 0; c < table.headers.size(); ++c) {
        if (static_cast<int>(c) == key_col) continue;
        bool any_present = false;
        std::vector<std::string> cells;
        for (const auto& row : table.rows) {
            cells.push_back(row[c]);
            if (!is_missing_cell(row[c], cfg)) any_present = true;
        }
        if (!any_present) continue;  // an all-missing column carries no relation

        std::string name = "has_" + text::slug(table.headers[c]);
        int suffix = 2;
        while (!used_names.insert(name).second) {
            name = "has_" + text::slug(table.headers[c]) + "_" + std::to_string(suffix++);
        }
        tree.relations.push_back({name, infer_column_type(cells, cfg), table.domain});
        attr_cols.push_back(c);
    }

    for (const auto& row : table.rows) {
        Subtree sub;
        sub.anchor = text::trim(row[key_col]);
        sub.values.reserve(attr_cols.size());
        for (std::size_t c : attr_cols) {
            const bool missing = is_missing_cell(row[c], cfg);
            sub.values.push_back({missing ? std::string{} : text::trim(row[c]), missing});
        }
        tree.subtrees.push_back(std::move(sub));
    }
    return tree;
}

std::vector<RelationSig> ReasoningTree::relation_set() const {
    std::vector<bool> present(relations.size(), false);
    for (const auto& sub : subtrees) {
        for (std::size_t i = 0; i < sub.values.size() && i < relations.size(); ++i) {
            if (!sub.values[i].missing) present[i] = true;
        }
    }
    std::vector<RelationSig> out;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        if (present[i]) out.push_back(relations[i]);
    }
    return out;
}

int ReasoningTree::relation_index(const std::string& name) const {
    for (std::size_t i = 0; i < relations.size(); ++i) {
        if (relations[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::optional<std::string> ReasoningTree::attribute_value(const Subtree& sub,
                                                          const std::string& name) const {
    int idx = relation_index(name);
    if (idx < 0 || idx >= static_cast<int>(sub.values.size())) return std::nullopt;
    if (sub.values[idx].missing) return std::nullopt;
    return sub.values[idx].value;
}

namespace {

constexpr const char* kMissingMarker = "⊥";  // ⊥

ordered_json tree_to_json(const ReasoningTree& t) {
    ordered_json rec;
    rec["tree_id"] = t.tree_id;
    rec["title"] = t.title;
    rec["root_entities"] = t.root_entities;
    rec["anchor_label"] = t.anchor_label;
    rec["anchor_type"] = {{"data_type", to_string(t.anchor_type.data_type)},
                          {"domain", t.anchor_type.domain}};
    ordered_json rels = ordered_json::array();
    for (const auto& r : t.relations) {
        rels.push_back({{"name", r.name},
                        {"data_type", to_string(r.data_type)},
                        {"domain", r.domain}});
    }
    rec["relations"] = rels;
    ordered_json subs = ordered_json::array();
    for (const auto& s : t.subtrees) {
        ordered_json attrs = ordered_json::array();
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            attrs.push_back({{"relation", t.relations[i].name},
                             {"value", s.values[i].missing ? kMissingMarker : s.values[i].value}});
        }
        subs.push_back({{"anchor", s.anchor}, {"attributes", attrs}});
    }
    rec["subtrees"] = subs;
    rec["source_table_id"] = t.source_table_id;
    return rec;
}

ReasoningTree tree_from_json(const ordered_json& rec) {
    ReasoningTree t;
    t.tree_id = rec.at("tree_id").get<std::string>();
    t.title = rec.value("title", std::string{});
    for (const auto& r : rec.at("root_entities")) t.root_entities.push_back(r.get<std::string>());
    t.anchor_label = rec.value("anchor_label", std::string{});
    if (rec.contains("anchor_type")) {
        t.anchor_type.data_type =
            data_type_from_string(rec["anchor_type"].value("data_type", "text"));
        t.anchor_type.domain = rec["anchor_type"].value("domain", "general");
    }
    for (const auto& r : rec.at("relations")) {
        t.relations.push_back({r.at("name").get<std::string>(),
                               data_type_from_string(r.value("data_type", "text")),
                               r.value("domain", "general")});
    }
    for (const auto& s : rec.at("subtrees")) {
        Subtree sub;
        sub.anchor = s.at("anchor").get<std::string>();
        for (const auto& a : s.at("attributes")) {
            std::string v = a.at("value").get<std::string>();
            const bool missing = v == kMissingMarker;
            sub.values.push_back({missing ? std::string{} : v, missing});
        }
        if (sub.values.size() != t.relations.size())
            throw ParseError("subtree attribute count mismatch in tree " + t.tree_id);
        t.subtrees.push_back(std::move(sub));
    }
    t.source_table_id = rec.value("source_table_id", t.tree_id);
    return t;
}

}  // namespace

void save_trees(const std::filesystem::path& path, const std::vector<ReasoningTree>& trees) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write tree corpus: " + path.string());
    for (const auto& t : trees) out << tree_to_json(t).dump() << '\n';
}

std::vector<ReasoningTree> load_trees(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tree corpus: " + path.string());
    std::vector<ReasoningTree> trees;
    std::string line;
    long index = 0;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        try {
            trees.push_back(tree_from_json(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad tree record: ") + e.what(), index);
        }
        ++index;
    }
    return trees;
}

}  // namespace seekgen
