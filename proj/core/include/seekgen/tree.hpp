#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seekgen/corpus.hpp"

namespace seekgen {

class OracleClient;

enum class DataType { text, number, year, date };

std::string to_string(DataType t);
DataType data_type_from_string(const std::string& s);

/// Identity of a second-to-third-layer relation. Two relations are the same
/// edge label only when name, data type, and domain all agree.
struct RelationSig {
    std::string name;  // "has_" + slugged header
    DataType data_type = DataType::text;
    std::string domain;

    auto operator<=>(const RelationSig&) const = default;
};

/// Type signature of a tree's second-layer entities; matching is relaxed to
/// (data type, domain) so differently-labelled key columns can still unite.
struct AnchorType {
    DataType data_type = DataType::text;
    std::string domain;

    auto operator<=>(const AnchorType&) const = default;
};

struct Attribute {
    std::string value;
    bool missing = false;
};

/// One second-layer entity plus its attribute cells, aligned index-for-index
/// with ReasoningTree::relations. Missing cells keep their slot so every
/// subtree shares the tree's relation layout.
struct Subtree {
    std::string anchor;
    std::vector<Attribute> values;
};

struct ReasoningTree {
    std::string tree_id;
    std::string title;  // raw title, kept so renderers can re-derive roots
    std::vector<std::string> root_entities;
    std::string anchor_label;  // key column header
    AnchorType anchor_type;
    std::vector<RelationSig> relations;  // column order
    std::vector<Subtree> subtrees;
    std::string source_table_id;

    /// Relations present in at least one subtree; after construction this is
    /// simply `relations` because all-missing columns are dropped.
    std::vector<RelationSig> relation_set() const;

    int relation_index(const std::string& name) const;  // -1 if absent

    /// Attribute value of `sub` under relation `name`, if present and non-missing.
    std::optional<std::string> attribute_value(const Subtree& sub, const std::string& name) const;
};

struct KeySelector {
    enum class Mode { heuristic, external_llm };
    Mode mode = Mode::heuristic;
    OracleClient* oracle = nullptr;  // required for external_llm
};

struct TreeConfig {
    std::vector<std::string> title_delimiters = {",", ";", ":", "(", ")"};
    std::vector<std::string> stop_phrases = {"list of", "winners of", "recipients of",
                                             "the",     "a",          "an",
                                             "year",    "years",      "in",
                                             "of",      "by",         "between",
                                             "from"};
    std::vector<std::string> missing_markers = {"", "-", "–", "—", "n/a", "na", "?", "⊥"};
    double type_inference_threshold = 0.9;
    std::string constraint;  // optional extra root entity
};

/// Column data type under the >=threshold consistency rule; columns that do
/// not reach the threshold for any specific type fall back to text.
DataType infer_column_type(const std::vector<std::string>& cells, const TreeConfig& cfg);

bool is_missing_cell(const std::string& cell, const TreeConfig& cfg);

/// Index of the key column. Heuristic: duplicate-free and fully populated,
/// preferring text-typed columns, leftmost on ties. external_llm validates
/// the oracle's pick against the same rule and falls back to the heuristic.
/// Throws NoKeyColumnError when no column qualifies.
int select_key_column(const CleanTable& table, const KeySelector& selector, const TreeConfig& cfg);

/// Question entities from a table title: split on delimiters, strip stop
/// phrases, keep fragments carrying a capital or digit. When a refiner
/// oracle is given, its rewrite is accepted only if every proposed entity
/// still occurs in the title; anything else falls back to the heuristic.
std::vector<std::string> extract_root_entities(const std::string& title, const TreeConfig& cfg,
                                               OracleClient* refiner = nullptr);

ReasoningTree build_tree(const CleanTable& table, int key_col, const TreeConfig& cfg,
                         OracleClient* root_refiner = nullptr);

void save_trees(const std::filesystem::path& path, const std::vector<ReasoningTree>& trees);
std::vector<ReasoningTree> load_trees(const std::filesystem::path& path);

}  // namespace seekgen
