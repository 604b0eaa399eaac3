#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seekgen/biclique.hpp"
#include "seekgen/tree.hpp"

namespace seekgen {

class OracleClient;

enum class TaskVariant { basic, task_union, reverse_union };
enum class EntityLayer { second, third };
enum class EntityCategory { person_name, date, year, organization, location, free_text };
enum class SourceTag { synthesized, legacy };

std::string to_string(TaskVariant v);
TaskVariant task_variant_from_string(const std::string& s);
std::string to_string(EntityLayer l);
std::string to_string(EntityCategory c);
EntityCategory entity_category_from_string(const std::string& s);
std::string to_string(SourceTag t);
SourceTag source_tag_from_string(const std::string& s);

/// One member of the target set R. Identity for set semantics is
/// (normalized value, layer, normalized parent anchor); category is derived.
struct TargetEntity {
    std::string value;
    EntityLayer layer = EntityLayer::second;
    EntityCategory category = EntityCategory::free_text;
    std::string parent_anchor;  // third-layer entities only

    std::string identity_key() const;
};

struct FuzzClue {
    std::string clue_text;
    std::string relation;  // RelationSig name
    std::string value;
};

/// Machine-checkable description of R, evaluable against the tree corpus
/// alone. For reverse-union tasks the anchor is never stored: it is
/// re-resolved from the clues every time the predicate is evaluated.
struct TaskPredicate {
    TaskVariant variant = TaskVariant::basic;
    std::vector<std::string> tree_ids;             // provenance trees, sorted
    std::vector<std::string> requested_relations;  // relation names included in R
    std::vector<FuzzClue> clues;                   // reverse_union only
    std::string pivot_relation;                    // reverse_union only
};

struct TaskSpec {
    std::string task_id;
    TaskVariant variant = TaskVariant::basic;
    std::string question_text;
    std::vector<std::string> question_entities;
    std::vector<TargetEntity> target_entities;  // deduplicated, sorted
    TaskPredicate predicate;
    std::string group_id;  // provenance group for union variants
    SourceTag source_tag = SourceTag::synthesized;
};

/// Indexed view over a tree corpus.
class TreeCorpus {
public:
    TreeCorpus() = default;
    explicit TreeCorpus(std::vector<ReasoningTree> trees);

    const ReasoningTree* find(const std::string& tree_id) const;
    const std::vector<ReasoningTree>& trees() const { return trees_; }

private:
    std::vector<ReasoningTree> trees_;
    std::map<std::string, std::size_t> by_id_;
};

struct SynthConfig {
    // Relations basic tasks ask for; empty means all of the tree's relations.
    std::vector<std::string> basic_relations;
    uint64_t seed = 0;
    OracleClient* renderer = nullptr;  // optional question polish
};

/// Category of an entity value given the column/relation it came from.
EntityCategory categorize_entity(const std::string& value, const std::string& label,
                                 DataType data_type);

// Per-variant synthesis. Union variants throw NoIntersectionError /
// CluesAmbiguousError for groups that cannot yield a well-formed task;
// callers count those as skips.
TaskSpec synth_basic(const ReasoningTree& tree, const SynthConfig& cfg);
TaskSpec synth_union(const UnionGroup& group, const TreeCorpus& corpus, const SynthConfig& cfg);
TaskSpec synth_reverse_union(const UnionGroup& group, const TreeCorpus& corpus,
                             const SynthConfig& cfg);

/// The predicate's full extension over the corpus. Total: an unresolvable
/// reverse-union clue set yields an empty extension.
std::vector<TargetEntity> evaluate_predicate(const TaskPredicate& predicate,
                                             const TreeCorpus& corpus,
                                             std::string* note = nullptr);

struct VerificationReport {
    bool passed = false;
    std::vector<TargetEntity> missing;  // in the predicate extension, not in R
    std::vector<TargetEntity> extra;    // in R, not in the extension
    std::string note;
};

/// Re-derives R from scratch and diffs it against the task's target set.
VerificationReport verify_task(const TaskSpec& task, const TreeCorpus& corpus);

struct SynthesisReport {
    struct Skip {
        std::string id;  // tree or group id
        std::string variant;
        std::string reason;
    };
    std::map<std::string, std::size_t> synthesized;  // variant -> count
    std::vector<Skip> skipped;
};

/// Runs the configured variants over a corpus and its union groups.
std::pair<std::vector<TaskSpec>, SynthesisReport> synthesize_all(
    const TreeCorpus& corpus, const std::vector<UnionGroup>& groups,
    const std::vector<TaskVariant>& variants, const SynthConfig& cfg);

void save_tasks(const std::filesystem::path& path, const std::vector<TaskSpec>& tasks);
std::vector<TaskSpec> load_tasks(const std::filesystem::path& path);

}  // namespace seekgen
