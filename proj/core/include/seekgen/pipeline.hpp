#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seekgen/config.hpp"
#include "seekgen/matcher.hpp"
#include "seekgen/oracle.hpp"
#include "seekgen/task.hpp"

namespace seekgen {

enum class Stage { clean, trees, mine, synth, score, filter, reward };

std::string to_string(Stage s);
Stage stage_from_string(const std::string& s);
const std::vector<Stage>& all_stages();

/// Command-line overrides layered on top of the config file.
struct PipelineOptions {
    std::optional<uint64_t> seed;
    std::optional<std::filesystem::path> workdir;
    bool force = false;
    std::optional<int> k_min;
    std::optional<int> m_min;
    std::optional<bool> semantic_check;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::vector<std::string> variants;  // empty: use config
};

/// Sequences the stages: clean -> trees -> mine -> synth -> score -> filter
/// -> reward. Each stage reads its upstream artifact from the work
/// directory, writes its outputs plus a machine-readable report, and is
/// skipped when its outputs already exist (resume) unless forced.
class Pipeline {
public:
    Pipeline(ConfigFile config, PipelineOptions options);

    /// Runs the selected stages in dependency order; stages not selected are
    /// untouched. Throws on the first stage error.
    void run(const std::vector<Stage>& selected, std::ostream& log);

    /// Stages listed in the config (`stages = ...`), default all.
    std::vector<Stage> configured_stages() const;

    std::filesystem::path artifact(const std::string& name) const;
    const std::filesystem::path& workdir() const { return workdir_; }

private:
    void run_clean(std::ostream& log);
    void run_trees(std::ostream& log);
    void run_mine(std::ostream& log);
    void run_synth(std::ostream& log);
    void run_score(std::ostream& log);
    void run_filter(std::ostream& log);
    void run_reward(std::ostream& log);

    bool can_skip(Stage stage, const std::vector<std::filesystem::path>& outputs,
                  std::ostream& log) const;
    void require_input(Stage stage, const std::filesystem::path& file,
                       const std::string& producer) const;
    void write_report(const std::string& stage, const std::string& body_json) const;

    uint64_t require_seed() const;
    EntityMatcher load_matcher() const;

    ConfigFile config_;
    PipelineOptions options_;
    std::filesystem::path workdir_;
    std::unique_ptr<OracleClient> oracle_;
};

}  // namespace seekgen
