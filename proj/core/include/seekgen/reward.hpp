#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seekgen/matcher.hpp"
#include "seekgen/task.hpp"

namespace seekgen {

class OracleClient;

enum class ScoreModality { exact, near_exact, numeric_tolerance, llm_judge };

std::string to_string(ScoreModality m);

/// Per-category semantic scorer s(e_o, e_r) in [0,1]. Identical entities
/// always score 1 regardless of modality.
class EntityScorer {
public:
    EntityMatcher matcher;
    double near_exact_threshold = 0.15;  // normalized edit distance
    double numeric_abs_tol = 0.0;
    double numeric_rel_tol = 0.0;
    OracleClient* judge = nullptr;
    bool fallback_to_near_exact = true;  // when the judge client fails

    EntityScorer();

    /// llm_judge may only be assigned to free_text (judging every entity of
    /// every category would be far too expensive); throws ConfigError.
    void set_modality(EntityCategory category, ScoreModality modality);
    ScoreModality modality(EntityCategory category) const;

    double score(const std::string& retrieved, const TargetEntity& target) const;

    std::size_t judge_fallbacks() const { return judge_fallbacks_; }

private:
    std::map<EntityCategory, ScoreModality> modality_;
    mutable std::size_t judge_fallbacks_ = 0;
};

/// (P, R_c): soft precision over the retrieved set and soft recall over the
/// target set, each the mean of per-entity best-match scores.
/// Empty R throws EmptyTargetsError; empty O yields (0, 0) by convention.
std::pair<double, double> soft_precision_recall(const std::vector<std::string>& obtained,
                                                const std::vector<TargetEntity>& targets,
                                                const EntityScorer& scorer);

/// Weighted F-score (1+w^2)·P·R_c / (w^2·P + R_c); 0 when both inputs are 0.
double f_omega_reward(double precision, double recall, double omega);

struct RewardConfig {
    double omega = 1.0;
    double eps_std = 1e-4;
    double eps_clip = 0.2;
    double legacy_threshold = 0.5;  // judged-match cut for binary legacy reward
};

struct TrajectoryOutcome {
    std::vector<std::string> obtained;  // retrieved entity strings (O)
    std::optional<std::string> final_answer;
};

struct RewardResult {
    double reward = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::string mode;  // "f_omega" or "legacy"
    std::string note;
};

/// Reward dispatch on the task's origin: synthesized tasks get the soft
/// F-score; legacy tasks keep a binary judged-match reward.
RewardResult hybrid_reward(const TrajectoryOutcome& outcome, const TaskSpec& task,
                           const EntityScorer& scorer, const RewardConfig& cfg);

/// Group-standardized advantages (R_i - mean) / (population std + eps_std),
/// one per trajectory. Throws for groups smaller than 2.
std::vector<double> grpo_advantages(const std::vector<double>& rewards, double eps_std);

struct StepTerm {
    double ratio;      // importance sampling ratio, > 0
    double advantage;  // broadcast per-trajectory advantage
};

/// Clipped-surrogate loss over one group:
///   -(1/k) Σ_i (1/|H_i|) Σ_t min(r·A, clip(r, 1-ε, 1+ε)·A)
double grpo_surrogate_loss(const std::vector<std::vector<StepTerm>>& trajectories,
                           double eps_clip);

}  // namespace seekgen
