#include "seekgen/reward.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seekgen/errors.hpp"
#include "seekgen/oracle.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

std::string to_string(ScoreModality m) {
    switch (m) {
        case ScoreModality::exact: return "exact";
        case ScoreModality::near_exact: return "near_exact";
        case ScoreModality::numeric_tolerance: return "numeric_tolerance";
        case ScoreModality::llm_judge: return "llm_judge";
    }
    return "exact";
}

EntityScorer::EntityScorer() {
    modality_[EntityCategory::person_name] = ScoreModality::near_exact;
    modality_[EntityCategory::date] = ScoreModality::exact;
    modality_[EntityCategory::year] = ScoreModality::exact;
    modality_[EntityCategory::organization] = ScoreModality::near_exact;
    modality_[EntityCategory::location] = ScoreModality::near_exact;
    modality_[EntityCategory::free_text] = ScoreModality::near_exact;
}

void EntityScorer::set_modality(EntityCategory category, ScoreModality modality) {
    if (modality == ScoreModality::llm_judge && category != EntityCategory::free_text) {
        throw ConfigError("llm_judge modality is reserved for the free_text category");
    }
    modality_[category] = modality;
}

ScoreModality EntityScorer::modality(EntityCategory category) const {
    auto it = modality_.find(category);
    return it == modality_.end() ? ScoreModality::exact : it->second;
}

namespace {

double near_exact_score(const std::string& a, const std::string& b, const EntityScorer& s) {
    std::string ca = s.matcher.canonical(a);
    std::string cb = s.matcher.canonical(b);
    if (ca == cb) return 1.0;
    return text::normalized_edit_distance(ca, cb) <= s.near_exact_threshold ? 1.0 : 0.0;
}

}  // namespace

double EntityScorer::score(const std::string& retrieved, const TargetEntity& target) const {
    // Reflexivity holds for every modality, judge included.
    if (matcher.equivalent(retrieved, target.value)) return 1.0;

    switch (modality(target.category)) {
        case ScoreModality::exact:
            return 0.0;
        case ScoreModality::near_exact:
            return near_exact_score(retrieved, target.value, *this);
        case ScoreModality::numeric_tolerance: {
            double a, b;
            if (text::parse_number(retrieved, a) && text::parse_number(target.value, b)) {
                const double tol = numeric_abs_tol + numeric_rel_tol * std::abs(b);
                return std::abs(a - b) <= tol ? 1.0 : 0.0;
            }
            return 0.0;
        }
        case ScoreModality::llm_judge: {
            if (judge != nullptr) {
                std::ostringstream prompt;
                prompt << "Do these two mentions refer to the same entity?\n"
                       << "A: " << retrieved << "\nB: " << target.value
                       << "\nAnswer with a number between 0 and 1.";
                auto reply = judge->complete("judge", prompt.str());
                if (reply) {
                    try {
                        double v = std::stod(*reply);
                        return std::clamp(v, 0.0, 1.0);
                    } catch (const std::exception&) {
                        // fall through to the fallback
                    }
                }
            }
            ++judge_fallbacks_;
            if (fallback_to_near_exact) return near_exact_score(retrieved, target.value, *this);
            return 0.0;
        }
    }
    return 0.0;
}

std::pair<double, double> soft_precision_recall(const std::vector<std::string>& obtained,
                                                const std::vector<TargetEntity>& targets,
                                                const EntityScorer& scorer) {
    if (targets.empty())
        throw EmptyTargetsError("soft precision/recall need a non-empty target set");
    if (obtained.empty()) return {0.0, 0.0};

    double recall_sum = 0.0;
    for (const auto& target : targets) {
        double best = 0.0;
        for (const auto& o : obtained) best = std::max(best, scorer.score(o, target));
        recall_sum += best;
    }
    double precision_sum = 0.0;
    for (const auto& o : obtained) {
        double best = 0.0;
        for (const auto& target : targets) best = std::max(best, scorer.score(o, target));
        precision_sum += best;
    }
    return {precision_sum / static_cast<double>(obtained.size()),
            recall_sum / static_cast<double>(targets.size())};
}

double f_omega_reward(double precision, double recall, double omega) {
    if (omega <= 0.0) throw ConfigError("omega must be > 0");
    const double denom = omega * omega * precision + recall;
    if (denom == 0.0) return 0.0;  // continuous extension at P = R_c = 0
    return (1.0 + omega * omega) * precision * recall / denom;
}

RewardResult hybrid_reward(const TrajectoryOutcome& outcome, const TaskSpec& task,
                           const EntityScorer& scorer, const RewardConfig& cfg) {
    RewardResult result;
    if (task.source_tag == SourceTag::synthesized) {
        result.mode = "f_omega";
        if (task.target_entities.empty())
            throw EmptyTargetsError("task " + task.task_id + " has no target entities");
        auto [p, rc] = soft_precision_recall(outcome.obtained, task.target_entities, scorer);
        result.precision = p;
        result.recall = rc;
        result.reward = f_omega_reward(p, rc, cfg.omega);
        return result;
    }

    // Legacy tasks keep their binary contract: judge the final answer against
    // the single gold answer and threshold.
    result.mode = "legacy";
    if (task.target_entities.empty())
        throw EmptyTargetsError("legacy task " + task.task_id + " has no gold answer");
    if (!outcome.final_answer || outcome.final_answer->empty()) {
        result.reward = 0.0;
        result.note = "missing final_answer";
        return result;
    }
    double s = scorer.score(*outcome.final_answer, task.target_entities.front());
    result.reward = s >= cfg.legacy_threshold ? 1.0 : 0.0;
    return result;
}

std::vector<double> grpo_advantages(const std::vector<double>& rewards, double eps_std) {
    if (rewards.size() < 2)
        throw Error("advantage standardization needs a group of at least 2 trajectories");
    // A constant group standardizes to all-zero; checking exactly avoids
    // amplifying the mean's rounding error by a denominator of the same size.
    if (std::all_of(rewards.begin(), rewards.end(),
                    [&](double r) { return r == rewards.front(); })) {
        return std::vector<double>(rewards.size(), 0.0);
    }
    const double k = static_cast<double>(rewards.size());
    double mean = 0.0;
    for (double r : rewards) mean += r;
    mean /= k;
    double var = 0.0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    var /= k;  // population std keeps the unit-variance identity exact
    const double denom = std::sqrt(var) + eps_std;
    std::vector<double> advantages;
    advantages.reserve(rewards.size());
    for (double r : rewards) {
        advantages.push_back(denom == 0.0 ? 0.0 : (r - mean) / denom);
    }
    return advantages;
}

double grpo_surrogate_loss(const std::vector<std::vector<StepTerm>>& trajectories,
                           double eps_clip) {
    if (trajectories.empty()) throw Error("surrogate loss needs at least one trajectory");
    if (eps_clip <= 0.0 || eps_clip >= 1.0) throw ConfigError("eps_clip must be in (0,1)");
    double sum = 0.0;
    for (const auto& steps : trajectories) {
        if (steps.empty()) throw EmptyTrajectoryError("surrogate loss over an empty trajectory");
        double traj_sum = 0.0;
        for (const auto& st : steps) {
            if (!(st.ratio > 0.0)) throw Error("importance sampling ratio must be positive");
            const double clipped = std::clamp(st.ratio, 1.0 - eps_clip, 1.0 + eps_clip);
            traj_sum += std::min(st.ratio * st.advantage, clipped * st.advantage);
        }
        sum += traj_sum / static_cast<double>(steps.size());
    }
    return -sum / static_cast<double>(trajectories.size());
}

}  // namespace seekgen
