#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "seekgen/matcher.hpp"
#include "seekgen/task.hpp"
#include "seekgen/trajectory.hpp"

namespace seekgen {

struct FilterConfig {
    double alpha = 0.3;  // coverage threshold: keep iff ISR > alpha
    double beta = 0.1;   // efficiency threshold: keep iff ISE > beta
    // Search-step discoveries count toward ISR; visit-only credit stays a
    // separate diagnostic either way.
    bool search_counts_for_isr = true;
};

/// Which targets each step surfaced, plus the cumulative discovered set.
struct ExtractionResult {
    std::vector<std::vector<std::size_t>> per_step;  // step -> target indices (sorted)
    std::vector<std::size_t> discovered;             // union over steps, sorted
    std::vector<std::size_t> visit_discovered;       // seen in at least one visit step
    std::map<std::size_t, int> first_step;           // target -> 1-based step of first discovery
    std::map<std::size_t, Action::Kind> first_source;
};

ExtractionResult extract_entities(const Trajectory& traj, const std::vector<TargetEntity>& targets,
                                  const EntityMatcher& matcher);

/// |R ∩ O| / |R| over matcher equivalence. Throws EmptyTargetsError on empty R.
double compute_isr(const std::vector<std::string>& obtained,
                   const std::vector<std::string>& targets, const EntityMatcher& matcher);

/// ISR for a scored trajectory; honors cfg.search_counts_for_isr.
double compute_isr(const ExtractionResult& extraction, std::size_t target_count,
                   const FilterConfig& cfg);

struct IseResult {
    double ise = 0.0;                   // |R| / T
    std::size_t visit_discovered = 0;   // diagnostic: targets credited to visit steps
    double visit_credit_rate = 0.0;     // visit_discovered / T
};

/// n/T with n = |R| and T = the full step count. Throws EmptyTrajectoryError
/// when the trajectory has no steps, EmptyTargetsError when R is empty.
IseResult compute_ise(const Trajectory& traj, std::size_t target_count,
                      const ExtractionResult& extraction);

/// Fraction of steps whose observation surfaces at least one new target.
double valid_action_rate(const Trajectory& traj, const ExtractionResult& extraction);

struct TrajectoryScore {
    std::string task_id;
    std::string trajectory_id;
    double isr = 0.0;
    double ise = 0.0;
    double valid_action_rate = 0.0;
    std::size_t visit_discovered = 0;
    std::map<std::string, int> first_discovery_steps;  // target value -> 1-based step
};

TrajectoryScore score_trajectory(const Trajectory& traj, const TaskSpec& task,
                                 const EntityMatcher& matcher, const FilterConfig& cfg);

struct FilterOutcome {
    struct Rejection {
        std::string task_id;
        std::string trajectory_id;
        double isr = 0.0;
        double ise = 0.0;
        std::vector<std::string> failed;  // "isr" and/or "ise"
    };
    std::vector<Trajectory> kept;
    std::vector<Rejection> rejected;
};

/// Keeps trajectories with ISR > alpha and ISE > beta, both strict.
/// Throws on a trajectory whose task_id is not in `tasks`.
FilterOutcome filter_trajectories(const std::vector<Trajectory>& trajs,
                                  const std::map<std::string, TaskSpec>& tasks,
                                  const FilterConfig& cfg, const EntityMatcher& matcher);

void save_scores(const std::filesystem::path& path, const std::vector<TrajectoryScore>& scores);

}  // namespace seekgen
