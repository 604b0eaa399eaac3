#include "seekgen/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

ExtractionResult extract_entities(const Trajectory& traj, const std::vector<TargetEntity>& targets,
                                  const EntityMatcher& matcher) {
    ExtractionResult out;
    out.per_step.reserve(traj.steps.size());

    // Distinct targets can share a surface (same value under two parents);
    // they are discovered together, so we scan each distinct surface once.
    std::vector<std::string> surfaces;
    std::vector<std::vector<std::size_t>> surface_targets;
    {
        std::map<std::string, std::size_t> index_of;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            std::string key = matcher.canonical(targets[i].value);
            auto [it, fresh] = index_of.emplace(key, surfaces.size());
            if (fresh) {
                surfaces.push_back(targets[i].value);
                surface_targets.emplace_back();
            }
            surface_targets[it->second].push_back(i);
        }
    }

    std::set<std::size_t> seen;
    std::set<std::size_t> visit_seen;
    for (std::size_t step = 0; step < traj.steps.size(); ++step) {
        std::string norm_obs = text::normalize(traj.steps[step].observation);
        std::vector<std::size_t> found;
        for (std::size_t s = 0; s < surfaces.size(); ++s) {
            if (!matcher.occurs_in_normalized(surfaces[s], norm_obs)) continue;
            for (std::size_t target : surface_targets[s]) {
                found.push_back(target);
                if (seen.insert(target).second) {
                    out.first_step[target] = static_cast<int>(step) + 1;
                    out.first_source[target] = traj.steps[step].action.kind();
                }
                if (traj.steps[step].action.kind() == Action::Kind::visit)
                    visit_seen.insert(target);
            }
        }
        std::sort(found.begin(), found.end());
        out.per_step.push_back(std::move(found));
    }
    out.discovered.assign(seen.begin(), seen.end());
    out.visit_discovered.assign(visit_seen.begin(), visit_seen.end());
    return out;
}

double compute_isr(const std::vector<std::string>& obtained,
                   const std::vector<std::string>& targets, const EntityMatcher& matcher) {
    if (targets.empty()) throw EmptyTargetsError("ISR is undefined for an empty target set");
    std::set<std::string> canon_obtained;
    for (const auto& o : obtained) canon_obtained.insert(matcher.canonical(o));
    std::set<std::string> counted;
    std::size_t hit = 0;
    for (const auto& t : targets) {
        std::string c = matcher.canonical(t);
        if (!counted.insert(c).second) continue;  // duplicate target surface
        if (canon_obtained.count(c)) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(counted.size());
}

double compute_isr(const ExtractionResult& extraction, std::size_t target_count,
                   const FilterConfig& cfg) {
    if (target_count == 0) throw EmptyTargetsError("ISR is undefined for an empty target set");
    const auto& credited =
        cfg.search_counts_for_isr ? extraction.discovered : extraction.visit_discovered;
    return static_cast<double>(credited.size()) / static_cast<double>(target_count);
}

IseResult compute_ise(const Trajectory& traj, std::size_t target_count,
                      const ExtractionResult& extraction) {
    if (traj.steps.empty())
        throw EmptyTrajectoryError("ISE is undefined for a trajectory with no steps");
    if (target_count == 0) throw EmptyTargetsError("ISE is undefined for an empty target set");
    IseResult out;
    const double steps = static_cast<double>(traj.steps.size());
    out.ise = static_cast<double>(target_count) / steps;
    out.visit_discovered = extraction.visit_discovered.size();
    out.visit_credit_rate = static_cast<double>(out.visit_discovered) / steps;
    return out;
}

double valid_action_rate(const Trajectory& traj, const ExtractionResult& extraction) {
    if (traj.steps.empty())
        throw EmptyTrajectoryError("valid-action rate is undefined for an empty trajectory");
    std::size_t valid = 0;
    std::vector<bool> step_valid(traj.steps.size(), false);
    for (const auto& [target, step] : extraction.first_step) step_valid[step - 1] = true;
    for (bool v : step_valid) {
        if (v) ++valid;
    }
    return static_cast<double>(valid) / static_cast<double>(traj.steps.size());
}

TrajectoryScore score_trajectory(const Trajectory& traj, const TaskSpec& task,
                                 const EntityMatcher& matcher, const FilterConfig& cfg) {
    auto extraction = extract_entities(traj, task.target_entities, matcher);
    TrajectoryScore score;
    score.task_id = traj.task_id;
    score.trajectory_id = traj.trajectory_id;
    score.isr = compute_isr(extraction, task.target_entities.size(), cfg);
    auto ise = compute_ise(traj, task.target_entities.size(), extraction);
    score.ise = ise.ise;
    score.visit_discovered = ise.visit_discovered;
    score.valid_action_rate = valid_action_rate(traj, extraction);
    for (const auto& [target, step] : extraction.first_step) {
        const std::string& value = task.target_entities[target].value;
        auto it = score.first_discovery_steps.find(value);
        if (it == score.first_discovery_steps.end() || step < it->second)
            score.first_discovery_steps[value] = step;
    }
    return score;
}

FilterOutcome filter_trajectories(const std::vector<Trajectory>& trajs,
                                  const std::map<std::string, TaskSpec>& tasks,
                                  const FilterConfig& cfg, const EntityMatcher& matcher) {
    FilterOutcome out;
    for (const auto& traj : trajs) {
        auto it = tasks.find(traj.task_id);
        if (it == tasks.end())
            throw Error("trajectory " + traj.trajectory_id + " references unknown task '" +
                        traj.task_id + "'");
        auto score = score_trajectory(traj, it->second, matcher, cfg);
        // Both criteria are strict: a trajectory sitting exactly on a
        // threshold is rejected.
        std::vector<std::string> failed;
        if (!(score.isr > cfg.alpha)) failed.push_back("isr");
        if (!(score.ise > cfg.beta)) failed.push_back("ise");
        if (failed.empty()) {
            out.kept.push_back(traj);
        } else {
            out.rejected.push_back(
                {traj.task_id, traj.trajectory_id, score.isr, score.ise, std::move(failed)});
        }
    }
    return out;
}

void save_scores(const std::filesystem::path& path, const std::vector<TrajectoryScore>& scores) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write metrics file: " + path.string());
    for (const auto& s : scores) {
        ordered_json rec;
        rec["task_id"] = s.task_id;
        rec["trajectory_id"] = s.trajectory_id;
        rec["isr"] = s.isr;
        rec["ise"] = s.ise;
        rec["valid_action_rate"] = s.valid_action_rate;
        rec["visit_discovered"] = s.visit_discovered;
        ordered_json first;
        for (const auto& [value, step] : s.first_discovery_steps) first[value] = step;
        rec["first_discovery_steps"] = first;
        out << rec.dump() << '\n';
    }
}

}  // namespace seekgen
