#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace seekgen {

struct SearchAction {
    std::vector<std::string> queries;  // at least one
    std::optional<int> filter_year;
};

struct VisitAction {
    std::vector<std::string> urls;  // at least one
    std::string goal;
};

struct Action {
    enum class Kind { search, visit };

    std::variant<SearchAction, VisitAction> body;

    Kind kind() const {
        return std::holds_alternative<SearchAction>(body) ? Kind::search : Kind::visit;
    }
    static Action search(std::vector<std::string> queries, std::optional<int> year = {}) {
        return {SearchAction{std::move(queries), year}};
    }
    static Action visit(std::vector<std::string> urls, std::string goal) {
        return {VisitAction{std::move(urls), std::move(goal)}};
    }
};

struct StepRecord {
    std::string thought;
    Action action;
    std::string observation;
};

struct Trajectory {
    std::string task_id;
    std::string trajectory_id;
    std::vector<StepRecord> steps;
    std::optional<std::string> final_answer;
};

/// One JSON record per line. Records without a trajectory_id get "t<line>".
std::vector<Trajectory> load_trajectories(const std::filesystem::path& path);
void save_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajs);

}  // namespace seekgen
