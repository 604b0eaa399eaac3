#include "seekgen/trajectory.hpp"

#include <fstream>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

namespace {

Action action_from_json(const ordered_json& a, long index) {
    const std::string kind = a.value("kind", "");
    if (kind == "search") {
        SearchAction s;
        if (!a.contains("queries") || !a["queries"].is_array() || a["queries"].empty())
            throw ParseError("search action needs at least one query", index);
        for (const auto& q : a["queries"]) s.queries.push_back(q.get<std::string>());
        if (a.contains("filter_year") && a["filter_year"].is_number_integer())
            s.filter_year = a["filter_year"].get<int>();
        return {std::move(s)};
    }
    if (kind == "visit") {
        VisitAction v;
        if (!a.contains("urls") || !a["urls"].is_array() || a["urls"].empty())
            throw ParseError("visit action needs at least one url", index);
        for (const auto& u : a["urls"]) v.urls.push_back(u.get<std::string>());
        v.goal = a.value("goal", std::string{});
        return {std::move(v)};
    }
    throw ParseError("action kind must be 'search' or 'visit', got '" + kind + "'", index);
}

ordered_json action_to_json(const Action& a) {
    ordered_json out;
    if (a.kind() == Action::Kind::search) {
        const auto& s = std::get<SearchAction>(a.body);
        out["kind"] = "search";
        out["queries"] = s.queries;
        if (s.filter_year) out["filter_year"] = *s.filter_year;
    } else {
        const auto& v = std::get<VisitAction>(a.body);
        out["kind"] = "visit";
        out["urls"] = v.urls;
        out["goal"] = v.goal;
    }
    return out;
}

}  // namespace

std::vector<Trajectory> load_trajectories(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trajectory file: " + path.string());
    std::vector<Trajectory> out;
    std::string line;
    long index = 0;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        ordered_json rec;
        try {
            rec = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad trajectory record: ") + e.what(), index);
        }
        Trajectory t;
        t.task_id = rec.at("task_id").get<std::string>();
        t.trajectory_id = rec.value("trajectory_id", "t" + std::to_string(index));
        if (rec.contains("steps")) {
            for (const auto& s : rec["steps"]) {
                StepRecord step{s.value("thought", std::string{}),
                                action_from_json(s.at("action"), index),
                                s.value("observation", std::string{})};
                t.steps.push_back(std::move(step));
            }
        }
        if (rec.contains("final_answer") && rec["final_answer"].is_string())
            t.final_answer = rec["final_answer"].get<std::string>();
        out.push_back(std::move(t));
        ++index;
    }
    return out;
}

void save_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajs) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write trajectory file: " + path.string());
    for (const auto& t : trajs) {
        ordered_json rec;
        rec["task_id"] = t.task_id;
        rec["trajectory_id"] = t.trajectory_id;
        ordered_json steps = ordered_json::array();
        for (const auto& s : t.steps) {
            steps.push_back({{"thought", s.thought},
                             {"action", action_to_json(s.action)},
                             {"observation", s.observation}});
        }
        rec["steps"] = steps;
        if (t.final_answer) rec["final_answer"] = *t.final_answer;
        out << rec.dump() << '\n';
    }
}

}  // namespace seekgen
