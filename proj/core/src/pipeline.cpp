#include "seekgen/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "seekgen/biclique.hpp"
#include "seekgen/corpus.hpp"
#include "seekgen/errors.hpp"
#include "seekgen/metrics.hpp"
#include "seekgen/reward.hpp"
#include "seekgen/text.hpp"
#include "seekgen/trajectory.hpp"
#include "seekgen/tree.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Stage s) {
    switch (s) {
        case Stage::clean: return "clean";
        case Stage::trees: return "trees";
        case Stage::mine: return "mine";
        case Stage::synth: return "synth";
        case Stage::score: return "score";
        case Stage::filter: return "filter";
        case Stage::reward: return "reward";
    }
    return "clean";
}

Stage stage_from_string(const std::string& s) {
    for (Stage st : all_stages()) {
        if (to_string(st) == s) return st;
    }
    throw ConfigError("unknown stage: " + s);
}

const std::vector<Stage>& all_stages() {
    static const std::vector<Stage> order = {Stage::clean,  Stage::trees,  Stage::mine,
                                             Stage::synth,  Stage::score,  Stage::filter,
                                             Stage::reward};
    return order;
}

Pipeline::Pipeline(ConfigFile config, PipelineOptions options)
    : config_(std::move(config)), options_(std::move(options)) {
    workdir_ = options_.workdir ? *options_.workdir
                                : config_.get_path("workdir", config_.base_dir() / "out");
    std::filesystem::create_directories(workdir_);
    std::filesystem::create_directories(workdir_ / "reports");
    oracle_ = make_oracle(config_.get("oracle.mode", "mock"));
}

std::vector<Stage> Pipeline::configured_stages() const {
    std::vector<Stage> out;
    for (const auto& name : config_.get_list("stages", {"clean", "trees", "mine", "synth",
                                                        "score", "filter", "reward"})) {
        out.push_back(stage_from_string(name));
    }
    return out;
}

std::filesystem::path Pipeline::artifact(const std::string& name) const {
    return workdir_ / name;
}

bool Pipeline::can_skip(Stage stage, const std::vector<std::filesystem::path>& outputs,
                        std::ostream& log) const {
    if (options_.force) return false;
    for (const auto& p : outputs) {
        if (!std::filesystem::exists(p)) return false;
    }
    log << "[" << to_string(stage) << "] outputs exist, skipping (use --force to rerun)\n";
    return true;
}

void Pipeline::require_input(Stage stage, const std::filesystem::path& file,
                             const std::string& producer) const {
    if (!std::filesystem::exists(file)) {
        throw MissingArtifactError("stage '" + to_string(stage) + "' needs " + file.string() +
                                   "; " + producer);
    }
}

void Pipeline::write_report(const std::string& stage, const std::string& body_json) const {
    auto path = workdir_ / "reports" / (stage + ".json");
    std::ofstream out(path);
    if (!out) throw Error("cannot write stage report: " + path.string());
    out << body_json << '\n';
}

uint64_t Pipeline::require_seed() const {
    if (options_.seed) return *options_.seed;
    if (config_.has("seed")) return static_cast<uint64_t>(config_.get_int("seed", 0));
    throw ConfigError("synthesis stages need a seed (config 'seed' or --seed)");
}

EntityMatcher Pipeline::load_matcher() const {
    EntityMatcher matcher;
    auto aliases = config_.get_path("paths.aliases", "");
    if (!aliases.empty() && std::filesystem::exists(aliases)) {
        std::ifstream in(aliases);
        ordered_json doc = ordered_json::parse(in);
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            matcher.add_alias(it.key(), it.value().get<std::string>());
        }
    }
    return matcher;
}

namespace {

CleaningConfig cleaning_from_config(const ConfigFile& cfg) {
    CleaningConfig c;
    c.min_rows = static_cast<int>(cfg.get_int("clean.min_rows", c.min_rows));
    c.max_rows = static_cast<int>(cfg.get_int("clean.max_rows", c.max_rows));
    c.min_cols = static_cast<int>(cfg.get_int("clean.min_cols", c.min_cols));
    c.max_cols = static_cast<int>(cfg.get_int("clean.max_cols", c.max_cols));
    c.drop_header_patterns = cfg.get_list("clean.drop_header_patterns", c.drop_header_patterns);
    c.require_isomorphic_group_size =
        static_cast<int>(cfg.get_int("clean.require_group_size", c.require_isomorphic_group_size));
    c.merged_cell_marker = cfg.get("clean.merged_cell_marker", c.merged_cell_marker);
    c.max_merged_cell_fraction =
        cfg.get_double("clean.max_merged_fraction", c.max_merged_cell_fraction);
    c.validate();
    return c;
}

TreeConfig tree_from_config(const ConfigFile& cfg) {
    TreeConfig t;
    t.type_inference_threshold = cfg.get_double("tree.type_threshold", t.type_inference_threshold);
    t.constraint = cfg.get("tree.constraint", t.constraint);
    return t;
}

MinerConfig miner_from_config(const ConfigFile& cfg, const PipelineOptions& opts) {
    MinerConfig m;
    m.k_min = opts.k_min ? *opts.k_min : static_cast<int>(cfg.get_int("miner.k_min", m.k_min));
    m.m_min = opts.m_min ? *opts.m_min : static_cast<int>(cfg.get_int("miner.m_min", m.m_min));
    m.semantic_check = opts.semantic_check ? *opts.semantic_check
                                           : cfg.get_bool("miner.semantic_check", m.semantic_check);
    m.max_left_vertices =
        static_cast<std::size_t>(cfg.get_int("miner.max_left", static_cast<long>(m.max_left_vertices)));
    m.max_expansions =
        static_cast<std::size_t>(cfg.get_int("miner.max_expansions", static_cast<long>(m.max_expansions)));
    m.validate();
    return m;
}

FilterConfig filter_from_config(const ConfigFile& cfg, const PipelineOptions& opts) {
    FilterConfig f;
    f.alpha = opts.alpha ? *opts.alpha : cfg.get_double("filter.alpha", f.alpha);
    f.beta = opts.beta ? *opts.beta : cfg.get_double("filter.beta", f.beta);
    f.search_counts_for_isr = cfg.get_bool("filter.search_counts_for_isr", f.search_counts_for_isr);
    return f;
}

RewardConfig reward_from_config(const ConfigFile& cfg) {
    RewardConfig r;
    r.omega = cfg.get_double("reward.omega", r.omega);
    r.eps_std = cfg.get_double("reward.eps_std", r.eps_std);
    r.eps_clip = cfg.get_double("reward.eps_clip", r.eps_clip);
    r.legacy_threshold = cfg.get_double("reward.legacy_threshold", r.legacy_threshold);
    return r;
}

std::vector<std::string> split_final_answer(const std::string& answer) {
    std::vector<std::string> out;
    std::string current;
    for (char c : answer) {
        if (c == ';' || c == '\n') {
            std::string t = text::trim(current);
            if (!t.empty()) out.push_back(t);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    std::string t = text::trim(current);
    if (!t.empty()) out.push_back(t);
    return out;
}

std::map<std::string, TaskSpec> index_tasks(const std::vector<TaskSpec>& tasks) {
    std::map<std::string, TaskSpec> out;
    for (const auto& t : tasks) out.emplace(t.task_id, t);
    return out;
}

}  // namespace

void Pipeline::run(const std::vector<Stage>& selected, std::ostream& log) {
    std::set<Stage> wanted(selected.begin(), selected.end());
    for (Stage stage : all_stages()) {
        if (!wanted.count(stage)) continue;
        switch (stage) {
            case Stage::clean: run_clean(log); break;
            case Stage::trees: run_trees(log); break;
            case Stage::mine: run_mine(log); break;
            case Stage::synth: run_synth(log); break;
            case Stage::score: run_score(log); break;
            case Stage::filter: run_filter(log); break;
            case Stage::reward: run_reward(log); break;
        }
    }
}

void Pipeline::run_clean(std::ostream& log) {
    auto clean_path = artifact("clean.json");
    auto rejections_path = artifact("rejections.json");
    if (can_skip(Stage::clean, {clean_path, rejections_path}, log)) return;

    auto corpus_path = config_.get_path("paths.corpus", "");
    if (corpus_path.empty()) throw ConfigError("paths.corpus is not set");
    require_input(Stage::clean, corpus_path, "point paths.corpus at the table corpus");

    ParseOptions popts;
    popts.strict = config_.get_bool("parse.strict", false);
    popts.pad_ragged = config_.get_bool("parse.pad_ragged", false);
    auto parsed = parse_corpus(corpus_path, popts);

    auto cleaning = cleaning_from_config(config_);
    auto [cleaned, report] = clean_tables(parsed.tables, cleaning);
    auto grouping = group_isomorphic(cleaned, cleaning);

    std::set<std::string> grouped_ids;
    for (const auto& g : grouping.groups) {
        for (const auto& id : g.table_ids) grouped_ids.insert(id);
    }
    std::vector<CleanTable> surviving;
    for (auto& t : cleaned) {
        if (grouped_ids.count(t.id)) surviving.push_back(std::move(t));
    }
    for (const auto& id : grouping.discarded) {
        report.add(id, RejectReason::no_group);
        --report.kept;
    }

    write_clean_corpus(clean_path, surviving);
    write_rejection_report(rejections_path, report);

    ordered_json rep;
    rep["stage"] = "clean";
    rep["input_records"] = parsed.tables.size() + parsed.skipped.size();
    rep["parsed"] = parsed.tables.size();
    ordered_json skips = ordered_json::array();
    for (const auto& [idx, why] : parsed.skipped) skips.push_back({{"record", idx}, {"reason", why}});
    rep["parse_skipped"] = skips;
    rep["kept"] = surviving.size();
    ordered_json counts;
    for (const auto& [reason, n] : report.counts()) counts[to_string(reason)] = n;
    rep["rejected"] = counts;
    rep["groups"] = grouping.groups.size();
    write_report("clean", rep.dump(2));
    log << "[clean] " << surviving.size() << "/" << parsed.tables.size() << " tables kept in "
        << grouping.groups.size() << " isomorphism groups\n";
}

void Pipeline::run_trees(std::ostream& log) {
    auto trees_path = artifact("trees.jsonl");
    if (can_skip(Stage::trees, {trees_path}, log)) return;

    auto clean_path = artifact("clean.json");
    require_input(Stage::trees, clean_path, "run the 'clean' stage first");

    auto tables = read_clean_corpus(clean_path);
    TreeConfig tree_cfg = tree_from_config(config_);
    KeySelector selector;
    selector.mode = config_.get("tree.key_mode", "heuristic") == "llm"
                        ? KeySelector::Mode::external_llm
                        : KeySelector::Mode::heuristic;
    selector.oracle = oracle_.get();
    OracleClient* root_refiner =
        config_.get("tree.root_mode", "heuristic") == "llm" ? oracle_.get() : nullptr;

    std::vector<ReasoningTree> trees;
    ordered_json skipped = ordered_json::array();
    for (const auto& table : tables) {
        try {
            int key = select_key_column(table, selector, tree_cfg);
            trees.push_back(build_tree(table, key, tree_cfg, root_refiner));
        } catch (const NoKeyColumnError& e) {
            skipped.push_back({{"table", table.id}, {"reason", e.what()}});
        }
    }
    save_trees(trees_path, trees);

    ordered_json rep;
    rep["stage"] = "trees";
    rep["tables"] = tables.size();
    rep["trees"] = trees.size();
    rep["skipped"] = skipped;
    write_report("trees", rep.dump(2));
    log << "[trees] built " << trees.size() << " trees from " << tables.size() << " tables\n";
}

void Pipeline::run_mine(std::ostream& log) {
    auto groups_path = artifact("groups.jsonl");
    if (can_skip(Stage::mine, {groups_path}, log)) return;

    auto trees_path = artifact("trees.jsonl");
    require_input(Stage::mine, trees_path, "run the 'trees' stage first");

    auto trees = load_trees(trees_path);
    auto graph = build_graph(trees);
    auto miner_cfg = miner_from_config(config_, options_);
    auto groups = enumerate_maximal_bicliques(graph, miner_cfg);
    save_groups(groups_path, groups);

    ordered_json rep;
    rep["stage"] = "mine";
    rep["trees"] = graph.left.size();
    rep["relations"] = graph.right.size();
    rep["edges"] = graph.edge_count();
    rep["groups"] = groups.size();
    rep["k_min"] = miner_cfg.k_min;
    rep["m_min"] = miner_cfg.m_min;
    rep["semantic_check"] = miner_cfg.semantic_check;
    write_report("mine", rep.dump(2));
    log << "[mine] " << groups.size() << " maximal union groups over " << graph.left.size()
        << " trees\n";
}

void Pipeline::run_synth(std::ostream& log) {
    auto tasks_path = artifact("tasks.jsonl");
    if (can_skip(Stage::synth, {tasks_path}, log)) return;

    auto trees_path = artifact("trees.jsonl");
    require_input(Stage::synth, trees_path, "run the 'trees' stage first");

    std::vector<std::string> variant_names =
        !options_.variants.empty()
            ? options_.variants
            : config_.get_list("synth.variants", {"basic", "union", "reverse_union"});
    std::vector<TaskVariant> variants;
    for (const auto& v : variant_names) variants.push_back(task_variant_from_string(v));

    const bool needs_groups =
        std::any_of(variants.begin(), variants.end(),
                    [](TaskVariant v) { return v != TaskVariant::basic; });
    std::vector<UnionGroup> groups;
    if (needs_groups) {
        auto groups_path = artifact("groups.jsonl");
        require_input(Stage::synth, groups_path, "run the 'mine' stage first");
        groups = load_groups(groups_path);
    }

    TreeCorpus corpus(load_trees(trees_path));
    SynthConfig synth_cfg;
    synth_cfg.seed = require_seed();
    synth_cfg.renderer = oracle_.get();
    synth_cfg.basic_relations = config_.get_list("synth.basic_relations", {});

    auto [tasks, report] = synthesize_all(corpus, groups, variants, synth_cfg);
    save_tasks(tasks_path, tasks);

    ordered_json rep;
    rep["stage"] = "synth";
    rep["seed"] = synth_cfg.seed;
    ordered_json made;
    for (const auto& [variant, n] : report.synthesized) made[variant] = n;
    rep["synthesized"] = made;
    rep["tasks"] = tasks.size();
    ordered_json skips = ordered_json::array();
    for (const auto& s : report.skipped) {
        skips.push_back({{"id", s.id}, {"variant", s.variant}, {"reason", s.reason}});
    }
    rep["skipped"] = skips;
    write_report("synth", rep.dump(2));
    log << "[synth] " << tasks.size() << " tasks (" << report.skipped.size() << " skipped)\n";
}

void Pipeline::run_score(std::ostream& log) {
    auto metrics_path = artifact("metrics.jsonl");
    if (can_skip(Stage::score, {metrics_path}, log)) return;

    auto tasks_path = artifact("tasks.jsonl");
    require_input(Stage::score, tasks_path, "run the 'synth' stage first");
    auto traj_path = config_.get_path("paths.trajectories", "");
    if (traj_path.empty()) throw ConfigError("paths.trajectories is not set");
    require_input(Stage::score, traj_path, "point paths.trajectories at a trajectory file");

    auto tasks = index_tasks(load_tasks(tasks_path));
    auto trajs = load_trajectories(traj_path);
    auto matcher = load_matcher();
    auto fcfg = filter_from_config(config_, options_);

    std::vector<TrajectoryScore> scores;
    for (const auto& traj : trajs) {
        auto it = tasks.find(traj.task_id);
        if (it == tasks.end())
            throw Error("trajectory " + traj.trajectory_id + " references unknown task '" +
                        traj.task_id + "'");
        scores.push_back(score_trajectory(traj, it->second, matcher, fcfg));
    }
    save_scores(metrics_path, scores);

    ordered_json rep;
    rep["stage"] = "score";
    rep["trajectories"] = scores.size();
    rep["tasks"] = tasks.size();
    write_report("score", rep.dump(2));
    log << "[score] scored " << scores.size() << " trajectories\n";
}

void Pipeline::run_filter(std::ostream& log) {
    auto kept_path = artifact("kept.jsonl");
    auto rejected_path = artifact("filter_rejections.jsonl");
    if (can_skip(Stage::filter, {kept_path, rejected_path}, log)) return;

    auto tasks_path = artifact("tasks.jsonl");
    require_input(Stage::filter, tasks_path, "run the 'synth' stage first");
    auto traj_path = config_.get_path("paths.trajectories", "");
    if (traj_path.empty()) throw ConfigError("paths.trajectories is not set");
    require_input(Stage::filter, traj_path, "point paths.trajectories at a trajectory file");

    auto tasks = index_tasks(load_tasks(tasks_path));
    auto trajs = load_trajectories(traj_path);
    auto matcher = load_matcher();
    auto fcfg = filter_from_config(config_, options_);

    auto outcome = filter_trajectories(trajs, tasks, fcfg, matcher);
    save_trajectories(kept_path, outcome.kept);
    {
        std::ofstream out(rejected_path);
        if (!out) throw Error("cannot write " + rejected_path.string());
        for (const auto& r : outcome.rejected) {
            ordered_json rec;
            rec["task_id"] = r.task_id;
            rec["trajectory_id"] = r.trajectory_id;
            rec["isr"] = r.isr;
            rec["ise"] = r.ise;
            rec["failed"] = r.failed;
            out << rec.dump() << '\n';
        }
    }

    ordered_json rep;
    rep["stage"] = "filter";
    rep["alpha"] = fcfg.alpha;
    rep["beta"] = fcfg.beta;
    rep["input"] = trajs.size();
    rep["kept"] = outcome.kept.size();
    rep["rejected"] = outcome.rejected.size();
    write_report("filter", rep.dump(2));
    log << "[filter] kept " << outcome.kept.size() << "/" << trajs.size()
        << " trajectories (ISR > " << fcfg.alpha << ", ISE > " << fcfg.beta << ")\n";
}

void Pipeline::run_reward(std::ostream& log) {
    auto rewards_path = artifact("rewards.jsonl");
    auto advantages_path = artifact("advantages.jsonl");
    if (can_skip(Stage::reward, {rewards_path, advantages_path}, log)) return;

    auto tasks_path = artifact("tasks.jsonl");
    require_input(Stage::reward, tasks_path, "run the 'synth' stage first");
    auto kept_path = artifact("kept.jsonl");
    require_input(Stage::reward, kept_path, "run the 'filter' stage first");

    auto tasks = index_tasks(load_tasks(tasks_path));
    auto trajs = load_trajectories(kept_path);
    auto rcfg = reward_from_config(config_);

    EntityScorer scorer;
    scorer.matcher = load_matcher();
    scorer.near_exact_threshold =
        config_.get_double("reward.near_exact_threshold", scorer.near_exact_threshold);
    if (config_.get("reward.judge", "off") == "free_text") {
        scorer.set_modality(EntityCategory::free_text, ScoreModality::llm_judge);
        scorer.judge = oracle_.get();
    }

    struct Row {
        std::string task_id, trajectory_id;
        RewardResult result;
    };
    std::vector<Row> rows;
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<std::size_t>> groups;

    for (const auto& traj : trajs) {
        auto it = tasks.find(traj.task_id);
        if (it == tasks.end())
            throw Error("trajectory " + traj.trajectory_id + " references unknown task '" +
                        traj.task_id + "'");
        const TaskSpec& task = it->second;

        TrajectoryOutcome outcome;
        outcome.final_answer = traj.final_answer;
        if (traj.final_answer && !traj.final_answer->empty()) {
            outcome.obtained = split_final_answer(*traj.final_answer);
        } else {
            auto extraction = extract_entities(traj, task.target_entities, scorer.matcher);
            for (std::size_t idx : extraction.discovered)
                outcome.obtained.push_back(task.target_entities[idx].value);
        }

        Row row{traj.task_id, traj.trajectory_id, hybrid_reward(outcome, task, scorer, rcfg)};
        auto [git, fresh] = groups.emplace(traj.task_id, std::vector<std::size_t>{});
        if (fresh) group_order.push_back(traj.task_id);
        git->second.push_back(rows.size());
        rows.push_back(std::move(row));
    }

    {
        std::ofstream out(rewards_path);
        if (!out) throw Error("cannot write " + rewards_path.string());
        for (const auto& r : rows) {
            ordered_json rec;
            rec["task_id"] = r.task_id;
            rec["trajectory_id"] = r.trajectory_id;
            rec["precision"] = r.result.precision;
            rec["recall"] = r.result.recall;
            rec["reward"] = r.result.reward;
            ordered_json comp;
            comp["mode"] = r.result.mode;
            comp["omega"] = rcfg.omega;
            if (!r.result.note.empty()) comp["note"] = r.result.note;
            rec["components"] = comp;
            out << rec.dump() << '\n';
        }
    }

    std::size_t singleton_groups = 0;
    {
        std::ofstream out(advantages_path);
        if (!out) throw Error("cannot write " + advantages_path.string());
        for (const auto& task_id : group_order) {
            const auto& members = groups[task_id];
            if (members.size() < 2) {
                ++singleton_groups;
                continue;
            }
            std::vector<double> rewards;
            for (std::size_t i : members) rewards.push_back(rows[i].result.reward);
            auto advantages = grpo_advantages(rewards, rcfg.eps_std);
            for (std::size_t j = 0; j < members.size(); ++j) {
                ordered_json rec;
                rec["task_id"] = task_id;
                rec["trajectory_id"] = rows[members[j]].trajectory_id;
                rec["advantage"] = advantages[j];
                out << rec.dump() << '\n';
            }
        }
    }

    ordered_json rep;
    rep["stage"] = "reward";
    rep["trajectories"] = rows.size();
    rep["task_groups"] = groups.size();
    rep["singleton_groups"] = singleton_groups;
    rep["omega"] = rcfg.omega;
    rep["eps_std"] = rcfg.eps_std;
    rep["judge_fallbacks"] = scorer.judge_fallbacks();
    write_report("reward", rep.dump(2));
    log << "[reward] " << rows.size() << " rewards across " << groups.size() << " task groups\n";
}

}  // namespace seekgen
