// seekgen: synthesize entity-dense search tasks from table corpora and
// score agent trajectories against them.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <memory>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/ise_variance.hpp"
#include "seekgen/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string workdir;
    bool force = false;
    uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "pipeline config file")->required();
    cmd->add_option("--workdir", args.workdir, "output directory (overrides config)");
    cmd->add_flag("--force", args.force, "rerun the stage even if outputs exist");
    cmd->add_option("--seed", args.seed, "global seed (overrides config)")
        ->each([&args](const std::string&) { args.seed_set = true; });
}

int run_stages(const CommonArgs& common, const seekgen::PipelineOptions& opts,
               const std::vector<seekgen::Stage>& stages) {
    auto config = seekgen::ConfigFile::load(common.config_path);
    seekgen::Pipeline pipeline(config, opts);
    pipeline.run(stages, std::cout);
    return 0;
}

seekgen::PipelineOptions to_options(const CommonArgs& common) {
    seekgen::PipelineOptions opts;
    if (common.seed_set) opts.seed = common.seed;
    if (!common.workdir.empty()) opts.workdir = common.workdir;
    opts.force = common.force;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entity-dense task synthesis and trajectory curation pipeline"};
    app.require_subcommand(1);

    // Single-stage subcommands. CLI11 keeps pointers to the bound targets,
    // so each CommonArgs needs a stable address.
    struct StageCmd {
        seekgen::Stage stage;
        CLI::App* cmd;
        std::unique_ptr<CommonArgs> common;
    };
    std::vector<StageCmd> stage_cmds;
    for (seekgen::Stage stage : seekgen::all_stages()) {
        auto* cmd = app.add_subcommand(seekgen::to_string(stage),
                                       "run the '" + seekgen::to_string(stage) + "' stage");
        stage_cmds.push_back({stage, cmd, std::make_unique<CommonArgs>()});
        add_common(cmd, *stage_cmds.back().common);
    }
    // Per-stage knobs.
    int k_min = 0, m_min = 0;
    bool no_semantic = false;
    double alpha = -1.0, beta = -1.0;
    std::vector<std::string> variants;
    for (auto& sc : stage_cmds) {
        if (sc.stage == seekgen::Stage::mine) {
            sc.cmd->add_option("--k-min", k_min, "minimum trees per union group");
            sc.cmd->add_option("--m-min", m_min, "minimum shared relations per union group");
            sc.cmd->add_flag("--no-semantic-check", no_semantic,
                             "skip the second-layer entity-type compatibility check");
        }
        if (sc.stage == seekgen::Stage::synth) {
            sc.cmd->add_option("--variant", variants,
                               "task variants to synthesize (basic, union, reverse_union)");
        }
        if (sc.stage == seekgen::Stage::score || sc.stage == seekgen::Stage::filter) {
            sc.cmd->add_option("--alpha", alpha, "ISR threshold (keep iff ISR > alpha)");
            sc.cmd->add_option("--beta", beta, "ISE threshold (keep iff ISE > beta)");
        }
    }

    // run-all.
    CommonArgs run_all_common;
    std::vector<std::string> selected_stage_names;
    auto* run_all = app.add_subcommand("run-all", "run the configured stages in order");
    add_common(run_all, run_all_common);
    run_all->add_option("--stage", selected_stage_names,
                        "run only these stages (default: the config's stage list)");
    run_all->add_option("--variant", variants, "task variants for the synth stage");
    run_all->add_option("--alpha", alpha, "ISR threshold");
    run_all->add_option("--beta", beta, "ISE threshold");
    run_all->add_option("--k-min", k_min, "minimum trees per union group");
    run_all->add_option("--m-min", m_min, "minimum shared relations per union group");
    run_all->add_flag("--no-semantic-check", no_semantic, "skip the semantic check");

    // verify-ise.
    std::string family = "geometric_shifted";
    double mu = 4.0, sigma2 = 4.0;
    std::vector<std::size_t> n_list = {10, 40, 160};
    std::size_t trials = 50000;
    uint64_t ise_seed = 7;
    double max_spread = 0.0, max_delta_gap = 0.0;
    auto* verify = app.add_subcommand(
        "verify-ise", "check the 1/n variance scaling of ISE by simulation");
    verify->add_option("--family", family, "fixed | geometric_shifted | lognormal");
    verify->add_option("--mu", mu, "mean discovery cost");
    verify->add_option("--sigma2", sigma2, "discovery cost variance (lognormal only)");
    verify->add_option("--n-list", n_list, "entity counts to simulate");
    verify->add_option("--trials", trials, "Monte Carlo trials per entity count");
    verify->add_option("--seed", ise_seed, "simulation seed");
    verify->add_option("--max-spread", max_spread,
                       "fail if max/min of n*var exceeds this (0 = report only)");
    verify->add_option("--max-delta-gap", max_delta_gap,
                       "fail if |var - approx|/approx exceeds this at any n (0 = report only)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            seekgen::DiscoveryDistribution dist;
            switch (seekgen::dist_family_from_string(family)) {
                case seekgen::DistFamily::fixed:
                    dist = seekgen::DiscoveryDistribution::fixed(mu);
                    break;
                case seekgen::DistFamily::geometric_shifted:
                    dist = seekgen::DiscoveryDistribution::geometric(mu);
                    break;
                case seekgen::DistFamily::lognormal:
                    dist = seekgen::DiscoveryDistribution::lognormal(mu, sigma2);
                    break;
            }
            std::cout << "family=" << seekgen::to_string(dist.family) << " mu=" << dist.mu
                      << " sigma2=" << dist.sigma2 << " trials=" << trials << " seed=" << ise_seed
                      << "\n";
            std::cout << std::left << std::setw(8) << "n" << std::setw(16) << "estimated_var"
                      << std::setw(16) << "delta_approx" << std::setw(10) << "ratio" << "\n";
            double lo = 0.0, hi = 0.0, worst_gap = 0.0;
            for (std::size_t n : n_list) {
                auto est = seekgen::simulate_ise_variance(dist, n, trials, ise_seed);
                double ratio = est.delta_approx > 0.0 ? est.estimated_var / est.delta_approx : 0.0;
                std::cout << std::left << std::setw(8) << n << std::setw(16) << est.estimated_var
                          << std::setw(16) << est.delta_approx << std::setw(10) << ratio << "\n";
                double scaled = static_cast<double>(n) * est.estimated_var;
                lo = lo == 0.0 ? scaled : std::min(lo, scaled);
                hi = std::max(hi, scaled);
                if (est.delta_approx > 0.0) {
                    worst_gap = std::max(
                        worst_gap, std::abs(est.estimated_var - est.delta_approx) / est.delta_approx);
                }
            }
            bool failed = false;
            if (max_spread > 0.0 && lo > 0.0 && hi / lo > max_spread) {
                std::cout << "scaling spread " << hi / lo << " exceeds --max-spread " << max_spread
                          << "\n";
                failed = true;
            }
            if (max_delta_gap > 0.0 && worst_gap > max_delta_gap) {
                std::cout << "delta gap " << worst_gap << " exceeds --max-delta-gap "
                          << max_delta_gap << "\n";
                failed = true;
            }
            return failed ? 1 : 0;
        }

        auto counted = [](CLI::App* cmd, const std::string& name) {
            const CLI::Option* opt = cmd->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        auto apply_overrides = [&](CLI::App* cmd, seekgen::PipelineOptions& opts) {
            if (counted(cmd, "--k-min")) opts.k_min = k_min;
            if (counted(cmd, "--m-min")) opts.m_min = m_min;
            if (counted(cmd, "--no-semantic-check")) opts.semantic_check = false;
            if (counted(cmd, "--alpha")) opts.alpha = alpha;
            if (counted(cmd, "--beta")) opts.beta = beta;
            if (counted(cmd, "--variant")) opts.variants = variants;
        };

        for (auto& sc : stage_cmds) {
            if (!sc.cmd->parsed()) continue;
            auto opts = to_options(*sc.common);
            apply_overrides(sc.cmd, opts);
            return run_stages(*sc.common, opts, {sc.stage});
        }

        if (run_all->parsed()) {
            auto opts = to_options(run_all_common);
            apply_overrides(run_all, opts);

            auto config = seekgen::ConfigFile::load(run_all_common.config_path);
            seekgen::Pipeline pipeline(config, opts);
            std::vector<seekgen::Stage> stages;
            if (!selected_stage_names.empty()) {
                for (const auto& name : selected_stage_names)
                    stages.push_back(seekgen::stage_from_string(name));
            } else {
                stages = pipeline.configured_stages();
            }
            pipeline.run(stages, std::cout);
            return 0;
        }
    } catch (const seekgen::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
