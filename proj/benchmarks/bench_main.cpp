#include <benchmark/benchmark.h>

#include <sstream>
#include <vector>

#include "seekgen/biclique.hpp"
#include "seekgen/matcher.hpp"
#include "seekgen/metrics.hpp"
#include "seekgen/reward.hpp"
#include "seekgen/rng.hpp"
#include "seekgen/text.hpp"
#include "seekgen/tree.hpp"

namespace {

using namespace seekgen;

BipartiteGraph synthetic_graph(std::size_t trees, std::size_t relations, double density,
                               uint64_t seed) {
    Rng rng(seed);
    BipartiteGraph g;
    g.right.reserve(relations);
    for (std::size_t r = 0; r < relations; ++r) {
        std::ostringstream name;
        name << "has_r" << r;
        g.right.push_back({name.str(), DataType::text, "bench"});
    }
    g.adjacency.resize(trees);
    g.support.resize(relations);
    for (std::size_t t = 0; t < trees; ++t) {
        std::ostringstream id;
        id << "tree" << t;
        g.left.push_back({id.str(), {DataType::text, "bench"}});
        for (std::size_t r = 0; r < relations; ++r) {
            if (rng.uniform() < density) {
                g.adjacency[t].push_back(static_cast<uint32_t>(r));
                g.support[r].push_back(static_cast<uint32_t>(t));
            }
        }
    }
    return g;
}

void BM_EnumerateBicliques(benchmark::State& state) {
    auto g = synthetic_graph(static_cast<std::size_t>(state.range(0)), 24, 0.25, 11);
    MinerConfig cfg;
    cfg.max_expansions = 10'000'000;
    cfg.max_left_vertices = 100'000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_maximal_bicliques(g, cfg));
    }
}
BENCHMARK(BM_EnumerateBicliques)->Arg(50)->Arg(200)->Arg(800);

void BM_BruteForceBicliques(benchmark::State& state) {
    auto g = synthetic_graph(static_cast<std::size_t>(state.range(0)), 10, 0.4, 13);
    MinerConfig cfg;
    cfg.k_min = 1;
    cfg.m_min = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_bicliques(g, cfg));
    }
}
BENCHMARK(BM_BruteForceBicliques)->Arg(8)->Arg(12)->Arg(16);

void BM_Normalize(benchmark::State& state) {
    std::string s = "Czesław Miłosz, J.M. Coetzee — García Márquez (1982)!";
    for (auto _ : state) {
        benchmark::DoNotOptimize(text::normalize(s));
    }
}
BENCHMARK(BM_Normalize);

void BM_SoftPrecisionRecall(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    EntityScorer scorer;
    std::vector<TargetEntity> targets;
    std::vector<std::string> obtained;
    for (std::size_t i = 0; i < n; ++i) {
        TargetEntity e;
        e.value = "Person Number " + std::to_string(i);
        e.layer = EntityLayer::second;
        e.category = EntityCategory::person_name;
        targets.push_back(e);
        obtained.push_back(i % 3 == 0 ? "Person Number " + std::to_string(i)
                                      : "Unrelated Entry " + std::to_string(i));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(soft_precision_recall(obtained, targets, scorer));
    }
}
BENCHMARK(BM_SoftPrecisionRecall)->Arg(16)->Arg(64)->Arg(256);

void BM_ExtractEntities(benchmark::State& state) {
    EntityMatcher matcher;
    matcher.add_alias("UK", "United Kingdom");
    std::vector<TargetEntity> targets;
    for (int i = 0; i < 60; ++i) {
        TargetEntity e;
        e.value = "Target Entity " + std::to_string(i);
        e.layer = EntityLayer::second;
        targets.push_back(e);
    }
    Trajectory traj;
    traj.task_id = "bench";
    for (int s = 0; s < 40; ++s) {
        StepRecord step;
        step.thought = "t";
        step.action = Action::visit({"https://example.org"}, "g");
        std::ostringstream obs;
        obs << "Long page mentioning Target Entity " << (s % 60) << " and Target Entity "
            << ((s * 7) % 60) << " plus assorted noise text about the United Kingdom.";
        step.observation = obs.str();
        traj.steps.push_back(std::move(step));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_entities(traj, targets, matcher));
    }
}
BENCHMARK(BM_ExtractEntities);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
