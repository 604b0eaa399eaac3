#include <cmath>

#include "doctest.h"

#include "seekgen/errors.hpp"
#include "seekgen/ise_variance.hpp"

using namespace seekgen;

TEST_CASE("delta_method_var: worked examples") {
    CHECK(delta_method_var(4.0, 4.0, 100) == doctest::Approx(0.00015625));
    CHECK(delta_method_var(4.0, 0.0, 10) == 0.0);
    CHECK(delta_method_var(2.5, 0.0, 1000) == 0.0);
    // Doubling n halves the value exactly.
    CHECK(delta_method_var(3.0, 2.0, 50) == doctest::Approx(2.0 * delta_method_var(3.0, 2.0, 100)));
    CHECK_THROWS_AS(delta_method_var(0.0, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(delta_method_var(-1.0, 1.0, 10), ConfigError);
}

TEST_CASE("distribution construction and sample moments") {
    auto geo = DiscoveryDistribution::geometric(4.0);
    CHECK(geo.sigma2 == doctest::Approx(12.0));
    CHECK_THROWS_AS(DiscoveryDistribution::geometric(0.5), ConfigError);

    auto logn = DiscoveryDistribution::lognormal(4.0, 4.0);
    CHECK(logn.mu == 4.0);

    // 200k draws land near the requested moments; all samples positive.
    for (auto dist : {geo, logn}) {
        Rng rng(5);
        double sum = 0.0, sq = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            double x = dist.sample(rng);
            CHECK(x > 0.0);
            sum += x;
            sq += x * x;
        }
        double mean = sum / n;
        double var = sq / n - mean * mean;
        CHECK(mean == doctest::Approx(dist.mu).epsilon(0.02));
        CHECK(var == doctest::Approx(dist.sigma2).epsilon(0.06));
    }
}

TEST_CASE("simulate_ise_variance: degenerate distribution has zero variance") {
    auto est = simulate_ise_variance(DiscoveryDistribution::fixed(3.0), 20, 2000, 1);
    CHECK(est.estimated_var == doctest::Approx(0.0));
    CHECK(est.delta_approx == 0.0);
}

TEST_CASE("simulate_ise_variance: reproducible from the seed") {
    auto dist = DiscoveryDistribution::lognormal(4.0, 4.0);
    auto a = simulate_ise_variance(dist, 50, 4000, 99);
    auto b = simulate_ise_variance(dist, 50, 4000, 99);
    CHECK(a.estimated_var == b.estimated_var);
    auto c = simulate_ise_variance(dist, 50, 4000, 100);
    CHECK(c.estimated_var != a.estimated_var);
}

TEST_CASE("quick scaling sanity: variance shrinks roughly like 1/n") {
    // The acceptance suite runs the full 50k-trial version; this is a smoke
    // check at lower resolution.
    auto dist = DiscoveryDistribution::geometric(4.0);
    auto small = simulate_ise_variance(dist, 10, 8000, 7);
    auto large = simulate_ise_variance(dist, 160, 8000, 7);
    double scale = small.estimated_var / large.estimated_var;
    CHECK(scale > 10.0);
    CHECK(scale < 26.0);
    CHECK(large.estimated_var ==
          doctest::Approx(delta_method_var(4.0, 12.0, 160)).epsilon(0.25));
}
