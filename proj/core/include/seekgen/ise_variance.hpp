#pragma once

#include <cstdint>
#include <string>

#include "seekgen/rng.hpp"

namespace seekgen {

enum class DistFamily { fixed, geometric_shifted, lognormal };

std::string to_string(DistFamily f);
DistFamily dist_family_from_string(const std::string& s);

/// Per-entity discovery cost X_i: strictly positive, finite mean and
/// variance, i.i.d. across entities.
struct DiscoveryDistribution {
    DistFamily family = DistFamily::fixed;
    double mu = 1.0;      // mean
    double sigma2 = 0.0;  // variance

    /// Degenerate X ≡ c.
    static DiscoveryDistribution fixed(double c);
    /// Steps-until-a-hit on {1, 2, ...} with success probability 1/mu;
    /// variance is mu^2 - mu. Requires mu >= 1.
    static DiscoveryDistribution geometric(double mu);
    /// Log-normal matched to the requested mean and variance.
    static DiscoveryDistribution lognormal(double mu, double sigma2);

    void validate() const;
    double sample(Rng& rng) const;
};

/// Delta-method approximation of Var(ISE) for ISE = n / Σ X_i:
/// sigma^2 / (mu^4 · n). Throws on mu <= 0.
double delta_method_var(double mu, double sigma2, std::size_t n);

struct VarianceEstimate {
    std::size_t n = 0;
    std::size_t trials = 0;
    double estimated_var = 0.0;
    double delta_approx = 0.0;
    uint64_t seed = 0;
};

/// Draws `trials` groups of n discovery costs, computes ISE = n/ΣX per
/// group, and reports the empirical variance next to the delta
/// approximation. Fully reproducible from the seed.
VarianceEstimate simulate_ise_variance(const DiscoveryDistribution& dist, std::size_t n,
                                       std::size_t trials, uint64_t seed);

}  // namespace seekgen
