#include "seekgen/ise_variance.hpp"

#include <cmath>

#include "seekgen/errors.hpp"

namespace seekgen {

std::string to_string(DistFamily f) {
    switch (f) {
        case DistFamily::fixed: return "fixed";
        case DistFamily::geometric_shifted: return "geometric_shifted";
        case DistFamily::lognormal: return "lognormal";
    }
    return "fixed";
}

DistFamily dist_family_from_string(const std::string& s) {
    if (s == "fixed") return DistFamily::fixed;
    if (s == "geometric_shifted" || s == "geometric") return DistFamily::geometric_shifted;
    if (s == "lognormal") return DistFamily::lognormal;
    throw ConfigError("unknown distribution family: " + s);
}

DiscoveryDistribution DiscoveryDistribution::fixed(double c) {
    DiscoveryDistribution d{DistFamily::fixed, c, 0.0};
    d.validate();
    return d;
}

DiscoveryDistribution DiscoveryDistribution::geometric(double mu) {
    DiscoveryDistribution d{DistFamily::geometric_shifted, mu, mu * mu - mu};
    d.validate();
    return d;
}

DiscoveryDistribution DiscoveryDistribution::lognormal(double mu, double sigma2) {
    DiscoveryDistribution d{DistFamily::lognormal, mu, sigma2};
    d.validate();
    return d;
}

void DiscoveryDistribution::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("distribution mean must be > 0");
    if (sigma2 < 0.0 || !std::isfinite(sigma2))
        throw ConfigError("distribution variance must be finite and >= 0");
    if (family == DistFamily::geometric_shifted && mu < 1.0)
        throw ConfigError("geometric discovery cost needs mu >= 1");
    if (family == DistFamily::fixed && sigma2 != 0.0)
        throw ConfigError("fixed distribution has zero variance");
    if (family == DistFamily::lognormal && sigma2 == 0.0)
        throw ConfigError("lognormal with zero variance; use the fixed family");
}

double DiscoveryDistribution::sample(Rng& rng) const {
    switch (family) {
        case DistFamily::fixed:
            return mu;
        case DistFamily::geometric_shifted: {
            const double p = 1.0 / mu;
            if (p >= 1.0) return 1.0;
            // Inversion on the failure count keeps draws platform-stable.
            const double u = rng.uniform_open();
            return 1.0 + std::floor(std::log(u) / std::log1p(-p));
        }
        case DistFamily::lognormal: {
            const double s2 = std::log1p(sigma2 / (mu * mu));
            const double m = std::log(mu) - 0.5 * s2;
            const double u1 = rng.uniform_open();
            const double u2 = rng.uniform();
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            return std::exp(m + std::sqrt(s2) * z);
        }
    }
    return mu;
}

double delta_method_var(double mu, double sigma2, std::size_t n) {
    if (!(mu > 0.0)) throw ConfigError("delta approximation needs mu > 0");
    if (sigma2 < 0.0) throw ConfigError("variance must be >= 0");
    if (n < 1) throw ConfigError("entity count must be >= 1");
    const double mu4 = mu * mu * mu * mu;
    return sigma2 / (mu4 * static_cast<double>(n));
}

VarianceEstimate simulate_ise_variance(const DiscoveryDistribution& dist, std::size_t n,
                                       std::size_t trials, uint64_t seed) {
    dist.validate();
    if (n < 1) throw ConfigError("entity count must be >= 1");
    if (trials < 1) throw ConfigError("trial count must be >= 1");

    Rng rng(seed);
    // Welford over the per-trial ISE values.
    double mean = 0.0, m2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        double total_steps = 0.0;
        for (std::size_t i = 0; i < n; ++i) total_steps += dist.sample(rng);
        const double ise = static_cast<double>(n) / total_steps;
        const double delta = ise - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (ise - mean);
    }

    VarianceEstimate est;
    est.n = n;
    est.trials = trials;
    est.seed = seed;
    est.estimated_var = trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    est.delta_approx = delta_method_var(dist.mu, dist.sigma2, n);
    return est;
}

}  // namespace seekgen
