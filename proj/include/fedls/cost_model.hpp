#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fedls/config.hpp"
#include "fedls/random.hpp"

namespace fedls {

// Per-slot unit cost draws.
struct CostSample {
    double alpha = 0.03;
    double gamma = 0.5;
};

// Linear computation cost alpha * (tau*B*xi * q + mu).
inline double comp_cost(double q, double mu, double alpha, const SimConfig& cfg) {
    return alpha * (cfg.train_cost_units() * q + mu);
}

// Linear communication cost gamma * beta_eff. The caller supplies the
// effective download probability beta_eff = max(beta, q), which keeps the
// cost consistent with participation implying a download.
inline double comm_cost(double beta_eff, double gamma) { return gamma * beta_eff; }

// Uniform on [0.5 mean, 1.5 mean].
inline double sample_alpha(RandomStream& rng, const SimConfig& cfg) {
    return cfg.alpha_mean * (0.5 + rng.uniform());
}

// E[log2(1 + snr h)] for h ~ Exp(1), via exp(1/snr) E1(1/snr) / ln 2.
inline double mean_channel_capacity(double snr) {
    const double x = 1.0 / snr;
    return std::exp(x) * (-std::expint(-x)) / std::numbers::ln2;
}

// Unit communication cost for a given channel power: inversely proportional
// to the instantaneous capacity, normalized so a mean-capacity channel costs
// gamma_mean, and clipped to [0.1, 10] x gamma_mean.
inline double gamma_from_power(double h, const SimConfig& cfg) {
    const double cap = std::log2(1.0 + cfg.snr * h);
    const double raw = cfg.gamma_mean * mean_channel_capacity(cfg.snr) / cap;
    return std::clamp(raw, 0.1 * cfg.gamma_mean, 10.0 * cfg.gamma_mean);
}

inline double sample_gamma(RandomStream& rng, const SimConfig& cfg) {
    return gamma_from_power(rng.exponential(), cfg);
}

inline CostSample sample_costs(RandomStream& rng, const SimConfig& cfg) {
    CostSample c;
    c.alpha = sample_alpha(rng, cfg);
    c.gamma = sample_gamma(rng, cfg);
    return c;
}

}  // namespace fedls
