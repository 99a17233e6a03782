#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fedls/config.hpp"

namespace fedls {

// Global convergence-error surrogate. `t` indexes the newest computed value;
// g_history holds G_1..G_t, so the value governing slot s is available from
// the end of slot s-1 onward.
struct GlobalPerfState {
    int t = 0;
    double g_current = 0.0;
    std::vector<double> g_history;
};

namespace detail {
inline double inv_sum(std::span<const double> q) {
    double s = 0.0;
    for (double v : q) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error("participation probability must be finite and > 0");
        }
        s += 1.0 / v;
    }
    return s;
}
}  // namespace detail

// Seed value G_1: the one-slot convergence bound 4*Delta/(tau*eta) + (C/N) * sum 1/q0.
inline double seed_global_error(std::span<const double> q0, const SimConfig& cfg) {
    if (q0.empty()) throw std::domain_error("seed_global_error: empty q vector");
    const double warm = 4.0 * cfg.init_suboptimality /
                        (static_cast<double>(cfg.local_iters) * cfg.learning_rate);
    return warm + cfg.conv_const / cfg.n_clients * detail::inv_sum(q0);
}

// One-step recursion G_t = ((t-1)/t) G_{t-1} + (C/(N t)) sum_n 1/q_{t-1}^n.
// Valid for t >= 2; slot 1 is seeded by seed_global_error so that iterating
// the recursion reproduces the batch bound at every horizon.
inline double advance_global_error(double g_prev, int t, std::span<const double> q_prev,
                                   const SimConfig& cfg) {
    if (t < 2) throw std::domain_error("advance_global_error: recursion starts at t = 2");
    if (g_prev < 0.0) throw std::domain_error("advance_global_error: g_prev must be >= 0");
    if (static_cast<int>(q_prev.size()) != cfg.n_clients) {
        throw std::domain_error("advance_global_error: q vector size != n_clients");
    }
    const double td = static_cast<double>(t);
    return (td - 1.0) / td * g_prev +
           cfg.conv_const / (cfg.n_clients * td) * detail::inv_sum(q_prev);
}

// Batch form over a full T x N history. Kept as an independent route so it can
// serve as the oracle for the recursion.
inline double batch_global_error(const std::vector<std::vector<double>>& q_hist,
                                 const SimConfig& cfg) {
    if (q_hist.empty()) throw std::domain_error("batch_global_error: empty history");
    double total = 0.0;
    for (const auto& slot : q_hist) {
        if (static_cast<int>(slot.size()) != cfg.n_clients) {
            throw std::domain_error("batch_global_error: slot size != n_clients");
        }
        total += detail::inv_sum(slot);
    }
    const double horizon = static_cast<double>(q_hist.size());
    const double warm = 4.0 * cfg.init_suboptimality /
                        (horizon * cfg.local_iters * cfg.learning_rate);
    return warm + cfg.conv_const * total / (horizon * cfg.n_clients);
}

// Outcome of the per-slot age-of-model step. `downloaded` is this slot's
// download indicator; `participated_prev` is the previous slot's training
// participation, which is what decides between age 1 and age prev+1.
struct AomOutcome {
    int new_aom = 0;
    bool downloaded = false;
    bool participated_prev = false;
};

inline int next_aom(int prev_aom, bool participated_prev, bool downloaded) {
    if (downloaded) return 0;
    if (participated_prev) return 1;
    return prev_aom + 1;
}

// Distributional age step driven by a single uniform draw: the draw decides
// the download, and its remainder realizes the previous-slot participation
// marginal. Outcome law:
//   P[0] = beta,  P[1] = (1-beta) q_prev,  P[prev+1] = (1-beta)(1-q_prev).
inline AomOutcome sample_aom(const AomOutcome& prev, double beta_t, double q_prev, double u) {
    if (beta_t < 0.0 || beta_t > 1.0) throw std::domain_error("sample_aom: beta outside [0,1]");
    if (!(q_prev > 0.0) || q_prev > 1.0) throw std::domain_error("sample_aom: q outside (0,1]");
    if (u < 0.0 || u >= 1.0) throw std::domain_error("sample_aom: u outside [0,1)");
    AomOutcome out;
    out.downloaded = u < beta_t;
    if (out.downloaded) {
        out.participated_prev = u < beta_t * q_prev;
    } else {
        const double v = (u - beta_t) / (1.0 - beta_t);
        out.participated_prev = v < q_prev;
    }
    out.new_aom = next_aom(prev.new_aom, out.participated_prev, out.downloaded);
    return out;
}

struct RealizedPerf {
    double value = 0.0;
    bool clamped = false;  // true when the age points before the first recorded G
};

// Realized model performance G_{t - aom}. Ages reaching past the first
// recorded value clamp to G_1 and are flagged; with no history yet the value
// is 0 (nothing has been trained, and nothing should be served).
inline RealizedPerf lookup_realized_perf(int aom, const GlobalPerfState& g) {
    if (aom < 0) throw std::domain_error("lookup_realized_perf: negative age");
    if (g.g_history.empty()) return {0.0, true};
    const int idx = g.t - aom;
    if (idx < 1) return {g.g_history.front(), true};
    return {g.g_history.at(static_cast<std::size_t>(idx - 1)), false};
}

// Expected per-slot performance mixture:
//   E[K_t] = g_t * beta + g_prev (1-beta) q_prev + k_prev (1-beta)(1-q_prev).
inline double expected_perf_recursion(double k_prev, double g_t, double g_prev, double beta_t,
                                      double q_prev) {
    return g_t * beta_t + g_prev * (1.0 - beta_t) * q_prev +
           k_prev * (1.0 - beta_t) * (1.0 - q_prev);
}

}  // namespace fedls
