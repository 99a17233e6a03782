#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fedls/metrics.hpp"

namespace fedls {

struct QueueTriple {
    double service = 0.0;  // backlog of inference requests
    double comp = 0.0;     // accumulated computation over-budget
    double comm = 0.0;     // accumulated communication over-budget
};

// max{0, len + arrivals - served}
inline double update_service_queue(double len, double arrivals, double served) {
    if (len < 0 || arrivals < 0 || served < 0) {
        throw std::domain_error("update_service_queue: negative input");
    }
    return std::max(0.0, len + arrivals - served);
}

// max{0, len + cost - budget}
inline double update_virtual_queue(double len, double cost, double budget) {
    if (len < 0 || cost < 0 || budget < 0) {
        throw std::domain_error("update_virtual_queue: negative input");
    }
    return std::max(0.0, len + cost - budget);
}

// Signed time-averaged constraint gaps; positive means violated, negative is
// slack. `service` compares realized arrivals against committed service
// rates, `comp`/`comm` compare recorded costs against the average budgets.
struct ClientViolation {
    double service = 0.0;
    double comp = 0.0;
    double comm = 0.0;
};

struct ViolationReport {
    int horizon = 0;
    std::vector<ClientViolation> per_client;
    double fleet_service = 0.0, fleet_comp = 0.0, fleet_comm = 0.0;          // signed means
    double fleet_service_mag = 0.0, fleet_comp_mag = 0.0, fleet_comm_mag = 0.0;  // mean |signed|

    // Aggregate magnitude used for the running-violation decay measurement.
    double magnitude() const { return fleet_service_mag + fleet_comp_mag + fleet_comm_mag; }
};

// Time-averaged violations over the first `horizon_limit` slots (all slots
// when negative).
inline ViolationReport violation_report(const MetricsLog& log, int horizon_limit = -1) {
    const int n = log.cfg.n_clients;
    int max_slot = -1;
    for (const auto& r : log.rows) max_slot = std::max(max_slot, r.slot);
    int horizon = max_slot + 1;
    if (horizon_limit >= 0) horizon = std::min(horizon, horizon_limit);
    if (horizon < 1) throw std::domain_error("violation_report: needs at least one slot");

    std::vector<ClientViolation> acc(static_cast<std::size_t>(n));
    for (const auto& r : log.rows) {
        if (r.slot >= horizon) continue;
        auto& a = acc.at(static_cast<std::size_t>(r.client));
        const auto& cp = log.cfg.client(r.client);
        a.service += static_cast<double>(r.arrivals) - r.mu;
        a.comp += r.comp_cost - cp.avg_comp;
        a.comm += r.comm_cost - cp.avg_comm;
    }
    ViolationReport rep;
    rep.horizon = horizon;
    rep.per_client = std::move(acc);
    for (auto& a : rep.per_client) {
        a.service /= horizon;
        a.comp /= horizon;
        a.comm /= horizon;
        rep.fleet_service += a.service / n;
        rep.fleet_comp += a.comp / n;
        rep.fleet_comm += a.comm / n;
        rep.fleet_service_mag += std::abs(a.service) / n;
        rep.fleet_comp_mag += std::abs(a.comp) / n;
        rep.fleet_comm_mag += std::abs(a.comm) / n;
    }
    return rep;
}

}  // namespace fedls
