#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedls/config.hpp"

namespace fedls {

// One (slot, client) record. Queue columns hold end-of-slot lengths; q,
// beta_eff and mu are the values active during the slot; `served` counts real
// requests only (the virtual queue head start never appears here).
struct MetricsRow {
    int slot = 0;
    int client = 0;
    double q = 0.0;
    double beta_eff = 0.0;
    double mu = 0.0;
    int j_download = 0;
    int i_participate = 0;
    long arrivals = 0;
    double served = 0.0;
    double service_q = 0.0;
    double comp_vq = 0.0;
    double comm_vq = 0.0;
    double comp_cost = 0.0;
    double comm_cost = 0.0;
    int aom = 0;
    double realized_perf = 0.0;
    double g_t = 0.0;
    double m_cum = 0.0;
};

inline constexpr const char* kMetricsCsvHeader =
    "slot,client,q,beta_eff,mu,J,I,arrivals,served,service_q,comp_vq,comm_vq,"
    "comp_cost,comm_cost,aom,realized_perf,g_t,m_cum";

struct MetricsLog {
    SimConfig cfg;
    std::string policy;
    std::vector<MetricsRow> rows;
    double g_final = 0.0;
    double m_final = 0.0;
    // Diagnostic counters (not part of the CSV contract).
    long realized_clamp_events = 0;
    long q_cap_clip_events = 0;
    long mu_cap_infeasible_events = 0;
    long inner_nonconverged_events = 0;
    long comp_cap_violations = 0;
    long comm_cap_violations = 0;
};

namespace detail {
inline void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}
}  // namespace detail

inline std::string metrics_to_csv(const MetricsLog& log) {
    std::string out = kMetricsCsvHeader;
    out += '\n';
    for (const auto& r : log.rows) {
        out += std::to_string(r.slot);
        out += ',';
        out += std::to_string(r.client);
        out += ',';
        detail::append_double(out, r.q);
        out += ',';
        detail::append_double(out, r.beta_eff);
        out += ',';
        detail::append_double(out, r.mu);
        out += ',';
        out += std::to_string(r.j_download);
        out += ',';
        out += std::to_string(r.i_participate);
        out += ',';
        out += std::to_string(r.arrivals);
        out += ',';
        detail::append_double(out, r.served);
        out += ',';
        detail::append_double(out, r.service_q);
        out += ',';
        detail::append_double(out, r.comp_vq);
        out += ',';
        detail::append_double(out, r.comm_vq);
        out += ',';
        detail::append_double(out, r.comp_cost);
        out += ',';
        detail::append_double(out, r.comm_cost);
        out += ',';
        out += std::to_string(r.aom);
        out += ',';
        detail::append_double(out, r.realized_perf);
        out += ',';
        detail::append_double(out, r.g_t);
        out += ',';
        detail::append_double(out, r.m_cum);
        out += '\n';
    }
    return out;
}

inline void write_metrics_csv(const MetricsLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << metrics_to_csv(log);
}

inline std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty metrics file: " + path);
    if (line != kMetricsCsvHeader) throw std::runtime_error("unexpected metrics header in " + path);
    std::vector<MetricsRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 18) throw std::runtime_error("bad metrics row: " + line);
        MetricsRow r;
        r.slot = std::stoi(cells[0]);
        r.client = std::stoi(cells[1]);
        r.q = std::stod(cells[2]);
        r.beta_eff = std::stod(cells[3]);
        r.mu = std::stod(cells[4]);
        r.j_download = std::stoi(cells[5]);
        r.i_participate = std::stoi(cells[6]);
        r.arrivals = std::stol(cells[7]);
        r.served = std::stod(cells[8]);
        r.service_q = std::stod(cells[9]);
        r.comp_vq = std::stod(cells[10]);
        r.comm_vq = std::stod(cells[11]);
        r.comp_cost = std::stod(cells[12]);
        r.comm_cost = std::stod(cells[13]);
        r.aom = std::stoi(cells[14]);
        r.realized_perf = std::stod(cells[15]);
        r.g_t = std::stod(cells[16]);
        r.m_cum = std::stod(cells[17]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace fedls
