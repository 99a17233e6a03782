#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fedls {

// Per-client resource budgets and arrival process. `arrival_rates` holds a
// constant rate when it has a single entry, otherwise a per-slot schedule
// that must cover the whole horizon.
struct ClientParams {
    double avg_comp = 0.5;   // time-averaged computation budget
    double max_comp = 5.0;   // instantaneous computation cap
    double avg_comm = 0.5;   // time-averaged communication budget
    double max_comm = 5.0;   // instantaneous communication cap
    std::vector<double> arrival_rates{12.0};

    double rate_at(int slot) const {
        if (arrival_rates.size() == 1) return arrival_rates.front();
        return arrival_rates.at(static_cast<std::size_t>(slot));
    }

    bool operator==(const ClientParams&) const = default;
};

struct SimConfig {
    int n_clients = 100;
    int horizon = 1000;                // slots; 0 gives a degenerate empty run
    int local_iters = 1;               // local SGD iterations per slot
    int batch_size = 16;
    double learning_rate = 0.05;
    double train_to_infer_ratio = 2.0; // cost of one training sample vs one inference
    double conv_const = 1e-6;          // convergence-error coefficient
    double init_suboptimality = 0.0;   // f(x0) - f*, only enters the error seed
    double v_coef = 1.0;               // performance-vs-queue-stability weight
    double w_init = 1.0;               // initial (virtual) queue length
    double q_min = 1e-3;               // floor on participation probability
    int inner_max_iters = 20;
    double inner_tol = 1e-6;
    double alpha_mean = 0.03;          // mean unit computation cost
    double gamma_mean = 0.5;           // mean unit communication cost
    double snr = 10.0;                 // channel SNR for the fading model
    std::uint64_t seed = 1;

    ClientParams default_client{};
    std::vector<ClientParams> clients{};  // one entry per client after finalize()

    // tau * B * xi, the per-unit-probability training cost in compute units.
    double train_cost_units() const {
        return static_cast<double>(local_iters) * batch_size * train_to_infer_ratio;
    }

    const ClientParams& client(int n) const {
        if (clients.empty()) return default_client;
        return clients.at(static_cast<std::size_t>(n));
    }

    // Expands the per-client table to n_clients entries.
    void finalize() {
        clients.resize(static_cast<std::size_t>(std::max(n_clients, 0)), default_client);
        if (static_cast<int>(clients.size()) > n_clients) {
            clients.resize(static_cast<std::size_t>(n_clients));
        }
    }

    bool operator==(const SimConfig&) const = default;
};

// Desk-scale experiment base: same constants, fewer clients.
inline SimConfig scaled_default() {
    SimConfig cfg;
    cfg.n_clients = 20;
    cfg.horizon = 2000;
    cfg.finalize();
    return cfg;
}

struct ValidationResult {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const {
        std::string out;
        for (const auto& s : issues) {
            out += s;
            out += '\n';
        }
        return out;
    }
};

inline ValidationResult validate_config(const SimConfig& cfg) {
    ValidationResult r;
    auto bad = [&r](const std::string& msg) { r.issues.push_back(msg); };

    if (cfg.n_clients < 1) bad("n_clients must be >= 1");
    if (cfg.horizon < 0) bad("horizon must be >= 0");
    if (cfg.local_iters < 1) bad("local_iters must be >= 1");
    if (cfg.batch_size < 1) bad("batch_size must be >= 1");
    if (!(cfg.learning_rate > 0)) bad("learning_rate must be > 0");
    if (!(cfg.train_to_infer_ratio > 0)) bad("train_to_infer_ratio must be > 0");
    if (!(cfg.conv_const > 0)) bad("conv_const must be > 0");
    if (cfg.init_suboptimality < 0) bad("init_suboptimality must be >= 0");
    if (!(cfg.v_coef > 0)) bad("v_coef must be > 0");
    if (cfg.w_init < 0) bad("w_init must be >= 0");
    if (!(cfg.q_min > 0)) bad("q_min must be > 0");
    if (cfg.q_min > 1) bad("q_min must be <= 1");
    if (cfg.inner_max_iters < 1) bad("inner_max_iters must be >= 1");
    if (!(cfg.inner_tol > 0)) bad("inner_tol must be > 0");
    if (!(cfg.alpha_mean > 0)) bad("alpha_mean must be > 0");
    if (!(cfg.gamma_mean > 0)) bad("gamma_mean must be > 0");
    if (!(cfg.snr > 0)) bad("snr must be > 0");

    auto check_client = [&](const ClientParams& c, const std::string& who) {
        if (!(c.avg_comp > 0)) bad(who + ": avg_comp must be > 0");
        if (!(c.avg_comm > 0)) bad(who + ": avg_comm must be > 0");
        if (c.max_comp < c.avg_comp) bad(who + ": max_comp < avg_comp (max < avg budget)");
        if (c.max_comm < c.avg_comm) bad(who + ": max_comm < avg_comm (max < avg budget)");
        if (c.arrival_rates.empty()) {
            bad(who + ": arrival_rates must not be empty");
        } else {
            if (c.arrival_rates.size() > 1 &&
                c.arrival_rates.size() < static_cast<std::size_t>(cfg.horizon)) {
                bad(who + ": arrival schedule shorter than horizon");
            }
            for (double v : c.arrival_rates) {
                if (v < 0 || !std::isfinite(v)) {
                    bad(who + ": arrival rates must be finite and >= 0");
                    break;
                }
            }
        }
    };
    check_client(cfg.default_client, "default client");
    for (std::size_t i = 0; i < cfg.clients.size(); ++i) {
        if (cfg.clients[i] == cfg.default_client) continue;
        check_client(cfg.clients[i], "client " + std::to_string(i));
    }
    return r;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_number(const std::string& v, int line) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line) + ": bad number '" + v + "'");
    }
    if (pos != v.size()) {
        throw std::runtime_error("config line " + std::to_string(line) + ": bad number '" + v + "'");
    }
    return x;
}

inline std::vector<double> parse_number_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(trim(item), line));
    }
    if (out.empty()) {
        throw std::runtime_error("config line " + std::to_string(line) + ": empty list");
    }
    return out;
}

// Returns true if the key names a per-client field and applies it.
inline bool apply_client_key(ClientParams& c, const std::string& key, const std::string& value,
                             int line) {
    if (key == "avg_comp") c.avg_comp = parse_number(value, line);
    else if (key == "max_comp") c.max_comp = parse_number(value, line);
    else if (key == "avg_comm") c.avg_comm = parse_number(value, line);
    else if (key == "max_comm") c.max_comm = parse_number(value, line);
    else if (key == "arrival_rate") c.arrival_rates = parse_number_list(value, line);
    else return false;
    return true;
}

inline bool apply_global_key(SimConfig& cfg, const std::string& key, const std::string& value,
                             int line) {
    auto num = [&] { return parse_number(value, line); };
    if (key == "n_clients") cfg.n_clients = static_cast<int>(num());
    else if (key == "horizon") cfg.horizon = static_cast<int>(num());
    else if (key == "local_iters") cfg.local_iters = static_cast<int>(num());
    else if (key == "batch_size") cfg.batch_size = static_cast<int>(num());
    else if (key == "learning_rate") cfg.learning_rate = num();
    else if (key == "train_to_infer_ratio") cfg.train_to_infer_ratio = num();
    else if (key == "conv_const") cfg.conv_const = num();
    else if (key == "init_suboptimality") cfg.init_suboptimality = num();
    else if (key == "v_coef") cfg.v_coef = num();
    else if (key == "w_init") cfg.w_init = num();
    else if (key == "q_min") cfg.q_min = num();
    else if (key == "inner_max_iters") cfg.inner_max_iters = static_cast<int>(num());
    else if (key == "inner_tol") cfg.inner_tol = num();
    else if (key == "alpha_mean") cfg.alpha_mean = num();
    else if (key == "gamma_mean") cfg.gamma_mean = num();
    else if (key == "snr") cfg.snr = num();
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num());
    else return apply_client_key(cfg.default_client, key, value, line);
    return true;
}

}  // namespace detail

// Parses the plain-text key = value format. An optional `[clients A-B]`
// (or `[clients A]`) section overrides per-client fields for that range;
// keys absent from the file keep their defaults.
inline SimConfig parse_config_text(std::string_view text) {
    SimConfig cfg;
    struct Override {
        int lo, hi;
        std::string key, value;
        int line;
    };
    std::vector<Override> overrides;

    int section_lo = -1, section_hi = -1;  // -1 means global section
    std::stringstream ss{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                throw std::runtime_error("config line " + std::to_string(line) + ": unterminated section");
            }
            std::string body = detail::trim(s.substr(1, s.size() - 2));
            if (body.rfind("clients", 0) != 0) {
                throw std::runtime_error("config line " + std::to_string(line) +
                                         ": unknown section '" + body + "'");
            }
            std::string range = detail::trim(body.substr(7));
            if (range.empty()) {
                throw std::runtime_error("config line " + std::to_string(line) +
                                         ": section needs a client range");
            }
            const auto dash = range.find('-');
            if (dash == std::string::npos) {
                section_lo = section_hi = static_cast<int>(detail::parse_number(range, line));
            } else {
                section_lo = static_cast<int>(detail::parse_number(detail::trim(range.substr(0, dash)), line));
                section_hi = static_cast<int>(detail::parse_number(detail::trim(range.substr(dash + 1)), line));
            }
            if (section_lo < 0 || section_hi < section_lo) {
                throw std::runtime_error("config line " + std::to_string(line) + ": bad client range");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line) + ": expected key = value");
        }
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (section_lo < 0) {
            if (!detail::apply_global_key(cfg, key, value, line)) {
                throw std::runtime_error("config line " + std::to_string(line) + ": unknown key '" + key + "'");
            }
        } else {
            overrides.push_back({section_lo, section_hi, key, value, line});
        }
    }

    cfg.finalize();
    for (const auto& ov : overrides) {
        if (ov.hi >= cfg.n_clients) {
            throw std::runtime_error("config line " + std::to_string(ov.line) +
                                     ": client range exceeds n_clients");
        }
        for (int n = ov.lo; n <= ov.hi; ++n) {
            if (!detail::apply_client_key(cfg.clients[static_cast<std::size_t>(n)], ov.key, ov.value,
                                          ov.line)) {
                throw std::runtime_error("config line " + std::to_string(ov.line) +
                                         ": unknown per-client key '" + ov.key + "'");
            }
        }
    }
    return cfg;
}

inline SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace fedls
