#include "cavopt/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cavopt {

using nlohmann::json;

std::vector<double> make_grid(const SweepSpec& s) {
    if (s.count < 1) throw ConfigError("sweep: count must be >= 1");
    if (!(s.stop > s.start)) throw ConfigError("sweep: stop must exceed start");
    std::vector<double> g;
    g.reserve(s.count);
    if (s.count == 1) {
        g.push_back(s.start);
        return g;
    }
    if (s.log_scale) {
        if (!(s.start > 0.0)) throw ConfigError("sweep: log scale needs start > 0");
        const double l0 = std::log10(s.start), l1 = std::log10(s.stop);
        for (int i = 0; i < s.count; ++i)
            g.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (s.count - 1)));
    } else {
        for (int i = 0; i < s.count; ++i)
            g.push_back(s.start + (s.stop - s.start) * i / (s.count - 1));
    }
    return g;
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

double num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

SystemParams parse_params(const json& j) {
    check_keys(j, {"omega_c", "omega_a", "omega_f", "g", "Omega", "N", "kappa",
                   "gamma", "T"},
               "params");
    SystemParams p;
    p.omega_c = num(j, "omega_c", 0.0);
    p.omega_a = num(j, "omega_a", 0.0);
    p.omega_f = num(j, "omega_f", 0.0);
    p.g = num(j, "g", 0.0);
    p.Omega = num(j, "Omega", 0.0);
    if (j.contains("N")) {
        if (!j.at("N").is_number_integer())
            throw ConfigError("params.N must be an integer");
        p.N = j.at("N").get<long long>();
    }
    p.kappa = num(j, "kappa", 1.0);
    p.gamma = num(j, "gamma", 0.0);
    p.T = num(j, "T", 0.0);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

SweepSpec parse_sweep(const json& j) {
    check_keys(j, {"start", "stop", "count", "scale"}, "sweep");
    SweepSpec s;
    if (!j.contains("start") || !j.contains("stop") || !j.contains("count"))
        throw ConfigError("sweep needs start, stop and count");
    s.start = j.at("start").get<double>();
    s.stop = j.at("stop").get<double>();
    s.count = j.at("count").get<int>();
    if (j.contains("scale")) {
        const std::string sc = j.at("scale").get<std::string>();
        if (sc == "log") s.log_scale = true;
        else if (sc == "linear") s.log_scale = false;
        else throw ConfigError("sweep.scale must be \"linear\" or \"log\"");
    }
    make_grid(s);  // validates
    return s;
}

SolverConfig parse_solver(const json& j) {
    check_keys(j, {"newton_tol", "accept_tol", "max_iter", "amp_points",
                   "phase_points", "dedup_tol", "stability_eps"},
               "solver");
    SolverConfig c;
    c.newton_tol = num(j, "newton_tol", c.newton_tol);
    c.accept_tol = num(j, "accept_tol", c.accept_tol);
    c.max_iter = (int)num(j, "max_iter", c.max_iter);
    c.amp_points = (int)num(j, "amp_points", c.amp_points);
    c.phase_points = (int)num(j, "phase_points", c.phase_points);
    c.dedup_tol = num(j, "dedup_tol", c.dedup_tol);
    c.stability_eps = num(j, "stability_eps", c.stability_eps);
    for (double v : {c.newton_tol, c.accept_tol, c.dedup_tol, c.stability_eps})
        if (!(v > 0.0)) throw ConfigError("solver tolerances must be > 0");
    return c;
}

TwoModeSpec parse_two_mode(const json& j) {
    check_keys(j, {"delta_c", "delta_b", "G", "chi", "kappa", "gamma",
                   "cavity_cutoff", "collective_cutoff"},
               "two_mode");
    TwoModeSpec s;
    s.delta_c = num(j, "delta_c", 0.0);
    s.delta_b = num(j, "delta_b", 0.0);
    s.G = num(j, "G", 0.0);
    s.chi = num(j, "chi", 0.0);
    s.kappa = num(j, "kappa", 1.0);
    s.gamma = num(j, "gamma", 0.0);
    s.cavity_cutoff = (int)num(j, "cavity_cutoff", s.cavity_cutoff);
    s.collective_cutoff = (int)num(j, "collective_cutoff", s.collective_cutoff);
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return s;
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    check_keys(j,
               {"params", "task", "model", "sweep", "solver", "phi",
                "with_oracle", "workers", "output", "oracle_mode", "two_mode"},
               "config root");
    RunConfig c;
    c.raw = j;
    if (!j.contains("params")) throw ConfigError("config needs a params block");
    c.params = parse_params(j.at("params"));
    if (j.contains("task")) c.task = j.at("task").get<std::string>();
    if (j.contains("model")) {
        const std::string m = j.at("model").get<std::string>();
        if (m == "linear") c.model = ModelFamily::linear;
        else if (m == "kerr") c.model = ModelFamily::kerr;
        else if (m == "squeeze") c.model = ModelFamily::squeeze;
        else throw ConfigError("model must be linear, kerr or squeeze");
    }
    if (j.contains("sweep")) c.sweep = parse_sweep(j.at("sweep"));
    if (j.contains("solver")) c.solver = parse_solver(j.at("solver"));
    if (j.contains("phi")) c.phi = j.at("phi").get<double>();
    if (j.contains("with_oracle")) c.with_oracle = j.at("with_oracle").get<bool>();
    if (j.contains("workers")) {
        c.workers = j.at("workers").get<int>();
        if (c.workers < 1) throw ConfigError("workers must be >= 1");
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, {"path", "format"}, "output");
        if (o.contains("path")) c.out_path = o.at("path").get<std::string>();
        if (o.contains("format")) c.format = o.at("format").get<std::string>();
    }
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("output.format must be csv or json");
    if (j.contains("oracle_mode")) {
        c.oracle_mode = j.at("oracle_mode").get<std::string>();
        if (c.oracle_mode != "one-mode-scan" && c.oracle_mode != "two-mode")
            throw ConfigError("oracle_mode must be one-mode-scan or two-mode");
    }
    if (j.contains("two_mode")) c.two_mode = parse_two_mode(j.at("two_mode"));
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace cavopt
