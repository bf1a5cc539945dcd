#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cavopt/config.hpp"
#include "cavopt/fluctuations.hpp"
#include "cavopt/fock_oracle.hpp"
#include "cavopt/model.hpp"
#include "cavopt/spectrum.hpp"
#include "cavopt/steady_state.hpp"

namespace {

using nlohmann::json;
using namespace cavopt;

constexpr const char* kVersion = "0.1.0";

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    int workers = 0;
    std::optional<double> phi;
};

RunConfig effective_config(const CliOptions& opt, const std::string& task) {
    RunConfig cfg = load_config(opt.config_path);
    if (!cfg.task.empty() && cfg.task != task)
        throw ConfigError("config task \"" + cfg.task +
                          "\" does not match subcommand \"" + task + "\"");
    cfg.task = task;
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    if (!opt.format.empty()) {
        if (opt.format != "csv" && opt.format != "json")
            throw ConfigError("--format must be csv or json");
        cfg.format = opt.format;
    }
    if (opt.workers > 0) cfg.workers = opt.workers;
    if (opt.phi) cfg.phi = opt.phi;
    return cfg;
}

void write_output(const RunConfig& cfg, const std::string& payload,
                  double seconds) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
        out << payload;
        // manifest kept separate so data files stay byte-deterministic
        json manifest;
        manifest["config"] = cfg.raw;
        manifest["task"] = cfg.task;
        manifest["version"] = kVersion;
        manifest["elapsed_seconds"] = seconds;
        manifest["generated_at"] = std::chrono::duration_cast<std::chrono::seconds>(
                                       std::chrono::system_clock::now()
                                           .time_since_epoch())
                                       .count();
        std::ofstream mf(cfg.out_path + ".manifest.json");
        mf << manifest.dump(2) << "\n";
    }
}

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string s;
    for (const auto& c : cells) {
        if (!s.empty()) s += ",";
        s += c;
    }
    s += "\n";
    return s;
}

std::vector<double> grid_or(const RunConfig& cfg, double lo, double hi, int n) {
    if (cfg.sweep) return make_grid(*cfg.sweep);
    SweepSpec s{lo, hi, n, false};
    return make_grid(s);
}

json model_json(const LinearEffectiveModel& m) {
    return {{"delta_c", m.delta_c}, {"delta_b", m.delta_b},   {"G", m.G},
            {"chi", m.chi},         {"delta", m.delta_shift}, {"omega_eff0", m.omega_eff0},
            {"f", m.f}};
}

json model_json(const NonlinearEffectiveModel& m) {
    return {{"delta_eff1", m.delta_eff1},
            {"chi_kerr", m.chi_kerr},
            {"mu", m.mu},
            {"zeta", m.zeta},
            {"F", m.F}};
}

int cmd_params(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const LinearEffectiveModel lin = derive_linear_model(cfg.params);
    const NonlinearEffectiveModel nl = derive_nonlinear_model(cfg.params);
    const KerrModel k = reduce_kerr(nl);
    const SqueezeModel s = reduce_squeeze(nl);
    const ValidityReport rep = validity_report(cfg.params);

    json out;
    out["linear"] = model_json(lin);
    out["nonlinear"] = model_json(nl);
    out["kerr"] = {{"delta_eff_k", k.delta_eff_k},
                   {"chi_kerr", k.chi_kerr},
                   {"zeta", k.zeta},
                   {"F_prime", k.F_prime}};
    out["squeeze"] = {{"delta_eff_s", s.delta_eff_s},
                      {"mu", s.mu},
                      {"zeta", s.zeta},
                      {"F_dprime", s.F_dprime}};
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"pass", c.pass}});
    out["validity"] = {{"checks", checks},
                       {"excitation_fraction", rep.excitation_fraction},
                       {"all_pass", rep.all_pass()}};
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, out.dump(2) + "\n", secs);
    return 0;
}

int cmd_response(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const LinearEffectiveModel lin = derive_linear_model(cfg.params);
    const auto grid = grid_or(cfg, -2.0, 2.0, 8001);
    const auto curve = linear_response_spectrum(lin, cfg.params.kappa, grid);
    std::string payload;
    if (cfg.format == "csv") {
        payload += csv_row({"omega", "response"});
        for (const auto& p : curve)
            payload += csv_row({format_double(p.detuning), format_double(p.response)});
    } else {
        json arr = json::array();
        for (const auto& p : curve)
            arr.push_back({{"omega", p.detuning}, {"response", p.response}});
        payload = arr.dump(2) + "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, payload, secs);
    return 0;
}

int cmd_steady_scan(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!cfg.sweep) throw ConfigError("steady-scan needs a sweep block");
    const auto grid = make_grid(*cfg.sweep);
    const BranchCurve curve =
        scan_drive(cfg.model, cfg.params, grid, cfg.solver, cfg.workers);
    std::string payload;
    if (cfg.format == "csv") {
        payload += csv_row({"Omega", "branch", "re_alpha", "im_alpha", "n", "stability"});
        for (std::size_t i = 0; i < curve.grid.size(); ++i)
            for (std::size_t r = 0; r < curve.roots[i].size(); ++r) {
                const SteadyState& s = curve.roots[i][r];
                payload += csv_row({format_double(curve.grid[i]),
                                    std::to_string(curve.branch_ids[i][r]),
                                    format_double(s.alpha0.real()),
                                    format_double(s.alpha0.imag()),
                                    format_double(s.n0), to_string(s.stability)});
            }
    } else {
        json arr = json::array();
        for (std::size_t i = 0; i < curve.grid.size(); ++i)
            for (std::size_t r = 0; r < curve.roots[i].size(); ++r) {
                const SteadyState& s = curve.roots[i][r];
                arr.push_back({{"Omega", curve.grid[i]},
                               {"branch", curve.branch_ids[i][r]},
                               {"re_alpha", s.alpha0.real()},
                               {"im_alpha", s.alpha0.imag()},
                               {"n", s.n0},
                               {"residual", s.residual},
                               {"stability", to_string(s.stability)}});
            }
        json out = {{"red_branch", curve.red_branch}, {"points", arr}};
        payload = out.dump(2) + "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, payload, secs);
    return 0;
}

int cmd_g2_scan(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!cfg.sweep) throw ConfigError("g2-scan needs a sweep block");
    const auto grid = make_grid(*cfg.sweep);
    const auto points =
        g2_scan(cfg.params, grid, cfg.with_oracle, cfg.workers, cfg.solver);
    std::string payload;
    std::vector<std::string> header = {"g",      "n0",   "C12",      "re_C11",
                                       "im_C11", "n_bar", "g2_0",    "stability"};
    if (cfg.with_oracle) header.push_back("oracle_g2");
    if (cfg.format == "csv") {
        std::string h;
        for (const auto& c : header) h += (h.empty() ? "" : ",") + c;
        payload += h + "\n";
        for (const auto& p : points) {
            if (!p.has_root) {
                payload += format_double(p.g) + ",,,,,,,no_stable_root";
                if (cfg.with_oracle) payload += ",";
                payload += "\n";
                continue;
            }
            std::string row = format_double(p.g) + "," + format_double(p.corr.n0) +
                              "," + format_double(p.corr.C12) + "," +
                              format_double(p.corr.C11.real()) + "," +
                              format_double(p.corr.C11.imag()) + "," +
                              format_double(p.corr.n_bar) + "," +
                              format_double(p.corr.g2_0) + "," +
                              to_string(p.root.stability);
            if (cfg.with_oracle)
                row += std::string(",") +
                       (p.oracle_g2 ? format_double(*p.oracle_g2) : "");
            payload += row + "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& p : points) {
            json rec = {{"g", p.g}, {"has_root", p.has_root}};
            if (p.has_root) {
                rec["n0"] = p.corr.n0;
                rec["C12"] = p.corr.C12;
                rec["re_C11"] = p.corr.C11.real();
                rec["im_C11"] = p.corr.C11.imag();
                rec["n_bar"] = p.corr.n_bar;
                rec["g2_0"] = p.corr.g2_0;
                rec["stability"] = to_string(p.root.stability);
                if (p.oracle_g2) rec["oracle_g2"] = *p.oracle_g2;
                if (p.oracle_n) rec["oracle_n"] = *p.oracle_n;
            }
            arr.push_back(rec);
        }
        payload = arr.dump(2) + "\n";
    }
    bool any = false;
    for (const auto& p : points) any = any || p.has_root;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, payload, secs);
    if (!any) {
        std::cerr << "g2-scan: no stable root at any sweep point\n";
        return 1;
    }
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SqueezeModel m = reduce_squeeze(derive_nonlinear_model(cfg.params));
    const auto roots = squeeze_steady_states(m, cfg.params.kappa, cfg.solver);
    const SteadyState* chosen = nullptr;
    for (const auto& s : roots)
        if (s.stability == Stability::stable && (!chosen || s.n0 < chosen->n0))
            chosen = &s;
    if (!chosen) {
        std::cerr << "spectrum: no stable steady state at these parameters\n";
        return 1;
    }
    const auto grid = grid_or(cfg, -10.0, 10.0, 2001);
    const SpectrumCurve curve = output_intensity_spectrum(
        m, cfg.params.kappa, chosen->alpha0, grid, cfg.phi);
    std::string payload;
    if (cfg.format == "csv") {
        payload += csv_row({"omega", "S_I", "S_I_paper_literal", "u_re", "u_im",
                            "v_re", "v_im"});
        for (const auto& p : curve.points)
            payload += csv_row({format_double(p.omega), format_double(p.S_I),
                                format_double(p.S_I_paper),
                                format_double(p.u.real()), format_double(p.u.imag()),
                                format_double(p.v.real()), format_double(p.v.imag())});
    } else {
        json arr = json::array();
        for (const auto& p : curve.points)
            arr.push_back({{"omega", p.omega},
                           {"S_I", p.S_I},
                           {"S_I_paper_literal", p.S_I_paper}});
        json out = {{"phi", curve.phi},
                    {"n_s", chosen->n0},
                    {"points", arr}};
        payload = out.dump(2) + "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, payload, secs);
    return 0;
}

int cmd_oracle_compare(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    json records = json::array();
    if (cfg.oracle_mode == "two-mode") {
        if (!cfg.two_mode) throw ConfigError("two-mode oracle needs a two_mode block");
        const TwoModeSpec& s = *cfg.two_mode;
        const TwoModeResult r = two_mode_oracle(s);
        // zeroth-order effective model prediction (Langevin kappa/2 convention)
        const double f = -s.G * s.chi / s.delta_b;
        const double delta_eff = s.delta_c - s.G * s.G / s.delta_b;
        const double n_pred =
            f * f / (s.kappa * s.kappa / 4.0 + delta_eff * delta_eff);
        records.push_back({{"spec",
                            {{"delta_c", s.delta_c},
                             {"delta_b", s.delta_b},
                             {"G", s.G},
                             {"chi", s.chi},
                             {"kappa", s.kappa},
                             {"gamma", s.gamma},
                             {"cavity_cutoff", s.cavity_cutoff},
                             {"collective_cutoff", s.collective_cutoff}}},
                           {"n", r.n_cavity},
                           {"g2_0", r.g2_cavity},
                           {"n_collective", r.n_collective},
                           {"residual", r.residual},
                           {"predicted_n", n_pred}});
    } else {
        if (!cfg.sweep) throw ConfigError("oracle-compare scan needs a sweep block");
        const auto grid = make_grid(*cfg.sweep);
        const auto points = g2_scan(cfg.params, grid, true, cfg.workers, cfg.solver);
        for (const auto& p : points) {
            if (!p.has_root) {
                records.push_back({{"g", p.g}, {"has_root", false}});
                continue;
            }
            SystemParams sp = cfg.params;
            sp.g = p.g;
            const KerrModel k = reduce_kerr(derive_nonlinear_model(sp));
            records.push_back(
                {{"g", p.g},
                 {"has_root", true},
                 {"spec",
                  {{"detuning", k.delta_eff_k},
                   {"kerr", k.chi_kerr},
                   {"zeta", k.zeta},
                   {"mu", 0.0},
                   {"drive", k.F_prime},
                   {"kappa", sp.kappa}}},
                 {"n", p.oracle_n ? *p.oracle_n : 0.0},
                 {"g2_0", p.oracle_g2 ? *p.oracle_g2 : 0.0},
                 {"lin_n_bar", p.corr.n_bar},
                 {"lin_g2_0", p.corr.g2_0},
                 {"fluctuation_ratio",
                  p.corr.n0 > 0.0 ? std::abs(p.corr.C12) / p.corr.n0 : 0.0}});
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(cfg, records.dump(2) + "\n", secs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective-model cavity nonlinear-optics toolkit"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON config file")->required();
    app.add_option("--out", opt.out_path, "output path (default: stdout)");
    app.add_option("--format", opt.format, "csv|json");
    app.add_option("--workers", opt.workers, "worker threads for sweeps");
    double phi_val = 0.0;
    auto* phi_opt =
        app.add_option("--phi", phi_val, "spectrum quadrature phase override (rad)");

    const char* tasks[] = {"params",  "response", "steady-scan",
                           "g2-scan", "spectrum", "oracle-compare"};
    for (const char* t : tasks) app.add_subcommand(t)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (phi_opt->count() > 0) opt.phi = phi_val;
    const std::string task = app.get_subcommands().front()->get_name();

    try {
        const RunConfig cfg = effective_config(opt, task);
        if (task == "params") return cmd_params(cfg);
        if (task == "response") return cmd_response(cfg);
        if (task == "steady-scan") return cmd_steady_scan(cfg);
        if (task == "g2-scan") return cmd_g2_scan(cfg);
        if (task == "spectrum") return cmd_spectrum(cfg);
        return cmd_oracle_compare(cfg);
    } catch (const cavopt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
