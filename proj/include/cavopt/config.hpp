#ifndef CAVOPT_CONFIG_HPP
#define CAVOPT_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cavopt/fock_oracle.hpp"
#include "cavopt/model.hpp"
#include "cavopt/steady_state.hpp"

namespace cavopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log_scale = false;
};

std::vector<double> make_grid(const SweepSpec& s);

struct RunConfig {
    SystemParams params;
    std::string task;  // optional in the file; must match the subcommand
    ModelFamily model = ModelFamily::kerr;
    std::optional<SweepSpec> sweep;
    SolverConfig solver;
    std::optional<double> phi;
    bool with_oracle = false;
    int workers = 1;
    std::string out_path;
    std::string format = "csv";
    std::string oracle_mode = "one-mode-scan";  // or "two-mode"
    std::optional<TwoModeSpec> two_mode;
    nlohmann::json raw;  // config echo for the run manifest
};

// Strict schema: unknown keys anywhere are a ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& j);

// full double precision, locale-independent
std::string format_double(double v);

}  // namespace cavopt

#endif
