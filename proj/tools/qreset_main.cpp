#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qreset/errors.hpp"
#include "qreset/runner.hpp"
#include "qreset/version.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string model;
    std::string schedule;
    std::string theta_grid;
    std::string r_grid;
    double eps = 0.0;
    std::size_t max_steps = 0;
    std::string observables;
    std::string output_path;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::size_t samples = 0;
    std::size_t horizon = 0;
    double res_tol = 0.0;
    double tail_tol = 0.0;
    bool emit_matrices = false;
};

qreset::GridSpec parse_grid(const std::string& text, const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4)
        throw qreset::ConfigError(flag + " expects min,max,count[,linear|log]");
    qreset::GridSpec g;
    try {
        g.min = std::stod(parts[0]);
        g.max = std::stod(parts[1]);
        g.count = static_cast<std::size_t>(std::stoull(parts[2]));
    } catch (const std::exception&) {
        throw qreset::ConfigError(flag + ": cannot parse '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") g.log_spacing = true;
        else if (parts[3] == "linear") g.log_spacing = false;
        else throw qreset::ConfigError(flag + " spacing must be 'linear' or 'log'");
    }
    return g;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

void add_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--config", o.config_path, "JSON config file; flags override its fields");
    sub->add_option("--model", o.model, "'noninteracting', 'entangling' or a matrix .json path");
    sub->add_option("--schedule", o.schedule,
                    "e.g. poisson:r=0.3 | powerlaw:gamma=0.2,alpha=2 | deterministic:l=5 | "
                    "explicit:[0.1,0.2]");
    sub->add_option("--theta_grid", o.theta_grid, "min,max,count[,linear|log]");
    sub->add_option("--r_grid", o.r_grid, "min,max,count[,linear|log]");
    sub->add_option("--eps", o.eps, "convergence threshold on ||delta rho||_1");
    sub->add_option("--max_steps", o.max_steps, "time-step budget");
    sub->add_option("--observables", o.observables,
                    "comma list of zz,concurrence,lqu,magnetization");
    sub->add_option("--output_path", o.output_path, "output stem; writes <stem>.csv/.json + .meta.json");
    sub->add_option("--seed", o.seed, "RNG seed (montecarlo)");
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--samples", o.samples, "trajectory count (montecarlo)");
    sub->add_option("--horizon", o.horizon, "trajectory length (montecarlo)");
    sub->add_option("--res_tol", o.res_tol, "resonance tolerance on |theta dlambda/2pi - k|");
    sub->add_option("--tail_tol", o.tail_tol, "series truncation tolerance");
    sub->add_flag("--emit_matrices", o.emit_matrices,
                  "also write weak-reset-limit matrices (weaklimit/resonances)");
}

void apply_overrides(const CLI::App* sub, const CliOptions& o, qreset::RunConfig& cfg) {
    if (sub->count("--model")) cfg.model = o.model;
    if (sub->count("--schedule")) cfg.schedule = o.schedule;
    if (sub->count("--theta_grid")) cfg.theta_grid = parse_grid(o.theta_grid, "--theta_grid");
    if (sub->count("--r_grid")) cfg.r_grid = parse_grid(o.r_grid, "--r_grid");
    if (sub->count("--eps")) cfg.eps = o.eps;
    if (sub->count("--max_steps")) cfg.max_steps = o.max_steps;
    if (sub->count("--observables")) cfg.observables = split_names(o.observables);
    if (sub->count("--output_path")) cfg.output_path = o.output_path;
    if (sub->count("--seed")) cfg.seed = o.seed;
    if (sub->count("--workers")) cfg.workers = o.workers;
    if (sub->count("--samples")) cfg.samples = o.samples;
    if (sub->count("--horizon")) cfg.horizon = o.horizon;
    if (sub->count("--res_tol")) cfg.res_tol = o.res_tol;
    if (sub->count("--tail_tol")) cfg.tail_tol = o.tail_tol;
    if (sub->count("--emit_matrices")) cfg.emit_matrices = o.emit_matrices;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time unitary dynamics interrupted by stochastic resets"};
    app.set_version_flag("--version", qreset::version);
    app.require_subcommand(1);

    CliOptions options;
    for (const auto& [name, desc] :
         std::vector<std::pair<const char*, const char*>>{
             {"sweep", "steady-state observables over a (theta, r) grid"},
             {"timeseries", "evolve the mixture under a reset schedule"},
             {"resonances", "enumerate resonant theta* of a generator"},
             {"weaklimit", "r -> 0 steady states over a theta grid"},
             {"montecarlo", "sampled trajectories vs exact occupation statistics"}}) {
        add_options(app.add_subcommand(name, desc), options);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help/diagnostic
        return code == 0 ? 0 : 2;     // bad flags are configuration errors
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        qreset::RunConfig config;
        if (sub->count("--config")) config = qreset::load_config(options.config_path);
        config.mode = sub->get_name();
        apply_overrides(sub, options, config);
        return qreset::execute(config);
    } catch (const qreset::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const qreset::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
