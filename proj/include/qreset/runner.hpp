#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreset/ensemble.hpp"
#include "qreset/montecarlo.hpp"
#include "qreset/observables.hpp"
#include "qreset/poisson.hpp"

namespace qreset {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;
    bool log_spacing = false;
};

/// Inclusive grid; count == 1 collapses to {min}.
std::vector<double> grid_points(const GridSpec& g);

/// Batch-run configuration. JSON config file plus CLI overrides feed this.
struct RunConfig {
    std::string mode;                       // sweep|timeseries|resonances|weaklimit|montecarlo
    std::string model = "noninteracting";   // registry name or matrix JSON path
    std::string schedule = "poisson:r=0.5";
    GridSpec theta_grid{0.0, 3.141592653589793, 200, false};
    GridSpec r_grid{0.01, 1.0, 200, false};
    double eps = 1e-10;
    std::size_t max_steps = 10000;
    std::vector<std::string> observables = {"magnetization"};
    std::string output_path = "qreset_out";
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t samples = 1000000; // montecarlo
    std::size_t horizon = 50;      // montecarlo
    double res_tol = 1e-9;
    double tail_tol = 1e-14;
    bool emit_matrices = false;

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

RunConfig load_config(const std::string& path);

/// The generator for a config's model field (registry name or .json matrix).
ComplexMatrix resolve_generator(const std::string& model);

struct SweepRow {
    double theta = 0.0;
    double r = 0.0;
    CorrelationSet obs;
};

struct SweepResult {
    std::vector<SweepRow> rows; // theta outer, r inner
};

struct MonteCarloResult {
    std::vector<double> empirical;
    std::vector<double> exact;
    double tv_distance = 0.0;
};

SweepResult run_sweep(const RunConfig& config);
EvolutionRecord run_timeseries(const RunConfig& config);
ResonanceReport run_resonances(const RunConfig& config);
SweepResult run_weaklimit(const RunConfig& config);
MonteCarloResult run_montecarlo(const RunConfig& config);

/// Dispatch on config.mode, write <output_path>.csv / .json plus
/// <output_path>.meta.json. Returns 0; failures surface as exceptions.
int execute(const RunConfig& config);

} // namespace qreset
