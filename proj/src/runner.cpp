#include "qreset/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <functional>
#include <thread>

#include "qreset/eig.hpp"
#include "qreset/errors.hpp"
#include "qreset/io.hpp"
#include "qreset/kernels.hpp"
#include "qreset/version.hpp"

namespace qreset {

std::vector<double> grid_points(const GridSpec& g) {
    if (g.count < 1) throw ConfigError("grid count must be >= 1");
    if (g.count == 1) return {g.min};
    if (g.max < g.min) throw ConfigError("grid max must be >= min");
    std::vector<double> pts(g.count);
    if (g.log_spacing) {
        if (!(g.min > 0.0)) throw ConfigError("log-spaced grid needs min > 0");
        const double lo = std::log(g.min), hi = std::log(g.max);
        for (std::size_t i = 0; i < g.count; ++i)
            pts[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(g.count - 1));
    } else {
        for (std::size_t i = 0; i < g.count; ++i)
            pts[i] = g.min + (g.max - g.min) * static_cast<double>(i) /
                                 static_cast<double>(g.count - 1);
    }
    return pts;
}

namespace {

GridSpec grid_from_json(const nlohmann::json& j, const std::string& field) {
    GridSpec g;
    if (!j.is_object()) throw ConfigError(field + " must be an object {min,max,count[,spacing]}");
    for (const auto& [key, value] : j.items()) {
        if (key == "min") g.min = value.get<double>();
        else if (key == "max") g.max = value.get<double>();
        else if (key == "count") g.count = value.get<std::size_t>();
        else if (key == "spacing") {
            const std::string s = value.get<std::string>();
            if (s == "log") g.log_spacing = true;
            else if (s == "linear") g.log_spacing = false;
            else throw ConfigError(field + ".spacing must be 'linear' or 'log'");
        } else {
            throw ConfigError("unknown field " + field + "." + key);
        }
    }
    return g;
}

nlohmann::json grid_to_json(const GridSpec& g) {
    return {{"min", g.min},
            {"max", g.max},
            {"count", g.count},
            {"spacing", g.log_spacing ? "log" : "linear"}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

StateVector basis_state(std::size_t dim) {
    StateVector v(dim, Complex(0.0));
    v[0] = 1.0;
    return v;
}

GateModel model_at(const ComplexMatrix& generator, double theta) {
    return GateModel(generator, theta, basis_state(generator.dim()));
}

void run_workers(std::size_t jobs, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (jobs + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = std::min<std::size_t>(w * chunk, jobs);
        const std::size_t hi = std::min<std::size_t>(lo + chunk, jobs);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "mode") c.mode = value.get<std::string>();
            else if (key == "model") c.model = value.get<std::string>();
            else if (key == "schedule") c.schedule = value.get<std::string>();
            else if (key == "theta_grid") c.theta_grid = grid_from_json(value, key);
            else if (key == "r_grid") c.r_grid = grid_from_json(value, key);
            else if (key == "eps") c.eps = value.get<double>();
            else if (key == "max_steps") c.max_steps = value.get<std::size_t>();
            else if (key == "observables") c.observables = value.get<std::vector<std::string>>();
            else if (key == "output_path") c.output_path = value.get<std::string>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "workers") c.workers = value.get<unsigned>();
            else if (key == "samples") c.samples = value.get<std::size_t>();
            else if (key == "horizon") c.horizon = value.get<std::size_t>();
            else if (key == "res_tol") c.res_tol = value.get<double>();
            else if (key == "tail_tol") c.tail_tol = value.get<double>();
            else if (key == "emit_matrices") c.emit_matrices = value.get<bool>();
            else throw ConfigError("unknown config field: " + key);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad value for config field '" + key + "': " + e.what());
        }
    }
    return c;
}

nlohmann::json RunConfig::to_json() const {
    return {{"mode", mode},
            {"model", model},
            {"schedule", schedule},
            {"theta_grid", grid_to_json(theta_grid)},
            {"r_grid", grid_to_json(r_grid)},
            {"eps", eps},
            {"max_steps", max_steps},
            {"observables", observables},
            {"output_path", output_path},
            {"seed", seed},
            {"workers", workers},
            {"samples", samples},
            {"horizon", horizon},
            {"res_tol", res_tol},
            {"tail_tol", tail_tol},
            {"emit_matrices", emit_matrices}};
}

void RunConfig::validate() const {
    static const std::vector<std::string> modes = {"sweep", "timeseries", "resonances",
                                                   "weaklimit", "montecarlo"};
    if (std::find(modes.begin(), modes.end(), mode) == modes.end())
        throw ConfigError("unknown mode: '" + mode + "'");
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (theta_grid.count < 1 || r_grid.count < 1) throw ConfigError("grids must be non-empty");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (output_path.empty()) throw ConfigError("output_path must not be empty");
    if (mode == "montecarlo" && samples < 1) throw ConfigError("samples must be >= 1");
}

RunConfig load_config(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const IoError& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return RunConfig::from_json(j);
}

ComplexMatrix resolve_generator(const std::string& model) {
    if (model == "noninteracting") return noninteracting_generator();
    if (model == "entangling") return entangling_generator();
    if (model.size() > 5 && model.substr(model.size() - 5) == ".json") {
        ComplexMatrix m = load_matrix(model);
        if (!m.is_hermitian(1e-12 * std::max(1.0, m.max_abs())))
            throw ConfigError("model matrix in '" + model + "' is not Hermitian");
        return m;
    }
    throw ConfigError("model must be 'noninteracting', 'entangling' or a .json matrix path");
}

SweepResult run_sweep(const RunConfig& config) {
    const std::vector<double> thetas = grid_points(config.theta_grid);
    const std::vector<double> rs = grid_points(config.r_grid);
    for (double r : rs)
        if (!(r > 0.0 && r <= 1.0))
            throw ConfigError("sweep r grid must lie in (0,1], got " + format_full(r));

    const ComplexMatrix generator = resolve_generator(config.model);
    if (generator.dim() != 4)
        throw ConfigError("sweep observables require a two-qubit (4x4) model");
    const SpectralDecomposition spec = hermitian_eig(generator);
    const StateVector psi0 = basis_state(generator.dim());

    SweepResult result;
    result.rows.resize(thetas.size() * rs.size());

    run_workers(thetas.size(), config.workers, [&](std::size_t it) {
        const double theta = thetas[it];
        const ComplexMatrix gate = gate_from_generator(spec, theta);
        for (std::size_t ir = 0; ir < rs.size(); ++ir) {
            const double r = rs[ir];
            const ComplexMatrix rho = steady_state_solve_from_gate(gate, psi0, r);
            if (!is_density(rho, 1e-9))
                throw Error("steady state failed the density check at theta=" +
                            format_full(theta) + ", r=" + format_full(r));
            result.rows[it * rs.size() + ir] = {theta, r, correlation_set(rho)};
        }
    });
    return result;
}

EvolutionRecord run_timeseries(const RunConfig& config) {
    if (config.theta_grid.count != 1)
        throw ConfigError("timeseries expects theta_grid.count == 1 (a single theta)");
    const ComplexMatrix generator = resolve_generator(config.model);
    const GateModel model = model_at(generator, config.theta_grid.min);
    const ResetSchedule schedule = ResetSchedule::parse(config.schedule);
    return evolve_until(model, schedule, config.eps, config.max_steps, config.observables);
}

ResonanceReport run_resonances(const RunConfig& config) {
    const ComplexMatrix generator = resolve_generator(config.model);
    return resonance_scan(generator, config.theta_grid.min, config.theta_grid.max,
                          config.res_tol);
}

SweepResult run_weaklimit(const RunConfig& config) {
    const std::vector<double> thetas = grid_points(config.theta_grid);
    const ComplexMatrix generator = resolve_generator(config.model);
    if (generator.dim() != 4)
        throw ConfigError("weak-limit observables require a two-qubit (4x4) model");

    SweepResult result;
    result.rows.resize(thetas.size());
    run_workers(thetas.size(), config.workers, [&](std::size_t it) {
        const GateModel model = model_at(generator, thetas[it]);
        const ComplexMatrix rho = weak_reset_limit(model, config.res_tol);
        if (!is_density(rho, 1e-9))
            throw Error("weak-reset limit failed the density check at theta=" +
                        format_full(thetas[it]));
        result.rows[it] = {thetas[it], 0.0, correlation_set(rho)};
    });
    return result;
}

MonteCarloResult run_montecarlo(const RunConfig& config) {
    if (config.samples < 1) throw ConfigError("samples must be >= 1");
    const ResetSchedule schedule = ResetSchedule::parse(config.schedule);

    MonteCarloResult result;
    result.empirical = empirical_distribution(schedule, config.horizon, config.samples,
                                              config.seed, config.workers);
    std::vector<double> probs = {1.0};
    for (std::size_t t = 0; t < config.horizon; ++t)
        probs = step_probabilities(probs, schedule);
    result.exact = std::move(probs);
    result.tv_distance = total_variation(result.empirical, result.exact);
    return result;
}

namespace {

CsvTable sweep_table(const SweepResult& result) {
    CsvTable csv({"theta", "r", "zz_corr", "concurrence", "lqu", "magnetization"});
    for (const auto& row : result.rows)
        csv.add_row({row.theta, row.r, row.obs.zz_corr, row.obs.concurrence, row.obs.lqu,
                     row.obs.magnetization});
    return csv;
}

void write_meta(const RunConfig& config, nlohmann::json results) {
    nlohmann::json meta = {{"version", version},
                           {"timestamp", utc_timestamp()},
                           {"kernels_backend", kernels::backend_name(kernels::active_backend())},
                           {"config", config.to_json()},
                           {"results", std::move(results)}};
    write_text_file(config.output_path + ".meta.json", meta.dump(2) + "\n");
}

} // namespace

int execute(const RunConfig& config) {
    config.validate();

    if (config.mode == "sweep") {
        const SweepResult result = run_sweep(config);
        write_text_file(config.output_path + ".csv", sweep_table(result).to_string());
        write_meta(config, {{"rows", result.rows.size()}});
        return 0;
    }

    if (config.mode == "weaklimit") {
        const SweepResult result = run_weaklimit(config);
        write_text_file(config.output_path + ".csv", sweep_table(result).to_string());
        if (config.emit_matrices) {
            const ComplexMatrix generator = resolve_generator(config.model);
            nlohmann::json matrices = nlohmann::json::array();
            for (const auto& row : result.rows) {
                const GateModel model = model_at(generator, row.theta);
                matrices.push_back({{"theta", row.theta},
                                    {"matrix", matrix_to_json(weak_reset_limit(model, config.res_tol))}});
            }
            write_text_file(config.output_path + ".matrices.json", matrices.dump(2) + "\n");
        }
        write_meta(config, {{"rows", result.rows.size()}});
        return 0;
    }

    if (config.mode == "timeseries") {
        const EvolutionRecord rec = run_timeseries(config);
        std::vector<std::string> header = {"t", "delta_norm"};
        for (const auto& name : rec.observable_names) header.push_back(name);
        CsvTable csv(std::move(header));
        for (std::size_t k = 0; k < rec.times.size(); ++k) {
            std::vector<double> row = {static_cast<double>(rec.times[k]), rec.delta_norms[k]};
            for (const auto& trace : rec.observable_traces) row.push_back(trace[k]);
            csv.add_row(row);
        }
        write_text_file(config.output_path + ".csv", csv.to_string());
        // non-convergence is a reported outcome, not a failure
        write_meta(config, {{"converged", rec.converged},
                            {"steps_used", rec.steps_used},
                            {"final_delta_norm",
                             rec.delta_norms.empty() ? 0.0 : rec.delta_norms.back()},
                            {"pruned_mass", rec.pruned_mass}});
        return 0;
    }

    if (config.mode == "resonances") {
        const ResonanceReport report = run_resonances(config);
        nlohmann::json j = report_to_json(report);
        if (config.emit_matrices) {
            const ComplexMatrix generator = resolve_generator(config.model);
            for (std::size_t i = 0; i < report.resonances.size(); ++i) {
                const GateModel model = model_at(generator, report.resonances[i].theta);
                j["resonances"][i]["weak_reset_limit"] =
                    matrix_to_json(weak_reset_limit(model, config.res_tol));
            }
        }
        write_text_file(config.output_path + ".json", j.dump(2) + "\n");
        write_meta(config, {{"resonance_count", report.resonances.size()},
                            {"degenerate_pairs", report.degenerate_pairs.size()}});
        return 0;
    }

    if (config.mode == "montecarlo") {
        const MonteCarloResult result = run_montecarlo(config);
        CsvTable csv({"n", "empirical_p", "exact_p", "abs_error"});
        for (std::size_t n = 0; n < result.empirical.size(); ++n)
            csv.add_row({static_cast<double>(n), result.empirical[n], result.exact[n],
                         std::abs(result.empirical[n] - result.exact[n])});
        csv.add_comment("total_variation=" + format_full(result.tv_distance));
        write_text_file(config.output_path + ".csv", csv.to_string());
        write_meta(config, {{"total_variation", result.tv_distance},
                            {"samples", config.samples},
                            {"horizon", config.horizon}});
        return 0;
    }

    throw ConfigError("unknown mode: " + config.mode);
}

} // namespace qreset
