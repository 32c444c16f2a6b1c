#include "qreset/montecarlo.hpp"

#include <cmath>
#include <thread>

#include "qreset/errors.hpp"
#include "qreset/kernels.hpp"

namespace qreset {

namespace {

// rates r_0..r_{horizon-1}; n never exceeds the step count
std::vector<double> rate_table(const ResetSchedule& s, std::size_t horizon) {
    std::vector<double> rates(horizon);
    for (std::size_t n = 0; n < horizon; ++n) rates[n] = s.prob_at(n);
    return rates;
}

std::size_t walk(const std::vector<double>& rates, const double* uniforms, std::size_t horizon,
                 std::vector<std::size_t>* reset_times) {
    std::size_t n = 0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        if (uniforms[t - 1] < rates[n]) {
            n = 0;
            if (reset_times) reset_times->push_back(t);
        } else {
            ++n;
        }
    }
    return n;
}

} // namespace

Trajectory sample_trajectory(const ResetSchedule& s, std::size_t horizon, std::uint64_t seed) {
    Trajectory traj;
    traj.seed = seed;
    if (horizon == 0) return traj;
    const std::vector<double> rates = rate_table(s, horizon);
    std::vector<double> uniforms(horizon);
    kernels::philox_uniforms(seed, 0, 0, horizon, uniforms.data());
    traj.final_n = walk(rates, uniforms.data(), horizon, &traj.reset_times);
    return traj;
}

std::vector<double> empirical_distribution(const ResetSchedule& s, std::size_t horizon,
                                           std::size_t samples, std::uint64_t seed,
                                           unsigned workers) {
    if (samples < 1) throw ConfigError("empirical_distribution needs samples >= 1");
    if (workers < 1) workers = 1;

    const std::vector<double> rates = rate_table(s, horizon);
    std::vector<std::vector<std::uint64_t>> counts(workers,
                                                   std::vector<std::uint64_t>(horizon + 1, 0));

    auto run_range = [&](unsigned worker, std::size_t lo, std::size_t hi) {
        std::vector<double> uniforms(std::max<std::size_t>(horizon, 1));
        auto& local = counts[worker];
        for (std::size_t i = lo; i < hi; ++i) {
            if (horizon > 0)
                kernels::philox_uniforms(seed, i, 0, horizon, uniforms.data());
            local[walk(rates, uniforms.data(), horizon, nullptr)] += 1;
        }
    };

    if (workers == 1) {
        run_range(0, 0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (samples + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = std::min<std::size_t>(w * chunk, samples);
            const std::size_t hi = std::min<std::size_t>(lo + chunk, samples);
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> hist(horizon + 1, 0.0);
    for (const auto& local : counts)
        for (std::size_t n = 0; n <= horizon; ++n)
            hist[n] += static_cast<double>(local[n]);
    for (double& h : hist) h /= static_cast<double>(samples);
    return hist;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw BadDimension("distributions differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

} // namespace qreset
