#pragma once

#include <cstdint>
#include <vector>

#include "qreset/schedules.hpp"

namespace qreset {

/// A single realization: the branch of the reset tree a run followed.
struct Trajectory {
    std::vector<std::size_t> reset_times; // arrival times of reset events
    std::size_t final_n = 0;              // gate applications since the last reset
    std::uint64_t seed = 0;
};

/// Walk one trajectory to `horizon`; at each step the reset fires with
/// probability r_n, n = updates since the last reset. Deterministic in
/// (schedule, horizon, seed) through the counter-based generator.
Trajectory sample_trajectory(const ResetSchedule& s, std::size_t horizon, std::uint64_t seed);

/// Normalized histogram of final_n over `samples` trajectories — the Monte
/// Carlo estimator of P_n(horizon). Sample i draws from stream i of the
/// keyed generator, so the result is independent of worker count.
std::vector<double> empirical_distribution(const ResetSchedule& s, std::size_t horizon,
                                           std::size_t samples, std::uint64_t seed,
                                           unsigned workers = 1);

/// 0.5 * sum_n |a_n - b_n|
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

} // namespace qreset
