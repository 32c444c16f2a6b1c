#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qreset/matrix.hpp"
#include "qreset/models.hpp"
#include "qreset/schedules.hpp"

namespace qreset {

/// Snapshot of the full statistical mixture at time t.
struct EnsembleState {
    std::size_t t = 0;
    std::vector<double> probs;         // P_0(t)..P_n(t)
    std::vector<StateVector> branches; // |n_theta> = U^n |0>
    ComplexMatrix rho;
};

/// Time series produced by evolve_until. Rows start at t=1 since the
/// recorded delta is ||rho(t) - rho(t-1)||_1.
struct EvolutionRecord {
    std::vector<std::size_t> times;
    std::vector<std::string> observable_names;
    std::vector<std::vector<double>> observable_traces; // one trace per name
    std::vector<double> delta_norms;
    bool converged = false;
    std::size_t steps_used = 0;
    double pruned_mass = 0.0;
};

/// One application of the R(t) transfer matrix: new P_0 = sum_n r_n P_n,
/// new P_{n+1} = (1 - r_n) P_n. Output has one more entry than the input.
std::vector<double> step_probabilities(const std::vector<double>& probs, const ResetSchedule& s);

/// rho = sum_n P_n |n><n| (reference implementation; the evolver uses the
/// vectorized kernel path, and the two are tested against each other).
ComplexMatrix build_density(const std::vector<double>& probs,
                            const std::vector<StateVector>& branches);

/// rho(t) assembled through the last-renewal decomposition: P_0(tau) from the
/// renewal convolution, P_n(t) = P_0(t-n) prod_{j<n}(1-r_j).
ComplexMatrix renewal_density(const ResetSchedule& s, const GateModel& model, std::size_t t);

/// Delta rho(t) = rho(t+1) - rho(t) through the generator eigenbasis, using
/// Delta P_n and the phase ratios of the gate eigenvalues. Traceless by
/// probability conservation.
ComplexMatrix delta_rho_spectral(const GateModel& model, const std::vector<double>& probs_t,
                                 const std::vector<double>& probs_t1);

/// Incremental mixture evolution. Branch weights below the prune threshold
/// are dropped from the tail (the mass is renormalized away and logged);
/// per-step density assembly runs on the kernels backend.
class EnsembleEvolver {
public:
    EnsembleEvolver(const GateModel& model, const ResetSchedule& schedule,
                    double prune_threshold = 1e-16);

    void step();

    std::size_t t() const { return t_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<StateVector>& branches() const { return branches_; }
    const ComplexMatrix& density() const { return rho_; }
    /// ||rho(t) - rho(t-1)||_1; valid after the first step().
    double last_delta_norm() const { return delta_; }
    double pruned_mass() const { return pruned_mass_; }

    EnsembleState snapshot() const;

private:
    void ensure_rates(std::size_t n);
    void rebuild_density();

    GateModel model_;
    ResetSchedule schedule_;
    ComplexMatrix gate_;
    double prune_threshold_;

    std::size_t t_ = 0;
    std::vector<double> probs_;
    std::vector<StateVector> branches_;
    std::vector<double> outer_rows_; // branch outer products, re/im interleaved
    std::vector<double> rates_;      // r_0..r_{n-1}
    std::vector<double> survive_;    // 1 - r_n
    ComplexMatrix rho_;
    ComplexMatrix rho_prev_;
    double delta_ = 0.0;
    double pruned_mass_ = 0.0;
};

/// Iterate the ensemble until ||Delta rho||_1 < eps or max_steps is reached;
/// non-convergence is a reported outcome, not an error.
EvolutionRecord evolve_until(const GateModel& model, const ResetSchedule& s, double eps,
                             std::size_t max_steps, const std::vector<std::string>& observables);

} // namespace qreset
