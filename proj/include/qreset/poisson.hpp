#pragma once

#include <array>
#include <vector>

#include "qreset/matrix.hpp"
#include "qreset/models.hpp"

namespace qreset {

/// Resonant and degenerate level pairs of a generator over a theta interval.
struct ResonanceReport {
    struct Entry {
        double theta = 0.0;
        std::vector<std::array<int, 3>> pairs; // (i, j, k), i < j, k >= 1
    };
    std::vector<std::array<int, 2>> degenerate_pairs; // resonant at every theta
    std::vector<Entry> resonances;                    // sorted by theta
};

/// Truncated geometric series r sum_n (1-r)^n |n><n|, cut when
/// (1-r)^(N+1) < tail_tol.
ComplexMatrix steady_state_series(const GateModel& model, double r, double tail_tol = 1e-14);

/// Exact steady state through the vectorized map: solve
/// (1 - (1-r) U (x) U*) |rho>> = r |rho_0>> in the doubled space.
ComplexMatrix steady_state_solve(const GateModel& model, double r);

/// Same, reusing a prebuilt gate (grid sweeps share the spectral work).
ComplexMatrix steady_state_solve_from_gate(const ComplexMatrix& gate, const StateVector& psi0,
                                           double r);

/// r -> 0 limit of the Poissonian steady state: diagonal in the generator
/// eigenbasis except for degenerate or resonant pairs, which keep
/// <e_i|0><0|e_j>.
ComplexMatrix weak_reset_limit(const GateModel& model, double res_tol = 1e-9);

/// Enumerate theta* = 2 pi k / (lambda_j - lambda_i) in [theta_min, theta_max)
/// over all nondegenerate level pairs and k >= 1; duplicates within res_tol
/// merge their provenance.
ResonanceReport resonance_scan(const ComplexMatrix& generator, double theta_min,
                               double theta_max, double res_tol = 1e-9);

} // namespace qreset
