#pragma once

#include <string>

#include "qreset/matrix.hpp"

namespace qreset {

/// Correlation measures on a two-qubit state, one sweep-grid row.
struct CorrelationSet {
    double zz_corr = 0.0;
    double concurrence = 0.0;
    double lqu = 0.0;
    double magnetization = 0.0;
};

/// <sz sz> - <sz^(1)><sz^(2)>
double zz_correlation(const ComplexMatrix& rho);

/// Hill-Wootters concurrence: max(0, mu0 - mu1 - mu2 - mu3) with mu_i the
/// descending eigenvalues of (rho^1/2 rho~ rho^1/2)^1/2,
/// rho~ = (sy x sy) rho* (sy x sy).
double concurrence(const ComplexMatrix& rho);

/// Local quantum uncertainty: 1 - nu_max, nu_max the largest eigenvalue of
/// the 3x3 matrix W_ij = tr(sqrt(rho) sigma_i^(1) sqrt(rho) sigma_j^(1)).
double lqu(const ComplexMatrix& rho);

/// tr[rho (sz^(1) + sz^(2))]
double magnetization(const ComplexMatrix& rho);

CorrelationSet correlation_set(const ComplexMatrix& rho);

/// f(r,x) = r (1-(1-r)cos x) / (1+(1-r)^2-2(1-r)cos x); the resummed
/// geometric series r sum_j (1-r)^j cos(jx).
double analytic_f(double r, double x);

/// Closed-form steady-state zz correlator of the noninteracting model:
/// (1+f(r,4 theta))/2 - f(r,2 theta)^2.
double analytic_zz_correlation(double r, double theta);

using ObservableFn = double (*)(const ComplexMatrix&);

/// "zz" | "concurrence" | "lqu" | "magnetization"; throws ConfigError.
ObservableFn observable_by_name(const std::string& name);

} // namespace qreset
