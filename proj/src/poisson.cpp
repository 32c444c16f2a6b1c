#include "qreset/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "qreset/eig.hpp"
#include "qreset/errors.hpp"

namespace qreset {

namespace {

void require_rate(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidRate("reset rate must lie in (0,1]");
}

double degeneracy_tol(const ComplexMatrix& generator) {
    return 1e-9 * std::max(1.0, one_norm(generator));
}

// is theta*(li - lj) a nonzero multiple of 2 pi, within res_tol on
// |theta dl / 2pi - k|
bool is_resonant(double theta, double li, double lj, double res_tol) {
    const double x = theta * (li - lj) / (2.0 * M_PI);
    const double k = std::round(x);
    return k != 0.0 && std::abs(x - k) < res_tol;
}

} // namespace

ComplexMatrix steady_state_series(const GateModel& model, double r, double tail_tol) {
    require_rate(r);
    const ComplexMatrix gate = model.unitary();
    const std::size_t d = model.dim();
    const double q = 1.0 - r;

    ComplexMatrix rho(d);
    StateVector branch = model.initial_state();
    double weight = r;   // r (1-r)^n
    double qpow = q;     // (1-r)^(n+1)
    for (;;) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                rho(i, j) += weight * branch[i] * std::conj(branch[j]);
        if (qpow < tail_tol) break;
        branch = gate.apply(branch);
        weight *= q;
        qpow *= q;
    }
    return rho;
}

ComplexMatrix steady_state_solve_from_gate(const ComplexMatrix& gate, const StateVector& psi0,
                                           double r) {
    require_rate(r);
    const std::size_t d = gate.dim();
    if (psi0.size() != d) throw BadDimension("reset state length does not match gate dim");

    // row-major vectorization: |rho>>[i*d+j] = rho(i,j), so the map
    // rho -> U rho U^dag becomes U (x) U*
    const ComplexMatrix propagator = kron(gate, gate.conjugate());
    ComplexMatrix system = ComplexMatrix::identity(d * d);
    for (std::size_t a = 0; a < d * d; ++a)
        for (std::size_t b = 0; b < d * d; ++b)
            system(a, b) -= (1.0 - r) * propagator(a, b);

    StateVector rhs(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rhs[i * d + j] = r * psi0[i] * std::conj(psi0[j]);

    const StateVector solution = solve_linear(std::move(system), std::move(rhs));
    ComplexMatrix rho(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho(i, j) = solution[i * d + j];
    return rho;
}

ComplexMatrix steady_state_solve(const GateModel& model, double r) {
    return steady_state_solve_from_gate(model.unitary(), model.initial_state(), r);
}

ComplexMatrix weak_reset_limit(const GateModel& model, double res_tol) {
    const SpectralDecomposition& spec = model.spectrum();
    const ComplexMatrix& v = spec.eigenvectors;
    const std::size_t d = model.dim();
    const double deg_tol = degeneracy_tol(model.generator());

    StateVector c(d, Complex(0.0));
    const StateVector& psi0 = model.initial_state();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            c[i] += std::conj(v(k, i)) * psi0[k];

    ComplexMatrix in_eigenbasis(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) {
                in_eigenbasis(i, i) = std::norm(c[i]);
                continue;
            }
            const double li = spec.eigenvalues[i], lj = spec.eigenvalues[j];
            const bool keep = std::abs(li - lj) <= deg_tol ||
                              is_resonant(model.theta(), li, lj, res_tol);
            if (keep) in_eigenbasis(i, j) = c[i] * std::conj(c[j]);
        }

    ComplexMatrix rho(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    acc += v(i, a) * in_eigenbasis(a, b) * std::conj(v(j, b));
            rho(i, j) = acc;
        }
    return rho;
}

ResonanceReport resonance_scan(const ComplexMatrix& generator, double theta_min,
                               double theta_max, double res_tol) {
    if (!(res_tol > 0.0)) throw ConfigError("res_tol must be positive");
    if (theta_max < theta_min) throw ConfigError("empty theta range must have min <= max");

    const SpectralDecomposition spec = hermitian_eig(generator);
    const int d = static_cast<int>(generator.dim());
    const double deg_tol = degeneracy_tol(generator);

    ResonanceReport report;
    struct Candidate {
        double theta;
        std::array<int, 3> pair;
    };
    std::vector<Candidate> candidates;

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double gap = spec.eigenvalues[j] - spec.eigenvalues[i];
            if (gap <= deg_tol) {
                report.degenerate_pairs.push_back({i, j});
                continue;
            }
            // res_tol-wide slack on the interval ends so eigenvalue roundoff
            // cannot pull theta* = theta_max into the half-open range
            for (int k = 1;; ++k) {
                const double theta = 2.0 * M_PI * k / gap;
                if (theta >= theta_max - res_tol) break;
                if (theta >= theta_min - res_tol)
                    candidates.push_back({theta, {i, j, k}});
            }
        }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.pair < b.pair;
    });

    for (const auto& cand : candidates) {
        if (!report.resonances.empty() &&
            std::abs(cand.theta - report.resonances.back().theta) < res_tol) {
            report.resonances.back().pairs.push_back(cand.pair);
        } else {
            report.resonances.push_back({cand.theta, {cand.pair}});
        }
    }
    for (auto& entry : report.resonances) std::sort(entry.pairs.begin(), entry.pairs.end());
    return report;
}

} // namespace qreset
