#include "qreset/ensemble.hpp"

#include <cmath>
#include <numeric>

#include "qreset/eig.hpp"
#include "qreset/errors.hpp"
#include "qreset/kernels.hpp"
#include "qreset/observables.hpp"

namespace qreset {

namespace {

void pack_outer(const StateVector& v, double* row) {
    const std::size_t d = v.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Complex z = v[i] * std::conj(v[j]);
            row[2 * (i * d + j)] = z.real();
            row[2 * (i * d + j) + 1] = z.imag();
        }
}

} // namespace

std::vector<double> step_probabilities(const std::vector<double>& probs, const ResetSchedule& s) {
    const std::size_t n = probs.size();
    std::vector<double> rates(n), survive(n);
    for (std::size_t k = 0; k < n; ++k) {
        rates[k] = s.prob_at(k);
        survive[k] = 1.0 - rates[k];
    }
    std::vector<double> out(n + 1);
    out[0] = kernels::dot(rates.data(), probs.data(), n);
    kernels::elementwise_mul(survive.data(), probs.data(), out.data() + 1, n);
    return out;
}

ComplexMatrix build_density(const std::vector<double>& probs,
                            const std::vector<StateVector>& branches) {
    if (probs.size() != branches.size())
        throw BadDimension("probability and branch counts differ");
    if (branches.empty()) throw BadDimension("empty mixture");
    const std::size_t d = branches.front().size();
    ComplexMatrix rho(d);
    for (std::size_t n = 0; n < probs.size(); ++n) {
        const double p = probs[n];
        if (p == 0.0) continue;
        const StateVector& v = branches[n];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                rho(i, j) += p * v[i] * std::conj(v[j]);
    }
    return rho;
}

ComplexMatrix renewal_density(const ResetSchedule& s, const GateModel& model, std::size_t t) {
    // survival prefactors S_n = prod_{j<n}(1-r_j)
    std::vector<double> surv(t + 1);
    surv[0] = 1.0;
    for (std::size_t n = 1; n <= t; ++n) surv[n] = surv[n - 1] * (1.0 - s.prob_at(n - 1));

    // renewal convolution for the reset-time probability P_0(tau)
    std::vector<double> p0(t + 1);
    p0[0] = 1.0;
    for (std::size_t tau = 1; tau <= t; ++tau) {
        double acc = 0.0;
        for (std::size_t n = 0; n < tau; ++n)
            acc += s.prob_at(n) * surv[n] * p0[tau - 1 - n];
        p0[tau] = acc;
    }

    const ComplexMatrix gate = model.unitary();
    StateVector branch = model.initial_state();
    ComplexMatrix rho(model.dim());
    for (std::size_t n = 0; n <= t; ++n) {
        const double pn = p0[t - n] * surv[n];
        for (std::size_t i = 0; i < model.dim(); ++i)
            for (std::size_t j = 0; j < model.dim(); ++j)
                rho(i, j) += pn * branch[i] * std::conj(branch[j]);
        if (n < t) branch = gate.apply(branch);
    }
    return rho;
}

ComplexMatrix delta_rho_spectral(const GateModel& model, const std::vector<double>& probs_t,
                                 const std::vector<double>& probs_t1) {
    if (probs_t.empty() || probs_t1.size() != probs_t.size() + 1)
        throw BadDimension("probability vectors are not consecutive in time");
    const std::size_t t = probs_t.size() - 1;
    const std::size_t d = model.dim();
    const SpectralDecomposition& spec = model.spectrum();
    const ComplexMatrix& v = spec.eigenvectors;

    // overlaps c_i = <e_i|0>
    StateVector c(d, Complex(0.0));
    const StateVector& psi0 = model.initial_state();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            c[i] += std::conj(v(k, i)) * psi0[k];

    ComplexMatrix in_eigenbasis(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double phase = model.theta() * (spec.eigenvalues[i] - spec.eigenvalues[j]);
            Complex acc = probs_t1[t + 1] * std::polar(1.0, phase * static_cast<double>(t + 1));
            for (std::size_t n = 0; n <= t; ++n) {
                const double dp = probs_t1[n] - probs_t[n];
                if (dp == 0.0) continue;
                acc += dp * std::polar(1.0, phase * static_cast<double>(n));
            }
            in_eigenbasis(i, j) = acc * c[i] * std::conj(c[j]);
        }

    // back to the computational basis
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    acc += v(i, a) * in_eigenbasis(a, b) * std::conj(v(j, b));
            out(i, j) = acc;
        }
    return out;
}

EnsembleEvolver::EnsembleEvolver(const GateModel& model, const ResetSchedule& schedule,
                                 double prune_threshold)
    : model_(model), schedule_(schedule), gate_(model.unitary()),
      prune_threshold_(prune_threshold) {
    probs_ = {1.0};
    branches_ = {model_.initial_state()};
    const std::size_t row_len = 2 * model_.dim() * model_.dim();
    outer_rows_.resize(row_len);
    pack_outer(branches_[0], outer_rows_.data());
    rebuild_density();
    rho_prev_ = rho_;
}

void EnsembleEvolver::ensure_rates(std::size_t n) {
    while (rates_.size() < n) {
        const double r = schedule_.prob_at(rates_.size());
        rates_.push_back(r);
        survive_.push_back(1.0 - r);
    }
}

void EnsembleEvolver::rebuild_density() {
    const std::size_t d = model_.dim();
    const std::size_t row_len = 2 * d * d;
    std::vector<double> acc(row_len, 0.0);
    kernels::weighted_row_sum(probs_.data(), outer_rows_.data(), probs_.size(), row_len,
                              acc.data());
    rho_ = ComplexMatrix(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho_(i, j) = Complex(acc[2 * (i * d + j)], acc[2 * (i * d + j) + 1]);
}

void EnsembleEvolver::step() {
    const std::size_t n = probs_.size();
    const std::size_t d = model_.dim();
    const std::size_t row_len = 2 * d * d;
    ensure_rates(n);

    std::vector<double> next(n + 1);
    next[0] = kernels::dot(rates_.data(), probs_.data(), n);
    kernels::elementwise_mul(survive_.data(), probs_.data(), next.data() + 1, n);
    probs_ = std::move(next);

    if (branches_.size() < probs_.size()) {
        branches_.push_back(gate_.apply(branches_.back()));
        outer_rows_.resize(outer_rows_.size() + row_len);
        pack_outer(branches_.back(), outer_rows_.data() + (branches_.size() - 1) * row_len);
    }

    double pruned = 0.0;
    while (probs_.size() > 1 && probs_.back() < prune_threshold_) {
        pruned += probs_.back();
        probs_.pop_back();
        branches_.pop_back();
        outer_rows_.resize(outer_rows_.size() - row_len);
    }
    if (pruned > 0.0) {
        pruned_mass_ += pruned;
        const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
        if (total > 0.0)
            for (double& p : probs_) p /= total;
    }

    ++t_;
    rebuild_density();
    delta_ = one_norm(rho_ - rho_prev_);
    rho_prev_ = rho_;
}

EnsembleState EnsembleEvolver::snapshot() const {
    EnsembleState s;
    s.t = t_;
    s.probs = probs_;
    s.branches = branches_;
    s.rho = rho_;
    return s;
}

EvolutionRecord evolve_until(const GateModel& model, const ResetSchedule& s, double eps,
                             std::size_t max_steps, const std::vector<std::string>& observables) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (max_steps < 1) throw ConfigError("max_steps must be at least 1");

    std::vector<ObservableFn> fns;
    fns.reserve(observables.size());
    for (const auto& name : observables) fns.push_back(observable_by_name(name));

    EvolutionRecord rec;
    rec.observable_names = observables;
    rec.observable_traces.resize(observables.size());

    EnsembleEvolver evolver(model, s);
    for (std::size_t t = 1; t <= max_steps; ++t) {
        evolver.step();
        rec.times.push_back(t);
        rec.delta_norms.push_back(evolver.last_delta_norm());
        for (std::size_t k = 0; k < fns.size(); ++k)
            rec.observable_traces[k].push_back(fns[k](evolver.density()));
        if (evolver.last_delta_norm() < eps) {
            rec.converged = true;
            rec.steps_used = t;
            break;
        }
    }
    if (!rec.converged) rec.steps_used = max_steps;
    rec.pruned_mass = evolver.pruned_mass();
    return rec;
}

} // namespace qreset
