#include "qreset/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qreset/eig.hpp"
#include "qreset/errors.hpp"
#include "qreset/models.hpp"

namespace qreset {

namespace {

void require_two_qubits(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw BadDimension("two-qubit observable needs a 4x4 state");
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
    return (rho * op).trace().real();
}

const ComplexMatrix& sz1() {
    static const ComplexMatrix m = kron(pauli_z(), ComplexMatrix::identity(2));
    return m;
}
const ComplexMatrix& sz2() {
    static const ComplexMatrix m = kron(ComplexMatrix::identity(2), pauli_z());
    return m;
}
const ComplexMatrix& szsz() {
    static const ComplexMatrix m = kron(pauli_z(), pauli_z());
    return m;
}
const ComplexMatrix& syy() {
    static const ComplexMatrix m = kron(pauli_y(), pauli_y());
    return m;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

} // namespace

double zz_correlation(const ComplexMatrix& rho) {
    require_two_qubits(rho);
    return expectation(rho, szsz()) - expectation(rho, sz1()) * expectation(rho, sz2());
}

double concurrence(const ComplexMatrix& rho) {
    require_two_qubits(rho);
    const ComplexMatrix spin_flipped = syy() * rho.conjugate() * syy();
    const ComplexMatrix root = psd_sqrt(rho);
    // sqrt(rho) rho~ sqrt(rho) is Hermitian PSD and shares its spectrum with
    // rho rho~; the mu_i are the square roots of its eigenvalues
    const SpectralDecomposition spec = hermitian_eig(root * spin_flipped * root, 1e-10);
    std::array<double, 4> mu;
    for (int k = 0; k < 4; ++k)
        mu[k] = std::sqrt(std::max(spec.eigenvalues[3 - k], 0.0));
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double lqu(const ComplexMatrix& rho) {
    require_two_qubits(rho);
    const ComplexMatrix root = psd_sqrt(rho);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const std::array<ComplexMatrix, 3> paulis = {
        kron(pauli_x(), id2), kron(pauli_y(), id2), kron(pauli_z(), id2)};

    ComplexMatrix w(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            w(i, j) = (root * paulis[i] * root * paulis[j]).trace().real();
    // kill 1e-14-scale asymmetry before eigensolving
    ComplexMatrix sym(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            sym(i, j) = 0.5 * (w(i, j) + w(j, i));
    const SpectralDecomposition spec = hermitian_eig(sym, 1e-10);
    return clamp01(1.0 - spec.eigenvalues.back());
}

double magnetization(const ComplexMatrix& rho) {
    require_two_qubits(rho);
    return expectation(rho, sz1()) + expectation(rho, sz2());
}

CorrelationSet correlation_set(const ComplexMatrix& rho) {
    CorrelationSet out;
    out.zz_corr = zz_correlation(rho);
    out.concurrence = clamp01(concurrence(rho));
    out.lqu = lqu(rho);
    out.magnetization = magnetization(rho);
    return out;
}

double analytic_f(double r, double x) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidRate("analytic_f needs r in (0,1]");
    const double q = 1.0 - r;
    const double c = std::cos(x);
    return r * (1.0 - q * c) / (1.0 + q * q - 2.0 * q * c);
}

double analytic_zz_correlation(double r, double theta) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidRate("analytic_zz_correlation needs r in (0,1]");
    const double f2 = analytic_f(r, 2.0 * theta);
    return 0.5 * (1.0 + analytic_f(r, 4.0 * theta)) - f2 * f2;
}

ObservableFn observable_by_name(const std::string& name) {
    if (name == "zz") return &zz_correlation;
    if (name == "concurrence") return &concurrence;
    if (name == "lqu") return &lqu;
    if (name == "magnetization") return &magnetization;
    throw ConfigError("unknown observable: " + name);
}

} // namespace qreset
