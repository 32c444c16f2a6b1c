#include "qreset/models.hpp"

#include <cmath>

#include "qreset/errors.hpp"

namespace qreset {

GateModel::GateModel(ComplexMatrix generator, double theta, StateVector initial_state)
    : generator_(std::move(generator)), theta_(theta), initial_state_(std::move(initial_state)) {
    if (initial_state_.size() != generator_.dim())
        throw BadDimension("initial state length does not match generator dim");
    if (!generator_.is_hermitian(1e-12 * std::max(1.0, generator_.max_abs())))
        throw NotHermitian("gate generator must be Hermitian");
    if (std::abs(norm(initial_state_) - 1.0) > 1e-12)
        throw Error("initial state must be unit norm");
    spectrum_ = hermitian_eig(generator_);
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}

ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, {s, s, s, -s});
}

ComplexMatrix cnot_gate() {
    ComplexMatrix m(4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

ComplexMatrix noninteracting_generator() {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return kron(pauli_x(), id) + kron(id, pauli_x());
}

ComplexMatrix entangling_generator() {
    const double s2 = std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return ComplexMatrix(4, {
        2.0 - s2, 2.0 - s2, -i - s2,  i - s2,
        2.0 - s2, 2.0 - s2,  i - s2, -i - s2,
        i - s2,  -i - s2,   s2 + 2.0, s2 + 2.0,
        -i - s2,  i - s2,   s2 + 2.0, s2 + 2.0,
    });
}

ComplexMatrix bell_circuit_unitary() {
    return cnot_gate() * kron(hadamard_gate(), ComplexMatrix::identity(2));
}

StateVector up_up_state() { return {1.0, 0.0, 0.0, 0.0}; }

GateModel make_model(const std::string& name, double theta) {
    if (name == "noninteracting")
        return GateModel(noninteracting_generator(), theta, up_up_state());
    if (name == "entangling")
        return GateModel(entangling_generator(), theta, up_up_state());
    throw ConfigError("unknown model name: " + name);
}

} // namespace qreset
