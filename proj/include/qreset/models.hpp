#pragma once

#include <string>

#include "qreset/eig.hpp"
#include "qreset/matrix.hpp"

namespace qreset {

/// Generator + gate parameter + reset state. The spectral decomposition is
/// computed once at construction (the generator is immutable afterwards).
class GateModel {
public:
    GateModel(ComplexMatrix generator, double theta, StateVector initial_state);

    std::size_t dim() const { return generator_.dim(); }
    const ComplexMatrix& generator() const { return generator_; }
    double theta() const { return theta_; }
    const StateVector& initial_state() const { return initial_state_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }

    /// exp(i theta H)
    ComplexMatrix unitary() const { return gate_from_generator(spectrum_, theta_); }

private:
    ComplexMatrix generator_;
    double theta_;
    StateVector initial_state_;
    SpectralDecomposition spectrum_;
};

// single-qubit building blocks, z basis (|up>, |down>)
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard_gate();

/// CNOT on two qubits, control = qubit 1, basis order (uu, ud, du, dd).
/// Flips the target when the control is |down>.
ComplexMatrix cnot_gate();

/// sigma_x^(1) + sigma_x^(2): coherent drive on both qubits.
ComplexMatrix noninteracting_generator();

/// Generator of the Bell circuit, defined through
/// CNOT (H x 1) = exp(i pi H / 8); entries hard-coded, cross-checked in tests
/// against the circuit product.
ComplexMatrix entangling_generator();

/// CNOT (H x 1)
ComplexMatrix bell_circuit_unitary();

/// |up,up> = (1,0,0,0)
StateVector up_up_state();

/// Model registry for the CLI: "noninteracting" | "entangling".
GateModel make_model(const std::string& name, double theta);

} // namespace qreset
