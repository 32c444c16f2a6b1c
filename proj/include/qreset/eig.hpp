#pragma once

#include <vector>

#include "qreset/matrix.hpp"

namespace qreset {

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization. `tol` bounds the accepted Hermiticity
/// defect of the input; the rotation sweep itself iterates until the
/// off-diagonal mass drops below 1e-14 * ||A||_F.
SpectralDecomposition hermitian_eig(const ComplexMatrix& a, double tol = 1e-12);

/// U(theta) = V diag(exp(i theta lambda_k)) V^dagger.
ComplexMatrix gate_from_generator(const SpectralDecomposition& spec, double theta);

/// Hermitian PSD square root; eigenvalues in [-clamp_tol, 0) are clamped to 0,
/// anything below -clamp_tol throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clamp_tol = 1e-10);

/// Trace norm (sum of singular values). Hermitian inputs take the
/// sum-of-|eigenvalues| path.
double one_norm(const ComplexMatrix& a);

/// Hermitian, PSD and unit trace, all within tol.
bool is_density(const ComplexMatrix& a, double tol);

/// Dense complex solve by partial-pivot Gaussian elimination.
StateVector solve_linear(ComplexMatrix a, StateVector b);

} // namespace qreset
