#include <doctest.h>

#include <cmath>
#include <random>

#include "qreset/eig.hpp"
#include "qreset/errors.hpp"
#include "qreset/matrix.hpp"
#include "qreset/models.hpp"
#include "test_helpers.hpp"

using namespace qreset;

TEST_CASE("hermitian_eig on the reference generators") {
    const auto ni = hermitian_eig(noninteracting_generator());
    CHECK(ni.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(ni.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(ni.eigenvalues[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(ni.eigenvalues[3] == doctest::Approx(2.0).epsilon(1e-12));

    const auto id = hermitian_eig(ComplexMatrix::identity(4));
    for (double lam : id.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-14));

    const auto ent = hermitian_eig(entangling_generator());
    CHECK(ent.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(std::abs(ent.eigenvalues[1]) < 1e-12);
    CHECK(ent.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ent.eigenvalues[3] == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("degenerate subspaces come back orthonormal") {
    const auto spec = hermitian_eig(noninteracting_generator());
    CHECK(spec.eigenvectors.is_unitary(1e-12));
    ComplexMatrix recon(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                acc += spec.eigenvectors(i, k) * spec.eigenvalues[k] *
                       std::conj(spec.eigenvectors(j, k));
            recon(i, j) = acc;
        }
    CHECK(one_norm(recon - noninteracting_generator()) < 1e-12);
}

TEST_CASE("clustered eigenvalues do not stall the iteration") {
    std::mt19937_64 rng(77);
    const auto basis = hermitian_eig(testref::random_hermitian(rng, 4)).eigenvectors;
    const std::vector<double> close = {1.0, 1.0 + 1e-13, 2.0, 3.0};
    ComplexMatrix a(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                acc += basis(i, k) * close[k] * std::conj(basis(j, k));
            a(i, j) = acc;
        }
    const auto spec = hermitian_eig(a);
    CHECK(spec.eigenvectors.is_unitary(1e-12));
    CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[3] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, {0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(11);
    for (std::size_t dim : {2u, 3u, 5u, 8u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix a = testref::random_hermitian(rng, dim);
            const auto spec = hermitian_eig(a);
            for (std::size_t k = 1; k < dim; ++k)
                CHECK(spec.eigenvalues[k] >= spec.eigenvalues[k - 1]);
            CHECK(spec.eigenvectors.is_unitary(1e-12));

            ComplexMatrix recon(dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    Complex acc = 0.0;
                    for (std::size_t k = 0; k < dim; ++k)
                        acc += spec.eigenvectors(i, k) * spec.eigenvalues[k] *
                               std::conj(spec.eigenvectors(j, k));
                    recon(i, j) = acc;
                }
            CHECK(one_norm(recon - a) < 1e-10);
        }
    }
}

TEST_CASE("gate_from_generator reproduces the reference gates") {
    const GateModel ni(noninteracting_generator(), 0.0, up_up_state());
    CHECK(testref::max_entry_diff(gate_from_generator(ni.spectrum(), M_PI),
                                  ComplexMatrix::identity(4)) < 1e-12);
    CHECK(testref::max_entry_diff(gate_from_generator(ni.spectrum(), 0.0),
                                  ComplexMatrix::identity(4)) < 1e-14);

    const GateModel ent(entangling_generator(), 0.0, up_up_state());
    const ComplexMatrix want = kron(ComplexMatrix::identity(2), pauli_x());
    CHECK(testref::max_entry_diff(gate_from_generator(ent.spectrum(), M_PI / 2), want) < 1e-12);
}

TEST_CASE("gates satisfy the one-parameter group law and unitarity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    const auto spec = hermitian_eig(testref::random_hermitian(rng, 4));
    for (int trial = 0; trial < 5; ++trial) {
        const double t1 = angle(rng), t2 = angle(rng);
        const ComplexMatrix u1 = gate_from_generator(spec, t1);
        const ComplexMatrix u2 = gate_from_generator(spec, t2);
        const ComplexMatrix u12 = gate_from_generator(spec, t1 + t2);
        CHECK(u1.is_unitary(1e-12));
        CHECK(one_norm(u1 * u2 - u12) < 1e-10);
    }
}

TEST_CASE("psd_sqrt on diagonal and mixed states") {
    CHECK(testref::max_entry_diff(psd_sqrt(testref::diag4(4, 1, 0, 9)),
                                  testref::diag4(2, 1, 0, 3)) < 1e-12);

    const ComplexMatrix mixed = Complex(0.25) * ComplexMatrix::identity(4);
    CHECK(testref::max_entry_diff(psd_sqrt(mixed), Complex(0.5) * ComplexMatrix::identity(4)) <
          1e-14);

    const ComplexMatrix rho = testref::ni_generic_state();
    const ComplexMatrix b = psd_sqrt(rho);
    CHECK(one_norm(b * b - rho) < 1e-12);

    CHECK_THROWS_AS(psd_sqrt(testref::diag4(1, 1, 1, -1)), NotPSD);
}

TEST_CASE("psd_sqrt squares back for random PSD matrices") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = testref::random_density(rng, 4);
        const ComplexMatrix b = psd_sqrt(rho);
        CHECK(b.is_hermitian(1e-13));
        CHECK(one_norm(b * b - rho) < 1e-10);
    }
}

TEST_CASE("kron definition and bilinearity") {
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    CHECK(testref::max_entry_diff(kron(pauli_z(), id2), testref::diag4(1, 1, -1, -1)) == 0.0);
    CHECK(testref::max_entry_diff(kron(id2, id2), ComplexMatrix::identity(4)) == 0.0);

    const StateVector plus_up = kron(hadamard_gate(), id2).apply(up_up_state());
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(plus_up[0] - Complex(s)) < 1e-15);
    CHECK(std::abs(plus_up[2] - Complex(s)) < 1e-15);
    CHECK(std::abs(plus_up[1]) < 1e-15);
    CHECK(std::abs(plus_up[3]) < 1e-15);

    std::mt19937_64 rng(14);
    const ComplexMatrix a = testref::random_hermitian(rng, 2);
    const ComplexMatrix b = testref::random_hermitian(rng, 3);
    const ComplexMatrix c = testref::random_hermitian(rng, 2);
    const ComplexMatrix d = testref::random_hermitian(rng, 3);
    CHECK(one_norm(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-12);
}

TEST_CASE("one_norm is the trace norm") {
    CHECK(one_norm(testref::ni_generic_state()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one_norm(ComplexMatrix(3)) == 0.0);
    ComplexMatrix d(2, {1.0, 0.0, 0.0, -2.0});
    CHECK(one_norm(d) == doctest::Approx(3.0).epsilon(1e-13));
    // non-Hermitian: single singular value 1
    ComplexMatrix n(2, {0.0, 1.0, 0.0, 0.0});
    CHECK(one_norm(n) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("is_density accepts states and rejects non-states") {
    CHECK(is_density(testref::ni_generic_state(), 1e-10));
    CHECK(is_density(testref::ent_pi5_state(), 1e-10));
    CHECK_FALSE(is_density(testref::diag4(1, 1, 0, 0), 1e-10));          // trace 2
    CHECK_FALSE(is_density(testref::diag4(1.5, -0.5, 0, 0), 1e-10));     // not PSD
    ComplexMatrix skew(2, {0.5, Complex(0, 0.3), Complex(0, 0.3), 0.5}); // not Hermitian
    CHECK_FALSE(is_density(skew, 1e-10));
}

TEST_CASE("solve_linear round-trips and flags singular systems") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (std::size_t dim : {1u, 4u, 16u}) {
        ComplexMatrix a(dim);
        StateVector x_true(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            x_true[i] = Complex(dist(rng), dist(rng));
            for (std::size_t j = 0; j < dim; ++j) a(i, j) = Complex(dist(rng), dist(rng));
        }
        const StateVector b = a.apply(x_true);
        const StateVector x = solve_linear(a, b);
        for (std::size_t i = 0; i < dim; ++i) CHECK(std::abs(x[i] - x_true[i]) < 1e-10);
    }

    ComplexMatrix singular(2, {1.0, 2.0, 2.0, 4.0});
    CHECK_THROWS_AS(solve_linear(singular, StateVector{1.0, 1.0}), SingularSystem);
}
