#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qreset {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. The universal carrier for
/// generators, gates, density matrices and superoperators (dim <= ~64).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    const Complex* data() const { return data_.data(); }
    Complex* data() { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    StateVector apply(const StateVector& v) const;

    double max_abs() const;
    double frobenius_norm() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// |a><b|
ComplexMatrix outer(const StateVector& a, const StateVector& b);

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

double norm(const StateVector& v);
StateVector normalized(StateVector v);

} // namespace qreset
