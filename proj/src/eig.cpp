#include "qreset/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qreset/errors.hpp"

namespace qreset {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q). The 2x2 block [[app, b e^{i phi}],
// [b e^{-i phi}, aqq]] is reduced to real form by the phase, then rotated by
// the small-angle root of t^2 - 2wt - 1 = 0, w = (aqq - app) / (2b).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex beta = a(p, q);
    const double b = std::abs(beta);
    if (b == 0.0) return;
    const Complex phase = beta / b;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double w = (aqq - app) / (2.0 * b);
    double t;
    if (w >= 0.0)
        t = -1.0 / (w + std::sqrt(w * w + 1.0));
    else
        t = 1.0 / (-w + std::sqrt(w * w + 1.0));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double sigma = t * c;

    const Complex s = sigma * std::conj(phase);     // g = [[c, -conj(s)], [s, c]]
    const Complex sbar = std::conj(s);

    const std::size_t n = a.dim();
    // columns: A <- A g
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp + s * akq;
        a(k, q) = -sbar * akp + c * akq;
    }
    // rows: A <- g^dagger A
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk + sbar * aqk;
        a(q, k) = -s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp + s * vkq;
        v(k, q) = -sbar * vkp + c * vkq;
    }
}

} // namespace

SpectralDecomposition hermitian_eig(const ComplexMatrix& input, double tol) {
    const std::size_t n = input.dim();
    if (n == 0) throw BadDimension("empty matrix");
    const double scale = std::max(1.0, input.max_abs());
    if (!input.is_hermitian(tol * scale))
        throw NotHermitian("matrix is not Hermitian within tolerance");

    ComplexMatrix a = input;
    // fold in the Hermiticity defect so the iteration targets an exactly
    // Hermitian matrix
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-14 * std::max(a.frobenius_norm(), 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                rotate(a, v, p, q);
    }
    if (off_diagonal_norm(a) > 1e4 * threshold)
        throw Error("Jacobi iteration failed to converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

ComplexMatrix gate_from_generator(const SpectralDecomposition& spec, double theta) {
    const std::size_t n = spec.eigenvalues.size();
    const ComplexMatrix& v = spec.eigenvectors;
    std::vector<Complex> phases(n);
    for (std::size_t k = 0; k < n; ++k)
        phases[k] = std::polar(1.0, theta * spec.eigenvalues[k]);
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += v(i, k) * phases[k] * std::conj(v(j, k));
            out(i, j) = acc;
        }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clamp_tol) {
    const SpectralDecomposition spec = hermitian_eig(a);
    const std::size_t n = a.dim();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = spec.eigenvalues[k];
        if (lam < -clamp_tol) throw NotPSD("negative eigenvalue below clamp tolerance");
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }
    const ComplexMatrix& v = spec.eigenvectors;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += v(i, k) * roots[k] * std::conj(v(j, k));
            out(i, j) = acc;
            out(j, i) = std::conj(acc);
        }
    for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
    return out;
}

double one_norm(const ComplexMatrix& a) {
    if (a.dim() == 0) return 0.0;
    const double scale = std::max(1.0, a.max_abs());
    if (a.is_hermitian(1e-12 * scale)) {
        const SpectralDecomposition spec = hermitian_eig(a, 1e-11);
        double s = 0.0;
        for (double lam : spec.eigenvalues) s += std::abs(lam);
        return s;
    }
    const ComplexMatrix gram = a.adjoint() * a;
    const SpectralDecomposition spec = hermitian_eig(gram, 1e-10);
    double s = 0.0;
    for (double lam : spec.eigenvalues) s += std::sqrt(std::max(lam, 0.0));
    return s;
}

bool is_density(const ComplexMatrix& a, double tol) {
    if (!a.is_hermitian(tol)) return false;
    if (std::abs(a.trace() - Complex(1.0)) > tol) return false;
    const SpectralDecomposition spec = hermitian_eig(a, std::max(tol, 1e-12));
    return spec.eigenvalues.front() >= -tol;
}

StateVector solve_linear(ComplexMatrix a, StateVector b) {
    const std::size_t n = a.dim();
    if (b.size() != n) throw BadDimension("rhs length does not match matrix dim");
    const double scale = std::max(1.0, a.max_abs());

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a(perm[r], col));
            if (cand > best) { best = cand; pivot = r; }
        }
        if (best < 1e-13 * scale)
            throw SingularSystem("pivot below tolerance in linear solve");
        std::swap(perm[col], perm[pivot]);

        const std::size_t pr = perm[col];
        const Complex inv = 1.0 / a(pr, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const std::size_t rr = perm[r];
            const Complex factor = a(rr, col) * inv;
            if (factor == Complex(0.0)) continue;
            a(rr, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c)
                a(rr, c) -= factor * a(pr, c);
            b[rr] -= factor * b[pr];
        }
    }

    StateVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = b[perm[i]];
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= a(perm[i], j) * x[j];
        x[i] = acc / a(perm[i], i);
    }
    return x;
}

} // namespace qreset
