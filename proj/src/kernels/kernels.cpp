#include "qreset/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "qreset/errors.hpp"
#include "philox_core.hpp"

namespace qreset::kernels {

namespace detail {

void weighted_row_sum_scalar(const double* w, const double* rows, std::size_t n_rows,
                             std::size_t row_len, double* out) {
    for (std::size_t k = 0; k < n_rows; ++k) {
        const double wk = w[k];
        if (wk == 0.0) continue;
        const double* row = rows + k * row_len;
        for (std::size_t j = 0; j < row_len; ++j)
            out[j] += wk * row[j];
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

void elementwise_mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

void philox_uniforms_scalar(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                            std::size_t count, double* out) {
    const std::uint32_t k[2] = {static_cast<std::uint32_t>(key),
                                static_cast<std::uint32_t>(key >> 32)};
    std::size_t i = 0;
    while (i < count) {
        const std::uint64_t index = start + i;
        const std::uint64_t block = index >> 1;
        const std::uint32_t ctr[4] = {
            static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        std::uint32_t x[4];
        philox4x32_block(ctr, k, x);
        if ((index & 1) == 0) {
            out[i++] = uniform_from_words(x[0], x[1]);
            if (i < count) out[i++] = uniform_from_words(x[2], x[3]);
        } else {
            out[i++] = uniform_from_words(x[2], x[3]);
        }
    }
}

#ifdef QRESET_HAVE_AVX2
void weighted_row_sum_avx2(const double* w, const double* rows, std::size_t n_rows,
                           std::size_t row_len, double* out);
double dot_avx2(const double* a, const double* b, std::size_t n);
void elementwise_mul_avx2(const double* a, const double* b, double* out, std::size_t n);
void philox_uniforms_avx2(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                          std::size_t count, double* out);
#endif

namespace {

bool cpu_has_avx2() {
#if defined(QRESET_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<int> g_forced{-1};

Backend detected() {
    static const Backend b = [] {
        // QRESET_BACKEND=scalar bypasses the vectorized variants
        const char* env = std::getenv("QRESET_BACKEND");
        if (env != nullptr && std::string_view(env) == "scalar") return Backend::scalar;
        return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    }();
    return b;
}

Backend current() {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Backend>(forced);
    return detected();
}

} // namespace

} // namespace detail

Backend active_backend() { return detail::current(); }

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

void set_backend(Backend b) {
    if (b == Backend::avx2 && detail::detected() != Backend::avx2)
        throw Error("avx2 backend not available on this CPU/build");
    detail::g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { detail::g_forced.store(-1, std::memory_order_relaxed); }

void weighted_row_sum(const double* w, const double* rows, std::size_t n_rows,
                      std::size_t row_len, double* out) {
#ifdef QRESET_HAVE_AVX2
    if (detail::current() == Backend::avx2)
        return detail::weighted_row_sum_avx2(w, rows, n_rows, row_len, out);
#endif
    detail::weighted_row_sum_scalar(w, rows, n_rows, row_len, out);
}

double dot(const double* a, const double* b, std::size_t n) {
#ifdef QRESET_HAVE_AVX2
    if (detail::current() == Backend::avx2) return detail::dot_avx2(a, b, n);
#endif
    return detail::dot_scalar(a, b, n);
}

void elementwise_mul(const double* a, const double* b, double* out, std::size_t n) {
#ifdef QRESET_HAVE_AVX2
    if (detail::current() == Backend::avx2)
        return detail::elementwise_mul_avx2(a, b, out, n);
#endif
    detail::elementwise_mul_scalar(a, b, out, n);
}

void philox4x32(const std::uint32_t ctr[4], const std::uint32_t key[2], std::uint32_t out[4]) {
    detail::philox4x32_block(ctr, key, out);
}

void philox_uniforms(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                     std::size_t count, double* out) {
#ifdef QRESET_HAVE_AVX2
    if (detail::current() == Backend::avx2)
        return detail::philox_uniforms_avx2(key, stream, start, count, out);
#endif
    detail::philox_uniforms_scalar(key, stream, start, count, out);
}

} // namespace qreset::kernels
