// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; the dispatcher only routes here after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "philox_core.hpp"

namespace qreset::kernels::detail {

void philox_uniforms_scalar(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                            std::size_t count, double* out);

void weighted_row_sum_avx2(const double* w, const double* rows, std::size_t n_rows,
                           std::size_t row_len, double* out) {
    const std::size_t vec_end = row_len & ~std::size_t(3);
    for (std::size_t k = 0; k < n_rows; ++k) {
        const double wk = w[k];
        if (wk == 0.0) continue;
        const double* row = rows + k * row_len;
        const __m256d wv = _mm256_set1_pd(wk);
        std::size_t j = 0;
        for (; j < vec_end; j += 4) {
            __m256d acc = _mm256_loadu_pd(out + j);
            acc = _mm256_fmadd_pd(wv, _mm256_loadu_pd(row + j), acc);
            _mm256_storeu_pd(out + j, acc);
        }
        for (; j < row_len; ++j) out[j] += wk * row[j];
    }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 16 <= n; k += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 8), _mm256_loadu_pd(b + k + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 12), _mm256_loadu_pd(b + k + 12), acc3);
    }
    for (; k + 4 <= n; k += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    double s = (buf[0] + buf[1]) + (buf[2] + buf[3]);
    for (; k < n; ++k) s += a[k] * b[k];
    return s;
}

void elementwise_mul_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    for (; k < n; ++k) out[k] = a[k] * b[k];
}

namespace {

// Four Philox blocks in parallel; lane l of each __m128i holds word w of
// block l. Products are widened via 64-bit lanes, then lo/hi words are
// regathered with a cross-lane permute.
struct Philox4 {
    __m128i c0, c1, c2, c3;
};

inline Philox4 philox4x32_x4(std::uint64_t block0, std::uint64_t stream,
                             const std::uint32_t key[2]) {
    const __m256i gather = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
    const __m256i m0 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxM0));
    const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(kPhiloxM1));

    Philox4 s;
    s.c0 = _mm_setr_epi32(static_cast<int>(static_cast<std::uint32_t>(block0)),
                          static_cast<int>(static_cast<std::uint32_t>(block0 + 1)),
                          static_cast<int>(static_cast<std::uint32_t>(block0 + 2)),
                          static_cast<int>(static_cast<std::uint32_t>(block0 + 3)));
    s.c1 = _mm_setr_epi32(static_cast<int>(static_cast<std::uint32_t>((block0) >> 32)),
                          static_cast<int>(static_cast<std::uint32_t>((block0 + 1) >> 32)),
                          static_cast<int>(static_cast<std::uint32_t>((block0 + 2) >> 32)),
                          static_cast<int>(static_cast<std::uint32_t>((block0 + 3) >> 32)));
    s.c2 = _mm_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream)));
    s.c3 = _mm_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream >> 32)));

    __m128i k0 = _mm_set1_epi32(static_cast<int>(key[0]));
    __m128i k1 = _mm_set1_epi32(static_cast<int>(key[1]));
    const __m128i w0 = _mm_set1_epi32(static_cast<int>(kPhiloxW0));
    const __m128i w1 = _mm_set1_epi32(static_cast<int>(kPhiloxW1));

    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 = _mm_add_epi32(k0, w0);
            k1 = _mm_add_epi32(k1, w1);
        }
        const __m256i p0 = _mm256_mul_epu32(_mm256_cvtepu32_epi64(s.c0), m0);
        const __m256i p1 = _mm256_mul_epu32(_mm256_cvtepu32_epi64(s.c2), m1);
        const __m256i q0 = _mm256_permutevar8x32_epi32(p0, gather);
        const __m256i q1 = _mm256_permutevar8x32_epi32(p1, gather);
        const __m128i lo0 = _mm256_castsi256_si128(q0);
        const __m128i hi0 = _mm256_extracti128_si256(q0, 1);
        const __m128i lo1 = _mm256_castsi256_si128(q1);
        const __m128i hi1 = _mm256_extracti128_si256(q1, 1);

        const __m128i n0 = _mm_xor_si128(_mm_xor_si128(hi1, s.c1), k0);
        const __m128i n2 = _mm_xor_si128(_mm_xor_si128(hi0, s.c3), k1);
        s.c0 = n0;
        s.c1 = lo1;
        s.c2 = n2;
        s.c3 = lo0;
    }
    return s;
}

} // namespace

void philox_uniforms_avx2(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                          std::size_t count, double* out) {
    const std::uint32_t k[2] = {static_cast<std::uint32_t>(key),
                                static_cast<std::uint32_t>(key >> 32)};
    std::size_t i = 0;
    if (count > 0 && (start & 1) != 0) {
        philox_uniforms_scalar(key, stream, start, 1, out);
        i = 1;
    }
    alignas(16) std::uint32_t x0[4], x1[4], x2[4], x3[4];
    while (count - i >= 8) {
        const Philox4 s = philox4x32_x4((start + i) >> 1, stream, k);
        _mm_store_si128(reinterpret_cast<__m128i*>(x0), s.c0);
        _mm_store_si128(reinterpret_cast<__m128i*>(x1), s.c1);
        _mm_store_si128(reinterpret_cast<__m128i*>(x2), s.c2);
        _mm_store_si128(reinterpret_cast<__m128i*>(x3), s.c3);
        for (int b = 0; b < 4; ++b) {
            out[i++] = uniform_from_words(x0[b], x1[b]);
            out[i++] = uniform_from_words(x2[b], x3[b]);
        }
    }
    if (i < count) philox_uniforms_scalar(key, stream, start + i, count - i, out + i);
}

} // namespace qreset::kernels::detail
