#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "qreset/kernels.hpp"

using namespace qreset;

namespace {

struct BackendGuard {
    ~BackendGuard() { kernels::reset_backend(); }
};

bool avx2_available() { return kernels::active_backend() == kernels::Backend::avx2; }

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Random123 kat_vectors, philox4x32 with 10 rounds
    const std::uint32_t zeros[4] = {0, 0, 0, 0};
    const std::uint32_t zero_key[2] = {0, 0};
    std::uint32_t out[4];
    kernels::philox4x32(zeros, zero_key, out);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    const std::uint32_t ones[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
    const std::uint32_t ones_key[2] = {0xffffffffu, 0xffffffffu};
    kernels::philox4x32(ones, ones_key, out);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    const std::uint32_t pi_ctr[4] = {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u};
    const std::uint32_t pi_key[2] = {0xa4093822u, 0x299f31d0u};
    kernels::philox4x32(pi_ctr, pi_key, out);
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("philox uniforms are chunking-invariant and in range") {
    std::vector<double> whole(257);
    kernels::philox_uniforms(0x1234u, 42, 0, whole.size(), whole.data());
    for (double u : whole) {
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    // piecewise generation with odd offsets must reproduce the same stream
    std::vector<double> pieces(257);
    std::size_t cursor = 0;
    for (std::size_t chunk : {1u, 2u, 3u, 7u, 64u, 113u, 67u}) {
        kernels::philox_uniforms(0x1234u, 42, cursor, chunk, pieces.data() + cursor);
        cursor += chunk;
    }
    REQUIRE(cursor == pieces.size());
    CHECK(std::memcmp(whole.data(), pieces.data(), whole.size() * sizeof(double)) == 0);

    // different streams decorrelate
    std::vector<double> other(8);
    kernels::philox_uniforms(0x1234u, 43, 0, other.size(), other.data());
    CHECK(other[0] != whole[0]);
}

TEST_CASE("avx2 philox matches scalar bit-exactly") {
    if (!avx2_available()) return;
    BackendGuard guard;
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t key = rng();
        const std::uint64_t stream = rng();
        const std::uint64_t start = rng() % 1000;
        const std::size_t count = 1 + rng() % 300;
        std::vector<double> a(count), b(count);
        kernels::set_backend(kernels::Backend::scalar);
        kernels::philox_uniforms(key, stream, start, count, a.data());
        kernels::set_backend(kernels::Backend::avx2);
        kernels::philox_uniforms(key, stream, start, count, b.data());
        CHECK(std::memcmp(a.data(), b.data(), count * sizeof(double)) == 0);
    }
}

TEST_CASE("weighted_row_sum accumulates w[k] * rows[k]") {
    const std::vector<double> w = {2.0, -1.0, 0.5};
    const std::vector<double> rows = {1, 0, 0, 1, 1, 1, 2, 2, 2, 2, 2, 2, 4, 0, 4, 0, 4, 0};
    std::vector<double> out(6, 1.0);
    kernels::weighted_row_sum(w.data(), rows.data(), 3, 6, out.data());
    const std::vector<double> want = {1 + 2 - 2 + 2, 1 - 2, 1 - 2 + 2, 1 + 2 - 2,
                                      1 + 2 - 2 + 2, 1 + 2 - 2};
    for (std::size_t j = 0; j < 6; ++j) CHECK(out[j] == doctest::Approx(want[j]).epsilon(1e-15));
}

TEST_CASE("avx2 float kernels agree with scalar") {
    if (!avx2_available()) return;
    BackendGuard guard;
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 32u, 33u, 1000u}) {
        const auto a = random_vec(rng, n);
        const auto b = random_vec(rng, n);

        kernels::set_backend(kernels::Backend::scalar);
        const double dot_s = kernels::dot(a.data(), b.data(), n);
        std::vector<double> mul_s(n);
        kernels::elementwise_mul(a.data(), b.data(), mul_s.data(), n);

        kernels::set_backend(kernels::Backend::avx2);
        const double dot_v = kernels::dot(a.data(), b.data(), n);
        std::vector<double> mul_v(n);
        kernels::elementwise_mul(a.data(), b.data(), mul_v.data(), n);

        CHECK(dot_v == doctest::Approx(dot_s).epsilon(1e-13));
        for (std::size_t i = 0; i < n; ++i) CHECK(mul_v[i] == mul_s[i]);
    }

    for (std::size_t rows : {1u, 2u, 9u, 100u}) {
        for (std::size_t len : {1u, 5u, 32u, 37u}) {
            const auto w = random_vec(rng, rows);
            const auto table = random_vec(rng, rows * len);
            std::vector<double> out_s(len, 0.0), out_v(len, 0.0);
            kernels::set_backend(kernels::Backend::scalar);
            kernels::weighted_row_sum(w.data(), table.data(), rows, len, out_s.data());
            kernels::set_backend(kernels::Backend::avx2);
            kernels::weighted_row_sum(w.data(), table.data(), rows, len, out_v.data());
            for (std::size_t j = 0; j < len; ++j)
                CHECK(out_v[j] == doctest::Approx(out_s[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("backend forcing is honored and reset works") {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::scalar);
    CHECK(kernels::active_backend() == kernels::Backend::scalar);
    kernels::reset_backend();
    CHECK(kernels::backend_name(kernels::active_backend()).size() > 0);
}
