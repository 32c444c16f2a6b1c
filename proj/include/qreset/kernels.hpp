#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace qreset::kernels {

/// Dense inner-loop kernels. Each has a scalar reference implementation and,
/// on x86-64 with AVX2+FMA, a vectorized variant selected at runtime. The
/// scalar versions are the semantic reference; the unit tests assert the
/// variants agree (bit-exactly for the integer RNG, to tight tolerance for
/// the floating-point reductions).

enum class Backend { scalar, avx2 };

/// Backend the dispatcher currently routes to.
Backend active_backend();
std::string backend_name(Backend b);

/// Force a specific backend (testing hook). Throws qreset::Error if the
/// requested backend is unavailable on this CPU.
void set_backend(Backend b);

/// Return to CPU auto-detection.
void reset_backend();

/// out[j] += sum_k w[k] * rows[k*row_len + j], j < row_len.
void weighted_row_sum(const double* w, const double* rows, std::size_t n_rows,
                      std::size_t row_len, double* out);

/// sum_k a[k] * b[k]
double dot(const double* a, const double* b, std::size_t n);

/// out[k] = a[k] * b[k]
void elementwise_mul(const double* a, const double* b, double* out, std::size_t n);

/// One Philox4x32-10 block (reference implementation, backend-independent).
void philox4x32(const std::uint32_t ctr[4], const std::uint32_t key[2], std::uint32_t out[4]);

/// Fill `out` with `count` uniforms in [0,1). Uniform number i (globally
/// indexed by start+i) is a pure function of (key, stream, start+i): two
/// uniforms per Philox block, counter = (block_lo, block_hi, stream_lo,
/// stream_hi). Identical output for any chunking of the index range.
void philox_uniforms(std::uint64_t key, std::uint64_t stream, std::uint64_t start,
                     std::size_t count, double* out);

} // namespace qreset::kernels
