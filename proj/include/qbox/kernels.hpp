#pragma once

#include <cstddef>
#include <cstdint>

// hot-loop vector kernels with a scalar reference implementation and an AVX2
// variant selected at runtime. both paths execute the same IEEE operation
// sequence, so results are bit-identical and the equivalence tests compare
// exact bit patterns, not tolerances.

namespace qbox::kernels {

enum class Backend { scalar, avx2 };

// backend in use (env QBOX_SIMD=scalar|avx2 overrides cpu detection)
Backend active();
const char* name(Backend b);
bool supported(Backend b);
// test hook; returns false (and leaves state unchanged) if unsupported
bool force(Backend b);

// y[i] = fma(p, y[i], q * z[i])
void scale_add(double* y, const double* z, double p, double q, std::size_t n);

// y[i] *= a
void scale(double* y, double a, std::size_t n);

// 4-stripe sum: lane l accumulates x[4k+l]; result ((s0+s1)+(s2+s3))
double sum(const double* x, std::size_t n);

// 4-stripe dot product, per-element fma into the lane accumulator
double dot(const double* x, const double* y, std::size_t n);

// batched reduced-geometric draws by inverse cdf:
//   out[i] = floor(log(u01(mix64(key + i*rng_gamma))) * invlogq[i])
// invlogq[i] = 1/log(q_i) < 0; outputs are exact small nonnegative integers
void geom_gaps(std::uint64_t key, const double* invlogq, double* out, std::size_t n);

// the log used inside geom_gaps, exposed for accuracy tests; u in (0, 1]
double log_u01(double u);

}  // namespace qbox::kernels
