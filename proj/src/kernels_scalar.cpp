// scalar reference kernels. compiled with -ffp-contract=off: the operation
// sequence written here *is* the contract the avx2 path reproduces bitwise.

#include <bit>
#include <cmath>

#include "kernels_internal.hpp"
#include "qbox/rng.hpp"

namespace qbox::kernels::detail {

void scale_add_scalar(double* y, const double* z, double p, double q, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(p, y[i], q * z[i]);
}

void scale_scalar(double* y, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

double sum_scalar(const double* x, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) {
        a0 += x[i];
        a1 += x[i + 1];
        a2 += x[i + 2];
        a3 += x[i + 3];
    }
    double acc[4] = {a0, a1, a2, a3};
    for (std::size_t l = 0; i < n; ++i, ++l) acc[l] += x[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) {
        a0 = std::fma(x[i], y[i], a0);
        a1 = std::fma(x[i + 1], y[i + 1], a1);
        a2 = std::fma(x[i + 2], y[i + 2], a2);
        a3 = std::fma(x[i + 3], y[i + 3], a3);
    }
    double acc[4] = {a0, a1, a2, a3};
    for (std::size_t l = 0; i < n; ++i, ++l) acc[l] = std::fma(x[i], y[i], acc[l]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double log_u01_scalar(double u) {
    // fdlibm-style log restricted to (0, 1]; no subnormals can occur since
    // u01() emits values in [2^-53, 1 - 2^-53]
    std::uint64_t b = std::bit_cast<std::uint64_t>(u);
    // shift the split point so the reduced mantissa lands in [sqrt2/2, sqrt2)
    b += 0x95F62ull << 32;
    double dk = double(std::int64_t(b >> 52) - 1023);
    b = (b & 0x000FFFFFFFFFFFFFull) + (0x3FE6A09Eull << 32);
    double f = std::bit_cast<double>(b) - 1.0;
    double hfsq = 0.5 * f * f;
    double s = f / (2.0 + f);
    double z = s * s;
    double w = z * z;
    double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
    double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
    double r = t2 + t1;
    return s * (hfsq + r) + dk * kLn2Lo - hfsq + f + dk * kLn2Hi;
}

void geom_gaps_scalar(std::uint64_t key, const double* invlogq, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t h = mix64(key + std::uint64_t(i) * rng_gamma);
        double v = (double(h >> 12) + 0.5) * 0x1p-52;
        out[i] = std::floor(log_u01_scalar(v) * invlogq[i]);
    }
}

const Ops& scalar_ops() {
    static const Ops ops{scale_add_scalar, scale_scalar, sum_scalar, dot_scalar,
                         geom_gaps_scalar};
    return ops;
}

}  // namespace qbox::kernels::detail
