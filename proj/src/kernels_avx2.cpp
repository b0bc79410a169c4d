// avx2 variants. every floating-point step mirrors the scalar reference's
// operation sequence exactly (mul/add kept separate in the log, fma only
// where the contract says fma), so outputs are bit-identical.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"
#include "qbox/rng.hpp"

namespace qbox::kernels::detail {

namespace {

inline __m256i mul64(__m256i a, __m256i b) {
    __m256i lo = _mm256_mul_epu32(a, b);
    __m256i m1 = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
    __m256i m2 = _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32));
    __m256i mid = _mm256_add_epi64(m1, m2);
    return _mm256_add_epi64(lo, _mm256_slli_epi64(mid, 32));
}

inline __m256i mix64v(__m256i z) {
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mul64(z, _mm256_set1_epi64x(std::int64_t(0xBF58476D1CE4E5B9ull)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mul64(z, _mm256_set1_epi64x(std::int64_t(0x94D049BB133111EBull)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    return z;
}

// exact double() of a 52-bit integer via the exponent-bias trick
inline __m256d u52_to_pd(__m256i x) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
    __m256d v = _mm256_castsi256_pd(_mm256_or_si256(x, magic));
    return _mm256_sub_pd(v, _mm256_set1_pd(0x1p52));
}

// exact double() of small signed 64-bit integers (|v| < 2^51)
inline __m256d i64small_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4338000000000000ll);
    __m256d d = _mm256_castsi256_pd(_mm256_add_epi64(v, magic));
    return _mm256_sub_pd(d, _mm256_set1_pd(0x1.8p52));
}

inline __m256d log_u01v(__m256d u) {
    __m256i b = _mm256_castpd_si256(u);
    b = _mm256_add_epi64(b, _mm256_set1_epi64x(0x95F62ll << 32));
    __m256i ki = _mm256_sub_epi64(_mm256_srli_epi64(b, 52), _mm256_set1_epi64x(1023));
    __m256d dk = i64small_to_pd(ki);
    b = _mm256_and_si256(b, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll));
    b = _mm256_add_epi64(b, _mm256_set1_epi64x(0x3FE6A09Ell << 32));
    __m256d f = _mm256_sub_pd(_mm256_castsi256_pd(b), _mm256_set1_pd(1.0));
    // same association as the scalar source: hfsq = (0.5*f)*f
    __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), f), f);
    __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
    __m256d z = _mm256_mul_pd(s, s);
    __m256d w = _mm256_mul_pd(z, z);
    __m256d t1 = _mm256_mul_pd(
        w, _mm256_add_pd(_mm256_set1_pd(kLg2),
                         _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg4),
                                                        _mm256_mul_pd(w, _mm256_set1_pd(kLg6))))));
    __m256d t2 = _mm256_mul_pd(
        z, _mm256_add_pd(
               _mm256_set1_pd(kLg1),
               _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg3),
                                              _mm256_mul_pd(w, _mm256_add_pd(_mm256_set1_pd(kLg5),
                                                                             _mm256_mul_pd(w, _mm256_set1_pd(kLg7))))))));
    __m256d r = _mm256_add_pd(t2, t1);
    __m256d a = _mm256_mul_pd(s, _mm256_add_pd(hfsq, r));
    a = _mm256_add_pd(a, _mm256_mul_pd(dk, _mm256_set1_pd(kLn2Lo)));
    a = _mm256_sub_pd(a, hfsq);
    a = _mm256_add_pd(a, f);
    a = _mm256_add_pd(a, _mm256_mul_pd(dk, _mm256_set1_pd(kLn2Hi)));
    return a;
}

void scale_add_avx2(double* y, const double* z, double p, double q, std::size_t n) {
    const __m256d vp = _mm256_set1_pd(p), vq = _mm256_set1_pd(q);
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vp, vy, _mm256_mul_pd(vq, vz)));
    }
    if (i < n) scale_add_scalar(y + i, z + i, p, q, n - i);
}

void scale_avx2(double* y, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), va));
    if (i < n) scale_scalar(y + i, a, n - i);
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
    double acc[4];
    _mm256_storeu_pd(acc, vacc);
    for (std::size_t l = 0; i < n; ++i, ++l) acc[l] += x[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4)
        vacc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), vacc);
    double acc[4];
    _mm256_storeu_pd(acc, vacc);
    for (std::size_t l = 0; i < n; ++i, ++l) acc[l] = std::fma(x[i], y[i], acc[l]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void geom_gaps_avx2(std::uint64_t key, const double* invlogq, double* out, std::size_t n) {
    const __m256i step = _mm256_set1_epi64x(std::int64_t(4 * rng_gamma));
    __m256i cur = _mm256_set_epi64x(std::int64_t(key + 3 * rng_gamma), std::int64_t(key + 2 * rng_gamma),
                                    std::int64_t(key + rng_gamma), std::int64_t(key));
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d ulp52 = _mm256_set1_pd(0x1p-52);
    std::size_t i = 0, n4 = n & ~std::size_t(3);
    for (; i < n4; i += 4) {
        __m256i h = mix64v(cur);
        cur = _mm256_add_epi64(cur, step);
        __m256d x52 = u52_to_pd(_mm256_srli_epi64(h, 12));
        __m256d u = _mm256_mul_pd(_mm256_add_pd(x52, half), ulp52);
        __m256d lg = log_u01v(u);
        __m256d g = _mm256_floor_pd(_mm256_mul_pd(lg, _mm256_loadu_pd(invlogq + i)));
        _mm256_storeu_pd(out + i, g);
    }
    if (i < n) geom_gaps_scalar(key + std::uint64_t(i) * rng_gamma, invlogq + i, out + i, n - i);
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{scale_add_avx2, scale_avx2, sum_avx2, dot_avx2, geom_gaps_avx2};
    return ops;
}

}  // namespace qbox::kernels::detail
