#include "qbox/exact.hpp"

#include <algorithm>
#include <stdexcept>

#include "qbox/errors.hpp"

namespace qbox {

namespace {

// multiply the series (truncated at degree D) by (1 - q^{shift})/(1 - q^i):
// division is a prefix sum with stride i, the numerator subtracts a shift
void apply_factor(std::vector<mpz_class>& v, long long i, long long shift, long long D) {
    for (long long k = i; k <= D; ++k) v[std::size_t(k)] += v[std::size_t(k - i)];
    for (long long k = D; k >= shift; --k) v[std::size_t(k)] -= v[std::size_t(k - shift)];
}

// coefficients of prod_{i=1..ell} (1 - q^{m+i})/(1 - q^i) up to degree D
std::vector<mpz_class> dp_coeffs(long long m, long long ell, long long D) {
    std::vector<mpz_class> v(std::size_t(D) + 1);
    v[0] = 1;
    for (long long i = 1; i <= ell; ++i) apply_factor(v, i, m + i, D);
    return v;
}

void check_box(long long m, long long ell) {
    if (m < 1 || ell < 1) throw std::domain_error("box: m and ell must be positive");
}

unsigned long long enumerate_parts(long long n, long long max_part, long long slots) {
    if (n == 0) return 1;
    if (slots == 0) return 0;
    unsigned long long acc = 0;
    for (long long p = std::min(max_part, n); p >= 1; --p)
        acc += enumerate_parts(n - p, p, slots - 1);
    return acc;
}

}  // namespace

CoefficientVector coeff_vector(long long m, long long ell, std::size_t cap) {
    check_box(m, ell);
    const std::size_t size = std::size_t(ell) * std::size_t(m) + 1;
    if (size > cap) throw size_cap_error("coeff_vector: ell*m + 1 exceeds the size cap", size);
    return {m, ell, dp_coeffs(m, ell, ell * m)};
}

mpz_class coeff(const BoxSpec& spec, std::size_t cap) {
    check_box(spec.m, spec.ell);
    if (spec.n < 0 || spec.n > spec.ell * spec.m)
        throw std::domain_error("coeff: n must lie in [0, ell*m]");
    const long long D = std::min(spec.n, spec.ell * spec.m - spec.n);
    if (std::size_t(D) + 1 > cap)
        throw size_cap_error("coeff: truncated degree exceeds the size cap", std::size_t(D) + 1);
    return dp_coeffs(spec.m, spec.ell, D)[std::size_t(D)];
}

mpz_class kronecker_diff(const BoxSpec& spec, std::size_t cap) {
    check_box(spec.m, spec.ell);
    if (spec.n < 0 || 2 * spec.n >= spec.ell * spec.m)
        throw std::out_of_range("kronecker_diff: requires 0 <= n < ell*m/2 (reflect first)");
    const long long D = spec.n + 1;
    if (std::size_t(D) + 1 > cap)
        throw size_cap_error("kronecker_diff: degree exceeds the size cap", std::size_t(D) + 1);
    auto v = dp_coeffs(spec.m, spec.ell, D);
    return v[std::size_t(D)] - v[std::size_t(D - 1)];
}

mpz_class brute_force_coeff(const BoxSpec& spec) {
    check_box(spec.m, spec.ell);
    if (spec.m > 12 || spec.ell > 12)
        throw size_cap_error("brute_force_coeff: guarded to m, ell <= 12",
                             std::size_t(std::max(spec.m, spec.ell)));
    if (spec.n < 0 || spec.n > spec.ell * spec.m) return 0;
    return mpz_class(static_cast<unsigned long>(
        enumerate_parts(spec.n, std::min(spec.ell, spec.n), spec.m)));
}

}  // namespace qbox
