#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

// exact boxed-partition counts N_n(ell, m): coefficients of the Gaussian
// binomial (m+ell choose m)_q, plus consecutive differences (= Kronecker
// coefficients for the rectangle/rectangle/two-row family)

namespace qbox {

struct BoxSpec {
    long long m;    // max number of parts
    long long ell;  // max part size
    long long n;    // partition size, 0 <= n <= ell*m
};

struct CoefficientVector {
    long long m, ell;
    std::vector<mpz_class> coeffs;  // N_0 .. N_{ell*m}
};

inline constexpr std::size_t default_coeff_cap = 250000;

// all ell*m + 1 coefficients
CoefficientVector coeff_vector(long long m, long long ell, std::size_t cap = default_coeff_cap);

// single coefficient; DP truncated at degree min(n, ell*m - n)
mpz_class coeff(const BoxSpec& spec, std::size_t cap = default_coeff_cap);

// N_{n+1} - N_n, requires n < ell*m/2 so the difference is nonnegative
mpz_class kronecker_diff(const BoxSpec& spec, std::size_t cap = default_coeff_cap);

// independent oracle: direct recursive enumeration of weakly decreasing
// part lists; never touches the DP. guarded to ell, m <= 12.
mpz_class brute_force_coeff(const BoxSpec& spec);

}  // namespace qbox
