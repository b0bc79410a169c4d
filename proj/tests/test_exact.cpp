#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qbox/errors.hpp"
#include "qbox/exact.hpp"

using qbox::BoxSpec;

TEST_CASE("small boxes by hand") {
    auto v = qbox::coeff_vector(2, 2);
    std::vector<long> want22{1, 1, 2, 1, 1};
    REQUIRE(v.coeffs.size() == want22.size());
    for (std::size_t i = 0; i < want22.size(); ++i) CHECK(v.coeffs[i] == want22[i]);

    v = qbox::coeff_vector(3, 3);
    std::vector<long> want33{1, 1, 2, 3, 3, 3, 3, 2, 1, 1};
    REQUIRE(v.coeffs.size() == want33.size());
    for (std::size_t i = 0; i < want33.size(); ++i) CHECK(v.coeffs[i] == want33[i]);

    CHECK(qbox::coeff(BoxSpec{3, 3, 4}) == 3);
    CHECK(qbox::coeff(BoxSpec{1, 5, 3}) == 1);   // single row
    CHECK(qbox::coeff(BoxSpec{5, 1, 3}) == 1);   // single column
    CHECK(qbox::coeff(BoxSpec{12, 12, 48}) == 24620);
}

TEST_CASE("structural laws up to 10x10") {
    for (long long m = 1; m <= 10; ++m) {
        for (long long ell = m; ell <= 10; ++ell) {
            CAPTURE(m);
            CAPTURE(ell);
            auto v = qbox::coeff_vector(m, ell);
            auto w = qbox::coeff_vector(ell, m);
            long long top = ell * m;
            REQUIRE(v.coeffs.size() == std::size_t(top) + 1);
            mpz_class total = 0;
            for (long long n = 0; n <= top; ++n) {
                CHECK(v.coeffs[n] == v.coeffs[top - n]);  // symmetry
                CHECK(v.coeffs[n] == w.coeffs[n]);        // conjugation
                total += v.coeffs[n];
            }
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), unsigned(m + ell), unsigned(m));
            CHECK(total == binom);
            // unimodal: nondecreasing to the middle (Sylvester)
            for (long long n = 0; n + 1 <= top / 2; ++n)
                CHECK(v.coeffs[n] <= v.coeffs[n + 1]);
        }
    }
}

TEST_CASE("matches brute-force enumeration") {
    for (auto [m, ell] : {std::pair<long long, long long>{4, 4}, {3, 5}, {6, 6}}) {
        CAPTURE(m);
        CAPTURE(ell);
        auto v = qbox::coeff_vector(m, ell);
        for (long long n = 0; n <= ell * m; ++n)
            CHECK(v.coeffs[n] == qbox::brute_force_coeff(BoxSpec{m, ell, n}));
    }
}

TEST_CASE("coeff agrees with coeff_vector at larger sizes") {
    auto v = qbox::coeff_vector(12, 12);
    for (long long n : {0, 1, 17, 48, 71, 72, 73, 143, 144})
        CHECK(qbox::coeff(BoxSpec{12, 12, n}) == v.coeffs[n]);
}

TEST_CASE("kronecker_diff values and strict interior plateaus") {
    CHECK(qbox::kronecker_diff(BoxSpec{12, 12, 48}) == 1916);
    auto v = qbox::coeff_vector(12, 12);
    for (long long n : {0, 1, 30, 48, 65, 71})
        CHECK(qbox::kronecker_diff(BoxSpec{12, 12, n}) == v.coeffs[n + 1] - v.coeffs[n]);
    CHECK(qbox::kronecker_diff(BoxSpec{12, 12, 48}) >= 0);

    // equality does happen off the center: N_16(6,6) = N_17(6,6) = 55
    auto v66 = qbox::coeff_vector(6, 6);
    CHECK(v66.coeffs[16] == 55);
    CHECK(v66.coeffs[16] == v66.coeffs[17]);
    CHECK(qbox::kronecker_diff(BoxSpec{6, 6, 16}) == 0);
    auto v56 = qbox::coeff_vector(5, 6);
    CHECK(v56.coeffs[14] == 32);
    CHECK(v56.coeffs[14] == v56.coeffs[15]);
}

TEST_CASE("domain and size guards") {
    CHECK_THROWS_AS((void)qbox::coeff(BoxSpec{0, 3, 1}), std::domain_error);
    CHECK_THROWS_AS((void)qbox::coeff(BoxSpec{3, 3, 10}), std::domain_error);
    CHECK_THROWS_AS((void)qbox::coeff(BoxSpec{3, 3, -1}), std::domain_error);
    CHECK_THROWS_AS((void)qbox::kronecker_diff(BoxSpec{12, 12, 72}), std::out_of_range);
    CHECK_THROWS_AS((void)qbox::kronecker_diff(BoxSpec{12, 12, 100}), std::out_of_range);
    CHECK_THROWS_AS((void)qbox::coeff_vector(1000, 1000), qbox::size_cap_error);
    CHECK_THROWS_AS((void)qbox::brute_force_coeff(BoxSpec{13, 3, 5}), qbox::size_cap_error);
    // the truncated-degree guard keys on min(n, ell*m - n), so edge coefficients
    // of a huge box are still fine
    CHECK(qbox::coeff(BoxSpec{5000, 5000, 3}) == 3);
}

TEST_CASE("row sums telescope") {
    // sum over n of N_n(ell, m) stays C(m + ell, m) for asymmetric shapes
    auto v = qbox::coeff_vector(5, 7);
    mpz_class total = 0;
    for (const auto& c : v.coeffs) total += c;
    CHECK(total == 792);
}
