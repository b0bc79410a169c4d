#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "qbox/special.hpp"

namespace {

// independent route: dilog(x) = -int_0^{1-x} log(1-t)/t dt, adaptive Simpson
double li2_integrand(double t) {
    if (std::abs(t) < 1e-30) return 1.0;
    return -std::log1p(-t) / t;
}

double simpson(double a, double b) {
    double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (li2_integrand(a) + 4.0 * li2_integrand(c) + li2_integrand(b));
}

double adaptive(double a, double b, double whole, double eps, int depth) {
    double c = 0.5 * (a + b);
    double left = simpson(a, c), right = simpson(c, b);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(a, c, left, eps * 0.5, depth - 1) +
           adaptive(c, b, right, eps * 0.5, depth - 1);
}

double dilog_oracle(double x) {
    double z = 1.0 - x;
    if (z == 0.0) return 0.0;
    return adaptive(0.0, z, simpson(0.0, z), 1e-15, 40);
}

}  // namespace

TEST_CASE("dilog frozen values") {
    CHECK(qbox::dilog(0.1) == doctest::Approx(1.2997147230049587).epsilon(1e-15));
    CHECK(qbox::dilog(0.5) == doctest::Approx(0.58224052646501251).epsilon(1e-15));
    CHECK(qbox::dilog(1.0) == 0.0);
    CHECK(qbox::dilog(1.5) == doctest::Approx(-0.4484142069236462).epsilon(1e-15));
    CHECK(qbox::dilog(1.9) == doctest::Approx(-0.75216317921726162).epsilon(1e-15));
}

TEST_CASE("dilog matches quadrature on a grid") {
    for (int k = 1; k < 40; ++k) {
        double x = 0.05 * k;  // 0.05 .. 1.95 crosses both branch seams
        CAPTURE(x);
        CHECK(qbox::dilog(x) == doctest::Approx(dilog_oracle(x)).epsilon(2e-13));
    }
}

TEST_CASE("dilog reflection identity") {
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    for (double x : {0.07, 0.21, 0.4, 0.63, 0.88, 0.97}) {
        double lhs = qbox::dilog(x) + qbox::dilog(1.0 - x);
        double rhs = pi2_6 - std::log(x) * std::log1p(-x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("dilog domain") {
    CHECK_THROWS_AS((void)qbox::dilog(0.0), std::domain_error);
    CHECK_THROWS_AS((void)qbox::dilog(2.0), std::domain_error);
    CHECK_THROWS_AS((void)qbox::dilog(-0.3), std::domain_error);
    CHECK_THROWS_AS((void)qbox::dilog(std::nan("")), std::domain_error);
}

TEST_CASE("log1mexp frozen values") {
    CHECK(qbox::log1mexp(1e-8) == doctest::Approx(-18.420680748952365).epsilon(1e-15));
    CHECK(qbox::log1mexp(50.0) == doctest::Approx(-1.9287498479942364e-22).epsilon(1e-15));
    CHECK(qbox::log1mexp(std::numbers::ln2) ==
          doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("log1mexp identity and seam") {
    for (double y : {1e-6, 1e-3, 0.1, 0.5, 0.69, 0.7, 2.0, 10.0, 35.0}) {
        CAPTURE(y);
        CHECK(std::exp(qbox::log1mexp(y)) ==
              doctest::Approx(-std::expm1(-y)).epsilon(1e-15));
    }
    // continuity across the ln 2 branch point
    double lo = qbox::log1mexp(std::numbers::ln2 - 1e-12);
    double hi = qbox::log1mexp(std::numbers::ln2 + 1e-12);
    CHECK(std::abs(lo - hi) < 1e-11);
}

TEST_CASE("log1mexp domain") {
    CHECK_THROWS_AS((void)qbox::log1mexp(0.0), std::domain_error);
    CHECK_THROWS_AS((void)qbox::log1mexp(-1.0), std::domain_error);
}
