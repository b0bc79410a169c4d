#include "qbox/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbox {

namespace {

// sum_{k>=1} z^k / k^2 for |z| <= 1/2; stops once a term drops below 1e-17
double dilog_series(double z) {
    double sum = 0.0;
    double zk = z;
    for (int k = 1; k < 200; ++k) {
        double term = zk / (double(k) * k);
        sum += term;
        if (std::abs(term) < 1e-17) break;
        zk *= z;
    }
    return sum;
}

}  // namespace

double dilog(double x) {
    if (!(x > 0.0 && x < 2.0)) throw std::domain_error("dilog: x must lie in (0, 2)");
    const double z = 1.0 - x;
    if (std::abs(z) <= 0.5) return dilog_series(z);
    if (z > 0.0) {
        // x < 1/2: reflection dilog(x) + dilog(1-x) = pi^2/6 - log(x) log(1-x)
        constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
        return pi2_6 - std::log(x) * std::log1p(-x) - dilog_series(x);
    }
    // x > 3/2: Landen, Li2(z) = -Li2(z/(z-1)) - log^2(1-z)/2 with z/(z-1) = (x-1)/x
    const double lx = std::log(x);
    return -dilog_series((x - 1.0) / x) - 0.5 * lx * lx;
}

double log1mexp(double y) {
    if (!(y > 0.0)) throw std::domain_error("log1mexp: y must be positive");
    // split at log 2: below, 1-e^{-y} is small so use log(-expm1);
    // above, e^{-y} is small so use log1p(-exp)
    constexpr double log2_ = 0.6931471805599453;
    if (y <= log2_) return std::log(-std::expm1(-y));
    return std::log1p(-std::exp(-y));
}

}  // namespace qbox
