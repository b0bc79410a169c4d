#include "qbox/asym.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qbox/errors.hpp"
#include "qbox/lclt.hpp"
#include "qbox/special.hpp"

namespace qbox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

Estimate make_estimate(double log_value, long long m) {
    return {log_value, std::exp(log_value), log_value / double(m), false, false};
}

long long reflect_n(long long m, long long ell, long long n) {
    return std::min(n, ell * m - n);
}

void check_interior(long long m, long long ell, long long n) {
    if (m < 1 || ell < 1) throw std::domain_error("estimate: m and ell must be positive");
    if (n <= 0 || n >= ell * m)
        throw degenerate_error("estimate: n in {0, ell*m} is degenerate (exact count 1)");
}

}  // namespace

MomentData moments(const DiscreteTilt& tilt) {
    const DiscreteSums s = discrete_sums(tilt);
    const double md = double(tilt.m);
    const double alpha = s.var_s / md;
    const double beta = s.cov / (md * md);
    const double gamma = s.var_t / (md * md * md);
    return {tilt.m, s.mu, s.nu, alpha, beta, gamma, alpha * gamma - beta * beta, s.log_norm};
}

Estimate estimate_theorem1(long long m, long long ell, long long n) {
    check_interior(m, ell, n);
    const AspectFill regime = box_regime(m, ell, n);
    const double A = regime.A, B = regime.B;
    const Tilt tilt = solve_tilt(regime);
    const double md = double(m);
    if (tilt.d < 1e-6) {
        // elementary values at the central fill: N ~ (sqrt3/(A pi m^2)) ((A+1)^{A+1}/A^A)^m
        const double rate = (A + 1.0) * std::log(A + 1.0) - A * std::log(A);
        const double lv = md * rate + 0.5 * std::log(3.0) - std::log(A * kPi * md * md);
        return make_estimate(lv, m);
    }
    const double D = delta(tilt);
    const double om_c = -std::expm1(-tilt.c);
    const double om_cd = -std::expm1(-(tilt.c + tilt.d));
    const double lv = md * (tilt.c * A + 2.0 * tilt.d * B - log1mexp(tilt.c + tilt.d)) -
                      std::log(2.0 * kPi * md * md) - 0.5 * std::log(D * om_c * om_cd);
    return make_estimate(lv, m);
}

Estimate estimate_theorem1prime(long long m, long long ell, long long n) {
    check_interior(m, ell, n);
    const long long nr = reflect_n(m, ell, n);
    const DiscreteTilt dt = solve_discrete_tilt(m, ell, nr);
    const MomentData md = moments(dt);
    const double mm = double(m);
    const double lv = -md.L_m + dt.c * double(ell) + dt.d * double(nr) / mm -
                      std::log(2.0 * kPi * mm * mm * std::sqrt(md.Delta_m));
    return make_estimate(lv, m);
}

Estimate estimate_difference(long long m, long long ell, long long n) {
    check_interior(m, ell, n);
    if (2 * n == ell * m) {
        // centered: d = 0, the difference asymptotic excludes this regime
        Estimate e{-std::numeric_limits<double>::infinity(), 0.0,
                   -std::numeric_limits<double>::infinity(), true, true};
        return e;
    }
    if (2 * n > ell * m)
        throw std::out_of_range("estimate_difference: requires n < ell*m/2 (reflect first)");
    const AspectFill regime = box_regime(m, ell, n);
    const Tilt tilt = solve_tilt(regime);
    Estimate base = estimate_theorem1(m, ell, n);
    Estimate e = make_estimate(std::log(tilt.d / double(m)) + base.log_value, m);
    e.near_degenerate = double(m) * std::abs(regime.A - 2.0 * regime.B) < 1.0;
    return e;
}

double pak_panova_bound(long long m, long long ell, long long n) {
    if (m < 1 || ell < 1) throw std::domain_error("pak_panova_bound: m and ell must be positive");
    if (2 * n > ell * m) throw std::out_of_range("pak_panova_bound: requires n <= ell*m/2");
    const double s = double(std::min(2 * n, std::min(ell * ell, m * m)));
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return 0.004 * std::exp(std::sqrt(s) * kLog2 - 2.25 * std::log(s));
}

Estimate takacs_estimate(long long m, long long ell, long long n) {
    check_interior(m, ell, n);
    const MomentData md = moments(DiscreteTilt{kLog2, 0.0, m});  // p_j = 1/2 for all j
    const double lv =
        double(m + ell) * kLog2 + log_normal_approx(double(ell), double(n), md);
    return make_estimate(lv, m);
}

double takacs_walk_rate(double A) { return (1.0 + A) * kLog2; }

}  // namespace qbox
