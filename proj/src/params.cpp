#include "qbox/params.hpp"

#include <cmath>
#include <stdexcept>

#include "qbox/errors.hpp"
#include "qbox/quadrature.hpp"
#include "qbox/special.hpp"

namespace qbox {

namespace {

constexpr double kDZero = 1e-6;  // below this, d-denominated closed forms switch to series

void check_tilt_domain(const Tilt& t) {
    if (!(t.c > 0.0)) throw std::domain_error("tilt: c must be positive");
    if (!(t.d >= 0.0)) throw std::domain_error("tilt: d must be nonnegative");
}

// closed form for c solving the aspect equation at fixed (A,d):
// c = log((e^{(A+1)d}-1)/(e^{(A+1)d}-e^d)), rewritten via log1mexp for stability
double c_of(double A, double d) { return log1mexp((A + 1.0) * d) - log1mexp(A * d); }

struct Kahan {
    double s = 0.0, comp = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    double total() const { return s + comp; }
};

}  // namespace

AspectFill normalize_regime(double A, double B) {
    if (!(A > 0.0)) throw std::domain_error("regime: A must be positive");
    if (!(B > 0.0 && B < A)) throw std::domain_error("regime: B must lie in (0, A)");
    if (B > A / 2.0) return {A, A - B, true};
    return {A, B, false};
}

AspectFill box_regime(long long m, long long ell, long long n) {
    if (m < 1 || ell < 1) throw std::domain_error("box: m and ell must be positive");
    if (n <= 0 || n >= ell * m) throw degenerate_error("box: n must lie strictly between 0 and ell*m");
    const double md = double(m);
    if (2 * n > ell * m) return {double(ell) / md, double(ell * m - n) / (md * md), true};
    return {double(ell) / md, double(n) / (md * md), false};
}

AspectFill psi(const Tilt& t) {
    check_tilt_domain(t);
    const double c = t.c, d = t.d;
    if (d < kDZero) {
        // second-order series around d = 0 for g(u) = 1/(e^{c+u}-1):
        // A = int_0^1 g(dt) dt, B = int_0^1 t g(dt) dt
        const double E = std::exp(c);
        const double g0 = 1.0 / (E - 1.0);
        const double g1 = -E / ((E - 1.0) * (E - 1.0));
        const double g2 = E * (E + 1.0) / ((E - 1.0) * (E - 1.0) * (E - 1.0));
        const double A = g0 + d / 2.0 * g1 + d * d / 6.0 * g2;
        const double B = g0 / 2.0 + d / 3.0 * g1 + d * d / 8.0 * g2;
        return {A, B, false};
    }
    const double l1 = log1mexp(c), l2 = log1mexp(c + d);
    const double A = (l2 - l1) / d;
    const double arg1 = -std::expm1(-c);        // 1 - e^{-c}
    const double arg2 = -std::expm1(-(c + d));  // 1 - e^{-c-d}
    const double B = (d * l2 + dilog(arg1) - dilog(arg2)) / (d * d);
    return {A, B, false};
}

JacobianMatrix jacobian(const Tilt& t) {
    check_tilt_domain(t);
    const auto& gl = gauss_legendre<64>::instance();
    auto entry = [&](int k) {
        return gl.integrate(
            [&](double x) {
                const double w = std::exp(-(t.c + t.d * x));
                const double om = 1.0 - w;
                double p = 1.0;
                for (int i = 0; i < k; ++i) p *= x;
                return -p * w / (om * om);
            },
            0.0, 1.0);
    };
    const double j0 = entry(0), j1 = entry(1), j2 = entry(2);
    return {j0, j1, j1, j2};
}

Tilt solve_tilt(const AspectFill& regime, SolveDiagnostics* diag) {
    const double A = regime.A, B = regime.B;
    if (!(A > 0.0) || !(B > 0.0)) throw std::domain_error("solve_tilt: A and B must be positive");
    if (B > A / 2.0) throw std::domain_error("solve_tilt: B > A/2; normalize the regime first");
    SolveDiagnostics local;
    SolveDiagnostics& dg = diag ? *diag : local;
    if (B == A / 2.0) return {std::log((A + 1.0) / A), 0.0};

    // 1-d bisection on F(d) = psi_B(c(A,d), d) - B, strictly decreasing in d
    auto F = [&](double d) { return psi({c_of(A, d), d}).B - B; };
    double lo = 1e-12, hi = 1.0;
    int doublings = 0;
    while (F(hi) > 0.0 && doublings < 60) {
        lo = hi;
        hi *= 2.0;
        ++doublings;
    }
    if (doublings >= 60) throw solver_error("solve_tilt: failed to bracket d", A, B);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (F(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        ++dg.bisect_steps;
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    double d = 0.5 * (lo + hi);
    double c = c_of(A, d);

    // 2-d Newton polish with the analytic Jacobian
    double res_a = 0.0, res_b = 0.0;
    for (int i = 0; i < 50; ++i) {
        const AspectFill cur = psi({c, d});
        res_a = cur.A - A;
        res_b = cur.B - B;
        dg.residual_a = res_a;
        dg.residual_b = res_b;
        if (std::abs(res_a) < 1e-13 && std::abs(res_b) < 1e-13) break;
        const JacobianMatrix J = jacobian({c, d});
        const double det = J.J_Ac * J.J_Bd - J.J_Ad * J.J_Bc;
        if (det == 0.0) break;
        double step_c = (J.J_Bd * res_a - J.J_Ad * res_b) / det;
        double step_d = (-J.J_Bc * res_a + J.J_Ac * res_b) / det;
        double scale = 1.0;
        while ((c - scale * step_c <= 0.0 || d - scale * step_d <= 0.0) && scale > 1e-6)
            scale *= 0.5;
        c -= scale * step_c;
        d -= scale * step_d;
        ++dg.newton_steps;
    }
    const AspectFill fin = psi({c, d});
    dg.residual_a = fin.A - A;
    dg.residual_b = fin.B - B;
    if (std::abs(dg.residual_a) >= 1e-11 || std::abs(dg.residual_b) >= 1e-11)
        throw solver_error("solve_tilt: residual target not reached", dg.residual_a, dg.residual_b);
    return {c, d};
}

DiscreteSums discrete_sums(const DiscreteTilt& t) {
    if (!(t.c > 0.0)) throw std::domain_error("discrete tilt: c_m must be positive");
    if (!(t.c + t.d > 0.0)) throw std::domain_error("discrete tilt: c_m + d_m must be positive");
    Kahan mu, nu, vs, cv, vt, ln;
    const double md = double(t.m);
    for (long long j = 0; j <= t.m; ++j) {
        const double q = std::exp(-(t.c + t.d * double(j) / md));
        const double p = 1.0 - q;
        const double r = q / p;        // E X_j
        const double v = r / p;        // Var X_j = q/p^2
        const double jd = double(j);
        mu.add(r);
        nu.add(jd * r);
        vs.add(v);
        cv.add(jd * v);
        vt.add(jd * jd * v);
        ln.add(std::log(p));
    }
    return {mu.total(), nu.total(), vs.total(), cv.total(), vt.total(), ln.total()};
}

DiscreteTilt solve_discrete_tilt(long long m, long long ell, long long n, SolveDiagnostics* diag) {
    if (m < 1 || ell < 1) throw std::domain_error("solve_discrete_tilt: m and ell must be positive");
    if (n == 0 || n == ell * m)
        throw degenerate_error("solve_discrete_tilt: n in {0, ell*m} has exact count 1, no tilt");
    if (n < 0 || n > ell * m) throw std::domain_error("solve_discrete_tilt: n out of range");
    if (2 * n > ell * m)
        throw std::domain_error("solve_discrete_tilt: n > ell*m/2; reflect by symmetry first");
    SolveDiagnostics local;
    SolveDiagnostics& dg = diag ? *diag : local;

    if (2 * n == ell * m) {
        // d_m = 0 exactly; the aspect equation collapses to a closed form
        return {std::log(double(ell + m + 1) / double(ell)), 0.0, m};
    }

    const Tilt seed = solve_tilt(box_regime(m, ell, n));
    double c = seed.c, d = seed.d;
    const double md = double(m);
    double res_s = 0.0, res_t = 0.0;
    for (int i = 0; i < 80; ++i) {
        const DiscreteSums s = discrete_sums({c, d, m});
        res_s = s.mu - double(ell);
        res_t = s.nu - double(n);
        dg.residual_a = res_s;
        dg.residual_b = res_t;
        if (std::abs(res_s) < 1e-11 && std::abs(res_t) < 1e-11) break;
        // negated Jacobian of (mu, nu) in (c, d)
        const double a = -s.var_s, b = -s.cov / md, e = -s.cov, f = -s.var_t / md;
        const double det = a * f - b * e;
        if (det == 0.0) break;
        double step_c = (f * res_s - b * res_t) / det;
        double step_d = (-e * res_s + a * res_t) / det;
        double scale = 1.0;
        while ((c - scale * step_c <= 0.0 || (c - scale * step_c) + (d - scale * step_d) <= 1e-12) &&
               scale > 1e-8)
            scale *= 0.5;
        c -= scale * step_c;
        d -= scale * step_d;
        ++dg.newton_steps;
    }
    if (std::abs(res_s) >= 1e-9 || std::abs(res_t) >= 1e-9)
        throw solver_error("solve_discrete_tilt: residual target not reached", res_s, res_t);
    return {c, d, m};
}

double delta(const Tilt& t) {
    check_tilt_domain(t);
    if (t.d < kDZero) {
        const double A = 1.0 / (std::exp(t.c) - 1.0);
        return A * A * (A + 1.0) * (A + 1.0) / 12.0;
    }
    if (t.d < 1e-2 || t.c + t.d > 500.0) {
        // closed form overflows in the deep tail and cancels badly for small d
        // (the B-dependent numerator term is a difference of dilogs amplified by
        // ~1/d^2); fall back to the covariance integrals in both regimes
        const auto& gl = gauss_legendre<64>::instance();
        auto mom = [&](int k) {
            return gl.integrate(
                [&](double x) {
                    const double w = std::exp(-(t.c + t.d * x));
                    const double om = 1.0 - w;
                    double p = 1.0;
                    for (int i = 0; i < k; ++i) p *= x;
                    return p * w / (om * om);
                },
                0.0, 1.0);
        };
        const double al = mom(0), be = mom(1), ga = mom(2);
        return al * ga - be * be;
    }
    const AspectFill r = psi(t);
    const double ec = std::exp(t.c), ed = std::exp(t.d), ecd = std::exp(t.c + t.d);
    const double num = 2.0 * r.B * ec * (ed - 1.0) + 2.0 * r.A * (ec - 1.0) - 1.0;
    return num / (t.d * t.d * (ecd - 1.0) * (ec - 1.0)) - r.A * r.A / (t.d * t.d);
}

}  // namespace qbox
