#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qbox/asym.hpp"
#include "qbox/cli.hpp"
#include "qbox/errors.hpp"
#include "qbox/exact.hpp"
#include "qbox/kernels.hpp"
#include "qbox/lclt.hpp"
#include "qbox/params.hpp"
#include "qbox/quadrature.hpp"
#include "qbox/rng.hpp"
#include "qbox/sampler.hpp"
#include "qbox/special.hpp"

namespace qbox::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Reporter {
    std::ostream& os;
    int failures = 0;

    void check(const char* name, bool ok, const std::string& detail = "") {
        os << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) os << ": " << detail;
        os << '\n';
        if (!ok) ++failures;
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::string two(double a, double b) {
    std::ostringstream ss;
    ss << a << " vs " << b;
    return ss.str();
}

// ------------------------------------------------------------------ special

void check_special(Reporter& r) {
    bool vals = near(dilog(0.1), 1.2997147230049587, 1e-14) &&
                near(dilog(0.5), 0.58224052646501251, 1e-14) &&
                near(dilog(1.5), -0.4484142069236462, 1e-14) &&
                near(dilog(1.9), -0.75216317921726162, 1e-14) && dilog(1.0) == 0.0;
    r.check("special.dilog-values", vals);

    double worst = 0.0;
    for (int i = 1; i < 20; ++i) {
        const double x = i / 20.0;
        const double lhs = dilog(x) + dilog(1.0 - x);
        const double rhs = kPi * kPi / 6.0 - std::log(x) * std::log(1.0 - x);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    r.check("special.dilog-reflection", worst < 1e-14, "worst " + std::to_string(worst));

    bool lme = near(log1mexp(1e-8), -18.420680748952365, 1e-12) &&
               near_rel(log1mexp(50.0), -1.9287498479942364e-22, 1e-13);
    double worst_id = 0.0;
    for (double y : {1e-6, 0.1, 0.5, std::numbers::ln2, 1.0, 3.0, 20.0})
        worst_id = std::max(worst_id,
                            std::abs(std::exp(log1mexp(y)) + std::exp(-y) - 1.0));
    const double stepgap =
        std::abs(log1mexp(std::numbers::ln2 - 1e-12) - log1mexp(std::numbers::ln2 + 1e-12));
    r.check("special.log1mexp", lme && worst_id < 1e-14 && stepgap < 1e-11);
}

// ------------------------------------------------------------------- params

void check_params(Reporter& r) {
    const Tilt t13 = solve_tilt(normalize_regime(1.0, 1.0 / 3.0));
    bool frozen = near(t13.c, 0.29894080501306690, 1e-12) &&
                  near(t13.d, 1.05431850142201271, 1e-12) &&
                  near(delta(t13), 0.33998113754976952, 1e-11);
    const Tilt th = solve_tilt(normalize_regime(1.0, 0.5));
    frozen = frozen && th.c == std::log(2.0) && th.d == 0.0 &&
             near(delta(th), 1.0 / 3.0, 1e-14);
    r.check("params.tilt-frozen", frozen);

    double worst = 0.0;
    bool neg_def = true;
    for (double A : {0.5, 1.0, 1.7, 2.4, 3.0})
        for (double frac : {0.2, 0.5, 0.8, 1.0}) {
            const double B = frac * A / 2.0;
            const AspectFill reg = normalize_regime(A, B);
            const Tilt t = solve_tilt(reg);
            const AspectFill back = psi(t);
            worst = std::max(worst, std::abs(back.A - A));
            worst = std::max(worst, std::abs(back.B - B));
            const JacobianMatrix J = jacobian(t);
            if (!(J.J_Ac < 0.0) || !(J.J_Ac * J.J_Bd - J.J_Ad * J.J_Bc > 0.0)) neg_def = false;
            if (J.J_Ad != J.J_Bc) neg_def = false;
        }
    r.check("params.grid-roundtrip", worst < 1e-10, "worst " + std::to_string(worst));
    r.check("params.jacobian-negative-definite", neg_def);

    SolveDiagnostics dg;
    const DiscreteTilt dt = solve_discrete_tilt(12, 12, 48, &dg);
    bool disc = near(dt.c, 0.38273322996021292, 1e-11) &&
                near(dt.d, 0.93501100358144443, 1e-11) &&
                std::abs(dg.residual_a) < 1e-9 && std::abs(dg.residual_b) < 1e-9;
    SolveDiagnostics dg8;
    solve_discrete_tilt(800, 800, 800 * 800 / 3, &dg8);
    disc = disc && std::abs(dg8.residual_a) < 1e-9 && std::abs(dg8.residual_b) < 1e-9;
    r.check("params.discrete-residuals", disc,
            two(dg8.residual_a, dg8.residual_b));

    // closed form for Delta against the direct moment integrals
    const auto& gl = gauss_legendre<64>::instance();
    double worst_delta = 0.0;
    for (const Tilt t : {Tilt{0.3, 1.05}, Tilt{0.7, 0.9}, Tilt{std::log(2.0), 1e-4},
                         Tilt{0.08, 5.16}}) {
        auto g = [&](double x) {
            const double e = std::exp(-(t.c + t.d * x));
            return e / ((1.0 - e) * (1.0 - e));
        };
        const double a = gl.integrate([&](double x) { return g(x); }, 0.0, 1.0);
        const double b = gl.integrate([&](double x) { return x * g(x); }, 0.0, 1.0);
        const double c2 = gl.integrate([&](double x) { return x * x * g(x); }, 0.0, 1.0);
        const double ref = a * c2 - b * b;
        worst_delta = std::max(worst_delta, std::abs(delta(t) - ref) / ref);
    }
    r.check("params.delta-dual-route", worst_delta < 1e-9,
            "worst rel " + std::to_string(worst_delta));
}

// -------------------------------------------------------------------- exact

void check_exact(Reporter& r) {
    bool known = true;
    {
        const CoefficientVector v = coeff_vector(2, 2);
        const std::vector<long> want{1, 1, 2, 1, 1};
        known = v.coeffs.size() == want.size();
        for (std::size_t i = 0; known && i < want.size(); ++i)
            known = v.coeffs[i] == want[i];
        known = known && coeff({3, 3, 4}) == 3 && coeff({12, 12, 48}) == 24620 &&
                kronecker_diff({12, 12, 48}) == 1916;
    }
    r.check("exact.known-values", known);

    bool structure = true;
    std::string why;
    for (long long m = 1; m <= 10 && structure; ++m)
        for (long long ell = m; ell <= 10 && structure; ++ell) {
            const CoefficientVector v = coeff_vector(m, ell);
            const CoefficientVector w = coeff_vector(ell, m);
            const long long deg = ell * m;
            mpz_class total = 0;
            for (long long k = 0; k <= deg; ++k) {
                total += v.coeffs[std::size_t(k)];
                if (v.coeffs[std::size_t(k)] != v.coeffs[std::size_t(deg - k)] ||
                    v.coeffs[std::size_t(k)] != w.coeffs[std::size_t(k)]) {
                    structure = false;
                    why = "symmetry/transpose at m=" + std::to_string(m) +
                          " ell=" + std::to_string(ell);
                }
                if (k >= 1 && 2 * k <= deg && v.coeffs[std::size_t(k)] < v.coeffs[std::size_t(k - 1)]) {
                    structure = false;
                    why = "unimodality at m=" + std::to_string(m);
                }
            }
            mpz_class bin;
            mpz_bin_uiui(bin.get_mpz_t(), unsigned(m + ell), unsigned(m));
            if (total != bin) {
                structure = false;
                why = "column sum at m=" + std::to_string(m);
            }
        }
    r.check("exact.structure-to-10", structure, why);

    bool brute = true;
    for (const auto& [m, ell] : {std::pair<long long, long long>{4, 4}, {3, 5}, {6, 6}})
        for (long long n = 0; n <= ell * m && brute; ++n)
            brute = coeff({m, ell, n}) == brute_force_coeff({m, ell, n});
    r.check("exact.brute-force-agreement", brute);

    // interior plateaus that rule out strict unimodality below min(ell,m) = 8
    const CoefficientVector v66 = coeff_vector(6, 6);
    const CoefficientVector v56 = coeff_vector(6, 5);
    r.check("exact.plateaus-exist",
            v66.coeffs[16] == 55 && v66.coeffs[17] == 55 && v56.coeffs[14] == 32 &&
                v56.coeffs[15] == 32);
}

// --------------------------------------------------------------------- asym

void check_asym(Reporter& r) {
    const Estimate a = estimate_theorem1(10, 10, 30);
    const Estimate b = estimate_theorem1(10, 10, 70);
    r.check("asym.reflection-exact", a.log_value == b.log_value);

    const Estimate t1 = estimate_theorem1(10, 10, 50);
    const Estimate t1p = estimate_theorem1prime(10, 10, 50);
    r.check("asym.t1-vs-t1p-10-10-50",
            std::isfinite(t1.log_value) && std::isfinite(t1p.log_value) &&
                std::abs(t1.log_value - t1p.log_value) < 1.0,
            two(t1.log_value, t1p.log_value));

    const double gap50 = std::abs(estimate_theorem1prime(50, 50, 50 * 50 / 3).log_value -
                                  estimate_theorem1(50, 50, 50 * 50 / 3).log_value);
    r.check("asym.t1p-correction-m50", near(gap50, 0.018273261, 1e-6),
            std::to_string(gap50));

    bool tak = true;
    for (double B : {0.1, 0.2, 0.3, 0.4}) {
        const Tilt t = solve_tilt(normalize_regime(1.0, B));
        const double rate = t.c * 1.0 + 2.0 * t.d * B - log1mexp(t.c + t.d);
        if (!(takacs_walk_rate(1.0) > rate)) tak = false;
    }
    const double center = (1.0 + 1.0) * std::log(2.0) - 2.0 * std::log(2.0);
    r.check("asym.walk-rate-dominates", tak && std::abs(center) < 1e-9);

    r.check("asym.pp-bound-values",
            near_rel(pak_panova_bound(10, 10, 25), 8.0906049213559986e-05, 1e-12) &&
                near_rel(pak_panova_bound(9, 12, 40), 0.00010294414593419855, 1e-12));

    const Estimate dc = estimate_difference(10, 10, 50);
    r.check("asym.difference-center-excluded", dc.regime_excluded && dc.value == 0.0);
}

// --------------------------------------------------------------------- lclt

void check_lclt(Reporter& r) {
    const Tilt t13 = solve_tilt(normalize_regime(1.0, 1.0 / 3.0));
    const GeometricFamily tilted = tilted_family({t13.c, t13.d, 8});
    const GeometricFamily fair = fair_family(8);

    bool mass_ok = true;
    for (const GeometricFamily* fam : {&tilted, &fair}) {
        const JointPmfTable tab = exact_joint_pmf(*fam);
        if (!(tab.truncation_error <= 1.01e-12) || tab.mass_deficit < -1e-10 ||
            tab.mass_deficit > tab.truncation_error + 1e-10)
            mass_ok = false;
    }
    r.check("lclt.mass-certificate", mass_ok);

    {
        const JointPmfTable tab = exact_joint_pmf(tilted);
        const MomentData md = moments(tilted);
        double es = 0.0, et = 0.0;
        for (long long s = 0; s <= tab.s_max; ++s)
            for (long long tt = 0; tt <= tab.t_max; ++tt) {
                const double p = tab.at(s, tt);
                es += double(s) * p;
                et += double(tt) * p;
            }
        r.check("lclt.table-moments", near(es, md.mu, 1e-8) && near(et, md.nu, 1e-8),
                two(es, md.mu));

        double total = 0.0;
        for (long long s = -40; s <= tab.s_max + 40; ++s)
            for (long long tt = -160; tt <= tab.t_max + 160; ++tt)
                total += normal_approx(double(s), double(tt), md);
        r.check("lclt.normal-normalization", near(total, 1.0, 1e-6), std::to_string(total));
    }

    {
        const DiscreteTilt dt = solve_discrete_tilt(8, 8, 20);
        const GeometricFamily fam = tilted_family(dt);
        const MomentData md = moments(fam);
        const MomentData md2 = moments(dt);
        const bool dual = near_rel(md.mu, md2.mu, 1e-12) && near_rel(md.nu, md2.nu, 1e-12) &&
                          near_rel(md.Delta_m, md2.Delta_m, 1e-12) &&
                          near_rel(md.L_m, md2.L_m, 1e-12);
        r.check("lclt.moments-dual-route", dual);

        const JointPmfTable tab = exact_joint_pmf(fam);
        const double lhs = tab.at(8, 20) *
                           std::exp(-md.L_m + dt.c * 8.0 + dt.d * 20.0 / 8.0);
        const double rhs = coeff({8, 8, 20}).get_d();
        r.check("lclt.count-identity-8-8-20", near_rel(lhs, rhs, 1e-8), two(lhs, rhs));
    }
}

// ------------------------------------------------------------------ sampler

void check_sampler(Reporter& r) {
    r.check("sampler.budget-formula", default_max_tries(10, 0.34) == 36700);

    // (2,2,2): exactly the partitions (2) and (1,1), uniform 1/2 each
    std::map<std::vector<long long>, int> counts;
    for (int i = 0; i < 2000; ++i) {
        const SampleResult s = sample_boxed(2, 2, 2, 7000 + std::uint64_t(i));
        counts[s.partition.parts]++;
    }
    const int c20 = counts[{2, 0}];
    const int c11 = counts[{1, 1}];
    r.check("sampler.uniform-2-2-2",
            counts.size() == 2 && c20 + c11 == 2000 && std::abs(c20 - 1000) < 100,
            two(c20, c11));

    bool valid = true;
    for (int i = 0; i < 50 && valid; ++i) {
        const SampleResult s = sample_boxed(6, 6, 18, std::uint64_t(i));
        long long sum = 0, prev = 6;
        for (long long p : s.partition.parts) {
            if (p < 0 || p > 6 || p > prev) valid = false;
            sum += p;
            prev = p;
        }
        valid = valid && sum == 18 && s.tries >= 1;
    }
    r.check("sampler.partition-valid", valid);

    bool refl = true;
    for (int i = 0; i < 20 && refl; ++i) {
        const SampleResult lo = sample_boxed(6, 6, 9, std::uint64_t(100 + i));
        const SampleResult hi = sample_boxed(6, 6, 27, std::uint64_t(100 + i));
        if (lo.tries != hi.tries) refl = false;
        for (std::size_t j = 0; refl && j < 6; ++j)
            if (hi.partition.parts[j] != 6 - lo.partition.parts[5 - j]) refl = false;
    }
    r.check("sampler.reflection-complement", refl);
}

void check_curve(Reporter& r) {
    const AspectFill reg = normalize_regime(1.0, 1.0 / 3.0);
    const LimitCurve cv = limit_curve(reg, 256);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < cv.xs.size(); ++i) {
        const double res = (1.0 - std::exp(-cv.c)) * std::exp(cv.d * (cv.A - cv.ys[i])) +
                           std::exp(-cv.c) * std::exp(-cv.d * cv.xs[i]) - 1.0;
        worst = std::max(worst, std::abs(res));
    }
    bool mono = cv.ys.front() == 1.0 && cv.ys.back() == 0.0;
    for (std::size_t i = 1; i < cv.ys.size(); ++i)
        if (!(cv.ys[i] < cv.ys[i - 1])) mono = false;
    r.check("curve.implicit-equation", worst < 1e-12, std::to_string(worst));
    r.check("curve.monotone-boundary", mono);

    auto area = [](const LimitCurve& c) {
        double s = 0.0;
        for (std::size_t i = 1; i < c.xs.size(); ++i)
            s += 0.5 * (c.ys[i] + c.ys[i - 1]) * (c.xs[i] - c.xs[i - 1]);
        return s;
    };
    const LimitCurve lo = limit_curve(normalize_regime(1.0, 0.3), 1024);
    const LimitCurve hi = limit_curve(normalize_regime(1.0, 0.7), 1024);
    const LimitCurve mid = limit_curve(normalize_regime(1.0, 0.5), 64);
    bool flat = true;
    for (std::size_t i = 0; i < mid.xs.size(); ++i)
        if (std::abs(mid.ys[i] - (1.0 - mid.xs[i])) > 1e-14) flat = false;
    r.check("curve.area-is-fill",
            near(area(lo), 0.3, 1e-4) && near(area(hi), 0.7, 1e-4),
            two(area(lo), area(hi)));
    r.check("curve.centered-is-diagonal", flat);

    bool petrov = true;
    std::string pw;
    for (const auto& [A, B] :
         {std::pair<double, double>{1.0, 1.0 / 3.0}, {2.4, 0.9}, {0.5, 0.05}}) {
        const Tilt t = solve_tilt(normalize_regime(A, B));
        const PetrovEndpoints pe = petrov_endpoints(normalize_regime(A, B));
        if (std::abs(pe.s1 - t.c) >= 1e-8 || std::abs(pe.s2 - (t.c + t.d)) >= 1e-8) {
            petrov = false;
            pw = two(pe.s1, t.c);
        }
    }
    r.check("curve.petrov-endpoints", petrov, pw);
}

// ------------------------------------------------------------------ kernels

void check_kernels(Reporter& r) {
    r.check("rng.splitmix-vectors",
            rng_key(0) == 0xE220A8397B1DCDAFull &&
                mix64(2 * rng_gamma) == 0x6E789E6AA1B965F4ull &&
                mix64(3 * rng_gamma) == 0x06C45D188009454Full);

    double worst = 0.0;
    for (int i = 1; i <= 4096; ++i) {
        const double u = double(i) / 4097.0;
        const double err = std::abs(kernels::log_u01(u) - std::log(u));
        worst = std::max(worst, err / std::abs(std::log(u)));
    }
    r.check("kernels.log-accuracy", worst < 1e-14, std::to_string(worst));

    {
        std::vector<double> invlogq(131);
        for (std::size_t i = 0; i < invlogq.size(); ++i)
            invlogq[i] = -1.0 / (0.3 + 1.05 * double(i) / 130.0);
        std::vector<double> full(131), parts(131);
        kernels::geom_gaps(1234, invlogq.data(), full.data(), 131);
        kernels::geom_gaps(1234, invlogq.data(), parts.data(), 40);
        kernels::geom_gaps(1234 + 40 * rng_gamma, invlogq.data() + 40, parts.data() + 40, 91);
        r.check("kernels.chunk-invariance",
                std::memcmp(full.data(), parts.data(), 131 * sizeof(double)) == 0);
    }

    if (!kernels::supported(kernels::Backend::avx2)) {
        r.check("kernels.backend-equivalence (scalar only on this host)", true);
        return;
    }
    const kernels::Backend orig = kernels::active();
    bool same = true;
    for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(64), std::size_t(1003)}) {
        std::vector<double> y0(n), z(n), invq(n), g0(n), g1(n), y1;
        for (std::size_t i = 0; i < n; ++i) {
            y0[i] = u01(mix64(9000 + i)) * 2.0 - 1.0;
            z[i] = u01(mix64(91000 + i));
            invq[i] = -1.0 / (0.05 + 3.0 * u01(mix64(92000 + i)));
        }
        y1 = y0;
        kernels::force(kernels::Backend::scalar);
        kernels::scale_add(y0.data(), z.data(), 0.7, 0.4, n);
        kernels::scale(y0.data(), 1.1, n);
        const double s0 = kernels::sum(y0.data(), n);
        const double d0 = kernels::dot(y0.data(), z.data(), n);
        kernels::geom_gaps(777, invq.data(), g0.data(), n);
        kernels::force(kernels::Backend::avx2);
        kernels::scale_add(y1.data(), z.data(), 0.7, 0.4, n);
        kernels::scale(y1.data(), 1.1, n);
        const double s1 = kernels::sum(y1.data(), n);
        const double d1 = kernels::dot(y1.data(), z.data(), n);
        kernels::geom_gaps(777, invq.data(), g1.data(), n);
        if (std::memcmp(y0.data(), y1.data(), n * sizeof(double)) != 0 ||
            std::memcmp(g0.data(), g1.data(), n * sizeof(double)) != 0 ||
            std::memcmp(&s0, &s1, sizeof(double)) != 0 ||
            std::memcmp(&d0, &d1, sizeof(double)) != 0)
            same = false;
    }
    kernels::force(orig);
    r.check("kernels.backend-equivalence", same);
}

}  // namespace

int run_validate(std::ostream& os) {
    Reporter r{os};
    check_special(r);
    check_params(r);
    check_exact(r);
    check_asym(r);
    check_lclt(r);
    check_sampler(r);
    check_curve(r);
    check_kernels(r);
    os << (r.failures == 0 ? "all checks passed\n"
                           : std::to_string(r.failures) + " check(s) failed\n");
    return r.failures;
}

}  // namespace qbox::cli
