#include "qbox/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbox/errors.hpp"
#include "qbox/kernels.hpp"
#include "qbox/rng.hpp"
#include "qbox/special.hpp"

namespace qbox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 64;

std::vector<double> inv_log_q(const DiscreteTilt& tilt) {
    if (!(tilt.c > 0.0) || !(tilt.c + tilt.d > 0.0))
        throw std::domain_error("sampler: need c_m > 0 and c_m + d_m > 0");
    std::vector<double> v(std::size_t(tilt.m) + 1);
    for (long long j = 0; j <= tilt.m; ++j)
        v[std::size_t(j)] = -1.0 / (tilt.c + tilt.d * double(j) / double(tilt.m));
    return v;
}

}  // namespace

GapVector sample_ensemble(const DiscreteTilt& tilt, std::uint64_t seed) {
    if (tilt.m < 1) throw std::domain_error("sample_ensemble: m must be positive");
    const std::vector<double> invlogq = inv_log_q(tilt);
    std::vector<double> buf(invlogq.size());
    kernels::geom_gaps(rng_key(seed), invlogq.data(), buf.data(), buf.size());
    GapVector g;
    g.x.resize(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) g.x[i] = static_cast<long long>(buf[i]);
    return g;
}

Partition partition_from_gaps(const GapVector& gaps, long long ell) {
    if (gaps.x.size() < 2) throw std::invalid_argument("partition_from_gaps: need m >= 1");
    const std::size_t m = gaps.x.size() - 1;
    Partition part;
    part.parts.resize(m);
    long long level = ell;
    for (std::size_t j = 0; j < m; ++j) {
        level -= gaps.x[j];
        if (level < 0) throw std::invalid_argument("partition_from_gaps: gaps overflow the box");
        part.parts[j] = level;
    }
    if (level != gaps.x[m])
        throw std::invalid_argument("partition_from_gaps: gap sum does not match ell");
    return part;
}

long long default_max_tries(long long m, double Delta_m) {
    const double md = double(m);
    return 100 * static_cast<long long>(std::ceil(2.0 * kPi * md * md * std::sqrt(Delta_m)));
}

SampleResult sample_boxed(long long m, long long ell, long long n, std::uint64_t seed,
                          long long max_tries) {
    if (m < 1 || ell < 1) throw std::domain_error("sample_boxed: m and ell must be positive");
    if (n < 0 || n > ell * m) throw std::domain_error("sample_boxed: n out of range");
    if (n == 0 || n == ell * m)
        throw degenerate_error("sample_boxed: n in {0, ell*m} admits a single partition");

    const bool reflected = 2 * n > ell * m;
    const long long n_eff = reflected ? ell * m - n : n;
    const DiscreteTilt tilt = solve_discrete_tilt(m, ell, n_eff);
    const DiscreteSums sums = discrete_sums(tilt);
    const double md = double(m);
    const double Delta_m =
        (sums.var_s / md) * (sums.var_t / (md * md * md)) -
        (sums.cov / (md * md)) * (sums.cov / (md * md));
    const long long budget = max_tries > 0 ? max_tries : default_max_tries(m, Delta_m);

    const std::vector<double> invlogq = inv_log_q(tilt);
    const std::size_t count = invlogq.size();
    std::vector<double> buf(count);
    double ramp[kChunk];
    for (std::size_t i = 0; i < kChunk; ++i) ramp[i] = double(i);

    const double ell_d = double(ell);
    const double n_d = double(n_eff);
    const std::uint64_t base = rng_key(seed);

    for (long long t = 0; t < budget; ++t) {
        const std::uint64_t key = rng_sub(base, std::uint64_t(t));
        double s_tot = 0.0, t_tot = 0.0;
        bool alive = true;
        for (std::size_t j0 = 0; j0 < count && alive; j0 += kChunk) {
            const std::size_t cnt = std::min(kChunk, count - j0);
            kernels::geom_gaps(key + std::uint64_t(j0) * rng_gamma, invlogq.data() + j0,
                               buf.data() + j0, cnt);
            const double cs = kernels::sum(buf.data() + j0, cnt);
            const double ct = kernels::dot(buf.data() + j0, ramp, cnt);
            s_tot += cs;
            t_tot += double(j0) * cs + ct;
            // totals only grow, so overshoot anywhere is a definite reject
            if (s_tot > ell_d || t_tot > n_d) alive = false;
        }
        if (!alive || s_tot != ell_d || t_tot != n_d) continue;

        GapVector g;
        g.x.resize(count);
        for (std::size_t i = 0; i < count; ++i) g.x[i] = static_cast<long long>(buf[i]);
        Partition part = partition_from_gaps(g, ell);
        if (reflected) {
            Partition flipped;
            flipped.parts.resize(part.parts.size());
            for (std::size_t i = 0; i < part.parts.size(); ++i)
                flipped.parts[i] = ell - part.parts[part.parts.size() - 1 - i];
            part = std::move(flipped);
        }
        return {std::move(part), t + 1};
    }
    throw tries_exhausted_error("sample_boxed: no accept within the rejection budget", budget, 0);
}

LimitCurve limit_curve(const AspectFill& regime, std::size_t grid) {
    if (grid < 2) throw std::domain_error("limit_curve: grid too small");
    const Tilt tilt = solve_tilt(regime);
    LimitCurve curve;
    curve.A = regime.A;
    curve.B = regime.reflected ? regime.A - regime.B : regime.B;
    curve.c = tilt.c;
    curve.d = tilt.d;
    curve.xs.resize(grid + 1);
    curve.ys.resize(grid + 1);
    std::vector<double> base(grid + 1);  // curve of the normalized regime
    base[0] = regime.A;
    base[grid] = 0.0;
    for (std::size_t i = 1; i < grid; ++i) {
        const double x = double(i) / double(grid);
        base[i] = tilt.d < 1e-6
                      ? regime.A * (1.0 - x)
                      : regime.A - (log1mexp(tilt.c + tilt.d * x) - log1mexp(tilt.c)) / tilt.d;
    }
    for (std::size_t i = 0; i <= grid; ++i) {
        curve.xs[i] = double(i) / double(grid);
        curve.ys[i] = regime.reflected ? regime.A - base[grid - i] : base[i];
    }
    return curve;
}

double boundary_distance(const Partition& part, const LimitCurve& curve) {
    if (part.parts.empty() || curve.xs.empty())
        throw std::invalid_argument("boundary_distance: empty input");
    const long long m = static_cast<long long>(part.parts.size());
    const long long ell = std::llround(curve.A * double(m));
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
        long long j = static_cast<long long>(std::floor(double(m) * curve.xs[i] + 1e-9));
        j = std::clamp<long long>(j, 0, m);
        const double lam = j == 0 ? double(ell) : double(part.parts[std::size_t(j - 1)]);
        worst = std::max(worst, std::abs(lam / double(m) - curve.ys[i]));
    }
    return worst;
}

double max_discrepancy(const GapVector& gaps, const DiscreteTilt& tilt) {
    if (gaps.x.size() != std::size_t(tilt.m) + 1)
        throw std::invalid_argument("max_discrepancy: gap count must be m + 1");
    double run = 0.0, worst = 0.0;
    for (long long j = 0; j <= tilt.m; ++j) {
        const double q = std::exp(-(tilt.c + tilt.d * double(j) / double(tilt.m)));
        run += double(gaps.x[std::size_t(j)]) - q / (1.0 - q);
        worst = std::max(worst, std::abs(run));
    }
    return worst;
}

namespace {

// residuals of the endpoint equations, written with the plain library
// exp/log/dilog route so agreement with (c, c+d) is a genuine cross-check
double endpoint_res_a(double s1, double s2, double A) {
    return std::log((std::exp(s2) - 1.0) / (std::exp(s2) - std::exp(s2 - s1))) / (s2 - s1) - A;
}

double endpoint_res_b(double s1, double s2, double B) {
    const double w = s2 - s1;
    return (-dilog(1.0 - std::exp(-s2)) + dilog(1.0 - std::exp(-s1)) +
            w * std::log(1.0 - std::exp(-s2))) /
               (w * w) -
           B;
}

}  // namespace

PetrovEndpoints petrov_endpoints(const AspectFill& regime) {
    if (!(regime.B < regime.A / 2.0))
        throw degenerate_error("petrov_endpoints: B = A/2 degenerates to s1 = s2");
    const Tilt seed = solve_tilt(regime);
    double s1 = seed.c, s2 = seed.c + seed.d;
    double ra = 0.0, rb = 0.0;
    for (int it = 0; it < 30; ++it) {
        ra = endpoint_res_a(s1, s2, regime.A);
        rb = endpoint_res_b(s1, s2, regime.B);
        if (std::abs(ra) < 1e-12 && std::abs(rb) < 1e-12) break;
        const double h1 = 1e-6 * std::max(1.0, std::abs(s1));
        const double h2 = 1e-6 * std::max(1.0, std::abs(s2));
        const double j11 = (endpoint_res_a(s1 + h1, s2, regime.A) -
                            endpoint_res_a(s1 - h1, s2, regime.A)) /
                           (2.0 * h1);
        const double j12 = (endpoint_res_a(s1, s2 + h2, regime.A) -
                            endpoint_res_a(s1, s2 - h2, regime.A)) /
                           (2.0 * h2);
        const double j21 = (endpoint_res_b(s1 + h1, s2, regime.B) -
                            endpoint_res_b(s1 - h1, s2, regime.B)) /
                           (2.0 * h1);
        const double j22 = (endpoint_res_b(s1, s2 + h2, regime.B) -
                            endpoint_res_b(s1, s2 - h2, regime.B)) /
                           (2.0 * h2);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) throw solver_error("petrov_endpoints: singular jacobian", ra, rb);
        double step1 = (ra * j22 - rb * j12) / det;
        double step2 = (rb * j11 - ra * j21) / det;
        for (int half = 0; half < 40; ++half) {
            const double n1 = s1 - step1, n2 = s2 - step2;
            if (n1 > 0.0 && n2 - n1 > 1e-12) {
                s1 = n1;
                s2 = n2;
                break;
            }
            step1 *= 0.5;
            step2 *= 0.5;
        }
    }
    ra = endpoint_res_a(s1, s2, regime.A);
    rb = endpoint_res_b(s1, s2, regime.B);
    if (std::abs(ra) >= 1e-10 || std::abs(rb) >= 1e-10)
        throw solver_error("petrov_endpoints: residual target not reached", ra, rb);
    return {s1, s2};
}

}  // namespace qbox
