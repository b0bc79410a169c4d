#include "qbox/lclt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbox/errors.hpp"
#include "qbox/kernels.hpp"

namespace qbox {

namespace {

constexpr double kPi = std::numbers::pi;

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double total() const { return s + c; }
};

void check_family(const GeometricFamily& fam) {
    if (fam.p.empty()) throw std::domain_error("geometric family: empty");
    for (double pj : fam.p)
        if (!(pj > 0.0) || !(pj < 1.0))
            throw std::domain_error("geometric family: p_j must lie in (0,1)");
}

double family_delta(const std::vector<double>& p) {
    double d = 1.0;
    for (double pj : p) d = std::min(d, std::min(pj, 1.0 - pj));
    return d;
}

}  // namespace

GeometricFamily tilted_family(const DiscreteTilt& tilt) {
    if (tilt.m < 1) throw std::domain_error("tilted_family: m must be positive");
    if (!(tilt.c > 0.0) || !(tilt.c + tilt.d > 0.0))
        throw std::domain_error("tilted_family: need c_m > 0 and c_m + d_m > 0");
    GeometricFamily fam;
    fam.p.resize(std::size_t(tilt.m) + 1);
    for (long long j = 0; j <= tilt.m; ++j)
        fam.p[std::size_t(j)] = -std::expm1(-(tilt.c + tilt.d * double(j) / double(tilt.m)));
    fam.delta = family_delta(fam.p);
    return fam;
}

GeometricFamily fair_family(long long m) {
    if (m < 1) throw std::domain_error("fair_family: m must be positive");
    GeometricFamily fam;
    fam.p.assign(std::size_t(m) + 1, 0.5);
    fam.delta = 0.5;
    return fam;
}

MomentData moments(const GeometricFamily& fam) {
    check_family(fam);
    const long long m = fam.m();
    if (m < 1) throw std::domain_error("moments: family needs m >= 1");
    Kahan mu, nu, vs, cv, vt, ln;
    for (long long j = 0; j <= m; ++j) {
        const double p = fam.p[std::size_t(j)];
        const double q = 1.0 - p;
        const double r = q / p;
        const double v = r / p;
        const double jd = double(j);
        mu.add(r);
        nu.add(jd * r);
        vs.add(v);
        cv.add(jd * v);
        vt.add(jd * jd * v);
        ln.add(std::log(p));
    }
    const double md = double(m);
    const double alpha = vs.total() / md;
    const double beta = cv.total() / (md * md);
    const double gamma = vt.total() / (md * md * md);
    return {m,     mu.total(),  nu.total(), alpha, beta,
            gamma, alpha * gamma - beta * beta, ln.total()};
}

double JointPmfTable::at(long long s, long long t) const {
    if (s < 0 || t < 0 || s > s_max || t > t_max) return 0.0;
    return prob[std::size_t(s) * std::size_t(t_max + 1) + std::size_t(t)];
}

JointPmfTable exact_joint_pmf(const GeometricFamily& fam, double tail_eps,
                              std::size_t max_bytes) {
    check_family(fam);
    const long long m = fam.m();
    if (m < 1) throw std::domain_error("exact_joint_pmf: family needs m >= 1");
    if (m > 60)
        throw size_cap_error("exact_joint_pmf: m exceeds the m <= 60 table guard",
                             static_cast<unsigned long long>(m));
    if (!(tail_eps > 0.0) || !(tail_eps < 1.0))
        throw std::domain_error("exact_joint_pmf: tail_eps must lie in (0,1)");

    // cap_j = smallest k >= 1 with q_j^k < tail_eps/(m+1); X_j is kept on
    // {0..cap_j-1}, so the escaped mass is at most sum_j q_j^{cap_j}
    const double per = tail_eps / double(m + 1);
    std::vector<long long> cap(std::size_t(m) + 1);
    double trunc = 0.0;
    long long s_max = 0, t_max = 0;
    for (long long j = 0; j <= m; ++j) {
        const double q = 1.0 - fam.p[std::size_t(j)];
        long long k = static_cast<long long>(std::floor(std::log(per) / std::log(q))) + 1;
        if (k < 1) k = 1;
        while (k > 1 && std::pow(q, double(k - 1)) < per) --k;
        while (std::pow(q, double(k)) >= per) ++k;
        cap[std::size_t(j)] = k;
        trunc += std::pow(q, double(k));
        s_max += k - 1;
        t_max += j * (k - 1);
    }

    const std::size_t stride = std::size_t(t_max) + 1;
    const std::size_t cells = (std::size_t(s_max) + 1) * stride;
    if (cells > max_bytes / sizeof(double))
        throw size_cap_error("exact_joint_pmf: table exceeds the memory cap",
                             static_cast<unsigned long long>(cells) * sizeof(double));

    JointPmfTable table;
    table.m = m;
    table.s_max = s_max;
    table.t_max = t_max;
    table.truncation_error = trunc;
    table.prob.assign(cells, 0.0);
    table.prob[0] = 1.0;

    // fold in one gap at a time, in place.  X ~ Geom(p) contributing (1, j)
    // per unit satisfies new[s][t] = p*old[s][t] + q*new[s-1][t-j], so rows in
    // ascending s can be rewritten with one scale of the head and one fused
    // scale-add of the tail.
    long long s_run = 0, t_run = 0;
    for (long long j = 0; j <= m; ++j) {
        const double p = fam.p[std::size_t(j)];
        const double q = 1.0 - p;
        s_run += cap[std::size_t(j)] - 1;
        t_run += j * (cap[std::size_t(j)] - 1);
        const std::size_t cols = std::size_t(t_run) + 1;
        kernels::scale(table.prob.data(), p, cols);
        for (long long s = 1; s <= s_run; ++s) {
            double* row = table.prob.data() + std::size_t(s) * stride;
            const double* below = row - stride;
            const std::size_t head = std::min<std::size_t>(std::size_t(j), cols);
            kernels::scale(row, p, head);
            if (std::size_t(j) < cols)
                kernels::scale_add(row + j, below, p, q, cols - std::size_t(j));
        }
    }

    table.mass_deficit = 1.0 - kernels::sum(table.prob.data(), table.prob.size());
    return table;
}

double log_normal_approx(double a, double b, const MomentData& md) {
    if (!(md.Delta_m > 0.0))
        throw std::domain_error("normal approximation: Delta_m must be positive");
    const double mm = double(md.m);
    const double m2 = mm * mm;
    const double det = md.Delta_m * m2 * m2;
    const double da = a - md.mu;
    const double db = b - md.nu;
    const double quad =
        (md.gamma * m2 * mm * da * da - 2.0 * md.beta * m2 * da * db + md.alpha * mm * db * db) /
        det;
    return -std::log(2.0 * kPi * m2 * std::sqrt(md.Delta_m)) - 0.5 * quad;
}

double normal_approx(double a, double b, const MomentData& md) {
    return std::exp(log_normal_approx(a, b, md));
}

LcltErrors lclt_errors(const JointPmfTable& table, const MomentData& md) {
    if (!(md.Delta_m > 0.0))
        throw std::domain_error("lclt_errors: Delta_m must be positive");
    const double mm = double(md.m);
    const double m2 = mm * mm;
    const double inv_norm = 1.0 / (2.0 * kPi * m2 * std::sqrt(md.Delta_m));
    const double det = md.Delta_m * m2 * m2;
    const double qa = md.gamma * m2 * mm / det;
    const double qab = -2.0 * md.beta * m2 / det;
    const double qb = md.alpha * mm / det;

    const std::size_t stride = std::size_t(table.t_max) + 1;
    double sup = 0.0, dsup = 0.0;
    for (long long s = 0; s <= table.s_max; ++s) {
        const double da = double(s) - md.mu;
        const double* row = table.prob.data() + std::size_t(s) * stride;
        // previous column t = -1: pmf 0, density evaluated off the grid
        double prev_p = 0.0;
        double db = -1.0 - md.nu;
        double quad = qa * da * da + qab * da * db + qb * db * db;
        double prev_nh = quad > 400.0 ? 0.0 : inv_norm * std::exp(-0.5 * quad);
        for (long long t = 0; t <= table.t_max; ++t) {
            db = double(t) - md.nu;
            quad = qa * da * da + qab * da * db + qb * db * db;
            const double nh = quad > 400.0 ? 0.0 : inv_norm * std::exp(-0.5 * quad);
            const double p = row[std::size_t(t)];
            sup = std::max(sup, std::abs(p - nh));
            dsup = std::max(dsup, std::abs((p - prev_p) - (nh - prev_nh)));
            prev_p = p;
            prev_nh = nh;
        }
    }
    return {m2 * sup, dsup};
}

double sup_error(const GeometricFamily& fam) {
    return lclt_errors(exact_joint_pmf(fam), moments(fam)).sup_error;
}

double diff_sup_error(const GeometricFamily& fam) {
    return lclt_errors(exact_joint_pmf(fam), moments(fam)).diff_sup_error;
}

}  // namespace qbox
