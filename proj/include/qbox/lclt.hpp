#pragma once

#include <cstddef>
#include <vector>

#include "qbox/asym.hpp"

// local central limit theorem check: exact joint law of (S, T) for a family of
// independent geometric gaps against the bivariate normal density with the
// matched mean/covariance

namespace qbox {

struct GeometricFamily {
    std::vector<double> p;  // success probabilities p_0..p_m, each in (0,1)
    double delta = 0.0;     // min_j min(p_j, 1 - p_j)

    long long m() const { return static_cast<long long>(p.size()) - 1; }
};

// p_j = 1 - e^{-c_m - d_m j/m}
GeometricFamily tilted_family(const DiscreteTilt& tilt);
// p_j = 1/2 for all j
GeometricFamily fair_family(long long m);

MomentData moments(const GeometricFamily& fam);

// exact joint pmf of (S, T) = (sum X_j, sum j X_j) on a finite window.
// every X_j is capped at the smallest k with q_j^k < tail_eps/(m+1); mass
// escaping the window is certified <= truncation_error <= tail_eps.
struct JointPmfTable {
    long long m = 0;
    long long s_max = 0, t_max = 0;
    std::vector<double> prob;       // row-major, prob[s*(t_max+1) + t]
    double truncation_error = 0.0;  // certified bound on the escaped mass
    double mass_deficit = 0.0;      // 1 - (measured total mass), in [0, truncation_error]

    double at(long long s, long long t) const;
};

inline constexpr double default_tail_eps = 1e-12;
inline constexpr std::size_t default_table_bytes = std::size_t(2) << 30;  // 2 GiB

// guards: m <= 60 and table <= max_bytes, else size_cap_error
JointPmfTable exact_joint_pmf(const GeometricFamily& fam,
                              double tail_eps = default_tail_eps,
                              std::size_t max_bytes = default_table_bytes);

// bivariate normal density at (a, b) with mean (mu, nu) and covariance
// [[alpha m, beta m^2], [beta m^2, gamma m^3]]
double normal_approx(double a, double b, const MomentData& md);
double log_normal_approx(double a, double b, const MomentData& md);

struct LcltErrors {
    double sup_error;       // m^2 * sup_{s,t} |pmf - normal|
    double diff_sup_error;  // sup_{s,t} |D_t pmf - D_t normal|, D_t f = f(s,t) - f(s,t-1)
};

LcltErrors lclt_errors(const JointPmfTable& table, const MomentData& md);

// convenience wrappers: build the default table and scan it
double sup_error(const GeometricFamily& fam);
double diff_sup_error(const GeometricFamily& fam);

}  // namespace qbox
