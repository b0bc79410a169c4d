#pragma once

#include "qbox/params.hpp"

// asymptotic estimates: the continuum first-order formula, its discrete-tilt
// refinement, the consecutive-difference estimate, the Pak-Panova lower
// bound, and the fair-coin (Takacs) comparison estimate

namespace qbox {

struct MomentData {
    long long m;
    double mu, nu;              // E S_m, E T_m
    double alpha, beta, gamma;  // Var S / m, Cov / m^2, Var T / m^3
    double Delta_m;             // alpha*gamma - beta^2
    double L_m;                 // sum_j log p_j
};

struct Estimate {
    double log_value;
    double value;             // exp(log_value); +inf if not representable
    double exponential_rate;  // log_value / m
    bool regime_excluded = false;  // asymptotic hypotheses fail outright (d = 0 difference)
    bool near_degenerate = false;  // m|A - 2B| small: difference estimate unreliable
};

MomentData moments(const DiscreteTilt& tilt);

// first-order estimate of N_n(ell,m); d = 0 uses the elementary closed form
Estimate estimate_theorem1(long long m, long long ell, long long n);

// discrete-tilt refinement: exp(-L_m + c_m ell + d_m n/m) / (2 pi m^2 sqrt(Delta_m))
Estimate estimate_theorem1prime(long long m, long long ell, long long n);

// N_{n+1} - N_n ~ (d/m) N_n
Estimate estimate_difference(long long m, long long ell, long long n);

// 0.004 * 2^sqrt(s) / s^{9/4} with s = min{2n, ell^2, m^2}
double pak_panova_bound(long long m, long long ell, long long n);

// fair-coin estimate: 2^{m+ell} times the Gaussian density at (ell, n)
Estimate takacs_estimate(long long m, long long ell, long long n);

// the pure walk-entropy growth rate (1+A) log 2 (the flat comparison line)
double takacs_walk_rate(double A);

}  // namespace qbox
