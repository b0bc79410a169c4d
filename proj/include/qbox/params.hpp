#pragma once

// tilt-parameter solvers: the continuum pair (c,d) inverting the
// aspect/fill map psi, and the discrete pair (c_m,d_m) matching the
// expected row count and area of the tilted gap ensemble

namespace qbox {

// continuum regime point after symmetry normalization (A >= 2B > 0)
struct AspectFill {
    double A;                // aspect ratio ell/m
    double B;                // fill ratio n/m^2
    bool reflected = false;  // input had B > A/2 and was mapped via n -> ell*m - n
};

struct Tilt {
    double c;  // >= 0
    double d;  // >= 0; d == 0 iff B == A/2
};

struct DiscreteTilt {
    double c;     // c_m
    double d;     // d_m
    long long m;  // ensemble size (gap indices 0..m)
};

// partial derivatives of psi; symmetric (J_Ad == J_Bc), negative definite
struct JacobianMatrix {
    double J_Ac, J_Ad, J_Bc, J_Bd;
};

struct SolveDiagnostics {
    double residual_a = 0.0, residual_b = 0.0;
    int bisect_steps = 0, newton_steps = 0;
};

// sums over j = 0..m for q_j = e^{-c - d j/m}: means of (S,T), the raw
// second moments Var S = var_s, Cov(S,T) = cov, Var T = var_t, and the
// log-normalizer log_norm = sum log p_j
struct DiscreteSums {
    double mu, nu, var_s, cov, var_t, log_norm;
};

AspectFill normalize_regime(double A, double B);
AspectFill box_regime(long long m, long long ell, long long n);

// (A,B) as a function of the tilt; series limits used below d = 1e-6
AspectFill psi(const Tilt& t);
JacobianMatrix jacobian(const Tilt& t);

// invert psi: bisection on d (monotone), then 2-d Newton polish;
// residual < 1e-11 guaranteed or solver_error
Tilt solve_tilt(const AspectFill& regime, SolveDiagnostics* diag = nullptr);

// solve the discrete mean equations E S_m = ell, E T_m = n; Newton seeded
// at the continuum solution; absolute residuals < 1e-9 or solver_error
DiscreteTilt solve_discrete_tilt(long long m, long long ell, long long n,
                                 SolveDiagnostics* diag = nullptr);

DiscreteSums discrete_sums(const DiscreteTilt& t);

// the determinant-like quantity controlling the Gaussian prefactor
double delta(const Tilt& t);

}  // namespace qbox
