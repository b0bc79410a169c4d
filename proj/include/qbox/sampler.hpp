#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qbox/params.hpp"

// rejection sampler for partitions in an ell x m box with fixed area n, plus
// the limit-shape curve the samples concentrate around

namespace qbox {

// gaps x_0..x_m of a partition profile: x_0 = ell - lambda_1,
// x_j = lambda_j - lambda_{j+1} (lambda_{m+1} = 0); sum x_j = ell and
// sum j x_j = sum lambda_j
struct GapVector {
    std::vector<long long> x;
};

struct Partition {
    std::vector<long long> parts;  // lambda_1 >= ... >= lambda_m >= 0
};

struct SampleResult {
    Partition partition;
    long long tries;
};

// scaled boundary y(x) on a uniform grid; A = ell/m, B = n/m^2 of the box the
// curve describes (original orientation), (c,d) the tilt of the normalized
// regime
struct LimitCurve {
    double A = 0.0, B = 0.0;
    double c = 0.0, d = 0.0;
    std::vector<double> xs, ys;
};

inline constexpr std::size_t default_curve_grid = 1024;

// one unconditioned draw of independent geometric gaps with q_j = e^{-c-dj/m}
GapVector sample_ensemble(const DiscreteTilt& tilt, std::uint64_t seed);

// fold gaps into parts; throws if the gaps cannot fit an ell-wide box
Partition partition_from_gaps(const GapVector& gaps, long long ell);

// rejection budget: 100 x ceil(2 pi m^2 sqrt(Delta_m)), the inverse hit rate
long long default_max_tries(long long m, double Delta_m);

// uniform sample conditioned on sum = ell, weighted sum = n; reflects and
// complements when 2n > ell*m; max_tries = 0 means the default budget
SampleResult sample_boxed(long long m, long long ell, long long n, std::uint64_t seed,
                          long long max_tries = 0);

LimitCurve limit_curve(const AspectFill& regime, std::size_t grid = default_curve_grid);

// sup over the grid of |lambda_{floor(m x)}/m - y(x)| with lambda_0 = ell
double boundary_distance(const Partition& part, const LimitCurve& curve);

// sup_j |sum_{i<=j} (x_i - E x_i)| for one unconditioned draw
double max_discrepancy(const GapVector& gaps, const DiscreteTilt& tilt);

// endpoints (s1, s2) of the reparametrized boundary equations; equal to
// (c, c+d) of the same regime, recovered here through the independent route
struct PetrovEndpoints {
    double s1, s2;
};
PetrovEndpoints petrov_endpoints(const AspectFill& regime);

}  // namespace qbox
