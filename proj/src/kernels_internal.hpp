#pragma once

#include <cstddef>
#include <cstdint>

// shared between the scalar and avx2 kernel translation units

namespace qbox::kernels::detail {

struct Ops {
    void (*scale_add)(double*, const double*, double, double, std::size_t);
    void (*scale)(double*, double, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    void (*geom_gaps)(std::uint64_t, const double*, double*, std::size_t);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // defined only when built with avx2 support

// scalar entry points, reused by the avx2 unit for loop tails
void scale_add_scalar(double* y, const double* z, double p, double q, std::size_t n);
void scale_scalar(double* y, double a, std::size_t n);
double sum_scalar(const double* x, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
void geom_gaps_scalar(std::uint64_t key, const double* invlogq, double* out, std::size_t n);
double log_u01_scalar(double u);

// log-polynomial constants (fdlibm/musl log), shared so both paths agree bitwise
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

}  // namespace qbox::kernels::detail
