#include "qbox/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace qbox::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QBOX_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const detail::Ops& ops_for(Backend b) {
#if defined(QBOX_HAVE_AVX2)
    if (b == Backend::avx2) return detail::avx2_ops();
#endif
    (void)b;
    return detail::scalar_ops();
}

struct State {
    Backend backend;
    const detail::Ops* ops;
};

State resolve() {
    Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* e = std::getenv("QBOX_SIMD")) {
        std::string_view v(e);
        if (v == "scalar") b = Backend::scalar;
        else if (v == "avx2" && cpu_has_avx2()) b = Backend::avx2;
    }
    return {b, &ops_for(b)};
}

State& state() {
    static State s = resolve();
    return s;
}

}  // namespace

Backend active() { return state().backend; }

const char* name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool supported(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

bool force(Backend b) {
    if (!supported(b)) return false;
    state() = {b, &ops_for(b)};
    return true;
}

void scale_add(double* y, const double* z, double p, double q, std::size_t n) {
    state().ops->scale_add(y, z, p, q, n);
}

void scale(double* y, double a, std::size_t n) { state().ops->scale(y, a, n); }

double sum(const double* x, std::size_t n) { return state().ops->sum(x, n); }

double dot(const double* x, const double* y, std::size_t n) { return state().ops->dot(x, y, n); }

void geom_gaps(std::uint64_t key, const double* invlogq, double* out, std::size_t n) {
    state().ops->geom_gaps(key, invlogq, out, n);
}

double log_u01(double u) { return detail::log_u01_scalar(u); }

}  // namespace qbox::kernels
