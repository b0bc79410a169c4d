#pragma once

#include <array>
#include <cmath>
#include <numbers>

// fixed-order Gauss-Legendre quadrature; nodes generated once by Newton
// iteration on P_n (good to ~1e-15, plenty for smooth integrands here)

namespace qbox {

template <int N = 64>
class gauss_legendre {
public:
    static const gauss_legendre& instance() {
        static const gauss_legendre gl;
        return gl;
    }

    // integral of f over [a, b]
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double sum = 0.0;
        for (int i = 0; i < N; ++i) sum += w_[i] * f(mid + half * x_[i]);
        return half * sum;
    }

private:
    gauss_legendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                // legendre recurrence for P_N(x) and P_N'(x)
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            x_[i] = -x;
            x_[N - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            w_[i] = w;
            w_[N - 1 - i] = w;
        }
    }

    std::array<double, N> x_{};
    std::array<double, N> w_{};
};

}  // namespace qbox
