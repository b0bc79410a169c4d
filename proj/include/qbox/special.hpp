#pragma once

// real special functions shared by the solver and estimate modules

namespace qbox {

// dilog(x) = integral_1^x log(t)/(1-t) dt = sum_{k>=1} (1-x)^k / k^2  (= Li2(1-x)),
// for x in (0, 2); absolute error <= 1e-14
double dilog(double x);

// log(1 - e^{-y}) for y > 0, stable across the full range
double log1mexp(double y);

}  // namespace qbox
