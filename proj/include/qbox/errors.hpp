#pragma once
#include <stdexcept>
#include <string>

namespace qbox {

// iterative solver failed to reach its residual target within the step cap
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double res_a, double res_b)
        : std::runtime_error(what), residual_a(res_a), residual_b(res_b) {}
    double residual_a;
    double residual_b;
};

// requested computation exceeds a configured size/memory cap
class size_cap_error : public std::length_error {
public:
    size_cap_error(const std::string& what, std::size_t required)
        : std::length_error(what), required(required) {}
    std::size_t required;
};

// input is a degenerate case with a known exact answer (e.g. n in {0, lm})
class degenerate_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// rejection sampler ran out of tries
class tries_exhausted_error : public std::runtime_error {
public:
    tries_exhausted_error(const std::string& what, long long tries, long long hits)
        : std::runtime_error(what), tries(tries), hits(hits) {}
    long long tries;
    long long hits;
};

}  // namespace qbox
