#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qbox/lclt.hpp"
#include "qbox/sampler.hpp"

namespace qbox::cli {

// parsed command line; which fields are meaningful depends on the subcommand
struct RunConfig {
    std::string subcommand;
    long long m = 0, ell = 0, n = -1;
    double A = 1.0, B = 1.0 / 3.0;
    std::uint64_t seed = 0;
    long long count = 1;
    long long max_tries = 0;  // 0 = default budget
    long long cap = 0;        // 0 = default coefficient cap
    std::string method = "t1";
    std::string family = "tilted";
    std::size_t grid = default_curve_grid;
    double tail_eps = default_tail_eps;
    std::string output_path;  // empty = stdout; relative paths resolve under $QBOX_OUTPUT_DIR
    std::string format;       // "" (per-subcommand default), "csv", or "json"
    std::string m_range, ell_rule, n_rule;  // compare arguments
};

// exit codes: 0 success, 1 validation failure, 2 usage/domain error,
// 3 numeric non-convergence or runtime failure
int run(int argc, const char* const* argv);

// property suite behind `validate`; prints one PASS/FAIL line per check and
// returns the number of failures
int run_validate(std::ostream& out);

}  // namespace qbox::cli
