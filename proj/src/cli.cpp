#include "qbox/cli.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qbox/asym.hpp"
#include "qbox/errors.hpp"
#include "qbox/exact.hpp"
#include "qbox/params.hpp"

namespace qbox::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double mpz_log(const mpz_class& z) {
    signed long e2 = 0;
    const double d = mpz_get_d_2exp(&e2, z.get_mpz_t());
    return std::log(d) + double(e2) * std::numbers::ln2;
}

enum class Fmt { plain, csv, js };

Fmt pick_format(const RunConfig& cfg) {
    if (cfg.format == "csv") return Fmt::csv;
    if (cfg.format == "json") return Fmt::js;
    return Fmt::plain;
}

void write_sink(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path path(cfg.output_path);
    if (path.is_relative())
        if (const char* dir = std::getenv("QBOX_OUTPUT_DIR"); dir && *dir)
            path = std::filesystem::path(dir) / path;
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + path.string());
    os << text;
}

void emit_json(std::ostream& os, json doc) { os << doc.dump(2) << '\n'; }

json base_inputs(const RunConfig& cfg) {
    return json{{"subcommand", cfg.subcommand}};
}

std::size_t cap_of(const RunConfig& cfg) {
    return cfg.cap > 0 ? std::size_t(cfg.cap) : default_coeff_cap;
}

// ---------------------------------------------------------------- exact/diff

void cmd_exact(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    if (cfg.n >= 0) {
        const mpz_class v = coeff({cfg.m, cfg.ell, cfg.n}, cap_of(cfg));
        if (f == Fmt::csv) {
            os << "m,ell,n,coefficient\n"
               << cfg.m << ',' << cfg.ell << ',' << cfg.n << ',' << v.get_str() << '\n';
        } else if (f == Fmt::js) {
            json doc;
            doc["inputs"] = base_inputs(cfg);
            doc["inputs"].update({{"m", cfg.m}, {"ell", cfg.ell}, {"n", cfg.n}});
            doc["outputs"] = {{"coefficient", v.get_str()}};
            doc["diagnostics"] = {
                {"truncated_degree", std::min(cfg.n, cfg.ell * cfg.m - cfg.n)}};
            emit_json(os, doc);
        } else {
            os << v.get_str() << '\n';
        }
        return;
    }
    const CoefficientVector cv = coeff_vector(cfg.m, cfg.ell, cap_of(cfg));
    if (f == Fmt::csv) {
        os << "n,coefficient\n";
        for (std::size_t i = 0; i < cv.coeffs.size(); ++i)
            os << i << ',' << cv.coeffs[i].get_str() << '\n';
    } else if (f == Fmt::js) {
        json arr = json::array();
        for (const auto& c : cv.coeffs) arr.push_back(c.get_str());
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"m", cfg.m}, {"ell", cfg.ell}});
        doc["outputs"] = {{"coefficients", std::move(arr)}};
        doc["diagnostics"] = {{"degree", cfg.ell * cfg.m}};
        emit_json(os, doc);
    } else {
        for (std::size_t i = 0; i < cv.coeffs.size(); ++i)
            os << (i ? "," : "") << cv.coeffs[i].get_str();
        os << '\n';
    }
}

void cmd_diff(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    const mpz_class v = kronecker_diff({cfg.m, cfg.ell, cfg.n}, cap_of(cfg));
    if (f == Fmt::csv) {
        os << "m,ell,n,difference\n"
           << cfg.m << ',' << cfg.ell << ',' << cfg.n << ',' << v.get_str() << '\n';
    } else if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"m", cfg.m}, {"ell", cfg.ell}, {"n", cfg.n}});
        doc["outputs"] = {{"difference", v.get_str()}};
        doc["diagnostics"] = json::object();
        emit_json(os, doc);
    } else {
        os << v.get_str() << '\n';
    }
}

// -------------------------------------------------------------------- solve

void cmd_solve(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    SolveDiagnostics dg;
    const AspectFill reg = normalize_regime(cfg.A, cfg.B);
    const Tilt t = solve_tilt(reg, &dg);
    const double D = delta(t);
    const char* refl = reg.reflected ? "true" : "false";
    if (f == Fmt::csv) {
        os << "A,B,c,d,delta,reflected,residual_A,residual_B\n"
           << fmt(cfg.A) << ',' << fmt(cfg.B) << ',' << fmt(t.c) << ',' << fmt(t.d) << ','
           << fmt(D) << ',' << refl << ',' << fmt(dg.residual_a) << ',' << fmt(dg.residual_b)
           << '\n';
    } else if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"A", cfg.A}, {"B", cfg.B}});
        doc["outputs"] = {{"c", t.c}, {"d", t.d}, {"delta", D}, {"reflected", reg.reflected}};
        doc["diagnostics"] = {{"residual_A", dg.residual_a},
                              {"residual_B", dg.residual_b},
                              {"bisect_steps", dg.bisect_steps},
                              {"newton_steps", dg.newton_steps}};
        emit_json(os, doc);
    } else {
        os << "c = " << fmt(t.c) << "\nd = " << fmt(t.d) << "\ndelta = " << fmt(D)
           << "\nreflected = " << refl << "\nresidual_A = " << fmt(dg.residual_a)
           << "\nresidual_B = " << fmt(dg.residual_b) << '\n';
    }
}

void cmd_solve_discrete(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    const long long total = cfg.ell * cfg.m;
    const bool refl = 2 * cfg.n > total;
    const long long ns = refl ? total - cfg.n : cfg.n;
    SolveDiagnostics dg;
    const DiscreteTilt dt = solve_discrete_tilt(cfg.m, cfg.ell, ns, &dg);
    const MomentData md = moments(dt);
    const char* rs = refl ? "true" : "false";
    if (f == Fmt::csv) {
        os << "m,ell,n,c_m,d_m,reflected,mu,nu,alpha,beta,gamma,Delta_m,L_m,residual_S,"
              "residual_T\n"
           << cfg.m << ',' << cfg.ell << ',' << cfg.n << ',' << fmt(dt.c) << ',' << fmt(dt.d)
           << ',' << rs << ',' << fmt(md.mu) << ',' << fmt(md.nu) << ',' << fmt(md.alpha) << ','
           << fmt(md.beta) << ',' << fmt(md.gamma) << ',' << fmt(md.Delta_m) << ','
           << fmt(md.L_m) << ',' << fmt(dg.residual_a) << ',' << fmt(dg.residual_b) << '\n';
    } else if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"m", cfg.m}, {"ell", cfg.ell}, {"n", cfg.n}});
        doc["outputs"] = {{"c_m", dt.c},           {"d_m", dt.d},       {"mu", md.mu},
                          {"nu", md.nu},           {"alpha", md.alpha}, {"beta", md.beta},
                          {"gamma", md.gamma},     {"Delta_m", md.Delta_m},
                          {"L_m", md.L_m}};
        doc["diagnostics"] = {{"reflected", refl},
                              {"n_solved", ns},
                              {"residual_S", dg.residual_a},
                              {"residual_T", dg.residual_b},
                              {"newton_steps", dg.newton_steps}};
        emit_json(os, doc);
    } else {
        os << "c_m = " << fmt(dt.c) << "\nd_m = " << fmt(dt.d) << "\nreflected = " << rs
           << "\nn_solved = " << ns << "\nmu = " << fmt(md.mu) << "\nnu = " << fmt(md.nu)
           << "\nalpha = " << fmt(md.alpha) << "\nbeta = " << fmt(md.beta)
           << "\ngamma = " << fmt(md.gamma) << "\nDelta_m = " << fmt(md.Delta_m)
           << "\nL_m = " << fmt(md.L_m) << "\nresidual_S = " << fmt(dg.residual_a)
           << "\nresidual_T = " << fmt(dg.residual_b) << '\n';
    }
}

// ----------------------------------------------------------------- estimate

void cmd_estimate(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    Estimate e{};
    if (cfg.method == "t1") {
        e = estimate_theorem1(cfg.m, cfg.ell, cfg.n);
    } else if (cfg.method == "t1p") {
        e = estimate_theorem1prime(cfg.m, cfg.ell, cfg.n);
    } else if (cfg.method == "takacs") {
        e = takacs_estimate(cfg.m, cfg.ell, cfg.n);
    } else if (cfg.method == "diff") {
        e = estimate_difference(cfg.m, cfg.ell, cfg.n);
        if (e.regime_excluded)
            std::cerr << "note: centered fill (2n = ell*m) lies outside the difference "
                         "asymptotic; reporting 0\n";
        else if (e.near_degenerate)
            std::cerr << "warning: m|A - 2B| < 1, the d/m difference scale is unreliable "
                         "this close to the center\n";
    } else {  // pp-bound
        const double b = pak_panova_bound(cfg.m, cfg.ell, cfg.n);
        e = {std::log(b), b, std::log(b) / double(cfg.m), false, false};
    }
    if (f == Fmt::csv) {
        os << "m,ell,n,method,log_value,value,exponential_rate\n"
           << cfg.m << ',' << cfg.ell << ',' << cfg.n << ',' << cfg.method << ','
           << fmt(e.log_value) << ',' << fmt(e.value) << ',' << fmt(e.exponential_rate)
           << '\n';
    } else if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update(
            {{"m", cfg.m}, {"ell", cfg.ell}, {"n", cfg.n}, {"method", cfg.method}});
        doc["outputs"] = {{"log_value", e.log_value},
                          {"value", e.value},
                          {"exponential_rate", e.exponential_rate}};
        doc["diagnostics"] = {{"near_degenerate", e.near_degenerate},
                              {"regime_excluded", e.regime_excluded}};
        emit_json(os, doc);
    } else {
        os << "method = " << cfg.method << "\nlog_value = " << fmt(e.log_value)
           << "\nvalue = " << fmt(e.value)
           << "\nexponential_rate = " << fmt(e.exponential_rate) << '\n';
    }
}

// ------------------------------------------------------------------ compare

std::vector<long long> parse_m_range(const std::string& spec) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) return {std::stoll(spec)};
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("m-range wants a:b:step or a:b:*k, got " + spec);
    const long long a = std::stoll(spec.substr(0, c1));
    const long long b = std::stoll(spec.substr(c1 + 1, c2 - c1 - 1));
    const std::string last = spec.substr(c2 + 1);
    std::vector<long long> out;
    if (!last.empty() && last[0] == '*') {
        const long long k = std::stoll(last.substr(1));
        if (k < 2) throw std::invalid_argument("multiplicative step must be >= 2");
        for (long long m = a; m <= b; m *= k) out.push_back(m);
    } else {
        const long long s = std::stoll(last);
        if (s < 1) throw std::invalid_argument("additive step must be >= 1");
        for (long long m = a; m <= b; m += s) out.push_back(m);
    }
    if (out.empty()) throw std::invalid_argument("empty m-range: " + spec);
    return out;
}

long long apply_ell_rule(const std::string& rule, long long m) {
    if (rule == "m") return m;
    if (rule.size() > 1 && rule.back() == 'm')
        return std::stoll(rule.substr(0, rule.size() - 1)) * m;
    if (rule.rfind("m/", 0) == 0) {
        const long long d = std::stoll(rule.substr(2));
        if (d < 1) throw std::invalid_argument("ell-rule divisor must be >= 1");
        return std::max<long long>(1, m / d);
    }
    return std::stoll(rule);  // constant
}

long long apply_n_rule(const std::string& rule, long long m, long long ell) {
    if (rule == "lm/2") return ell * m / 2;
    if (rule.rfind("m2/", 0) == 0) {
        const long long d = std::stoll(rule.substr(3));
        if (d < 1) throw std::invalid_argument("n-rule divisor must be >= 1");
        return m * m / d;
    }
    const auto pos = rule.find("m2");
    if (pos != std::string::npos && pos + 2 == rule.size())
        return static_cast<long long>(std::floor(std::stod(rule.substr(0, pos)) * double(m) *
                                                 double(m)));
    return std::stoll(rule);  // constant
}

void cmd_compare(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    const std::vector<long long> ms = parse_m_range(cfg.m_range);
    json rows = json::array();
    std::ostringstream csv;
    csv << "m,ell,n,A,B,exact_log,exact_rate,t1_log,t1_rate,t1p_log,t1p_rate,takacs_log,"
           "takacs_rate,walk_rate\n";
    for (const long long m : ms) {
        const long long ell = apply_ell_rule(cfg.ell_rule, m);
        const long long n = apply_n_rule(cfg.n_rule, m, ell);
        const double A = double(ell) / double(m);
        const double B = double(n) / (double(m) * double(m));
        bool have_exact = false;
        double exact_log = 0.0;
        try {
            exact_log = mpz_log(coeff({m, ell, n}, cap_of(cfg)));
            have_exact = true;
        } catch (const std::length_error&) {
            // over the size cap: leave the exact columns empty
        }
        const Estimate t1 = estimate_theorem1(m, ell, n);
        const Estimate t1p = estimate_theorem1prime(m, ell, n);
        const Estimate tak = takacs_estimate(m, ell, n);
        const double walk = takacs_walk_rate(A);
        csv << m << ',' << ell << ',' << n << ',' << fmt(A) << ',' << fmt(B) << ',';
        if (have_exact)
            csv << fmt(exact_log) << ',' << fmt(exact_log / double(m));
        else
            csv << ',';
        csv << ',' << fmt(t1.log_value) << ',' << fmt(t1.exponential_rate) << ','
            << fmt(t1p.log_value) << ',' << fmt(t1p.exponential_rate) << ','
            << fmt(tak.log_value) << ',' << fmt(tak.exponential_rate) << ',' << fmt(walk)
            << '\n';
        if (f == Fmt::js) {
            json row{{"m", m},
                     {"ell", ell},
                     {"n", n},
                     {"A", A},
                     {"B", B},
                     {"t1_log", t1.log_value},
                     {"t1_rate", t1.exponential_rate},
                     {"t1p_log", t1p.log_value},
                     {"t1p_rate", t1p.exponential_rate},
                     {"takacs_log", tak.log_value},
                     {"takacs_rate", tak.exponential_rate},
                     {"walk_rate", walk}};
            if (have_exact) {
                row["exact_log"] = exact_log;
                row["exact_rate"] = exact_log / double(m);
            } else {
                row["exact_log"] = nullptr;
                row["exact_rate"] = nullptr;
            }
            rows.push_back(std::move(row));
        }
    }
    if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update(
            {{"m_range", cfg.m_range}, {"ell_rule", cfg.ell_rule}, {"n_rule", cfg.n_rule}});
        doc["outputs"] = {{"rows", std::move(rows)}};
        doc["diagnostics"] = {{"count", ms.size()}};
        emit_json(os, doc);
    } else {
        os << csv.str();  // tabular either way; csv and plain coincide
    }
}

// ------------------------------------------------------------ sample/shape

void cmd_sample(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    const LimitCurve curve = limit_curve(box_regime(cfg.m, cfg.ell, cfg.n), cfg.grid);
    json samples = json::array();
    std::ostringstream csv;
    csv << "sample,tries,boundary_distance,parts\n";
    for (long long i = 0; i < cfg.count; ++i) {
        const SampleResult r = sample_boxed(cfg.m, cfg.ell, cfg.n, cfg.seed + std::uint64_t(i),
                                            cfg.max_tries);
        const double bd = boundary_distance(r.partition, curve);
        csv << i << ',' << r.tries << ',' << fmt(bd) << ',';
        for (std::size_t j = 0; j < r.partition.parts.size(); ++j)
            csv << (j ? " " : "") << r.partition.parts[j];
        csv << '\n';
        if (f == Fmt::js)
            samples.push_back(json{{"sample", i},
                                   {"tries", r.tries},
                                   {"boundary_distance", bd},
                                   {"parts", r.partition.parts}});
    }
    if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"m", cfg.m},
                              {"ell", cfg.ell},
                              {"n", cfg.n},
                              {"count", cfg.count},
                              {"seed", cfg.seed}});
        doc["outputs"] = {{"samples", std::move(samples)}};
        doc["diagnostics"] = {{"c", curve.c}, {"d", curve.d}, {"grid", cfg.grid}};
        emit_json(os, doc);
    } else {
        os << csv.str();
    }
}

void cmd_shape(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    const AspectFill reg = normalize_regime(cfg.A, cfg.B);
    const LimitCurve curve = limit_curve(reg, cfg.grid);
    if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"A", cfg.A}, {"B", cfg.B}, {"grid", cfg.grid}});
        doc["outputs"] = {{"x", curve.xs}, {"y", curve.ys}};
        doc["diagnostics"] = {{"c", curve.c}, {"d", curve.d}, {"reflected", reg.reflected}};
        emit_json(os, doc);
    } else {
        os << "x,y\n";
        for (std::size_t i = 0; i < curve.xs.size(); ++i)
            os << fmt(curve.xs[i]) << ',' << fmt(curve.ys[i]) << '\n';
    }
}

// --------------------------------------------------------------------- lclt

void cmd_lclt(const RunConfig& cfg, std::ostream& os) {
    const Fmt f = pick_format(cfg);
    GeometricFamily fam;
    double used_c = 0.0, used_d = 0.0;
    if (cfg.family == "fair") {
        fam = fair_family(cfg.m);
    } else {
        const Tilt t = solve_tilt(normalize_regime(cfg.A, cfg.B));
        used_c = t.c;
        used_d = t.d;
        fam = tilted_family({t.c, t.d, cfg.m});
    }
    const JointPmfTable tab = exact_joint_pmf(fam, cfg.tail_eps);
    const MomentData md = moments(fam);
    const LcltErrors errs = lclt_errors(tab, md);
    const double m4 = std::pow(double(cfg.m), 4) * errs.diff_sup_error;
    if (f == Fmt::csv) {
        os << "m,family,sup_error,diff_sup_error,m4_diff_sup_error,mass_deficit,"
              "truncation_bound\n"
           << cfg.m << ',' << cfg.family << ',' << fmt(errs.sup_error) << ','
           << fmt(errs.diff_sup_error) << ',' << fmt(m4) << ',' << fmt(tab.mass_deficit)
           << ',' << fmt(tab.truncation_error) << '\n';
    } else if (f == Fmt::js) {
        json doc;
        doc["inputs"] = base_inputs(cfg);
        doc["inputs"].update({{"m", cfg.m},
                              {"family", cfg.family},
                              {"A", cfg.A},
                              {"B", cfg.B},
                              {"tail_eps", cfg.tail_eps}});
        doc["outputs"] = {{"sup_error", errs.sup_error},
                          {"diff_sup_error", errs.diff_sup_error},
                          {"m4_diff_sup_error", m4}};
        doc["diagnostics"] = {{"mass_deficit", tab.mass_deficit},
                              {"truncation_bound", tab.truncation_error},
                              {"s_max", tab.s_max},
                              {"t_max", tab.t_max},
                              {"delta", fam.delta},
                              {"c", used_c},
                              {"d", used_d}};
        emit_json(os, doc);
    } else {
        os << "m = " << cfg.m << "\nfamily = " << cfg.family
           << "\nsup_error = " << fmt(errs.sup_error)
           << "\ndiff_sup_error = " << fmt(errs.diff_sup_error)
           << "\nm4_diff_sup_error = " << fmt(m4)
           << "\nmass_deficit = " << fmt(tab.mass_deficit)
           << "\ntruncation_bound = " << fmt(tab.truncation_error) << '\n';
    }
}

}  // namespace

int run(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"exact counts, tilt solvers, asymptotics, and samplers for partitions in a box",
                 "qbox"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output_path,
                        "write to this file (relative paths land in $QBOX_OUTPUT_DIR)");
        sub->add_option("-f,--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* s_exact = app.add_subcommand("exact", "coefficient(s) of the Gaussian binomial");
    s_exact->add_option("m", cfg.m, "box height (max parts)")->required();
    s_exact->add_option("ell", cfg.ell, "box width (max part)")->required();
    s_exact->add_option("n", cfg.n, "area; omit for the full vector");
    s_exact->add_option("--cap", cfg.cap, "override the coefficient count cap");
    add_common(s_exact);

    auto* s_diff = app.add_subcommand("diff", "consecutive difference N_{n+1} - N_n");
    s_diff->add_option("m", cfg.m)->required();
    s_diff->add_option("ell", cfg.ell)->required();
    s_diff->add_option("n", cfg.n)->required();
    s_diff->add_option("--cap", cfg.cap, "override the coefficient count cap");
    add_common(s_diff);

    auto* s_solve = app.add_subcommand("solve", "continuum tilt (c,d) for aspect A, fill B");
    s_solve->add_option("A", cfg.A)->required();
    s_solve->add_option("B", cfg.B)->required();
    add_common(s_solve);

    auto* s_sd = app.add_subcommand("solve-discrete", "discrete tilt (c_m,d_m) and moments");
    s_sd->add_option("m", cfg.m)->required();
    s_sd->add_option("ell", cfg.ell)->required();
    s_sd->add_option("n", cfg.n)->required();
    add_common(s_sd);

    auto* s_est = app.add_subcommand("estimate", "asymptotic estimates of the coefficient");
    s_est->add_option("m", cfg.m)->required();
    s_est->add_option("ell", cfg.ell)->required();
    s_est->add_option("n", cfg.n)->required();
    s_est->add_option("--method", cfg.method, "t1 | t1p | takacs | diff | pp-bound")
        ->check(CLI::IsMember({"t1", "t1p", "takacs", "diff", "pp-bound"}));
    add_common(s_est);

    auto* s_cmp = app.add_subcommand("compare", "exact vs estimates across a range of m");
    s_cmp->add_option("m-range", cfg.m_range, "a:b:step or a:b:*k or a single m")->required();
    s_cmp->add_option("ell-rule", cfg.ell_rule, "m | <k>m | m/<d> | constant")->required();
    s_cmp->add_option("n-rule", cfg.n_rule, "m2/<d> | <f>m2 | lm/2 | constant")->required();
    s_cmp->add_option("--cap", cfg.cap, "override the coefficient count cap");
    add_common(s_cmp);

    auto* s_smp = app.add_subcommand("sample", "uniform conditioned samples by rejection");
    s_smp->add_option("m", cfg.m)->required();
    s_smp->add_option("ell", cfg.ell)->required();
    s_smp->add_option("n", cfg.n)->required();
    s_smp->add_option("--count", cfg.count, "number of samples");
    s_smp->add_option("--seed", cfg.seed, "base seed; sample i uses seed + i");
    s_smp->add_option("--max-tries", cfg.max_tries, "per-sample try budget (0 = default)");
    s_smp->add_option("--grid", cfg.grid, "grid for the boundary-distance curve");
    add_common(s_smp);

    auto* s_shp = app.add_subcommand("shape", "limit-shape boundary curve");
    s_shp->add_option("A", cfg.A)->required();
    s_shp->add_option("B", cfg.B)->required();
    s_shp->add_option("--grid", cfg.grid, "number of grid intervals");
    add_common(s_shp);

    auto* s_lclt = app.add_subcommand("lclt", "exact joint pmf vs normal approximation");
    s_lclt->add_option("m", cfg.m)->required();
    s_lclt->add_option("--family", cfg.family, "tilted | fair")
        ->check(CLI::IsMember({"tilted", "fair"}));
    s_lclt->add_option("--A", cfg.A, "aspect for the tilted family");
    s_lclt->add_option("--B", cfg.B, "fill for the tilted family");
    s_lclt->add_option("--tail-eps", cfg.tail_eps, "certified truncation budget");
    add_common(s_lclt);

    auto* s_val = app.add_subcommand("validate", "run the property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (const CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

    try {
        std::ostringstream out;
        if (s_exact->parsed()) {
            cmd_exact(cfg, out);
        } else if (s_diff->parsed()) {
            cmd_diff(cfg, out);
        } else if (s_solve->parsed()) {
            cmd_solve(cfg, out);
        } else if (s_sd->parsed()) {
            cmd_solve_discrete(cfg, out);
        } else if (s_est->parsed()) {
            cmd_estimate(cfg, out);
        } else if (s_cmp->parsed()) {
            cmd_compare(cfg, out);
        } else if (s_smp->parsed()) {
            cmd_sample(cfg, out);
        } else if (s_shp->parsed()) {
            cmd_shape(cfg, out);
        } else if (s_lclt->parsed()) {
            cmd_lclt(cfg, out);
        } else if (s_val->parsed()) {
            return run_validate(std::cout) == 0 ? 0 : 1;
        }
        write_sink(cfg, out.str());
        return 0;
    } catch (const solver_error& e) {
        std::cerr << "error: " << e.what() << " (residuals " << fmt(e.residual_a) << ", "
                  << fmt(e.residual_b) << ")\n";
        return 3;
    } catch (const tries_exhausted_error& e) {
        std::cerr << "error: " << e.what() << " (tries " << e.tries << ", hits " << e.hits
                  << ")\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace qbox::cli
