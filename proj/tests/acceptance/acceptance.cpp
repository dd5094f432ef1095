// acceptance.cpp: one pass/fail line per acceptance criterion (1-12)
//
// Tolerances are pinned here. Reference values marked "oracle" come from
// independent computations in tests/support/oracles.hpp, not from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dressed/amplitudes.hpp"
#include "dressed/brownian.hpp"
#include "dressed/cli.hpp"
#include "dressed/error.hpp"
#include "dressed/oracle.hpp"
#include "dressed/spectrum.hpp"
#include "dressed/transform.hpp"
#include "oracles.hpp"

using namespace dressed;

namespace {

int g_failed = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
    if (!pass) ++g_failed;
    std::printf("criterion %2d: %s  %s | %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
}

void info(const std::string& text) {
    std::printf("        info: %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Runs a criterion body; any library exception counts as a failure with its message.
void guarded(int id, const std::string& title, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, title, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 60.0) info("criterion " + std::to_string(id) + " took " + fmt("%.1f", secs) + " s (budget 60 s)");
}

OhmicSystemSpec desk(std::size_t n, double g = 0.1, double L = 1.0) {
    OhmicSystemSpec s;
    s.bar_omega = 1.0;
    s.g = g;
    s.cavity_L = L;
    s.light_speed = 1.0;
    s.n_modes = n;
    return s;
}

OhmicSystemSpec unit(double beta) { return desk(8, beta); }

// Desk spec plus seeded random specs for each N of criteria 1 and 2.
std::vector<OhmicSystemSpec> finite_specs() {
    std::vector<OhmicSystemSpec> specs;
    auto gen = oracle_support::rng(20240611);
    std::uniform_real_distribution<double> g_dist(0.01, 2.0);
    std::uniform_real_distribution<double> l_dist(0.5, 5.0);
    for (std::size_t n : {1u, 8u, 50u, 200u}) {
        specs.push_back(desk(n));
        const int extra = n == 200 ? 1 : 4;
        for (int i = 0; i < extra; ++i) specs.push_back(desk(n, g_dist(gen), l_dist(gen)));
    }
    return specs;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

void criterion_1() {
    double worst_root = 0.0;
    double worst_vec = 0.0;
    std::size_t count = 0;
    for (const auto& s : finite_specs()) {
        const auto modes = solve_finite_spectrum(s);
        const auto t = finite_matrix(s, modes);
        const auto eig = eigen_decompose(build_potential_matrix(s));
        for (std::size_t r = 0; r < t.dim; ++r) {
            const double dense = std::sqrt(eig.values[r]);
            worst_root = std::max(worst_root, std::abs(modes.frequencies[r] - dense) / dense);
            for (std::size_t mu = 0; mu < t.dim; ++mu) {
                worst_vec = std::max(worst_vec, std::abs(t(mu, r) - eig.vector(mu, r)));
            }
        }
        ++count;
    }
    const bool pass = worst_root < 1e-10 && worst_vec < 1e-9;
    report(1, pass, "oracle equivalence, N in {1,8,50,200}",
           std::to_string(count) + " specs, max rel root err " + fmt("%.2e", worst_root) +
               " (tol 1e-10), max vector err " + fmt("%.2e", worst_vec) + " (tol 1e-9)");
}

void criterion_2() {
    double worst_row = 0.0;
    double worst_orth = 0.0;
    double worst_f0 = 0.0;
    const std::vector<double> t0{0.0};
    for (const auto& s : finite_specs()) {
        const auto modes = solve_finite_spectrum(s);
        const auto t = finite_matrix(s, modes);
        worst_row = std::max(worst_row, row_sum_defect(t));
        worst_orth = std::max(worst_orth, orthonormality_defect(t));
        const auto f = f00_discrete(modes, modes.weights, t0);
        worst_f0 = std::max(worst_f0, std::abs(std::norm(f.values[0]) - 1.0));
    }
    for (double b : {1.0 / 137.0, 0.3, 2.0 / kPi, 3.0, 10.0}) {
        worst_f0 = std::max(worst_f0, std::abs(std::norm(f00_closed(unit(b), t0).values[0]) - 1.0));
        worst_f0 = std::max(worst_f0, std::abs(std::norm(f00_quadrature(unit(b), t0).values[0]) - 1.0));
    }
    const bool pass = worst_row < 1e-8 && worst_orth < 1e-8 && worst_f0 < 1e-10;
    report(2, pass, "sum rules",
           "row sum " + fmt("%.2e", worst_row) + " (tol 1e-8), orthonormality " + fmt("%.2e", worst_orth) +
               " (tol 1e-8), ||f00(0)|^2-1| " + fmt("%.2e", worst_f0) + " (tol 1e-10)");
}

void criterion_3() {
    const double b = 1.0 / 137.0;
    const auto s = unit(b);
    const double pg = kPi * b;
    std::vector<double> times;
    for (double x : linspace(0.5, 3.0, 51)) times.push_back(x / pg);
    double worst_closed = 0.0;
    double worst_quad = 0.0;
    const auto pc = survival_probability(f00_closed(s, times));
    const auto pq = survival_probability(f00_quadrature(s, times));
    for (std::size_t i = 0; i < times.size(); ++i) {
        worst_closed = std::max(worst_closed, std::abs(std::log(pc[i]) + pg * times[i]));
        worst_quad = std::max(worst_quad, std::abs(std::log(pq[i]) + pg * times[i]));
    }
    report(3, worst_closed < 0.05 && worst_quad < 0.05, "weak exponential law, beta = 1/137",
           "max |ln P + pi g t| closed " + fmt("%.4f", worst_closed) + ", quadrature " + fmt("%.4f", worst_quad) +
               " (tol 0.05)");
}

struct RatioRange {
    double lo{1e300};
    double hi{-1e300};
};

RatioRange j_ratio_range(double beta) {
    RatioRange r;
    const auto s = unit(beta);
    for (double t : linspace(50.0, 500.0, 46)) {
        const double ratio = bath_integral_J(s, t) * t * t * t / (4.0 * beta);
        r.lo = std::min(r.lo, ratio);
        r.hi = std::max(r.hi, ratio);
    }
    return r;
}

void criterion_4() {
    const RatioRange weak = j_ratio_range(1.0 / 137.0);
    const RatioRange strong = j_ratio_range(10.0);
    auto in = [](const RatioRange& r) { return r.lo >= 0.95 && r.hi <= 1.05; };
    // Oracle for the strong case: same integral through exponential integrals.
    const double oracle50 = oracle_support::overdamped_J_expint(1.0, 10.0, 50.0) * 50.0 * 50.0 * 50.0 / 40.0;
    report(4, in(weak) && in(strong), "J(t) t^3 omega^4/(4g) in [0.95, 1.05], t in [50, 500]",
           "weak beta=1/137 [" + fmt("%.4f", weak.lo) + ", " + fmt("%.4f", weak.hi) + "], strong beta=10 [" +
               fmt("%.4f", strong.lo) + ", " + fmt("%.4f", strong.hi) + "]");
    info("beta=10 ratio at t=50 from the exponential-integral oracle: " + fmt("%.4f", oracle50) +
         "; large-t expansion 1 + 12(pi^2 g^2 - 2 w^4)/(w^4 t^2) predicts " +
         fmt("%.3f", 1.0 + 12.0 * (kPi * kPi * 100.0 - 2.0) / 2500.0) +
         " at t=50, so the t^-3 law sets in only for t >> pi g / w^2");
    const RatioRange mild = j_ratio_range(0.7);
    info("overdamped beta=0.7 (principal-value path) ratio range [" + fmt("%.4f", mild.lo) + ", " +
         fmt("%.4f", mild.hi) + "]");
}

void criterion_5() {
    std::vector<double> times = linspace(0.01, 50.0, 400);
    double worst = 0.0;
    std::string per;
    for (double b : {1.0 / 137.0, 0.3, 2.0 / kPi, 3.0, 10.0}) {
        const auto c = f00_closed(unit(b), times);
        const auto q = f00_quadrature(unit(b), times);
        double w = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) w = std::max(w, std::abs(c.values[i] - q.values[i]));
        worst = std::max(worst, w);
        per += (per.empty() ? "" : ", ") + fmt("%.1e", w);
    }
    report(5, worst < 1e-6, "closed form vs quadrature, 5 couplings",
           "max |diff| " + fmt("%.2e", worst) + " (tol 1e-6); per beta: " + per);
}

void criterion_6() {
    const double bound = cavity_min_bound(0.005, CouplingRegime::Weak).min_probability;
    const auto red = cli::config_from_map(cli::load_config_file(std::string(DRESSED_CONFIG_DIR) + "/red_visible_weak.cfg"));
    auto grid_min = [&](const std::string& route, const std::string& variant) {
        auto cfg = red;
        cfg.route = route;
        cfg.eq11_variant = variant;
        return std::stod(cli::parse_header(cli::cmd_cavity(cfg).render()).at("min_probability_grid"));
    };
    const double exact = grid_min("cavity", "rederived");
    const bool pass = std::abs(bound - 0.9742) <= 1e-4 && exact >= 0.972;
    report(6, pass, "cavity weak stability, delta = 0.005",
           "analytic bound " + fmt("%.6f", bound) + " (0.9742 +- 1e-4), grid min " + fmt("%.4f", exact) +
               " (>= 0.972; exact cavity roots, summed cavity equation, k_max 1e4)");
    info("grid min with the published cavity constant: " + fmt("%.4f", grid_min("cavity", "published")) +
         ", small-L route: " + fmt("%.4f", grid_min("small-l", "published")));
}

void criterion_7() {
    const double red = OhmicSystemSpec::from_beta_delta(4e14, 1.0 / 137.0, 0.005).cavity_L;
    const double mw = OhmicSystemSpec::from_beta_delta(2e10, 1.0 / 137.0, 0.005).cavity_L;
    const bool pass = std::abs(red / 1.0e-6 - 1.0) <= 0.05 && std::abs(mw / 2.0e-2 - 1.0) <= 0.05;
    report(7, pass, "cavity sizes at delta = 0.005, beta = 1/137",
           "L(4e14) = " + fmt("%.3e", red) + " m vs 1.0e-6, L(2e10) = " + fmt("%.3e", mw) + " m vs 2.0e-2 (tol 5%)");
}

void criterion_8() {
    const double dm = solve_delta_max();
    const double l_mw = OhmicSystemSpec::from_beta_delta(2e10, 10.0, dm).cavity_L;
    const double l_red = OhmicSystemSpec::from_beta_delta(4e14, 10.0, dm).cavity_L;
    const bool pass = std::abs(dm - 0.372) <= 1e-3 && std::abs(l_mw / 1.2e-3 - 1.0) <= 0.2;
    report(8, pass, "strong-coupling cutoff",
           "delta_max " + fmt("%.7f", dm) + " (0.372 +- 1e-3), microwave L_max " + fmt("%.4e", l_mw) +
               " m vs 1.2e-3 (tol 20%)");
    info("flagged discrepancy, not gated: red-visible L_max " + fmt("%.3e", l_red) + " m vs published 1.1e-7 m");
}

void criterion_9() {
    // Envelope rate: peaks of |q| for theta = 0, beta = 0.05, fitted over t in [2, 20]/(pi g).
    const double b = 0.05;
    const double pg = kPi * b;
    const auto s = unit(b);
    const auto times = linspace(2.0 / pg, 20.0 / pg, 20001);
    const auto q = path_closed_forms(s, {1.0, 0.0}, times);
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i + 1 < q.size(); ++i) {
        const double a = std::abs(q[i]);
        if (a > std::abs(q[i - 1]) && a >= std::abs(q[i + 1])) {
            xs.push_back(times[i]);
            ys.push_back(std::log(a));
        }
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double rate = -sxy / sxx;
    const double rate_err = std::abs(rate / (0.5 * pg) - 1.0);

    // t^-3 tail for theta = pi/2: coefficient 8 g / w^4 sqrt(hbar n / 2w).
    auto tail_ratio = [](double beta, double t) {
        const auto sp = unit(beta);
        const std::vector<double> ts{t};
        const double q1 = path_closed_forms(sp, {1.0, 0.5 * kPi}, ts)[0];
        return q1 * t * t * t / (8.0 * beta * std::sqrt(0.5));
    };
    double tail_err = 0.0;
    std::string tails;
    for (auto [beta, t] : {std::pair{1.0 / 137.0, 3000.0}, std::pair{1.0 / 137.0, 5000.0},
                           std::pair{2.0 / kPi, 200.0}, std::pair{2.0 / kPi, 400.0}}) {
        const double r = tail_ratio(beta, t);
        tail_err = std::max(tail_err, std::abs(r - 1.0));
        tails += (tails.empty() ? "" : ", ") + fmt("%.4f", r);
    }

    // Linearity path(4n) = 2 path(n).
    double lin = 0.0;
    const auto lt = linspace(0.0, 30.0, 301);
    for (double beta : {0.05, 2.0 / kPi, 3.0}) {
        for (double theta : {0.0, 0.9}) {
            const auto q1 = path_closed_forms(unit(beta), {1.0, theta}, lt);
            const auto q4 = path_closed_forms(unit(beta), {4.0, theta}, lt);
            for (std::size_t i = 0; i < lt.size(); ++i) lin = std::max(lin, std::abs(q4[i] - 2.0 * q1[i]));
        }
    }
    const bool pass = rate_err <= 0.05 && tail_err <= 0.10 && lin <= 1e-12;
    report(9, pass, "Brownian paths",
           "envelope rate/(pi g/2) - 1 = " + fmt("%.2e", rate_err) + " (tol 5%, " + std::to_string(xs.size()) +
               " peaks); t^-3 coefficient ratios " + tails + " (tol 10%); linearity " + fmt("%.1e", lin) +
               " (tol 1e-12)");
    info("beta=10 t^-3 coefficient ratio at t=200: " + fmt("%.4f", tail_ratio(10.0, 200.0)) +
         " (the t^-3 law needs t >> pi g / w^2 there)");
}

void criterion_10() {
    double worst = 0.0;
    std::size_t terms = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto s = desk(n, 0.3);
        const auto t = finite_matrix(s, solve_finite_spectrum(s));
        std::vector<double> row(t.dim);
        for (std::size_t r = 0; r < t.dim; ++r) row[r] = t(0, r);
        for (unsigned level = 0; level <= 6; ++level) {
            double sum = 0.0;
            oracle_support::for_each_composition(level, row.size(), [&](const std::vector<unsigned>& occ) {
                const double v = expansion_coefficient(level, occ, row).value;
                sum += v * v;
                ++terms;
            });
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    report(10, worst <= 1e-12, "expansion-coefficient normalization, n0' <= 6, N <= 8",
           std::to_string(terms) + " coefficients, max |sum T^2 - 1| " + fmt("%.2e", worst) + " (tol 1e-12)");
}

void criterion_11() {
    double worst = 0.0;
    for (double u : {0.1, 0.3, 0.7}) worst = std::max(worst, series_identity_residual(u, 1000000));
    const double basel = kPi * kPi / 6.0;
    double limit = 0.0;
    // At u the exact value sits zeta(4) u^2 above pi^2/6, so probe u <= 1e-5.
    for (double u : {1e-5, 1e-7, 0.0}) limit = std::max(limit, std::abs(series_closed_form(u) - basel));
    report(11, worst < 2e-6 && limit < 1e-8, "series identity",
           "max residual at 1e6 terms " + fmt("%.3e", worst) + " (tol 2e-6), u -> 0 gap to pi^2/6 " +
               fmt("%.1e", limit) + " (tol 1e-8)");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_12() {
    const std::string cli = DRESSED_CLI_PATH;
    const std::string cfg = std::string(DRESSED_CONFIG_DIR) + "/default.cfg";
    const std::string dir = DRESSED_WORK_DIR;
    bool same = true;
    std::string detail;
    for (const char* method : {"closed", "quadrature", "discrete"}) {
        std::string outputs[2];
        const char* threads[2] = {"1", "8"};
        for (int i = 0; i < 2; ++i) {
            const std::string path = dir + "/determinism_" + method + "_" + threads[i] + ".csv";
            std::remove(path.c_str());
            const std::string cmd = "DRESSED_THREADS=" + std::string(threads[i]) + " \"" + cli + "\" decay --config \"" +
                                    cfg + "\" --method " + method + " --samples 401 --out \"" + path + "\"";
            const int rc = std::system(cmd.c_str());
            if (rc != 0) throw NumericalFailure("command failed: " + cmd);
            outputs[i] = slurp(path);
        }
        const bool eq = !outputs[0].empty() && outputs[0] == outputs[1];
        same = same && eq;
        detail += (detail.empty() ? "" : ", ") + std::string(method) + (eq ? " identical" : " DIFFER") + " (" +
                  std::to_string(outputs[0].size()) + " bytes)";
    }
    report(12, same, "determinism across DRESSED_THREADS in {1, 8}", detail);
}

} // namespace

int main() {
    guarded(1, "oracle equivalence", criterion_1);
    guarded(2, "sum rules", criterion_2);
    guarded(3, "weak exponential law", criterion_3);
    guarded(4, "branch-cut asymptote", criterion_4);
    guarded(5, "method agreement", criterion_5);
    guarded(6, "cavity weak stability", criterion_6);
    guarded(7, "cavity sizes", criterion_7);
    guarded(8, "strong-coupling cutoff", criterion_8);
    guarded(9, "Brownian paths", criterion_9);
    guarded(10, "expansion-coefficient normalization", criterion_10);
    guarded(11, "series identity", criterion_11);
    guarded(12, "determinism", criterion_12);
    std::printf("acceptance: %d of 12 criteria failed\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
