// quadrature.hpp: globally adaptive 21-point Gauss–Kronrod integration
//
// Works for any integrand returning double or std::complex<double>. The
// interval with the largest error estimate is bisected until the summed
// estimate drops below max(abs_tol, rel_tol * |I|). Subdivision order is
// fixed, so results are bit-reproducible.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace dressed::quad {

struct Options {
    double abs_tol{1e-12};
    double rel_tol{1e-10};
    std::size_t max_intervals{20000};
};

template <class T>
struct Result {
    T value{};
    double error{};
    std::size_t evaluations{};
    bool converged{};
};

namespace detail {

// Kronrod abscissae on [0,1); odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525373030, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    std::size_t order;  // creation index, breaks ties deterministically
};

template <class T>
struct PanelLess {
    bool operator()(const Panel<T>& x, const Panel<T>& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.order > y.order;
    }
};

template <class F>
auto kronrod21(F& f, double a, double b) {
    using T = std::decay_t<decltype(f(a))>;
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T kronrod = fc * kWgk[10];
    T gauss{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = f(centre - dx);
        const T f2 = f(centre + dx);
        kronrod += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    double err = magnitude(kronrod - gauss);
    // Round-off floor: the rule cannot resolve below a few ulps of the panel mass.
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * magnitude(kronrod);
    err = std::max(err, floor);
    return std::pair<T, double>{kronrod, err};
}

} // namespace detail

// Integrate f over the partition defined by the sorted breakpoints (at least two).
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, const Options& opt = {}) {
    using T = std::decay_t<decltype(f(0.0))>;
    using detail::Panel;
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, detail::PanelLess<T>> queue;
    Result<T> out;
    std::size_t order = 0;
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) continue;
        auto [v, e] = detail::kronrod21(f, a, b);
        out.evaluations += 21;
        total += v;
        total_err += e;
        queue.push({a, b, v, e, order++});
    }
    while (!queue.empty()) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
        if (total_err <= target) {
            out.converged = true;
            break;
        }
        if (queue.size() >= opt.max_intervals) break;
        Panel<T> worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at machine precision
        queue.pop();
        auto [v1, e1] = detail::kronrod21(f, worst.a, mid);
        auto [v2, e2] = detail::kronrod21(f, mid, worst.b);
        out.evaluations += 42;
        total += (v1 + v2) - worst.value;
        total_err += (e1 + e2) - worst.error;
        queue.push({worst.a, mid, v1, e1, order++});
        queue.push({mid, worst.b, v2, e2, order++});
    }
    // Re-sum from the panels to shed accumulated update round-off.
    T sum{};
    double err = 0.0;
    std::vector<Panel<T>> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    for (const auto& p : panels) {
        sum += p.value;
        err += p.error;
    }
    out.value = sum;
    out.error = err;
    if (!out.converged) {
        out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum));
    }
    return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
    const std::array<double, 2> pts{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), opt);
}

// Integral over [a, inf) through y = a + scale * u / (1 - u).
template <class F>
auto integrate_to_infinity(F&& f, double a, double scale, const Options& opt = {}) {
    using T = std::decay_t<decltype(f(0.0))>;
    auto mapped = [&](double u) -> T {
        const double one_minus = 1.0 - u;
        const double y = a + scale * u / one_minus;
        const double jac = scale / (one_minus * one_minus);
        const T v = f(y);
        if (detail::magnitude(v) == 0.0) return T{};
        return v * jac;
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

} // namespace dressed::quad
