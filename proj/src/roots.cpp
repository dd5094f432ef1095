// roots.cpp: bracketed root polishing used by every spectrum route

#include "dressed/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dressed/error.hpp"

namespace dressed::roots {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

bool hugs(double x, double end) {
    const double scale = std::max(std::abs(end), std::numeric_limits<double>::min());
    return std::abs(x - end) <= 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

[[noreturn]] void fail(double lo, double hi) {
    std::ostringstream os;
    os.precision(17);
    os << "no sign change inside bracket (" << lo << ", " << hi << ")";
    throw NumericalFailure(os.str());
}

} // namespace

Result solve_bracketed(const std::function<std::pair<double, double>(double)>& value_and_slope,
                       double lo, double hi, int sign_at_lo, const Options& opt) {
    const double lo0 = lo;
    const double hi0 = hi;
    Result res;
    bool saw_lo_sign = false;
    bool saw_hi_sign = false;

    auto classify = [&](double x, double fx) {
        const int s = sign_of(fx);
        if (s == sign_at_lo) {
            saw_lo_sign = true;
            lo = x;
        } else if (s == -sign_at_lo) {
            saw_hi_sign = true;
            hi = x;
        }
        return s;
    };

    // Coarse bisection.
    while (res.iterations < opt.max_iterations) {
        const double width = hi - lo;
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (width <= opt.bisection_rel_width * scale) break;
        const double mid = lo + 0.5 * width;
        if (!(mid > lo && mid < hi)) break;
        ++res.iterations;
        const auto [fm, dm] = value_and_slope(mid);
        (void)dm;
        if (!std::isfinite(fm)) fail(lo0, hi0);
        if (classify(mid, fm) == 0) {
            res.x = mid;
            return res;
        }
    }

    // Newton polish inside the bracket, bisecting whenever Newton leaves it.
    double x = lo + 0.5 * (hi - lo);
    while (res.iterations < opt.max_iterations) {
        ++res.iterations;
        const auto [fx, dfx] = value_and_slope(x);
        if (!std::isfinite(fx)) fail(lo0, hi0);
        if (classify(x, fx) == 0) {
            res.x = x;
            return res;
        }
        double next = x - fx / dfx;
        const bool newton_ok = std::isfinite(next) && next > lo && next < hi;
        if (!newton_ok) {
            next = lo + 0.5 * (hi - lo);
            res.used_bisection_fallback = true;
        }
        const double step = std::abs(next - x);
        x = next;
        if (step <= opt.rel_tol * std::abs(x) + opt.abs_tol) break;
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
    }
    if (res.iterations >= opt.max_iterations) {
        std::ostringstream os;
        os.precision(17);
        os << "root search did not converge in bracket (" << lo0 << ", " << hi0 << ")";
        throw NumericalFailure(os.str());
    }
    if ((!saw_hi_sign && hugs(x, hi0)) || (!saw_lo_sign && hugs(x, lo0))) fail(lo0, hi0);
    res.x = x;
    return res;
}

} // namespace dressed::roots
