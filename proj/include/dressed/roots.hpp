// roots.hpp: safeguarded bisection/Newton on a bracket with known end signs

#pragma once

#include <functional>
#include <utility>

namespace dressed::roots {

struct Options {
    double bisection_rel_width{1e-6};  // switch to Newton below this relative bracket width
    double rel_tol{4e-16};             // Newton stops when |step| <= rel_tol * |x|
    double abs_tol{0.0};
    int max_iterations{400};
};

struct Result {
    double x{};
    int iterations{};
    bool used_bisection_fallback{};
};

// value_and_slope(x) returns {f(x), f'(x)}. The ends lo and hi are never
// evaluated (they may be poles); the caller supplies the sign of f just inside
// lo. Throws NumericalFailure if the bracket never shows a sign change.
Result solve_bracketed(const std::function<std::pair<double, double>(double)>& value_and_slope,
                       double lo, double hi, int sign_at_lo, const Options& opt = {});

} // namespace dressed::roots
