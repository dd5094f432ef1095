// amplitudes.cpp: survival amplitude by discrete sum, closed form and quadrature

#include "dressed/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dressed/error.hpp"
#include "dressed/parallel.hpp"
#include "dressed/quadrature.hpp"

namespace dressed {

namespace {

using cplx = std::complex<double>;

constexpr double kQuadratureTarget = 1e-9;
constexpr double kQuadratureFailure = 1e-7;

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double sinhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

std::string time_text(double t) {
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

// Continuum f00 at one time.
cplx continuum_f00(const OhmicSystemSpec& spec, double t) {
    const double wb = spec.bar_omega;
    const double g = spec.g;
    const double pg = kPi * g;
    auto density = [&](auto w) {
        const auto w2 = w * w;
        const auto lo = (w - wb) * (w + wb);
        return 2.0 * g * w2 / (lo * lo + pg * pg * w2);
    };

    const double w_max = 4.0 * std::max(wb, pg);
    std::vector<double> pts{0.0, w_max};
    for (double p : {wb - pg, wb + pg, wb - 10.0 * pg, wb + 10.0 * pg, wb}) {
        if (p > 0.0 && p < w_max) pts.push_back(p);
    }
    if (t > 0.0) {
        const double width = kPi / (4.0 * t);
        const double n_panels = std::ceil(w_max / width);
        for (double i = 1.0; i < n_panels; i += 1.0) pts.push_back(i * width);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    quad::Options opt;
    opt.abs_tol = 0.1 * kQuadratureTarget;
    opt.rel_tol = 0.0;
    opt.max_intervals = pts.size() + 20000;
    auto body = quad::integrate(
        [&](double w) { return density(w) * std::exp(cplx(0.0, -w * t)); },
        std::span<const double>(pts), opt);

    // [w_max, inf) rotated onto w_max - i y, y >= 0; no poles right of w_max.
    quad::Options tail_opt;
    tail_opt.abs_tol = 0.01 * kQuadratureTarget;
    tail_opt.rel_tol = 0.0;
    auto tail = quad::integrate_to_infinity(
        [&](double y) { return density(cplx(w_max, -y)) * std::exp(-y * t); }, 0.0,
        w_max / (1.0 + w_max * t), tail_opt);
    const cplx tail_value = cplx(0.0, -1.0) * std::exp(cplx(0.0, -w_max * t)) * tail.value;

    const double err = body.error + tail.error;
    if (!(err <= kQuadratureFailure)) {
        throw NumericalFailure("f00 quadrature error estimate " + time_text(err) +
                               " above tolerance at t = " + time_text(t));
    }
    return body.value + tail_value;
}

} // namespace

AmplitudeSeries f00_discrete(const NormalModeSet& modes, std::span<const double> weights,
                             std::span<const double> times) {
    if (weights.size() != modes.size()) {
        throw DimensionMismatch("weight row and mode set differ in size");
    }
    AmplitudeSeries s;
    s.method = AmplitudeMethod::DiscreteSum;
    s.regime = classify_regime(modes.spec_snapshot);
    s.times.assign(times.begin(), times.end());
    s.values.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        cplx sum{};
        for (std::size_t r = 0; r < modes.size(); ++r) {
            sum += weights[r] * std::exp(cplx(0.0, -modes.frequencies[r] * times[i]));
        }
        s.values[i] = sum;
    });
    return s;
}

AmplitudeSeries f00_quadrature(const OhmicSystemSpec& spec, std::span<const double> times) {
    spec.validate();
    AmplitudeSeries s;
    s.method = AmplitudeMethod::Quadrature;
    s.regime = classify_regime(spec);
    s.times.assign(times.begin(), times.end());
    s.values.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) { s.values[i] = continuum_f00(spec, times[i]); });
    return s;
}

double bath_integral_J(const OhmicSystemSpec& spec, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("J(t) needs a finite t >= 0");
    const Regime regime = classify_regime(spec);
    const double wb = spec.bar_omega;
    const double g = spec.g;
    const double m = 0.5 * kPi * g;
    const double sigma = (m - wb) * (m + wb);  // -kappa^2
    const double s = regime.kappa_abs;

    // Denominator = A(y) B(y), A = (y - m)^2 - sigma carries the real poles.
    auto phi = [&](double y) { return 2.0 * g * y * y * std::exp(-y * t) / (y * y + 2.0 * m * y + wb * wb); };
    auto full = [&](double y) {
        const double d = y - m;
        return phi(y) / (d * d - sigma);
    };
    auto psi = [&](double u) { return 0.5 * (phi(m + u) + phi(m - u)); };

    quad::Options opt;
    opt.abs_tol = 1e-16;
    opt.rel_tol = 1e-11;

    double value = 0.0;
    double error = 0.0;
    const double r = regime.kind == RegimeKind::Overdamped ? 0.5 * (s + m) : 0.5 * m;
    switch (regime.kind) {
        case RegimeKind::Overdamped: {
            const double ps = psi(s);
            const std::array<double, 3> pts{0.0, s, r};
            auto res = quad::integrate([&](double u) { return (psi(u) - ps) / ((u - s) * (u + s)); },
                                       std::span<const double>(pts), opt);
            value += 2.0 * res.value + ps / s * std::log((r - s) / (r + s));
            error += 2.0 * res.error;
            break;
        }
        case RegimeKind::Underdamped: {
            const double p0 = psi(0.0);
            auto res = quad::integrate([&](double u) { return (psi(u) - p0) / (u * u + s * s); },
                                       0.0, r, opt);
            value += 2.0 * res.value + 2.0 * p0 * std::atan(r / s) / s;
            error += 2.0 * res.error;
            break;
        }
        case RegimeKind::Critical: {
            const double p0 = psi(0.0);
            auto res = quad::integrate([&](double u) { return (psi(u) - p0) / (u * u); }, 0.0, r, opt);
            value += 2.0 * res.value - 2.0 * p0 / r;
            error += 2.0 * res.error;
            break;
        }
    }

    const double y1 = 4.0 * std::max({m + r, wb, kPi * g});
    auto left = quad::integrate(full, 0.0, m - r, opt);
    auto right = quad::integrate(full, m + r, y1, opt);
    auto tail = quad::integrate_to_infinity(full, y1, y1 / (1.0 + y1 * t), opt);
    value += left.value + right.value + tail.value;
    error += left.error + right.error + tail.error;
    // Pieces cancel near t = 0 and at the critical point; judge the error against their size.
    const double pieces = std::abs(left.value) + std::abs(right.value) + std::abs(tail.value);

    if (!(error <= std::max({1e-15, 1e-6 * std::abs(value), 1e-9 * pieces}))) {
        throw NumericalFailure("J(t) quadrature did not converge at t = " + time_text(t) +
                               " (error estimate " + time_text(error) + ")");
    }
    return value;
}

std::complex<double> f00_pole_term(const OhmicSystemSpec& spec, double t) {
    const Regime regime = classify_regime(spec);
    const double m = 0.5 * kPi * spec.g;
    const double mt = m * t;
    switch (regime.kind) {
        case RegimeKind::Underdamped: {
            const double k = regime.kappa_abs;
            const double env = std::exp(-mt);
            const double kt = k * t;
            // (1 - i m/k) exp(-i k t - m t), real part written to survive k -> 0.
            const double re = std::cos(kt) - mt * sinc(kt);
            const double im = -(std::sin(kt) + m / k * std::cos(kt));
            return {env * re, env * im};
        }
        case RegimeKind::Critical:
            return {(1.0 - mt) * std::exp(-mt), 0.0};
        case RegimeKind::Overdamped: {
            const double s = regime.kappa_abs;
            const double st = s * t;
            if (st <= 1.0) {
                return {std::exp(-mt) * (std::cosh(st) - mt * sinhc(st)), 0.0};
            }
            const double a = m / s;
            const double y_plus = m + s;
            const double y_minus = spec.bar_omega * spec.bar_omega / (m + s);
            return {0.5 * (1.0 + a) * std::exp(-y_plus * t) + 0.5 * (1.0 - a) * std::exp(-y_minus * t),
                    0.0};
        }
    }
    return {};
}

AmplitudeSeries f00_closed(const OhmicSystemSpec& spec, std::span<const double> times) {
    spec.validate();
    AmplitudeSeries s;
    s.method = AmplitudeMethod::ClosedForm;
    s.regime = classify_regime(spec);
    s.times.assign(times.begin(), times.end());
    s.values.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        s.values[i] = f00_pole_term(spec, times[i]) + cplx(0.0, bath_integral_J(spec, times[i]));
    });
    return s;
}

std::vector<double> survival_probability(const AmplitudeSeries& series) {
    std::vector<double> p(series.values.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(series.values[i]);
    return p;
}

double weak_decay_comparator(const OhmicSystemSpec& spec, double t) {
    return std::exp(-kPi * spec.g * t);
}

double strong_decay_comparator(const OhmicSystemSpec& spec, double t) {
    const double wb2 = spec.bar_omega * spec.bar_omega;
    const double pg = kPi * spec.g;
    const double a = wb2 / (pg * pg);
    return a * a * std::exp(-2.0 * wb2 * t / pg);
}

std::vector<double> cavity_survival_series(double particle_weight,
                                           std::span<const double> bath_weights,
                                           std::span<const double> frequencies,
                                           std::span<const double> times) {
    if (frequencies.size() != bath_weights.size() + 1) {
        throw DimensionMismatch("cavity survival needs one frequency per weight");
    }
    std::vector<double> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        cplx sum(particle_weight, 0.0);
        for (std::size_t k = 1; k < frequencies.size(); ++k) {
            sum += bath_weights[k - 1] * std::exp(cplx(0.0, -(frequencies[k] - frequencies[0]) * t));
        }
        out[i] = std::norm(sum);
    });
    return out;
}

CavitySurvivalBound cavity_min_bound(double delta, CouplingRegime regime) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ParameterError("delta", "must be a finite non-negative number");
    }
    CavitySurvivalBound b;
    b.delta = delta;
    b.regime = regime;
    if (regime == CouplingRegime::Weak) {
        b.min_probability = 1.0 - 5.0 * kPi / 3.0 * delta + 14.0 * kPi * kPi / 9.0 * delta * delta;
    } else {
        const double x = kPi * delta;
        const double h = 2.0 / (2.0 + x);
        b.min_probability = h * h - h * x / 3.0 - x * x / 9.0;
    }
    b.unphysical = b.min_probability < 0.0;
    return b;
}

double solve_delta_max() {
    // Strong bound decreases monotonically from 1 at delta = 0.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (cavity_min_bound(mid, CouplingRegime::Strong).min_probability > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string_view to_string(AmplitudeMethod method) noexcept {
    switch (method) {
        case AmplitudeMethod::DiscreteSum: return "discrete";
        case AmplitudeMethod::ClosedForm: return "closed";
        case AmplitudeMethod::Quadrature: return "quadrature";
    }
    return "unknown";
}

} // namespace dressed
