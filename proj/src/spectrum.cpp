// spectrum.cpp: finite-N, cavity and small-L eigenfrequency routes

#include "dressed/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dressed/error.hpp"
#include "dressed/parallel.hpp"
#include "dressed/roots.hpp"

namespace dressed {

namespace {

constexpr double kResidualTol = 1e-12;

double sq(double x) { return x * x; }

// Pole condition in offset form. With x = anchor^2 dw^2 + d and
// gap_k = dw^2 (k^2 - anchor^2) - d:
//   F(d) = bar_omega^2 - x - eta^2 x sum_k 1/gap_k,
// strictly decreasing in d between consecutive poles.
struct FinitePoleCondition {
    const DerivedParams& p;
    double bar_omega_sq;
    std::size_t anchor;

    double base() const { return sq(static_cast<double>(anchor) * p.delta_omega); }

    double gap(std::size_t k, double d) const {
        const double kk = static_cast<double>(k);
        const double aa = static_cast<double>(anchor);
        return sq(p.delta_omega) * (kk - aa) * (kk + aa) - d;
    }

    struct Eval {
        double value;
        double slope;
        double scale;  // sum of term magnitudes, for the relative residual
    };

    Eval operator()(double d) const {
        const double x = base() + d;
        double inv = 0.0;
        double inv_sq = 0.0;
        double inv_abs = 0.0;
        for (std::size_t k = 1; k <= p.n_modes; ++k) {
            const double r = 1.0 / gap(k, d);
            inv += r;
            inv_sq += r * r;
            inv_abs += std::abs(r);
        }
        const double e2 = p.eta_sq();
        Eval e;
        e.value = bar_omega_sq - x - e2 * x * inv;
        e.slope = -1.0 - e2 * inv - e2 * x * inv_sq;
        e.scale = bar_omega_sq + std::abs(x) + e2 * std::abs(x) * inv_abs;
        return e;
    }
};

std::string interval_text(double lo, double hi) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << lo << ", " << hi << ")";
    return os.str();
}

PoleAnchor solve_interval(const DerivedParams& p, double bar_omega_sq, std::size_t lower_index,
                          std::optional<std::size_t> upper_index, double upper_limit_sq) {
    // Root lies in (lower^2 dw^2, upper^2 dw^2) or, for the last mode, below upper_limit_sq.
    const double lower_sq = sq(static_cast<double>(lower_index) * p.delta_omega);
    const double width = upper_index
                             ? sq(p.delta_omega) * (static_cast<double>(*upper_index) -
                                                    static_cast<double>(lower_index)) *
                                   (static_cast<double>(*upper_index) +
                                    static_cast<double>(lower_index))
                             : upper_limit_sq - lower_sq;

    FinitePoleCondition lower{p, bar_omega_sq, lower_index};
    std::size_t anchor = lower_index;
    double lo = 0.0;
    double hi = width;
    if (upper_index) {
        // Anchor on whichever pole the root is closer to.
        const double f_mid = lower(0.5 * width).value;
        if (f_mid == 0.0) return {lower_index, 0.5 * width};
        if (f_mid > 0.0) {
            anchor = *upper_index;
            lo = -0.5 * width;
            hi = 0.0;
        } else {
            hi = 0.5 * width;
        }
    }
    FinitePoleCondition cond{p, bar_omega_sq, anchor};
    auto fn = [&](double d) {
        const auto e = cond(d);
        return std::pair<double, double>{e.value, e.slope};
    };
    roots::Result r;
    try {
        r = roots::solve_bracketed(fn, lo, hi, +1);
    } catch (const NumericalFailure&) {
        const double a = std::sqrt(lower_sq);
        const double b = upper_index ? static_cast<double>(*upper_index) * p.delta_omega
                                     : std::sqrt(upper_limit_sq);
        throw NumericalFailure("finite-N root search failed in Omega interval " +
                               interval_text(a, b));
    }
    const auto e = cond(r.x);
    if (std::abs(e.value) > kResidualTol * e.scale) {
        throw NumericalFailure("finite-N root residual above tolerance near Omega^2 = " +
                               interval_text(cond.base() + r.x, cond.base() + r.x));
    }
    return {anchor, r.x};
}

} // namespace

double NormalModeSet::squared_gap(std::size_t k, std::size_t r) const {
    const double dw = 2.0 * kPi * spec_snapshot.light_speed / spec_snapshot.cavity_L;
    if (!anchors.empty()) {
        const double kk = static_cast<double>(k);
        const double aa = static_cast<double>(anchors[r].index);
        return dw * dw * (kk - aa) * (kk + aa) - anchors[r].offset;
    }
    const double wk = static_cast<double>(k) * dw;
    return (wk - frequencies[r]) * (wk + frequencies[r]);
}

NormalModeSet solve_finite_spectrum(const OhmicSystemSpec& spec) {
    const DerivedParams p = derive_parameters(spec);
    const double bar_omega_sq = sq(spec.bar_omega);
    if (!(bar_omega_sq > 0.0)) {
        throw StabilityError("omega0^2 <= N eta^2: pole condition admits a negative Omega^2 root");
    }
    const std::size_t n = spec.n_modes;

    // Upper bracket for the top mode: omega_N + dw * B with B = 1.5, 3, ..., 1.5 * 2^10.
    double top_limit_sq = 0.0;
    {
        FinitePoleCondition cond{p, bar_omega_sq, n};
        const double wn = p.omega_k(n);
        bool found = false;
        for (double b = 1.5; b <= 1.5 * 1024.0; b *= 2.0) {
            const double hi = wn + p.delta_omega * b;
            if (cond((hi - wn) * (hi + wn)).value < 0.0) {
                top_limit_sq = hi * hi;
                found = true;
                break;
            }
        }
        if (!found) {
            throw NumericalFailure("no sign change above omega_N within expansion limit, interval " +
                                   interval_text(wn, wn + p.delta_omega * 1.5 * 1024.0));
        }
    }

    NormalModeSet set;
    set.source = SpectrumSource::FiniteN;
    set.spec_snapshot = spec;
    set.anchors.resize(n + 1);
    parallel_for(n + 1, [&](std::size_t r) {
        if (r < n) {
            set.anchors[r] = solve_interval(p, bar_omega_sq, r, r + 1, 0.0);
        } else {
            set.anchors[r] = solve_interval(p, bar_omega_sq, n, std::nullopt, top_limit_sq);
        }
    });

    set.frequencies.resize(n + 1);
    set.weights.resize(n + 1);
    for (std::size_t r = 0; r <= n; ++r) {
        const auto& a = set.anchors[r];
        const double omega_sq = sq(static_cast<double>(a.index) * p.delta_omega) + a.offset;
        if (!(omega_sq > 0.0)) throw StabilityError("negative Omega^2 normal mode detected");
        set.frequencies[r] = std::sqrt(omega_sq);
        double s = 1.0;
        for (std::size_t k = 1; k <= n; ++k) s += sq(p.c_k(k) / set.squared_gap(k, r));
        set.weights[r] = 1.0 / s;
    }
    return set;
}

double cavity_spectrum_function(const OhmicSystemSpec& spec, double omega, CavityVariant variant) {
    const double c = spec.light_speed;
    const double L = spec.cavity_L;
    const double g = spec.g;
    const double k_const = variant == CavityVariant::Published ? 1.0 : 2.0;
    const double a = k_const - sq(spec.bar_omega) * L / (kPi * g * c);
    const double z = L * omega / (2.0 * c);
    return std::cos(z) / std::sin(z) - (omega / (kPi * g) + c / (L * omega) * a);
}

NormalModeSet solve_cavity_spectrum(const OhmicSystemSpec& spec, std::size_t k_max,
                                    CavityVariant variant) {
    spec.validate();
    if (k_max < 1) throw InputError("k_max must be at least 1");
    const double c = spec.light_speed;
    const double L = spec.cavity_L;
    const double g = spec.g;
    const double k_const = variant == CavityVariant::Published ? 1.0 : 2.0;
    const double a = k_const - sq(spec.bar_omega) * L / (kPi * g * c);

    NormalModeSet set;
    set.source = SpectrumSource::CavityClosedForm;
    set.variant = variant;
    set.spec_snapshot = spec;
    set.frequencies.resize(k_max + 1);

    parallel_for(k_max + 1, [&](std::size_t k) {
        // Branch k: L Omega / 2c = k pi + s, s in (0, pi); cot(k pi + s) = cot(s).
        const double base = static_cast<double>(k) * kPi;
        auto omega_of = [&](double s) { return 2.0 * c * (base + s) / L; };
        auto fn = [&](double s) {
            const double w = omega_of(s);
            const double sn = std::sin(s);
            const double value = std::cos(s) / sn - (w / (kPi * g) + c / (L * w) * a);
            const double rhs_slope = 1.0 / (kPi * g) - c * a / (L * w * w);
            const double slope = -1.0 / (sn * sn) - rhs_slope * 2.0 * c / L;
            return std::pair<double, double>{value, slope};
        };
        roots::Result r;
        try {
            r = roots::solve_bracketed(fn, 0.0, kPi, +1);
        } catch (const NumericalFailure&) {
            throw NumericalFailure("cavity root search failed in Omega interval " +
                                   interval_text(omega_of(0.0), omega_of(kPi)));
        }
        const double w = omega_of(r.x);
        const double cot = std::cos(r.x) / std::sin(r.x);
        const double scale = std::abs(cot) + w / (kPi * g) + std::abs(c * a / (L * w));
        const double residual = std::abs(fn(r.x).first);
        if (residual > kResidualTol * scale) {
            throw NumericalFailure("cavity root residual above tolerance in Omega interval " +
                                   interval_text(omega_of(0.0), omega_of(kPi)));
        }
        set.frequencies[k] = w;
    });
    return set;
}

double SmallLSpectrum::omega_k(std::size_t k) const {
    if (k == 0) return omega_0;
    return delta_omega * (static_cast<double>(k) + epsilons.at(k - 1));
}

NormalModeSet SmallLSpectrum::as_mode_set(const OhmicSystemSpec& spec) const {
    NormalModeSet set;
    set.source = SpectrumSource::SmallLAsymptotic;
    set.spec_snapshot = spec;
    set.frequencies.resize(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) set.frequencies[k] = omega_k(k);
    return set;
}

SmallLSpectrum approx_small_L_spectrum(const OhmicSystemSpec& spec, std::size_t k_max) {
    const DerivedParams p = derive_parameters(spec);
    if (k_max < 1) throw InputError("k_max must be at least 1");
    const double c = spec.light_speed;
    const double L = spec.cavity_L;
    const double g = spec.g;
    const double wl_sq = sq(spec.bar_omega * L);

    SmallLSpectrum out;
    out.k_max = k_max;
    out.delta_omega = p.delta_omega;
    out.omega_0 = spec.bar_omega / std::sqrt(1.0 + kPi * g * L / (2.0 * c));
    out.epsilons.resize(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double kk = static_cast<double>(k);
        const double denom = 4.0 * kPi * kPi * c * c * kk * kk - wl_sq;
        if (std::abs(denom) <= 1e-12 * std::max(wl_sq, 4.0 * kPi * kPi * c * c * kk * kk)) {
            std::ostringstream os;
            os << "linearized cavity spectrum is resonant at k = " << k
               << " (2 pi c k = bar_omega L)";
            throw SingularityError(os.str());
        }
        out.epsilons[k - 1] = 4.0 * kPi * g * c * L * kk / (2.0 * denom);
    }
    out.validity_factor = cavity_smallness_factor(spec).f;
    out.within_validity = p.delta <= 0.1 * out.validity_factor &&
                          out.omega_0 * L / (2.0 * c) <= 0.1;
    return out;
}

SmallnessFactor cavity_smallness_factor(double beta) {
    if (!(beta > 0.0)) throw ParameterError("beta", "must be positive");
    SmallnessFactor f;
    // (pi/2) b^2 (1 + sqrt(1 + 4/(pi^2 b^2))) rewritten to avoid 1/b^2 overflow.
    f.f = 0.5 * kPi * beta * beta + beta * std::sqrt(0.25 * kPi * kPi * beta * beta + 1.0);
    f.f_weak = beta;
    f.f_strong = kPi * beta * beta;
    return f;
}

SmallnessFactor cavity_smallness_factor(const OhmicSystemSpec& spec) {
    return cavity_smallness_factor(derive_parameters(spec).beta);
}

namespace {

void check_series_argument(double u) {
    if (!std::isfinite(u)) throw InputError("series argument must be finite");
    const double nearest = std::round(u);
    if (nearest != 0.0 && std::abs(u - nearest) < 1e-6) {
        std::ostringstream os;
        os.precision(17);
        os << "series argument u = " << u << " lies within 1e-6 of the pole at " << nearest;
        throw InputError(os.str());
    }
}

} // namespace

double series_closed_form(double u, SeriesConstant constant) {
    check_series_argument(u);
    const double u2 = u * u;
    if (constant == SeriesConstant::Corrected && std::abs(u) < 0.05) {
        // sum_m zeta(2m) u^(2m-2); avoids the 1/(2u^2) cancellation near u = 0.
        const double pi2 = kPi * kPi;
        const double z2 = pi2 / 6.0;
        const double z4 = pi2 * pi2 / 90.0;
        const double z6 = z4 * pi2 * 90.0 / 945.0;
        const double z8 = z6 * pi2 * 945.0 / 9450.0;
        const double z10 = z8 * pi2 * 9450.0 / 93555.0;
        const double z12 = z10 * pi2 * 93555.0 * 691.0 / 638512875.0;
        const double z14 = z12 * pi2 * 638512875.0 * 2.0 / (18243225.0 * 691.0);
        return z2 + u2 * (z4 + u2 * (z6 + u2 * (z8 + u2 * (z10 + u2 * (z12 + u2 * z14)))));
    }
    if (u == 0.0) throw InputError("printed series constant is singular at u = 0");
    const double factor = constant == SeriesConstant::Corrected ? kPi / (2.0 * u) : kPi / u;
    return 1.0 / (2.0 * u2) - factor * std::cos(kPi * u) / std::sin(kPi * u);
}

double series_partial_sum(double u, std::size_t n_terms) {
    check_series_argument(u);
    const double u2 = u * u;
    double sum = 0.0;
    for (std::size_t k = n_terms; k >= 1; --k) {  // smallest terms first
        const double kk = static_cast<double>(k);
        sum += 1.0 / (kk * kk - u2);
    }
    return sum;
}

double series_identity_residual(double u, std::size_t n_terms, SeriesConstant constant) {
    return std::abs(series_partial_sum(u, n_terms) - series_closed_form(u, constant));
}

} // namespace dressed
