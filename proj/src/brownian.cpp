// brownian.cpp: classical paths from f00 samples and from closed forms

#include "dressed/brownian.hpp"

#include <cmath>

#include "dressed/error.hpp"
#include "dressed/parallel.hpp"

namespace dressed {

void CoherentPreparation::validate() const {
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        throw ParameterError("n_bar", "must be a finite non-negative number");
    }
    if (!std::isfinite(theta)) throw ParameterError("theta", "must be finite");
}

std::vector<double> classical_path(const OhmicSystemSpec& spec, const CoherentPreparation& prep,
                                   std::span<const double> times, const AmplitudeSeries& f00_source) {
    spec.validate();
    prep.validate();
    if (f00_source.times.size() != times.size() || f00_source.values.size() != times.size()) {
        throw DimensionMismatch("f00 samples do not cover the requested time grid");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (f00_source.times[i] != times[i]) {
            throw DimensionMismatch("f00 sample times differ from the requested time grid");
        }
    }
    const double amp = std::sqrt(2.0 * spec.hbar * prep.n_bar / spec.bar_omega);
    const double c = std::cos(prep.theta);
    const double s = std::sin(prep.theta);
    std::vector<double> q(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        q[i] = amp * (c * f00_source.values[i].real() + s * f00_source.values[i].imag());
    }
    return q;
}

std::vector<double> path_closed_forms(const OhmicSystemSpec& spec, const CoherentPreparation& prep,
                                      std::span<const double> times) {
    spec.validate();
    prep.validate();
    const Regime regime = classify_regime(spec);
    const double amp = std::sqrt(spec.hbar * prep.n_bar / (2.0 * spec.bar_omega));
    const double m = 0.5 * kPi * spec.g;
    const double th = prep.theta;
    const double sin_th = std::sin(th);
    std::vector<double> q(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        const double j = sin_th == 0.0 ? 0.0 : bath_integral_J(spec, t);
        double pole = 0.0;
        switch (regime.kind) {
            case RegimeKind::Underdamped: {
                const double k = regime.kappa_abs;
                const double ph = k * t + th;
                pole = (2.0 * std::cos(ph) - kPi * spec.g / k * std::sin(ph)) * std::exp(-m * t);
                break;
            }
            case RegimeKind::Critical:
                pole = 2.0 * std::cos(th) * (1.0 - m * t) * std::exp(-m * t);
                break;
            case RegimeKind::Overdamped:
                // Pole term of f00 is real here.
                pole = 2.0 * std::cos(th) * f00_pole_term(spec, t).real();
                break;
        }
        q[i] = amp * (pole + 2.0 * sin_th * j);
    });
    return q;
}

} // namespace dressed
