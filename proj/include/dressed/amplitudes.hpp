// amplitudes.hpp: survival amplitude f00(t) and survival probabilities
//
// f00(t) = sum_s (t_0^s)^2 exp(-i Omega_s t). In the continuum limit
//   f00(t) = int_0^inf 2 g W^2 exp(-i W t) dW / [(W^2 - bar_omega^2)^2 + pi^2 g^2 W^2],
// which splits, after rotating the contour onto the negative imaginary axis,
// into a pole term plus i J(t) with J real.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dressed/model.hpp"
#include "dressed/spectrum.hpp"
#include "dressed/transform.hpp"

namespace dressed {

enum class AmplitudeMethod { DiscreteSum, ClosedForm, Quadrature };

struct AmplitudeSeries {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    AmplitudeMethod method{AmplitudeMethod::DiscreteSum};
    Regime regime;
};

AmplitudeSeries f00_discrete(const NormalModeSet& modes, std::span<const double> weights,
                             std::span<const double> times);

// Adaptive quadrature of the continuum integral; absolute error target 1e-9.
// Throws NumericalFailure when the estimate exceeds 1e-7.
AmplitudeSeries f00_quadrature(const OhmicSystemSpec& spec, std::span<const double> times);

// J(t) = 2g int_0^inf y^2 exp(-y t) dy / [(y^2 + bar_omega^2)^2 - pi^2 g^2 y^2].
// Overdamped: principal value at the two real poles. Critical: Hadamard finite part
// at the double pole. Both conventions match the pole terms of f00_pole_term.
double bath_integral_J(const OhmicSystemSpec& spec, double t);

// Residue contribution of f00 (everything except i J).
std::complex<double> f00_pole_term(const OhmicSystemSpec& spec, double t);

AmplitudeSeries f00_closed(const OhmicSystemSpec& spec, std::span<const double> times);

std::vector<double> survival_probability(const AmplitudeSeries& series);

// exp(-pi g t)
double weak_decay_comparator(const OhmicSystemSpec& spec, double t);
// Slow overdamped pole squared: (bar_omega^2/pi^2 g^2)^2 exp(-2 bar_omega^2 t/(pi g)).
// The residue weight of that pole is -bar_omega^2/(pi^2 g^2) to leading order in 1/beta.
double strong_decay_comparator(const OhmicSystemSpec& spec, double t);

// |w_0 + sum_k w_k exp(-i (Omega_k - Omega_0) t)|^2 with frequencies[0] = Omega_0 and
// frequencies[k] = Omega_k; bath_weights[k-1] = w_k.
std::vector<double> cavity_survival_series(double particle_weight,
                                           std::span<const double> bath_weights,
                                           std::span<const double> frequencies,
                                           std::span<const double> times);

struct CavitySurvivalBound {
    double delta{};
    CouplingRegime regime{CouplingRegime::Weak};
    double min_probability{};  // raw polynomial value, may be negative
    bool unphysical{};         // raw value < 0
};

// weak:   1 - (5 pi/3) delta + (14 pi^2/9) delta^2
// strong: (2/(2+x))^2 - (2/(2+x)) x/3 - x^2/9, x = pi delta
CavitySurvivalBound cavity_min_bound(double delta, CouplingRegime regime);

// Positive root of the strong bound.
double solve_delta_max();

std::string_view to_string(AmplitudeMethod method) noexcept;

} // namespace dressed
