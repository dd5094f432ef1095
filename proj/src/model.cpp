// model.cpp: parameter validation, derived quantities and regime classification

#include "dressed/model.hpp"

#include <cmath>

#include "dressed/error.hpp"

namespace dressed {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(field, "must be a finite positive number");
    }
}

} // namespace

void OhmicSystemSpec::validate() const {
    require_positive(bar_omega, "bar_omega");
    require_positive(g, "g");
    require_positive(cavity_L, "cavity_L");
    require_positive(light_speed, "light_speed");
    if (n_modes < 1) throw ParameterError("n_modes", "must be at least 1");
    require_positive(hbar, "hbar");
}

OhmicSystemSpec OhmicSystemSpec::from_beta_delta(double bar_omega, double beta, double delta,
                                                 double light_speed, std::size_t n_modes) {
    require_positive(beta, "beta");
    require_positive(delta, "delta");
    OhmicSystemSpec spec;
    spec.bar_omega = bar_omega;
    spec.g = beta * bar_omega;
    spec.light_speed = light_speed;
    spec.cavity_L = 2.0 * light_speed * delta / spec.g;
    spec.n_modes = n_modes;
    spec.validate();
    return spec;
}

DerivedParams derive_parameters(const OhmicSystemSpec& spec) {
    spec.validate();
    DerivedParams d;
    d.n_modes = spec.n_modes;
    d.delta_omega = 2.0 * kPi * spec.light_speed / spec.cavity_L;
    d.eta = std::sqrt(2.0 * spec.g * d.delta_omega);
    const double n = static_cast<double>(spec.n_modes);
    d.omega0 = std::sqrt(spec.bar_omega * spec.bar_omega + n * d.eta_sq());
    const double half_damping = 0.5 * kPi * spec.g;
    d.kappa_sq = (spec.bar_omega - half_damping) * (spec.bar_omega + half_damping);
    d.beta = spec.g / spec.bar_omega;
    d.delta = spec.cavity_L * spec.g / (2.0 * spec.light_speed);
    return d;
}

Regime classify_regime(const OhmicSystemSpec& spec) {
    const DerivedParams d = derive_parameters(spec);
    const double tol = kCriticalTolerance * spec.bar_omega * spec.bar_omega;
    Regime r;
    r.kappa_abs = std::sqrt(std::abs(d.kappa_sq));
    if (d.kappa_sq > tol) {
        r.kind = RegimeKind::Underdamped;
    } else if (d.kappa_sq < -tol) {
        r.kind = RegimeKind::Overdamped;
    } else {
        r.kind = RegimeKind::Critical;
    }
    return r;
}

std::string_view to_string(RegimeKind kind) noexcept {
    switch (kind) {
        case RegimeKind::Underdamped: return "underdamped";
        case RegimeKind::Critical: return "critical";
        case RegimeKind::Overdamped: return "overdamped";
    }
    return "unknown";
}

} // namespace dressed
