// model.hpp: system parameters of an oscillator coupled to an ohmic bath

#pragma once

#include <cstddef>
#include <string_view>

namespace dressed {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 2.99792458e8;

// Physical inputs. Frequencies in rad/s, lengths in m.
struct OhmicSystemSpec {
    double bar_omega{1.0};               // renormalized oscillator frequency
    double g{0.1};                       // ohmic coupling strength
    double cavity_L{1.0};                // cavity diameter
    double light_speed{kSpeedOfLight};   // propagation speed
    std::size_t n_modes{8};              // bath modes used by finite-N routes
    double hbar{1.0};                    // applied only to position prefactors

    // Throws ParameterError naming the first offending field.
    void validate() const;

    // Convenience constructors for the dimensionless parametrization g = beta*bar_omega,
    // L = 2*c*delta/g.
    static OhmicSystemSpec from_beta_delta(double bar_omega, double beta, double delta,
                                           double light_speed = kSpeedOfLight,
                                           std::size_t n_modes = 8);
};

struct DerivedParams {
    double delta_omega{};  // bath mode spacing 2*pi*c/L
    double eta{};          // coupling normalization sqrt(2 g delta_omega)
    double omega0{};       // bare frequency sqrt(bar_omega^2 + N eta^2)
    double kappa_sq{};     // bar_omega^2 - pi^2 g^2 / 4
    double beta{};         // g / bar_omega
    double delta{};        // L g / (2 c)
    std::size_t n_modes{};

    double omega_k(std::size_t k) const noexcept { return static_cast<double>(k) * delta_omega; }
    double c_k(std::size_t k) const noexcept { return eta * omega_k(k); }
    double eta_sq() const noexcept { return eta * eta; }
};

DerivedParams derive_parameters(const OhmicSystemSpec& spec);

enum class RegimeKind { Underdamped, Critical, Overdamped };

struct Regime {
    RegimeKind kind{RegimeKind::Underdamped};
    double kappa_abs{};  // sqrt(|kappa^2|)
};

// Relative width of the critical band: |kappa^2| <= kCriticalTolerance * bar_omega^2.
inline constexpr double kCriticalTolerance = 1e-9;

Regime classify_regime(const OhmicSystemSpec& spec);

std::string_view to_string(RegimeKind kind) noexcept;

} // namespace dressed
