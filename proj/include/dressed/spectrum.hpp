// spectrum.hpp: normal-mode eigenfrequencies of the particle + ohmic bath
//
// Three routes to the frequencies Omega_r:
//   * finite N: roots of the pole condition
//       bar_omega^2 - Omega^2 = eta^2 Omega^2 sum_k 1/(omega_k^2 - Omega^2),
//     which is the bare condition omega0^2 - Omega^2 = sum_k c_k^2/(omega_k^2 - Omega^2)
//     with the N eta^2 shift absorbed into bar_omega;
//   * cavity closed form: roots of the cotangent equation obtained as N -> inf;
//   * small-L asymptotics: linearization around the cotangent asymptotes.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dressed/model.hpp"

namespace dressed {

enum class SpectrumSource { FiniteN, CavityClosedForm, SmallLAsymptotic, DenseOracle };

// Constant multiplying c/(L Omega) in the cotangent equation
//   cot(L Omega / 2c) = Omega/(pi g) + (c/(L Omega)) (K - bar_omega^2 L/(pi g c)).
// Published form uses K = 1. Summing the finite-N condition with
// sum_{k>=1} 1/(k^2-u^2) = 1/(2u^2) - (pi/2u) cot(pi u) gives K = 2; only that
// form is consistent with the closed-form weights of cavity_weight_row.
enum class CavityVariant { Published, Rederived };

// Omega_r^2 = anchor^2 * delta_omega^2 + offset. Storing the offset from the
// nearest bath pole keeps omega_k^2 - Omega_r^2 exact when a root hugs a pole.
struct PoleAnchor {
    std::size_t index{};
    double offset{};
};

struct NormalModeSet {
    std::vector<double> frequencies;  // strictly increasing, rad/s
    std::vector<double> weights;      // (t_0^r)^2; empty for cavity sets until cavity_weight_row
    SpectrumSource source{SpectrumSource::FiniteN};
    CavityVariant variant{CavityVariant::Published};  // cavity sets only
    OhmicSystemSpec spec_snapshot;
    std::vector<PoleAnchor> anchors;  // finite-N sets only

    std::size_t size() const noexcept { return frequencies.size(); }

    // omega_k^2 - Omega_r^2, using the pole anchor when available.
    double squared_gap(std::size_t k, std::size_t r) const;
};

NormalModeSet solve_finite_spectrum(const OhmicSystemSpec& spec);

// Lowest k_max + 1 roots, one per cotangent branch.
NormalModeSet solve_cavity_spectrum(const OhmicSystemSpec& spec, std::size_t k_max,
                                    CavityVariant variant = CavityVariant::Published);

// h(Omega) = cot(L Omega/2c) - rhs(Omega); zero at every cavity eigenfrequency.
double cavity_spectrum_function(const OhmicSystemSpec& spec, double omega, CavityVariant variant);

struct SmallLSpectrum {
    double omega_0{};              // bar_omega / sqrt(1 + pi g L / 2c)
    std::vector<double> epsilons;  // epsilons[k-1] = eps_k, k = 1..k_max
    double validity_factor{};      // f of the smallness condition L << (2c/g) f
    std::size_t k_max{};
    bool within_validity{};        // delta <= 0.1 f and Omega_0 L / 2c <= 0.1
    double delta_omega{};

    double omega_k(std::size_t k) const;          // k >= 1
    NormalModeSet as_mode_set(const OhmicSystemSpec& spec) const;
};

SmallLSpectrum approx_small_L_spectrum(const OhmicSystemSpec& spec, std::size_t k_max);

struct SmallnessFactor {
    double f{};         // exact
    double f_weak{};    // beta, leading order for beta << 1
    double f_strong{};  // pi beta^2, leading order for beta >> 1
};

SmallnessFactor cavity_smallness_factor(const OhmicSystemSpec& spec);
SmallnessFactor cavity_smallness_factor(double beta);

// sum_{k>=1} 1/(k^2 - u^2) in closed form. The printed constant variant uses
// pi/u in place of pi/(2u); it is kept only to show that it fails the u -> 0 limit.
enum class SeriesConstant { Corrected, Printed };

double series_closed_form(double u, SeriesConstant constant = SeriesConstant::Corrected);
double series_partial_sum(double u, std::size_t n_terms);
double series_identity_residual(double u, std::size_t n_terms,
                                SeriesConstant constant = SeriesConstant::Corrected);

} // namespace dressed
