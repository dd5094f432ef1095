// transform.hpp: bare/normal/dressed coordinate maps and Eq. 28-type expansion coefficients

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dressed/model.hpp"
#include "dressed/spectrum.hpp"

namespace dressed {

enum class TransformSource { FiniteN, CavityContinuumRow, DenseOracle };

// Row mu (0 = particle, 1..N = bath), column r (normal mode); row-major.
struct TransformMatrix {
    std::size_t dim{};
    std::vector<double> t;
    TransformSource source{TransformSource::FiniteN};

    double operator()(std::size_t mu, std::size_t r) const { return t[mu * dim + r]; }
    double& operator()(std::size_t mu, std::size_t r) { return t[mu * dim + r]; }
};

// t_0^r = [1 + sum_k c_k^2/(omega_k^2 - Omega_r^2)^2]^(-1/2), t_k^r = c_k t_0^r/(omega_k^2 - Omega_r^2).
TransformMatrix finite_matrix(const OhmicSystemSpec& spec, const NormalModeSet& modes);

// max |sum_mu t_mu^r t_mu^s - delta_rs|
double orthonormality_defect(const TransformMatrix& m);
// |sum_r (t_0^r)^2 - 1|
double row_sum_defect(const TransformMatrix& m);

// (t_0^r)^2 = eta^2 Omega^2 / [(Omega^2 - bar_omega^2)^2 + (eta^2/2)(3 Omega^2 - bar_omega^2) + pi^2 g^2 Omega^2]
std::vector<double> cavity_weight_row(const OhmicSystemSpec& spec, const NormalModeSet& modes);

enum class CouplingRegime { Weak, Strong };

struct SmallLWeights {
    double particle{};            // (t_0^0)^2
    std::vector<double> bath;     // bath[k-1] = (t_0^k)^2 = 2 delta/(pi k^2)
    bool degraded{};              // delta > 0.05
};

SmallLWeights small_L_weights(const OhmicSystemSpec& spec, CouplingRegime regime,
                              std::size_t k_max);
SmallLWeights small_L_weights(double delta, CouplingRegime regime, std::size_t k_max);

// q'_mu = (1/sqrt(bar_omega_mu)) sum_r t_mu^r sqrt(Omega_r) Q_r, bar_omega_mu = (bar_omega, omega_1, ...).
std::vector<double> dressed_from_normal(std::span<const double> normal, const TransformMatrix& m,
                                        const NormalModeSet& modes, const OhmicSystemSpec& spec);

struct ExpansionCoefficient {
    double value{};
    double log_abs{};  // log|value|; -inf when value is zero
    int sign{};        // 0 when value is zero
    unsigned particle_level{};
    std::vector<unsigned> occupations;
};

inline constexpr unsigned kMaxParticleLevel = 20;

// sqrt(n0'!/(n_0! n_1! ...)) prod_r (t_0^r)^(n_r) when sum n_r = n0', else 0.
ExpansionCoefficient expansion_coefficient(unsigned n0_prime, std::span<const unsigned> occupations,
                                           std::span<const double> t0_row);

} // namespace dressed
