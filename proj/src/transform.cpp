// transform.cpp: coordinate transformation and expansion coefficients

#include "dressed/transform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dressed/error.hpp"
#include "dressed/parallel.hpp"

namespace dressed {

TransformMatrix finite_matrix(const OhmicSystemSpec& spec, const NormalModeSet& modes) {
    const DerivedParams p = derive_parameters(spec);
    const std::size_t n = spec.n_modes;
    if (modes.size() != n + 1) {
        throw DimensionMismatch("finite_matrix needs all N+1 normal modes");
    }
    TransformMatrix m;
    m.dim = n + 1;
    m.t.assign(m.dim * m.dim, 0.0);
    m.source = TransformSource::FiniteN;

    parallel_for(m.dim, [&](std::size_t r) {
        const double omega_r_sq = modes.frequencies[r] * modes.frequencies[r];
        std::vector<double> ratio(n + 1, 0.0);
        double s = 1.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double gap = modes.squared_gap(k, r);
            const double wk_sq = p.omega_k(k) * p.omega_k(k);
            if (std::abs(gap) <= 1e-12 * std::max(wk_sq, omega_r_sq)) {
                std::ostringstream os;
                os << "normal mode " << r << " coincides with bath frequency omega_" << k;
                throw SingularityError(os.str());
            }
            ratio[k] = p.c_k(k) / gap;
            s += ratio[k] * ratio[k];
        }
        const double t0 = 1.0 / std::sqrt(s);
        m(0, r) = t0;
        for (std::size_t k = 1; k <= n; ++k) m(k, r) = ratio[k] * t0;
    });
    return m;
}

double orthonormality_defect(const TransformMatrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t s = r; s < m.dim; ++s) {
            double dot = 0.0;
            for (std::size_t mu = 0; mu < m.dim; ++mu) dot += m(mu, r) * m(mu, s);
            worst = std::max(worst, std::abs(dot - (r == s ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double row_sum_defect(const TransformMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.dim; ++r) s += m(0, r) * m(0, r);
    return std::abs(s - 1.0);
}

std::vector<double> cavity_weight_row(const OhmicSystemSpec& spec, const NormalModeSet& modes) {
    const DerivedParams p = derive_parameters(spec);
    const double e2 = p.eta_sq();
    const double wb2 = spec.bar_omega * spec.bar_omega;
    const double damp = kPi * kPi * spec.g * spec.g;
    std::vector<double> w(modes.size());
    for (std::size_t r = 0; r < modes.size(); ++r) {
        const double w2 = modes.frequencies[r] * modes.frequencies[r];
        const double shift = (modes.frequencies[r] - spec.bar_omega) *
                             (modes.frequencies[r] + spec.bar_omega);
        w[r] = e2 * w2 / (shift * shift + 0.5 * e2 * (3.0 * w2 - wb2) + damp * w2);
    }
    return w;
}

SmallLWeights small_L_weights(double delta, CouplingRegime regime, std::size_t k_max) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ParameterError("delta", "must be a finite non-negative number");
    }
    SmallLWeights out;
    out.particle = regime == CouplingRegime::Weak ? 1.0 - kPi * delta
                                                  : 1.0 / (1.0 + 0.5 * kPi * delta);
    out.bath.resize(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double kk = static_cast<double>(k);
        out.bath[k - 1] = 2.0 * delta / (kPi * kk * kk);
    }
    out.degraded = delta > 0.05;
    return out;
}

SmallLWeights small_L_weights(const OhmicSystemSpec& spec, CouplingRegime regime,
                              std::size_t k_max) {
    return small_L_weights(derive_parameters(spec).delta, regime, k_max);
}

std::vector<double> dressed_from_normal(std::span<const double> normal, const TransformMatrix& m,
                                        const NormalModeSet& modes, const OhmicSystemSpec& spec) {
    if (normal.size() != m.dim || modes.size() != m.dim) {
        throw DimensionMismatch("normal amplitudes, transform and mode set differ in size");
    }
    const DerivedParams p = derive_parameters(spec);
    std::vector<double> scaled(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) scaled[r] = std::sqrt(modes.frequencies[r]) * normal[r];
    std::vector<double> out(m.dim);
    for (std::size_t mu = 0; mu < m.dim; ++mu) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.dim; ++r) s += m(mu, r) * scaled[r];
        const double w = mu == 0 ? spec.bar_omega : p.omega_k(mu);
        out[mu] = s / std::sqrt(w);
    }
    return out;
}

ExpansionCoefficient expansion_coefficient(unsigned n0_prime, std::span<const unsigned> occupations,
                                           std::span<const double> t0_row) {
    if (n0_prime > kMaxParticleLevel) {
        std::ostringstream os;
        os << "particle level " << n0_prime << " exceeds the cap of " << kMaxParticleLevel;
        throw OverflowGuard(os.str());
    }
    if (occupations.size() > t0_row.size()) {
        throw DimensionMismatch("more occupation numbers than normal modes");
    }
    ExpansionCoefficient c;
    c.particle_level = n0_prime;
    c.occupations.assign(occupations.begin(), occupations.end());
    c.log_abs = -std::numeric_limits<double>::infinity();

    unsigned long total = 0;
    for (unsigned n : occupations) total += n;
    if (total != n0_prime) return c;

    double log_abs = 0.5 * std::lgamma(n0_prime + 1.0);
    int sign = 1;
    for (std::size_t r = 0; r < occupations.size(); ++r) {
        const unsigned n = occupations[r];
        if (n == 0) continue;
        if (t0_row[r] == 0.0) return c;
        log_abs += -0.5 * std::lgamma(n + 1.0) + n * std::log(std::abs(t0_row[r]));
        if (t0_row[r] < 0.0 && (n % 2 == 1)) sign = -sign;
    }
    c.log_abs = log_abs;
    c.sign = sign;
    c.value = std::abs(log_abs) < 300.0 ? sign * std::exp(log_abs) : 0.0;
    return c;
}

} // namespace dressed
