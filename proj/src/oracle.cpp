// oracle.cpp: cyclic Jacobi eigensolver and cross-validation report

#include "dressed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "dressed/amplitudes.hpp"
#include "dressed/error.hpp"

namespace dressed {

PotentialMatrix build_potential_matrix(const OhmicSystemSpec& spec) {
    const DerivedParams p = derive_parameters(spec);
    PotentialMatrix m;
    m.dim = spec.n_modes + 1;
    m.entries.assign(m.dim * m.dim, 0.0);
    m(0, 0) = p.omega0 * p.omega0;
    for (std::size_t k = 1; k < m.dim; ++k) {
        m(k, k) = p.omega_k(k) * p.omega_k(k);
        m(0, k) = -p.c_k(k);
        m(k, 0) = -p.c_k(k);
    }
    return m;
}

double potential_energy(const PotentialMatrix& m, const std::vector<double>& x) {
    if (x.size() != m.dim) throw DimensionMismatch("vector and matrix differ in size");
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.dim; ++j) row += m(i, j) * x[j];
        s += x[i] * row;
    }
    return 0.5 * s;
}

EigenDecomposition eigen_decompose(const PotentialMatrix& m) {
    const std::size_t n = m.dim;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m(i, j) != m(j, i)) throw InputError("eigen_decompose needs a symmetric matrix");
        }
    }
    std::vector<double> a = m.entries;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    bool converged = false;
    while (sweep < kMaxSweeps) {
        ++sweep;
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                // Relative threshold keeps small eigenvalues accurate to working precision.
                if (std::abs(apq) <= 1e-14 * std::sqrt(std::abs(A(p, p) * A(q, q)))) {
                    A(p, q) = 0.0;
                    A(q, p) = 0.0;
                    continue;
                }
                ++rotations;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                A(p, p) -= t * apq;
                A(q, q) += t * apq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = A(r, p);
                    const double arq = A(r, q);
                    A(r, p) = arp - s * (arq + tau * arp);
                    A(p, r) = A(r, p);
                    A(r, q) = arq + s * (arp - tau * arq);
                    A(q, r) = A(r, q);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = V(r, p);
                    const double vrq = V(r, q);
                    V(r, p) = vrp - s * (vrq + tau * vrp);
                    V(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        if (rotations == 0) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericalFailure("Jacobi eigensolver did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return A(x, x) < A(y, y); });

    EigenDecomposition out;
    out.dim = n;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors.assign(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t col = order[r];
        out.values[r] = A(col, col);
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (V(i, col) != 0.0) {
                sign = V(i, col) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + r] = sign * V(i, col);
    }
    return out;
}

NormalModeSet dense_spectrum(const OhmicSystemSpec& spec, const EigenDecomposition& eig) {
    NormalModeSet set;
    set.source = SpectrumSource::DenseOracle;
    set.spec_snapshot = spec;
    set.frequencies.resize(eig.dim);
    set.weights.resize(eig.dim);
    for (std::size_t r = 0; r < eig.dim; ++r) {
        if (!(eig.values[r] > 0.0)) throw StabilityError("potential matrix is not positive definite");
        set.frequencies[r] = std::sqrt(eig.values[r]);
        set.weights[r] = eig.vector(0, r) * eig.vector(0, r);
    }
    return set;
}

TransformMatrix dense_transform(const EigenDecomposition& eig) {
    TransformMatrix t;
    t.dim = eig.dim;
    t.t = eig.vectors;
    t.source = TransformSource::DenseOracle;
    return t;
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::string ValidationReport::serialize() const {
    std::ostringstream os;
    os.precision(16);
    os << std::scientific;
    std::size_t failed = 0;
    for (const auto& c : checks) {
        os << "check name=" << c.name << " computed=" << c.computed << " reference=" << c.reference
           << " tolerance=" << c.tolerance << " status=" << (c.passed ? "pass" : "fail");
        if (!c.detail.empty()) os << " detail=\"" << c.detail << "\"";
        os << '\n';
        if (!c.passed) ++failed;
    }
    for (const auto& n : notes) os << "note " << n << '\n';
    os << "summary checks=" << checks.size() << " failed=" << failed
       << " status=" << (failed == 0 ? "pass" : "fail") << '\n';
    return os.str();
}

ValidationCheck sum_rule_check(const std::vector<double>& weights) {
    ValidationCheck c;
    c.name = "f00_sum_rule";
    double s = 0.0;
    for (double w : weights) s += w;
    c.computed = std::abs(s * s - 1.0);
    c.reference = 0.0;
    c.tolerance = 1e-10;
    c.passed = c.computed < c.tolerance;
    return c;
}

namespace {

ValidationCheck make_check(std::string name, double computed, double reference, double tolerance) {
    ValidationCheck c;
    c.name = std::move(name);
    c.computed = computed;
    c.reference = reference;
    c.tolerance = tolerance;
    c.passed = std::abs(computed - reference) <= tolerance;
    return c;
}

// Runs body; an exception turns into a failed check carrying the message.
void guarded(ValidationReport& report, const std::string& name,
             const std::function<void(ValidationReport&)>& body) {
    try {
        body(report);
    } catch (const std::exception& e) {
        ValidationCheck c;
        c.name = name;
        c.computed = std::nan("");
        c.passed = false;
        c.detail = e.what();
        report.checks.push_back(std::move(c));
    }
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << v;
    return os.str();
}

double min_survival(const OhmicSystemSpec& spec, CavityVariant variant, std::size_t k_max,
                    double periods, std::size_t samples) {
    const NormalModeSet modes = solve_cavity_spectrum(spec, k_max, variant);
    const std::vector<double> w = cavity_weight_row(spec, modes);
    const double beat = modes.frequencies[1] - modes.frequencies[0];
    std::vector<double> times(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        times[i] = periods * 2.0 * kPi / beat * static_cast<double>(i) / static_cast<double>(samples);
    }
    const std::vector<double> bath(w.begin() + 1, w.end());
    const auto p = cavity_survival_series(w[0], bath, modes.frequencies, times);
    return *std::min_element(p.begin(), p.end());
}

} // namespace

ValidationReport cross_validate(const OhmicSystemSpec& spec) {
    ValidationReport report;
    spec.validate();
    if (spec.n_modes > 2000) throw InputError("cross_validate supports n_modes <= 2000");

    NormalModeSet roots;
    EigenDecomposition eig;
    bool have_roots = false;
    bool have_eig = false;

    guarded(report, "finite_roots_vs_jacobi", [&](ValidationReport& r) {
        roots = solve_finite_spectrum(spec);
        have_roots = true;
        eig = eigen_decompose(build_potential_matrix(spec));
        have_eig = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double dense = std::sqrt(eig.values[i]);
            worst = std::max(worst, std::abs(roots.frequencies[i] - dense) / dense);
        }
        r.checks.push_back(make_check("finite_roots_vs_jacobi", worst, 0.0, 1e-10));
    });

    guarded(report, "finite_matrix_vs_eigenvectors", [&](ValidationReport& r) {
        if (!have_roots || !have_eig) throw NumericalFailure("spectrum or eigensolver unavailable");
        const TransformMatrix t = finite_matrix(spec, roots);
        double worst = 0.0;
        for (std::size_t mu = 0; mu < t.dim; ++mu) {
            for (std::size_t s = 0; s < t.dim; ++s) {
                worst = std::max(worst, std::abs(t(mu, s) - eig.vector(mu, s)));
            }
        }
        r.checks.push_back(make_check("finite_matrix_vs_eigenvectors", worst, 0.0, 1e-9));
    });

    guarded(report, "f00_sum_rule", [&](ValidationReport& r) {
        if (!have_roots) throw NumericalFailure("spectrum unavailable");
        const std::vector<double> times{0.0};
        const auto f = f00_discrete(roots, roots.weights, times);
        ValidationCheck c = sum_rule_check(roots.weights);
        c.computed = std::abs(std::norm(f.values[0]) - 1.0);
        c.passed = c.computed < c.tolerance;
        r.checks.push_back(c);
    });

    guarded(report, "closed_vs_quadrature", [&](ValidationReport& r) {
        std::vector<double> times;
        for (int i = 0; i <= 50; ++i) times.push_back((0.01 + (50.0 - 0.01) * i / 50.0) / spec.bar_omega);
        const auto closed = f00_closed(spec, times);
        const auto quad = f00_quadrature(spec, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            worst = std::max(worst, std::abs(closed.values[i] - quad.values[i]));
        }
        r.checks.push_back(make_check("closed_vs_quadrature", worst, 0.0, 1e-6));
    });

    guarded(report, "j_asymptote_ratio", [&](ValidationReport& r) {
        const double wb = spec.bar_omega;
        const double t = 50.0 * std::max(1.0 / wb, kPi * spec.g / (wb * wb));
        const double ratio = bath_integral_J(spec, t) * std::pow(wb, 4) * t * t * t / (4.0 * spec.g);
        r.checks.push_back(make_check("j_asymptote_ratio", ratio, 1.0, 0.05));
    });

    guarded(report, "eq11_variant_large_n", [&](ValidationReport& r) {
        constexpr std::size_t kCompared = 20;
        OhmicSystemSpec big = spec;
        big.n_modes = 2000;
        const NormalModeSet finite = solve_finite_spectrum(big);
        double gap[2] = {0.0, 0.0};
        const CavityVariant variants[2] = {CavityVariant::Published, CavityVariant::Rederived};
        for (int v = 0; v < 2; ++v) {
            const NormalModeSet cav = solve_cavity_spectrum(spec, kCompared - 1, variants[v]);
            for (std::size_t i = 0; i < kCompared; ++i) {
                gap[v] = std::max(gap[v], std::abs(cav.frequencies[i] - finite.frequencies[i]) /
                                              finite.frequencies[i]);
            }
        }
        r.notes.push_back("eq11_variant max_rel_gap_lowest_20_vs_N2000 published=" + sci(gap[0]) +
                          " rederived=" + sci(gap[1]) + " closer=" +
                          (gap[1] <= gap[0] ? "rederived" : "published"));
        // Pass when the re-derived constant tracks the large-N spectrum at least as well.
        ValidationCheck c;
        c.name = "eq11_rederived_not_worse";
        c.computed = gap[1];
        c.reference = gap[0];
        c.tolerance = 0.0;
        c.passed = gap[1] <= gap[0];
        r.checks.push_back(c);
    });

    guarded(report, "cavity_weak_min_bound", [&](ValidationReport& r) {
        const auto b = cavity_min_bound(0.005, CouplingRegime::Weak);
        r.checks.push_back(make_check("cavity_weak_min_bound", b.min_probability, 0.9742, 1e-4));

        const double delta_max = solve_delta_max();
        const double c = kSpeedOfLight;
        const double l_micro = 2.0 * c * delta_max / (10.0 * 2e10);
        const double l_red = 2.0 * c * delta_max / (10.0 * 4e14);
        r.notes.push_back("delta_max=" + sci(delta_max) + " L_max_microwave=" + sci(l_micro) +
                          " m (published 1.2e-3 m) L_max_red_visible=" + sci(l_red) +
                          " m (published 1.1e-7 m) discrepancy_flag=red_visible");

        const OhmicSystemSpec red = OhmicSystemSpec::from_beta_delta(4e14, 1.0 / 137.0, 0.005);
        const double published = min_survival(red, CavityVariant::Published, 2000, 10.0, 4000);
        const double rederived = min_survival(red, CavityVariant::Rederived, 2000, 10.0, 4000);
        r.notes.push_back("cavity_grid_min delta=5e-3 weak published=" + sci(published) +
                          " rederived=" + sci(rederived) + " bound=" + sci(b.min_probability));
    });

    return report;
}

} // namespace dressed
