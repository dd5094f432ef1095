// oracle.hpp: dense diagonalization of the bare potential matrix and the cross-validation report

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dressed/model.hpp"
#include "dressed/spectrum.hpp"
#include "dressed/transform.hpp"

namespace dressed {

// [0][0] = omega0^2, [k][k] = omega_k^2, [0][k] = [k][0] = -c_k; bath block diagonal.
struct PotentialMatrix {
    std::size_t dim{};
    std::vector<double> entries;  // row-major

    double operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

PotentialMatrix build_potential_matrix(const OhmicSystemSpec& spec);

// 1/2 x^T M x
double potential_energy(const PotentialMatrix& m, const std::vector<double>& x);

struct EigenDecomposition {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major, column r is the eigenvector of values[r]
    std::size_t dim{};
    int sweeps{};

    double vector(std::size_t i, std::size_t r) const { return vectors[i * dim + r]; }
};

// Cyclic Jacobi. Each eigenvector is sign-fixed so its first nonzero component
// (the particle component t_0^r here) is positive. NumericalFailure after 100 sweeps.
EigenDecomposition eigen_decompose(const PotentialMatrix& m);

NormalModeSet dense_spectrum(const OhmicSystemSpec& spec, const EigenDecomposition& eig);
TransformMatrix dense_transform(const EigenDecomposition& eig);

struct ValidationCheck {
    std::string name;
    double computed{};
    double reference{};
    double tolerance{};
    bool passed{};
    std::string detail;  // error message when the check could not run
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<std::string> notes;

    bool all_passed() const;
    // One line per check and note, then a summary line.
    std::string serialize() const;
};

// |(sum w)^2 - 1| against 1e-10: |f00(0)|^2 = 1 for a complete weight row.
ValidationCheck sum_rule_check(const std::vector<double>& weights);

ValidationReport cross_validate(const OhmicSystemSpec& spec);

} // namespace dressed
