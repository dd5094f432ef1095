// brownian.hpp: zero-temperature classical path of a dressed coherent state

#pragma once

#include <span>
#include <vector>

#include "dressed/amplitudes.hpp"
#include "dressed/model.hpp"

namespace dressed {

// lambda = sqrt(n_bar) exp(-i theta)
struct CoherentPreparation {
    double n_bar{1.0};
    double theta{0.0};

    void validate() const;
};

// q'(t) = sqrt(2 hbar n_bar / bar_omega) [cos(theta) Re f00 + sin(theta) Im f00].
// f00_source.times must equal times.
std::vector<double> classical_path(const OhmicSystemSpec& spec, const CoherentPreparation& prep,
                                   std::span<const double> times, const AmplitudeSeries& f00_source);

// Regime-dispatched closed forms, e.g. underdamped
//   sqrt(hbar n_bar/2 bar_omega) {[2 cos(k t + theta) - (pi g/k) sin(k t + theta)] e^{-pi g t/2}
//                                 + 2 sin(theta) J(t)}.
std::vector<double> path_closed_forms(const OhmicSystemSpec& spec, const CoherentPreparation& prep,
                                      std::span<const double> times);

} // namespace dressed
