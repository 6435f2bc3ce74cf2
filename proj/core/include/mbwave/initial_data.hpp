#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mbwave/errors.hpp"

namespace mbwave {

// Initial displacement/velocity pair on [0, 1]. Analytic presets carry exact
// closures; sampled data is interpolated piecewise-linearly, so the
// displacement derivative is piecewise constant and quadratures over the
// interpolant are exact per segment.
struct InitialData {
    std::function<double(double)> u0;
    std::function<double(double)> u0_prime;
    std::function<double(double)> u1;
    std::vector<double> kinks; // interior non-smooth points in (0, 1)

    static InitialData zero();
    static InitialData from_samples(const std::vector<double>& u0_samples,
                                    const std::vector<double>& u1_samples);

    // Throws ValidationError if any component is non-finite on [0, 1].
    void validate() const;
};

// Prescribed boundary velocity on [-delay, 0] that starts the delayed feedback.
struct HistoryData {
    std::function<double(double)> g0;
    std::vector<double> kinks; // interior non-smooth points in (-delay, 0)

    static HistoryData zero();
    static HistoryData from_samples(const std::vector<double>& samples, double delay);

    void validate(double delay) const;
};

namespace presets {

// Generic analytic initial data for the damped Neumann problem.
// Names: "zero", "sine", "poly", "gauss".
InitialData neumann(const std::string& name);

// Analytic initial data with u0(0) = 0 for the Dirichlet/delay problem.
// Names: "zero", "dsine", "dpoly", "dgauss".
InitialData dirichlet(const std::string& name);

// Boundary-velocity history presets: "zero", "cosine" (amplitude*cos(frequency*s)),
// "linear" (offset + slope*s).
HistoryData history(const std::string& name, double amplitude = 0.3, double frequency = 2.0);

// A delay scenario whose generator slope is a single quintic across the base
// and history segments, with the seam-matching conditions solved so the
// resulting solution is twice continuously differentiable. Used for
// grid-convergence studies against the finite-difference solver.
struct SmoothDelayData {
    InitialData initial;
    HistoryData history;
    std::function<double(double)> phi; // the generator slope on [-(1-k)tau-1, 1)
};
SmoothDelayData smooth_delay(double expansion_rate, double delay, double gain_now,
                             double gain_delayed);

} // namespace presets

} // namespace mbwave
