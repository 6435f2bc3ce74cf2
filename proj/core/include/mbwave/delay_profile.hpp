#pragma once

#include <cstddef>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mbwave/geometry.hpp"
#include "mbwave/initial_data.hpp"
#include "mbwave/profile.hpp" // WaveState
#include "mbwave/quadrature.hpp"

namespace mbwave {

// Feedback parameters of the delayed Dirichlet problem
//   u(0,t) = 0,
//   u_x(l(t),t) = -mu1 u_t(l(t),t) - mu2 u_t(l(t-tau), t-tau).
struct DelayParams {
    double gain_now = 0.0;      // mu1, on the instantaneous boundary velocity
    double gain_delayed = 0.0;  // mu2, on the delayed boundary velocity
    double delay = 0.0;         // tau, must satisfy 0 < tau < 1/k
    double history_weight = 1.0; // xi, weight of the history term in the energy
};

// Generator slope f' for the delayed Dirichlet problem, u = f(t+x) - f(t-x).
//
// The base segment on (-1, 1) comes from the initial data; the history
// segment [-(1-k)tau-1, -1) is reached through
//   f'(y) = f'(theta (y+1) + 1) - g0((y+1)/(1-k)),
// and values at y >= 1 satisfy the boundary feedback relation
//   (1+mu1) f'(y) = (mu1-1) f'(F^{-1}(y))
//                 + mu2 [f'(F^{-1}(y) - (1-k)tau) - f'(y - (1+k)tau)].
// Every recursive argument is strictly smaller, so lazy memoized evaluation
// terminates in the base segment; this replaces the forward-marching interval
// bookkeeping and computes the same unique slope.
//
// For mu1 = -1 the relation does not isolate the new value; the construction
// then requires the compatibility condition
//   mu2 g0(t - tau) + 2 f'((1-k)t - 1) = 0 on (0, tau),
// which is checked at build time, and rightward values follow from the
// time-shifted relation. This branch is mechanical rather than closed-form
// verified; the recursion budget guards it.
class DelayProfile {
public:
    struct Options {
        QuadratureOptions quad{};
        std::size_t max_recursion_depth = 1'000'000;
        double compatibility_tol = 1e-8;
        int compatibility_samples = 256;
        std::size_t max_breakpoints = 4096;
    };

    DelayProfile(const DomainGeometry& geom, const DelayParams& params, InitialData data,
                 HistoryData history);
    DelayProfile(const DomainGeometry& geom, const DelayParams& params, InitialData data,
                 HistoryData history, Options opt);

    // f'(y); rejects y below the history segment -(1-k)tau - 1.
    double slope(double y) const;

    // (u, u_t, u_x) on the closed cone; u is recovered by quadrature of f'.
    WaveState state(double x, double t) const;

    double boundary_velocity(double t) const;         // u_t(l(t), t), t >= 0
    double delayed_boundary_velocity(double t) const; // g0(t - tau) while t < tau

    // u_x(l,t) + mu1 u_t(l,t) + mu2 u_t(l(t-tau), t-tau)
    double boundary_feedback_residual(double t) const;

    double slope_integral(double lo, double hi) const;        // integral of f'
    double slope_square_integral(double lo, double hi) const; // integral of f'^2

    // Non-smooth points of f' in [lo, hi]: seam images under the reflection
    // and delay-shift maps, plus data/history kinks.
    std::vector<double> breakpoints(double lo, double hi) const;

    double history_left() const { return left_end_; } // -(1-k)tau - 1

    const DomainGeometry& geometry() const { return geom_; }
    const DelayParams& params() const { return params_; }
    const InitialData& data() const { return data_; }
    const HistoryData& history() const { return history_; }
    const QuadratureOptions& quadrature() const { return opt_.quad; }

    // Evaluates the slope on a grid up to `horizon` to warm the memo table.
    void freeze(double horizon, int grid = 4096) const;

private:
    double slope_impl(double y, std::size_t depth) const;
    double base_slope(double z) const;
    double memo_lookup(double y, bool& hit) const;
    void memo_store(double y, double v) const;
    std::vector<double> build_breakpoints(double hi) const;

    DomainGeometry geom_;
    DelayParams params_;
    InitialData data_;
    HistoryData history_;
    Options opt_;
    double left_end_;

    mutable std::unordered_map<double, double> memo_;
    mutable std::vector<double> bp_cache_;
    mutable double bp_horizon_ = -10.0;
    mutable std::mutex memo_mutex_;
};

} // namespace mbwave
