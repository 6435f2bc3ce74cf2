#pragma once

#include <mutex>
#include <vector>

#include "mbwave/geometry.hpp"
#include "mbwave/initial_data.hpp"
#include "mbwave/quadrature.hpp"

namespace mbwave {

struct WaveState {
    double u;
    double ut;
    double ux;
};

// d'Alembert generator slope f' for the damped Neumann problem
//
//   u = f(t+x) + f(t-x),  u_x(0,t) = 0,  u_x(l(t),t) + a u_t(l(t),t) = 0.
//
// On I_0 = [-1, 1) the slope comes from the initial data:
//   f'(x)  = (u0'(x) + u1(x)) / 2,   f'(-x) = (u1(x) - u0'(x)) / 2.
// On I_n it is mu^n f'(F^{-n}(y)) with per-reflection amplitude
// mu = (1-a)/(1+a). f itself accumulates interval integrals by change of
// variables, which keeps it continuous across interval boundaries without
// materialising the matching constants.
//
// Construction rejects a = -1 (only the trivial solution exists there).
// Evaluation is lazy; shared caches are guarded, and freeze() can prime them
// so later reads are lock-free.
class NeumannProfile {
public:
    NeumannProfile(const DomainGeometry& geom, double gain, InitialData data,
                   QuadratureOptions quad = {});

    // f'(y); rejects y < -1.
    double slope(double y) const;

    // f(y) = f(0) + integral of f' over [0, y], anchored at f(0) = u0(0)/2.
    double value(double y) const;

    // (u, u_t, u_x) at a point of the closed cone 0 <= x <= l(t), t >= 0.
    WaveState state(double x, double t) const;

    double boundary_velocity(double t) const;       // u_t(l(t), t)
    double boundary_feedback_residual(double t) const; // u_x(l,t) + a u_t(l,t)

    // Integral of f'^2 over [lo, hi] (the 1-D reduction used by the energy),
    // evaluated interval-by-interval through the base segment.
    double slope_square_integral(double lo, double hi) const;

    // Non-smooth points of f' in [lo, hi]: interval endpoints F^n(+-1) and
    // forward images of the initial-data kinks.
    std::vector<double> breakpoints(double lo, double hi) const;

    const DomainGeometry& geometry() const { return geom_; }
    const InitialData& data() const { return data_; }
    double gain() const { return gain_; }
    double reflection_gain() const { return mu_; } // mu = (1-a)/(1+a)
    double anchor() const { return anchor_; }      // f(0)
    const QuadratureOptions& quadrature() const { return quad_; }

    // Primes the shared caches; afterwards evaluation takes no locks.
    void freeze() const;

private:
    double base_slope(double z) const;          // f' on [-1, 1]
    double base_prefix(double z) const;         // integral of f' over [0, z]
    double base_square_prefix(double z) const;  // integral of f'^2 over [-1, z]
    double full_slope_integral() const;         // over [-1, 1], cached
    std::vector<double> base_kinks() const;     // kinks of f' inside (-1, 1)
    double ipow(double b, long n) const;

    DomainGeometry geom_;
    double gain_;
    double mu_;
    double anchor_;
    InitialData data_;
    QuadratureOptions quad_;

    mutable std::once_flag full_once_;
    mutable double full_integral_ = 0.0;
};

} // namespace mbwave
