#pragma once

#include <vector>

#include "mbwave/analysis.hpp"
#include "mbwave/delay_profile.hpp"
#include "mbwave/geometry.hpp"
#include "mbwave/initial_data.hpp"

namespace mbwave {

// Fixed-grid discretisation of the mapped coordinate y = x / l(t) in [0, 1].
struct FdmGrid {
    int ny = 256;      // number of spatial cells (ny + 1 nodes); at least 16
    double cfl = 0.8;  // Courant ratio, at most 0.9
    double t_max = 1.0;
};

struct FdmResult {
    std::vector<double> nodes;                // mapped coordinates y_i
    std::vector<double> snapshot_times;
    std::vector<std::vector<double>> field;   // u at each snapshot, node-major
    std::vector<double> final_u, final_ut;    // at t_max
    EnergyTrace energy;
    double dt = 0.0;
    long steps = 0;
};

// Integrates the wave equation transformed by y = x / l(t):
//   v_s = (k y / l) v_y + w,
//   w_s = (k y / l) w_y + v_yy / l^2,
// with w = u_t, by fourth-order Runge-Kutta over second-order central
// differences. One-sided closures of matching order implement the boundary
// conditions; the delayed boundary velocity is read from a ring buffer of
// past trace values (the delay is rounded to a whole number of steps).
// Used to cross-validate the characteristics solvers, never as the source of
// truth.
FdmResult solve_fdm_neumann(const DomainGeometry& geom, double gain,
                            const InitialData& data, const FdmGrid& grid,
                            int energy_samples = 32);

FdmResult solve_fdm_delay(const DomainGeometry& geom, const DelayParams& params,
                          const InitialData& data, const HistoryData& history,
                          const FdmGrid& grid, int energy_samples = 32);

} // namespace mbwave
