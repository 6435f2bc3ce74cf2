#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mbwave/analysis.hpp"
#include "mbwave/oracle_fdm.hpp"
#include "mbwave/scenario.hpp"

namespace mbwave {

// CSV schema: header "t,x,u,u_t,u_x", one row per sample point, doubles at
// 17 significant digits, LF line endings. Deterministic for a fixed scenario.
void write_field_csv(const Scenario& sc, std::ostream& out);

// CSV schema: "t,E,dE_analytic,ut_boundary[,ut_delayed]".
void write_energy_csv(const Scenario& sc, std::ostream& out);

// Single-object JSON regime records, and their inverses for round-tripping.
std::string regime_to_json(const NeumannRegime& r);
std::string regime_to_json(const DelayRegime& r);
NeumannRegime neumann_regime_from_json(const std::string& text);
DelayRegime delay_regime_from_json(const std::string& text);

struct SweepSpec {
    std::string parameter; // "a" (neumann) or "mu1" | "mu2" | "tau" (delay)
    double from = 0.0;
    double to = 0.0;
    double step = 0.1;
};

// One row per grid value: the regime record plus the measured energy endpoints
// over [0, t_max]. Grid points evaluate concurrently; rows are written in grid
// order.
void write_sweep_csv(const Scenario& sc, const SweepSpec& spec, std::ostream& out);

// Runs the scenario through the finite-difference oracle (delegating to the
// problem-specific solver) at the scenario's grid settings.
FdmResult solve_fdm(const Scenario& sc, const FdmGrid& grid);

struct VerifyReport {
    bool pass = false;
    double field_error = 0.0;            // relative L2 error at the finest grid
    std::vector<double> orders;          // observed convergence orders
    double energy_deviation = 0.0;       // worst relative energy mismatch
    std::string details;                 // one line per check
};

// Characteristics-vs-FDM comparison at grid, grid/2 and grid/4 resolution.
// Pass requires field error <= 1%, observed order >= 1.8 and energy agreement
// within 2%.
VerifyReport run_verify(const Scenario& sc, const FdmGrid& grid);

} // namespace mbwave
