#pragma once

#include <optional>
#include <string>

#include "mbwave/analysis.hpp"
#include "mbwave/delay_profile.hpp"
#include "mbwave/initial_data.hpp"
#include "mbwave/oracle_fdm.hpp"
#include "mbwave/profile.hpp"

namespace mbwave {

enum class ProblemKind { NeumannDamped, DirichletDelay };

// A fully validated problem description, loaded from a JSON file.
//
// Schema (defaults in brackets):
//   problem       "neumann_damped" | "dirichlet_delay"
//   k             expansion rate, 0 < k < 1
//   a             damping gain (neumann_damped only, a != -1)
//   mu1 mu2 tau xi  delayed-feedback parameters (dirichlet_delay only)
//   initial       {"preset": name, ...} or {"u0_samples": [...], "u1_samples": [...]}
//                 presets: zero, example1, example2, example3 (needs "a"),
//                 sine, poly, gauss, dsine, dpoly, dgauss, delay_smooth
//   history       {"preset": "zero"|"cosine"|"linear", "amplitude", "frequency"}
//                 or {"samples": [...]}; dirichlet_delay only   [zero]
//   t_max         [10]      sample_count [100]      space_count [64]
//   quad_tol      [1e-10]
//   fdm           {"ny": [256], "cfl": [0.8], "t_max": [1]}
struct Scenario {
    ProblemKind problem = ProblemKind::NeumannDamped;
    double expansion_rate = 0.5;
    std::optional<double> gain;        // neumann_damped
    std::optional<DelayParams> delay;  // dirichlet_delay
    InitialData initial;
    HistoryData history = HistoryData::zero();
    std::string initial_name = "zero";
    std::string history_name = "zero";
    double t_max = 10.0;
    int sample_count = 100;
    int space_count = 64;
    double quad_tol = 1e-10;
    FdmGrid fdm{};

    DomainGeometry geometry() const { return DomainGeometry(expansion_rate); }
    NeumannProfile make_neumann_profile() const;
    DelayProfile make_delay_profile() const;
};

// Parses and validates; error messages name the offending field or invariant.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& json_text);

// Effective configuration with every default filled in.
std::string scenario_to_json(const Scenario& sc);

} // namespace mbwave
