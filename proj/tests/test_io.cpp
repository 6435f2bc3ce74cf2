#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbwave/runners.hpp"
#include "mbwave/scenario.hpp"

using namespace mbwave;

namespace {

const char* kMinimalNeumann = R"({
  "problem": "neumann_damped",
  "k": 0.5,
  "a": 0.5,
  "initial": {"preset": "example1"},
  "t_max": 10
})";

const char* kDelayScenario = R"({
  "problem": "dirichlet_delay",
  "k": 0.5,
  "mu1": 2.0, "mu2": 1.0, "tau": 1.0, "xi": 1.0,
  "initial": {"preset": "dsine"},
  "history": {"preset": "cosine", "amplitude": 0.3, "frequency": 2.0},
  "t_max": 4, "sample_count": 8
})";

} // namespace

TEST_CASE("scenario parsing and validation") {
    SUBCASE("minimal neumann file is valid with defaults echoed") {
        const Scenario sc = parse_scenario_text(kMinimalNeumann);
        CHECK(sc.problem == ProblemKind::NeumannDamped);
        CHECK(sc.expansion_rate == 0.5);
        REQUIRE(sc.gain.has_value());
        CHECK(*sc.gain == 0.5);
        CHECK(sc.t_max == 10.0);
        CHECK(sc.sample_count == 100);
        CHECK(sc.quad_tol == 1e-10);
        const std::string echo = scenario_to_json(sc);
        CHECK(echo.find("\"sample_count\": 100") != std::string::npos);
        CHECK(echo.find("\"quad_tol\"") != std::string::npos);
    }
    SUBCASE("delay file with tau = 3 violates tau < 1/k") {
        std::string text = kDelayScenario;
        const auto at = text.find("\"tau\": 1.0");
        text.replace(at, 10, "\"tau\": 3.0");
        CHECK_THROWS_WITH_AS(parse_scenario_text(text),
                             doctest::Contains("tau must satisfy 0 < tau < 1/k"),
                             ValidationError);
    }
    SUBCASE("missing gain for the neumann problem") {
        std::string text = kMinimalNeumann;
        const auto at = text.find("\"a\": 0.5,");
        text.erase(at, 9);
        CHECK_THROWS_WITH_AS(parse_scenario_text(text), doctest::Contains("'a'"),
                             ValidationError);
    }
    SUBCASE("foreign parameters are rejected per problem kind") {
        std::string text = kMinimalNeumann;
        text.insert(text.rfind('}'), ", \"mu1\": 1.0");
        CHECK_THROWS_AS(parse_scenario_text(text), ValidationError);
    }
    SUBCASE("malformed JSON reports a parse diagnostic") {
        CHECK_THROWS_WITH_AS(parse_scenario_text("{problem:"),
                             doctest::Contains("parse error"), ValidationError);
    }
    SUBCASE("inline samples build piecewise-linear data") {
        const char* text = R"({
          "problem": "neumann_damped", "k": 0.25, "a": 1.0,
          "initial": {"u0_samples": [0, 0.5, 0.2], "u1_samples": [0, 0, 0]}
        })";
        const Scenario sc = parse_scenario_text(text);
        CHECK(sc.initial.u0(0.5) == doctest::Approx(0.5));
        CHECK(sc.initial_name == "samples");
    }
    SUBCASE("load_scenario reads from disk") {
        const std::string path = "scenario_io_test.json";
        {
            std::ofstream out(path);
            out << kDelayScenario;
        }
        const Scenario sc = load_scenario(path);
        CHECK(sc.problem == ProblemKind::DirichletDelay);
        REQUIRE(sc.delay.has_value());
        CHECK(sc.delay->delay == 1.0);
        std::remove(path.c_str());
        CHECK_THROWS_AS(load_scenario("does_not_exist.json"), ValidationError);
    }
}

TEST_CASE("energy CSV layout and determinism") {
    Scenario sc = parse_scenario_text(kMinimalNeumann);
    sc.sample_count = 5;
    sc.t_max = 2.0;
    std::ostringstream first, second;
    write_energy_csv(sc, first);
    write_energy_csv(sc, second);
    CHECK(first.str() == second.str());
    CHECK(first.str().rfind("t,E,dE_analytic,ut_boundary\n", 0) == 0);
    CHECK(first.str().find("\r") == std::string::npos);

    // six data rows after the header
    int rows = -1;
    for (char c : first.str())
        if (c == '\n') ++rows;
    CHECK(rows == 6);

    Scenario dsc = parse_scenario_text(kDelayScenario);
    std::ostringstream delay_out;
    write_energy_csv(dsc, delay_out);
    CHECK(delay_out.str().rfind("t,E,dE_analytic,ut_boundary,ut_delayed\n", 0) == 0);
}

TEST_CASE("energy CSV of the conserved family is constant") {
    Scenario sc = parse_scenario_text(kMinimalNeumann);
    sc.initial_name = "example2";
    const auto sol = self_similar_solution(SelfSimilarKind::Example2, 0.5);
    sc.initial = sol.data;
    sc.gain = sol.gain;
    sc.sample_count = 10;
    std::ostringstream out;
    write_energy_csv(sc, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double e = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(e == doctest::Approx(std::log(3.0)).epsilon(1e-8));
    }
}

TEST_CASE("field CSV covers the sample grid") {
    Scenario sc = parse_scenario_text(kMinimalNeumann);
    sc.sample_count = 2;
    sc.space_count = 4;
    sc.t_max = 1.0;
    std::ostringstream out;
    write_field_csv(sc, out);
    CHECK(out.str().rfind("t,x,u,u_t,u_x\n", 0) == 0);
    int rows = -1;
    for (char c : out.str())
        if (c == '\n') ++rows;
    CHECK(rows == 3 * 5);
}

TEST_CASE("regime records round-trip through JSON") {
    const auto nr = classify_neumann_regime(0.5, 0.5);
    const std::string njson = regime_to_json(nr);
    CHECK(njson.find("\"kind\":\"DecayExactlyFirstOrder\"") != std::string::npos);
    const NeumannRegime nback = neumann_regime_from_json(njson);
    CHECK(nback.kind == nr.kind);
    CHECK(nback.a1 == nr.a1);
    CHECK(nback.a2 == nr.a2);
    CHECK(nback.b1 == nr.b1);
    CHECK(nback.b2 == nr.b2);

    for (auto params : {std::tuple{2.0, 1.0, std::optional<double>{1.0}},
                        std::tuple{1.0, 3.0, std::optional<double>{0.36}},
                        std::tuple{1.0, 1.5, std::optional<double>{}}}) {
        const auto dr = classify_delay_regime(0.5, std::get<0>(params), std::get<1>(params),
                                              1.0, std::get<2>(params));
        const DelayRegime dback = delay_regime_from_json(regime_to_json(dr));
        CHECK(dback.kind == dr.kind);
        CHECK(dback.tau_window.has_value() == dr.tau_window.has_value());
        if (dr.tau_window) {
            CHECK(dback.tau_window->lower == dr.tau_window->lower);
            CHECK(dback.tau_window->upper == dr.tau_window->upper);
            CHECK(dback.tau_window->closed == dr.tau_window->closed);
        }
        CHECK(dback.rate_constant.has_value() == dr.rate_constant.has_value());
        if (dr.rate_constant) CHECK(*dback.rate_constant == *dr.rate_constant);
        CHECK(dback.mu2_decrease_bound == dr.mu2_decrease_bound);
        CHECK(dback.mu2_increase_bound == dr.mu2_increase_bound);
    }
}

TEST_CASE("sweep over the damping gain") {
    Scenario sc = parse_scenario_text(kMinimalNeumann);
    sc.initial = presets::neumann("sine");
    sc.initial_name = "sine";
    sc.t_max = 5.0;
    SweepSpec spec;
    spec.parameter = "a";
    spec.from = 0.0;
    spec.to = 4.0;
    spec.step = 0.1;
    std::ostringstream out;
    write_sweep_csv(sc, spec, out);

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,kind,E_start,E_end,dE");
    std::vector<std::string> kinds;
    std::vector<double> values;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        values.push_back(std::stod(line.substr(0, c1)));
        kinds.push_back(line.substr(c1 + 1, c2 - c1 - 1));
    }
    CHECK(values.size() == 41);

    // regime changes exactly where the grid crosses the four thresholds
    const auto regime = classify_neumann_regime(0.5, 0.0);
    int transitions = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (kinds[i] == kinds[i + 1]) continue;
        ++transitions;
        auto straddles = [&](double threshold) {
            return values[i] <= threshold && threshold <= values[i + 1] + 1e-12;
        };
        const bool at_threshold = straddles(regime.a1) || straddles(regime.b1) ||
                                  straddles(regime.b2) || straddles(regime.a2);
        CHECK(at_threshold);
    }
    // grid points land on b1 = 0.5 and b2 = 2.0 exactly, so each contributes
    // two regime changes; a1 and a2 one each
    CHECK(transitions == 6);
    // determinism: identical runs produce byte-identical output
    std::ostringstream again;
    write_sweep_csv(sc, spec, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("sweep over the delay") {
    Scenario sc = parse_scenario_text(kDelayScenario);
    sc.t_max = 2.0;
    SweepSpec spec;
    spec.parameter = "tau";
    spec.from = 0.8;
    spec.to = 1.2;
    spec.step = 0.2;
    std::ostringstream out;
    write_sweep_csv(sc, spec, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "tau,kind,window_lower,window_upper,E_start,E_end,dE");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find("DecreasingWithWindow") != std::string::npos);
    }
    CHECK(rows == 3);
}

TEST_CASE("verify compares the solvers on the logarithmic family") {
    Scenario sc = parse_scenario_text(kMinimalNeumann);
    FdmGrid grid;
    grid.ny = 128;
    grid.t_max = 1.0;
    const VerifyReport rep = run_verify(sc, grid);
    CHECK(rep.pass);
    CHECK(rep.field_error <= 0.01);
    for (double o : rep.orders) CHECK(o >= 1.8);
    CHECK(rep.energy_deviation <= 0.02);
    CHECK(rep.details.find("PASS") != std::string::npos);
}
