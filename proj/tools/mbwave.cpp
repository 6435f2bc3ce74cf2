// mbwave: method-of-characteristics solver and stability analyser for the
// 1-D wave equation on the expanding domain 0 < x < 1 + k t.
//
//   mbwave solve    --scenario s.json [--out field.csv]
//   mbwave energy   --scenario s.json [--out energy.csv]
//   mbwave classify --scenario s.json | --k K (--a A | --mu1 M1 --mu2 M2 --xi XI [--tau T])
//   mbwave sweep    --scenario s.json --param a --from 0 --to 4 --step 0.1 [--out sweep.csv]
//   mbwave verify   --scenario s.json [--grid ny=512,tmax=1,cfl=0.8]
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure,
// 4 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mbwave/runners.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mbwave::ValidationError("cannot open output file '" + path + "'");
    return out;
}

mbwave::FdmGrid parse_grid(const std::string& text, mbwave::FdmGrid base) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw mbwave::ValidationError("bad --grid entry '" + item +
                                          "', expected key=value");
        const std::string key = item.substr(0, eq);
        const double value = std::stod(item.substr(eq + 1));
        if (key == "ny") base.ny = static_cast<int>(value);
        else if (key == "tmax") base.t_max = value;
        else if (key == "cfl") base.cfl = value;
        else throw mbwave::ValidationError("unknown --grid key '" + key + "'");
    }
    return base;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characteristics solver for the wave equation on 0 < x < 1 + k t"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, grid_spec;
    std::optional<double> quad_tol;

    auto add_common = [&](CLI::App* cmd, bool scenario_required) {
        auto* opt = cmd->add_option("--scenario", scenario_path, "scenario JSON file");
        if (scenario_required) opt->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--quad-tol", quad_tol, "override the quadrature tolerance");
    };

    auto* solve = app.add_subcommand("solve", "evaluate u, u_t, u_x on a sample grid");
    add_common(solve, true);

    auto* energy = app.add_subcommand("energy", "write the energy trace");
    add_common(energy, true);

    auto* classify = app.add_subcommand("classify", "print the regime record as JSON");
    add_common(classify, false);
    std::optional<double> cls_k, cls_a, cls_mu1, cls_mu2, cls_xi, cls_tau;
    classify->add_option("--k", cls_k, "expansion rate");
    classify->add_option("--a", cls_a, "damping gain");
    classify->add_option("--mu1", cls_mu1, "instantaneous feedback gain");
    classify->add_option("--mu2", cls_mu2, "delayed feedback gain");
    classify->add_option("--xi", cls_xi, "history weight");
    classify->add_option("--tau", cls_tau, "delay (fills the rate constant)");

    auto* sweep = app.add_subcommand("sweep", "classify and measure over a parameter grid");
    add_common(sweep, true);
    mbwave::SweepSpec spec;
    sweep->add_option("--param", spec.parameter, "a | mu1 | mu2 | tau")->required();
    sweep->add_option("--from", spec.from, "grid start")->required();
    sweep->add_option("--to", spec.to, "grid end")->required();
    sweep->add_option("--step", spec.step, "grid step")->required();

    auto* verify = app.add_subcommand("verify", "characteristics vs finite differences");
    add_common(verify, true);
    verify->add_option("--grid", grid_spec, "ny=<n>,tmax=<t>,cfl=<c>");

    CLI11_PARSE(app, argc, argv);

    try {
        auto load = [&]() {
            mbwave::Scenario sc = mbwave::load_scenario(scenario_path);
            if (quad_tol) sc.quad_tol = *quad_tol;
            std::cerr << "effective scenario:\n" << mbwave::scenario_to_json(sc) << '\n';
            return sc;
        };
        auto deliver = [&](const std::string& text) {
            if (out_path.empty()) {
                std::cout << text;
            } else {
                auto out = open_out(out_path);
                out << text;
            }
        };

        if (solve->parsed()) {
            const mbwave::Scenario sc = load();
            std::ostringstream buf;
            mbwave::write_field_csv(sc, buf);
            deliver(buf.str());
            return 0;
        }
        if (energy->parsed()) {
            const mbwave::Scenario sc = load();
            std::ostringstream buf;
            mbwave::write_energy_csv(sc, buf);
            deliver(buf.str());
            return 0;
        }
        if (classify->parsed()) {
            std::string record;
            if (!scenario_path.empty()) {
                const mbwave::Scenario sc = mbwave::load_scenario(scenario_path);
                if (sc.problem == mbwave::ProblemKind::NeumannDamped)
                    record = mbwave::regime_to_json(
                        mbwave::classify_neumann_regime(sc.expansion_rate, *sc.gain));
                else
                    record = mbwave::regime_to_json(mbwave::classify_delay_regime(
                        sc.expansion_rate, sc.delay->gain_now, sc.delay->gain_delayed,
                        sc.delay->history_weight, sc.delay->delay));
            } else {
                if (!cls_k)
                    throw mbwave::ValidationError(
                        "classify needs --scenario or bare parameters (--k ...)");
                if (cls_a) {
                    record = mbwave::regime_to_json(
                        mbwave::classify_neumann_regime(*cls_k, *cls_a));
                } else {
                    if (!cls_mu1 || !cls_mu2 || !cls_xi)
                        throw mbwave::ValidationError(
                            "delay classification needs --mu1, --mu2 and --xi");
                    record = mbwave::regime_to_json(mbwave::classify_delay_regime(
                        *cls_k, *cls_mu1, *cls_mu2, *cls_xi, cls_tau));
                }
            }
            deliver(record + "\n");
            return 0;
        }
        if (sweep->parsed()) {
            const mbwave::Scenario sc = load();
            std::ostringstream buf;
            mbwave::write_sweep_csv(sc, spec, buf);
            deliver(buf.str());
            return 0;
        }
        if (verify->parsed()) {
            const mbwave::Scenario sc = load();
            mbwave::FdmGrid grid = sc.fdm;
            if (!grid_spec.empty()) grid = parse_grid(grid_spec, grid);
            const mbwave::VerifyReport rep = mbwave::run_verify(sc, grid);
            deliver(rep.details + (rep.pass ? "RESULT PASS\n" : "RESULT FAIL\n"));
            return rep.pass ? 0 : kExitVerification;
        }
    } catch (const mbwave::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const mbwave::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
