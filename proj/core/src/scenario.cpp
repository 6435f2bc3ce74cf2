#include "mbwave/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mbwave {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("scenario: " + msg); }

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) fail("missing required field '" + key + "'");
    if (!j.at(key).is_number()) fail("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

void forbid(const json& j, const std::string& key, const std::string& why) {
    if (j.contains(key)) fail("field '" + key + "' is not allowed " + why);
}

std::vector<double> number_array(const json& j, const std::string& key) {
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) fail("'" + key + "' must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

void resolve_initial(Scenario& sc, const json& spec) {
    if (spec.is_object() && spec.contains("u0_samples")) {
        if (!spec.contains("u1_samples")) fail("sampled initial data needs 'u1_samples'");
        sc.initial = InitialData::from_samples(number_array(spec, "u0_samples"),
                                               number_array(spec, "u1_samples"));
        sc.initial_name = "samples";
        return;
    }
    if (!spec.is_object() || !spec.contains("preset"))
        fail("'initial' must carry a 'preset' name or inline sample arrays");
    const std::string name = spec.at("preset").get<std::string>();
    sc.initial_name = name;

    if (name == "example1" || name == "example2" || name == "example3") {
        SelfSimilarKind kind = name == "example1" ? SelfSimilarKind::Example1
                               : name == "example2" ? SelfSimilarKind::Example2
                                                    : SelfSimilarKind::Example3;
        std::optional<double> a;
        if (kind == SelfSimilarKind::Example3) a = require_number(spec, "a");
        sc.initial = self_similar_solution(kind, sc.expansion_rate, a).data;
        return;
    }
    if (name == "delay_smooth") {
        if (sc.problem != ProblemKind::DirichletDelay)
            fail("preset 'delay_smooth' requires problem = dirichlet_delay");
        const auto& d = *sc.delay;
        auto smooth = presets::smooth_delay(sc.expansion_rate, d.delay, d.gain_now,
                                            d.gain_delayed);
        sc.initial = smooth.initial;
        sc.history = smooth.history;
        sc.history_name = "delay_smooth";
        return;
    }
    if (sc.problem == ProblemKind::DirichletDelay) {
        sc.initial = presets::dirichlet(name);
        return;
    }
    sc.initial = presets::neumann(name);
}

void resolve_history(Scenario& sc, const json& spec) {
    if (spec.is_object() && spec.contains("samples")) {
        sc.history = HistoryData::from_samples(number_array(spec, "samples"),
                                               sc.delay->delay);
        sc.history_name = "samples";
        return;
    }
    if (!spec.is_object() || !spec.contains("preset"))
        fail("'history' must carry a 'preset' name or inline samples");
    const std::string name = spec.at("preset").get<std::string>();
    const double amplitude = spec.value("amplitude", 0.3);
    const double frequency = spec.value("frequency", 2.0);
    sc.history = presets::history(name, amplitude, frequency);
    sc.history_name = name;
}

} // namespace

NeumannProfile Scenario::make_neumann_profile() const {
    if (problem != ProblemKind::NeumannDamped)
        throw ValidationError("scenario is not a neumann_damped problem");
    QuadratureOptions q;
    q.abs_tol = quad_tol;
    return NeumannProfile(geometry(), *gain, initial, q);
}

DelayProfile Scenario::make_delay_profile() const {
    if (problem != ProblemKind::DirichletDelay)
        throw ValidationError("scenario is not a dirichlet_delay problem");
    DelayProfile::Options opt;
    opt.quad.abs_tol = quad_tol;
    return DelayProfile(geometry(), *delay, initial, history, opt);
}

Scenario parse_scenario_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario parse error: ") + e.what());
    }

    Scenario sc;
    if (!j.contains("problem")) fail("missing required field 'problem'");
    const std::string problem = j.at("problem").get<std::string>();
    if (problem == "neumann_damped") sc.problem = ProblemKind::NeumannDamped;
    else if (problem == "dirichlet_delay") sc.problem = ProblemKind::DirichletDelay;
    else fail("unknown problem kind '" + problem + "'");

    sc.expansion_rate = require_number(j, "k");
    if (!(sc.expansion_rate > 0.0 && sc.expansion_rate < 1.0))
        fail("k must satisfy 0 < k < 1");

    if (sc.problem == ProblemKind::NeumannDamped) {
        for (const char* key : {"mu1", "mu2", "tau", "xi"})
            forbid(j, key, "for the neumann_damped problem");
        forbid(j, "history", "for the neumann_damped problem");
        sc.gain = require_number(j, "a");
        if (*sc.gain == -1.0) fail("a = -1 admits only the trivial solution");
    } else {
        forbid(j, "a", "for the dirichlet_delay problem");
        DelayParams d;
        d.gain_now = require_number(j, "mu1");
        d.gain_delayed = require_number(j, "mu2");
        d.delay = require_number(j, "tau");
        d.history_weight = require_number(j, "xi");
        if (!(d.delay > 0.0) || !(d.delay < 1.0 / sc.expansion_rate))
            fail("tau must satisfy 0 < tau < 1/k");
        if (!(d.history_weight > 0.0)) fail("xi must be positive");
        sc.delay = d;
    }

    sc.t_max = j.value("t_max", 10.0);
    if (!(sc.t_max >= 0.0)) fail("t_max must be nonnegative");
    sc.sample_count = j.value("sample_count", 100);
    if (sc.sample_count < 1) fail("sample_count must be positive");
    sc.space_count = j.value("space_count", 64);
    if (sc.space_count < 1) fail("space_count must be positive");
    sc.quad_tol = j.value("quad_tol", 1e-10);
    if (!(sc.quad_tol > 0.0)) fail("quad_tol must be positive");

    if (j.contains("fdm")) {
        const auto& f = j.at("fdm");
        sc.fdm.ny = f.value("ny", 256);
        sc.fdm.cfl = f.value("cfl", 0.8);
        sc.fdm.t_max = f.value("t_max", 1.0);
        if (sc.fdm.ny < 16) fail("fdm.ny must be at least 16");
        if (!(sc.fdm.cfl > 0.0) || sc.fdm.cfl > 0.9) fail("fdm.cfl must lie in (0, 0.9]");
    }

    if (!j.contains("initial")) fail("missing required field 'initial'");
    resolve_initial(sc, j.at("initial"));
    if (j.contains("history")) {
        if (sc.initial_name == "delay_smooth")
            fail("preset 'delay_smooth' supplies its own history");
        resolve_history(sc, j.at("history"));
    }

    // re-check the owning modules' construction rules now, so a bad file is
    // reported at load rather than first use
    sc.initial.validate();
    if (sc.problem == ProblemKind::DirichletDelay) {
        sc.history.validate(sc.delay->delay);
        if (std::abs(sc.initial.u0(0.0)) > 1e-12)
            fail("u0(0) must vanish for the dirichlet_delay problem");
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["problem"] =
        sc.problem == ProblemKind::NeumannDamped ? "neumann_damped" : "dirichlet_delay";
    j["k"] = sc.expansion_rate;
    if (sc.gain) j["a"] = *sc.gain;
    if (sc.delay) {
        j["mu1"] = sc.delay->gain_now;
        j["mu2"] = sc.delay->gain_delayed;
        j["tau"] = sc.delay->delay;
        j["xi"] = sc.delay->history_weight;
    }
    j["initial"] = {{"preset", sc.initial_name}};
    if (sc.problem == ProblemKind::DirichletDelay) j["history"] = {{"preset", sc.history_name}};
    j["t_max"] = sc.t_max;
    j["sample_count"] = sc.sample_count;
    j["space_count"] = sc.space_count;
    j["quad_tol"] = sc.quad_tol;
    j["fdm"] = {{"ny", sc.fdm.ny}, {"cfl", sc.fdm.cfl}, {"t_max", sc.fdm.t_max}};
    return j.dump(2);
}

} // namespace mbwave
