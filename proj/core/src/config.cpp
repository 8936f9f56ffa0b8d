#include "qric/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace qric {

using jio::json;

std::string to_string(SolverChoice s) {
    switch (s) {
        case SolverChoice::invariant_subspace: return "invariant_subspace";
        case SolverChoice::newton: return "newton";
        case SolverChoice::analytic: return "analytic";
        case SolverChoice::all: return "all";
    }
    throw InvalidArgument("to_string: bad SolverChoice");
}

SolverChoice solver_from_string(const std::string& s) {
    if (s == "invariant_subspace") return SolverChoice::invariant_subspace;
    if (s == "newton") return SolverChoice::newton;
    if (s == "analytic") return SolverChoice::analytic;
    if (s == "all") return SolverChoice::all;
    throw InvalidConfig("unknown solver: " + s);
}

std::string RunConfig::model_name() const {
    switch (params.index()) {
        case 0: return "spin_boson";
        case 1: return "commuting";
        default: return "custom_terms";
    }
}

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw InvalidConfig(where + ": unknown key \"" + key + "\"");
}

double number_at(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw InvalidConfig(key + ": expected a number");
    return j[key].get<double>();
}

SpinBosonParams spin_boson_params(const json& p) {
    reject_unknown_keys(p, {"n_env", "omega", "g", "alpha", "beta"}, "params");
    SpinBosonParams out;
    if (p.contains("n_env")) {
        if (!p["n_env"].is_number_integer())
            throw InvalidConfig("n_env: expected an integer");
        out.n_env = p["n_env"].get<int>();
    }
    out.omega = number_at(p, "omega", out.omega);
    if (p.contains("g")) out.g = jio::complex_from(p["g"], "g");
    out.alpha = number_at(p, "alpha", out.alpha);
    out.beta = number_at(p, "beta", out.beta);
    return out;
}

CommutingParams commuting_params(const json& p) {
    reject_unknown_keys(p, {"lambdas", "xis", "alpha", "basis_rotation"}, "params");
    CommutingParams out;
    if (!p.contains("lambdas") || !p.contains("xis"))
        throw InvalidConfig("commuting params need \"lambdas\" and \"xis\"");
    out.lambdas = jio::real_vector_from(p["lambdas"], "lambdas");
    out.xis = jio::real_vector_from(p["xis"], "xis");
    out.alpha = number_at(p, "alpha", out.alpha);
    if (p.contains("basis_rotation"))
        out.basis_rotation = jio::matrix_from(p["basis_rotation"], "basis_rotation");
    return out;
}

CustomTermsParams custom_terms_params(const json& p) {
    reject_unknown_keys(p, {"h_q", "h_env", "couplings"}, "params");
    if (!p.contains("h_q") || !p.contains("h_env"))
        throw InvalidConfig("custom_terms params need \"h_q\" and \"h_env\"");
    CustomTermsParams out;
    const ComplexMatrix h_q = jio::matrix_from(p["h_q"], "h_q");
    if (h_q.rows() != 2 || h_q.cols() != 2)
        throw InvalidConfig("h_q: expected a 2x2 matrix");
    out.h_q = h_q;
    out.h_env = jio::matrix_from(p["h_env"], "h_env");
    if (p.contains("couplings")) {
        if (!p["couplings"].is_array())
            throw InvalidConfig("couplings: expected an array of [qubit, env] pairs");
        for (std::size_t i = 0; i < p["couplings"].size(); ++i) {
            const json& pair = p["couplings"][i];
            const std::string what = "couplings[" + std::to_string(i) + "]";
            if (!pair.is_array() || pair.size() != 2)
                throw InvalidConfig(what + ": expected a [qubit, env] pair");
            const ComplexMatrix qubit = jio::matrix_from(pair[0], what + "[0]");
            if (qubit.rows() != 2 || qubit.cols() != 2)
                throw InvalidConfig(what + "[0]: expected a 2x2 matrix");
            out.couplings.push_back({qubit, jio::matrix_from(pair[1], what + "[1]")});
        }
    }
    return out;
}

const std::set<std::string>& sweepable_params(const RunConfig& cfg) {
    static const std::set<std::string> spin_boson{"g", "alpha", "beta", "omega"};
    static const std::set<std::string> commuting{"alpha"};
    static const std::set<std::string> none;
    switch (cfg.params.index()) {
        case 0: return spin_boson;
        case 1: return commuting;
        default: return none;
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidConfig("config root must be an object");
    reject_unknown_keys(j,
                        {"model", "params", "solver", "strategy", "tolerances", "times",
                         "sweep", "seed", "out", "csv", "workers"},
                        "config");
    if (!j.contains("model") || !j["model"].is_string())
        throw InvalidConfig("config needs a \"model\" string");

    RunConfig cfg;
    const std::string model = j["model"].get<std::string>();
    const json params = j.contains("params") ? j["params"] : json::object();
    if (!params.is_object()) throw InvalidConfig("params: expected an object");
    if (model == "spin_boson")
        cfg.params = spin_boson_params(params);
    else if (model == "commuting")
        cfg.params = commuting_params(params);
    else if (model == "custom_terms")
        cfg.params = custom_terms_params(params);
    else
        throw InvalidConfig("unknown model: " + model);

    if (j.contains("solver")) {
        if (!j["solver"].is_string()) throw InvalidConfig("solver: expected a string");
        cfg.solver = solver_from_string(j["solver"].get<std::string>());
    }
    if (j.contains("strategy")) {
        if (!j["strategy"].is_string()) throw InvalidConfig("strategy: expected a string");
        try {
            cfg.strategy = strategy_from_string(j["strategy"].get<std::string>());
        } catch (const InvalidArgument& e) {
            throw InvalidConfig(e.what());
        }
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw InvalidConfig("tolerances: expected an object");
        for (const auto& [name, value] : j["tolerances"].items()) {
            if (!value.is_number())
                throw InvalidConfig("tolerances." + name + ": expected a number");
            cfg.tolerances.set(name, value.get<double>());
        }
    }
    if (j.contains("times")) {
        if (!j["times"].is_array() || j["times"].empty())
            throw InvalidConfig("times: expected a nonempty array of numbers");
        cfg.times.clear();
        for (const auto& t : j["times"]) {
            if (!t.is_number()) throw InvalidConfig("times: expected numbers");
            cfg.times.push_back(t.get<double>());
        }
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        if (!s.is_object()) throw InvalidConfig("sweep: expected an object");
        reject_unknown_keys(s, {"param", "values"}, "sweep");
        if (!s.contains("param") || !s["param"].is_string() || !s.contains("values"))
            throw InvalidConfig("sweep needs \"param\" and \"values\"");
        SweepSpec spec;
        spec.param = s["param"].get<std::string>();
        if (!s["values"].is_array() || s["values"].empty())
            throw InvalidConfig("sweep.values: expected a nonempty array");
        for (const auto& v : s["values"]) {
            if (!v.is_number()) throw InvalidConfig("sweep.values: expected numbers");
            spec.values.push_back(v.get<double>());
        }
        if (!sweepable_params(cfg).count(spec.param))
            throw InvalidConfig("sweep.param \"" + spec.param +
                                "\" does not exist for model " + model);
        cfg.sweep = std::move(spec);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw InvalidConfig("seed: expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw InvalidConfig("out: expected a string");
        cfg.out = j["out"].get<std::string>();
    }
    if (j.contains("csv")) {
        if (!j["csv"].is_string()) throw InvalidConfig("csv: expected a string");
        cfg.csv = j["csv"].get<std::string>();
    }
    if (j.contains("workers")) {
        if (!j["workers"].is_number_integer() || j["workers"].get<int>() < 1)
            throw InvalidConfig("workers: expected an integer >= 1");
        cfg.workers = j["workers"].get<int>();
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string to_json_text(const RunConfig& cfg) {
    json j;
    j["model"] = cfg.model_name();
    json p = json::object();
    if (const auto* sb = std::get_if<SpinBosonParams>(&cfg.params)) {
        p["n_env"] = sb->n_env;
        p["omega"] = sb->omega;
        p["g"] = jio::complex_to(sb->g);
        p["alpha"] = sb->alpha;
        p["beta"] = sb->beta;
    } else if (const auto* cm = std::get_if<CommutingParams>(&cfg.params)) {
        p["lambdas"] = jio::real_vector_to(cm->lambdas);
        p["xis"] = jio::real_vector_to(cm->xis);
        p["alpha"] = cm->alpha;
        if (cm->basis_rotation) p["basis_rotation"] = jio::matrix_to(*cm->basis_rotation);
    } else {
        const auto& ct = std::get<CustomTermsParams>(cfg.params);
        p["h_q"] = jio::matrix_to(ct.h_q);
        p["h_env"] = jio::matrix_to(ct.h_env);
        json couplings = json::array();
        for (const SystemTerm& term : ct.couplings)
            couplings.push_back(
                json::array({jio::matrix_to(term.qubit), jio::matrix_to(term.env)}));
        p["couplings"] = std::move(couplings);
    }
    j["params"] = std::move(p);
    j["solver"] = to_string(cfg.solver);
    j["strategy"] = to_string(cfg.strategy);
    json tols = json::object();
    for (const auto& [name, member] : Tolerances::fields())
        tols[name] = cfg.tolerances.*member;
    j["tolerances"] = std::move(tols);
    j["times"] = cfg.times;
    if (cfg.sweep) {
        j["sweep"] = json{{"param", cfg.sweep->param}, {"values", cfg.sweep->values}};
    }
    j["seed"] = cfg.seed;
    j["out"] = cfg.out;
    if (cfg.csv) j["csv"] = *cfg.csv;
    j["workers"] = cfg.workers;
    return j.dump(2);
}

RunConfig with_sweep_value(const RunConfig& base, double value) {
    if (!base.sweep) throw InvalidConfig("with_sweep_value: config has no sweep block");
    RunConfig cfg = base;
    const std::string& param = base.sweep->param;
    if (auto* sb = std::get_if<SpinBosonParams>(&cfg.params)) {
        if (param == "g")
            sb->g = Complex(value, 0.0);
        else if (param == "alpha")
            sb->alpha = value;
        else if (param == "beta")
            sb->beta = value;
        else if (param == "omega")
            sb->omega = value;
        else
            throw InvalidConfig("sweep.param \"" + param + "\" does not exist for spin_boson");
    } else if (auto* cm = std::get_if<CommutingParams>(&cfg.params)) {
        if (param == "alpha")
            cm->alpha = value;
        else
            throw InvalidConfig("sweep.param \"" + param + "\" does not exist for commuting");
    } else {
        throw InvalidConfig("custom_terms models have no sweepable parameters");
    }
    cfg.sweep.reset();
    return cfg;
}

}  // namespace qric
