#include "mldiff/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mldiff/errors.hpp"
#include "mldiff/expr.hpp"

namespace mldiff {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError("config: missing or non-numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

std::optional<double> optional_number(const json& j, const std::string& key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number())
        throw ConfigError("config: field \"" + key + "\" must be numeric");
    return j.at(key).get<double>();
}

RawInterfaceKind kind_from_name(const std::string& name) {
    if (name == "I") return RawInterfaceKind::I;
    if (name == "II") return RawInterfaceKind::II;
    if (name == "III") return RawInterfaceKind::III;
    if (name == "IV") return RawInterfaceKind::IV;
    if (name == "GI") return RawInterfaceKind::GI;
    if (name == "GII") return RawInterfaceKind::GII;
    throw ConfigError("config: unknown interface kind \"" + name +
                      "\" (expected I, II, III, IV, GI or GII)");
}

} // namespace

SchemeId scheme_from_name(const std::string& name) {
    if (name == "forward-euler") return SchemeId::ForwardEuler;
    if (name == "backward-euler") return SchemeId::BackwardEuler;
    if (name == "crank-nicolson") return SchemeId::CrankNicolson;
    throw ConfigError("config: unknown scheme \"" + name +
                      "\" (expected forward-euler, backward-euler or crank-nicolson)");
}

RunConfig parse_config(const json& j) {
    RunConfig config;
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw ConfigError("config: missing integer field \"schema_version\"");
    config.schema_version = j.at("schema_version").get<int>();
    if (config.schema_version != 1)
        throw ConfigError("config: unsupported schema_version " +
                          std::to_string(config.schema_version));

    if (!j.contains("problem") || !j.at("problem").is_object())
        throw ConfigError("config: missing object field \"problem\"");
    const json& pj = j.at("problem");

    if (!pj.contains("layers") || !pj.at("layers").is_array() || pj.at("layers").empty())
        throw ConfigError("config: problem.layers must be a non-empty array");

    Problem& problem = config.problem;
    std::vector<bool> conductivity_explicit;
    for (const json& lj : pj.at("layers")) {
        Layer layer;
        layer.left = require_number(lj, "left");
        layer.right = require_number(lj, "right");
        layer.diffusivity = require_number(lj, "diffusivity");
        const auto gamma = optional_number(lj, "conductivity");
        layer.conductivity = gamma.value_or(layer.diffusivity);
        conductivity_explicit.push_back(gamma.has_value());
        std::string source = "0";
        if (lj.contains("initial")) {
            if (lj.at("initial").is_string())
                source = lj.at("initial").get<std::string>();
            else if (lj.at("initial").is_number())
                source = lj.at("initial").dump();
            else
                throw ConfigError("config: layer initial must be an expression string");
        }
        layer.initial = parse_expression(source);
        config.initial_sources.push_back(source);
        problem.layers.push_back(std::move(layer));
    }

    auto parse_bc = [](const json& parent, const std::string& key) {
        if (!parent.contains(key) || !parent.at(key).is_object())
            throw ConfigError("config: missing object field \"" + key + "\"");
        const json& bj = parent.at(key);
        return BoundarySpec{require_number(bj, "a"), require_number(bj, "b"),
                            require_number(bj, "c")};
    };
    problem.bc_left = parse_bc(pj, "boundary_left");
    problem.bc_right = parse_bc(pj, "boundary_right");

    if (!pj.contains("interfaces") || !pj.at("interfaces").is_array())
        throw ConfigError("config: problem.interfaces must be an array");
    const json& ifaces = pj.at("interfaces");
    if (ifaces.size() + 1 != problem.layers.size())
        throw ConfigError("config: expected " + std::to_string(problem.layers.size() - 1) +
                          " interfaces for " + std::to_string(problem.layers.size()) + " layers");

    for (std::size_t k = 0; k < ifaces.size(); ++k) {
        const json& ij = ifaces[k];
        if (!ij.contains("kind") || !ij.at("kind").is_string())
            throw ConfigError("config: interface " + std::to_string(k + 1) +
                              " needs a string field \"kind\"");
        const RawInterfaceKind kind = kind_from_name(ij.at("kind").get<std::string>());
        InterfaceParams params;
        params.transfer = optional_number(ij, "H");
        params.theta = optional_number(ij, "theta");
        params.gamma_left = optional_number(ij, "gamma_left");
        params.gamma_right = optional_number(ij, "gamma_right");

        Layer& left = problem.layers[k];
        Layer& right = problem.layers[k + 1];
        const double gamma_left_before = left.conductivity;
        const double gamma_right_before = right.conductivity;
        problem.interfaces.push_back(canonicalize_interface(kind, params, left, right));
        // a canonicalization may not silently contradict an explicit conductivity
        auto check = [k](bool explicit_gamma, double before, double after, const char* side) {
            if (explicit_gamma && before != after)
                throw ConfigError("config: interface " + std::to_string(k + 1) +
                                  " overrides the explicit conductivity of its " + side +
                                  " layer");
        };
        check(conductivity_explicit[k], gamma_left_before, left.conductivity, "left");
        check(conductivity_explicit[k + 1], gamma_right_before, right.conductivity, "right");
        conductivity_explicit[k] = true;
        conductivity_explicit[k + 1] = true;
    }

    {
        const auto issues = validate(problem);
        if (!issues.empty()) {
            std::ostringstream msg;
            msg << "config: invalid problem:";
            for (const auto& issue : issues) msg << "\n  - " << issue;
            throw ConfigError(msg.str());
        }
    }

    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 2)
            throw ConfigError("config: n must be an integer >= 2");
        config.n = j.at("n").get<std::size_t>();
    }
    if (j.contains("scheme")) {
        if (!j.at("scheme").is_string()) throw ConfigError("config: scheme must be a string");
        config.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    }
    if (j.contains("tau")) {
        const json& tj = j.at("tau");
        if (tj.is_string() && tj.get<std::string>() == "auto") {
            config.tau_is_auto = true;
        } else if (tj.is_number() && tj.get<double>() > 0.0) {
            config.tau = tj.get<double>();
        } else {
            throw ConfigError("config: tau must be a positive number or \"auto\"");
        }
    }
    if (j.contains("t_end")) {
        const double t = require_number(j, "t_end");
        if (!(t > 0.0)) throw ConfigError("config: t_end must be positive");
        config.t_end = t;
    }
    if (j.contains("snapshots")) {
        if (!j.at("snapshots").is_array())
            throw ConfigError("config: snapshots must be an array of times");
        for (const json& sj : j.at("snapshots")) {
            if (!sj.is_number()) throw ConfigError("config: snapshots must be numeric");
            config.snapshots.push_back(sj.get<double>());
        }
    }
    if (j.contains("study")) {
        const json& sj = j.at("study");
        if (!sj.is_object()) throw ConfigError("config: study must be an object");
        StudyConfig study;
        if (!sj.contains("h") || !sj.at("h").is_array() || sj.at("h").empty())
            throw ConfigError("config: study.h must be a non-empty array of spacings");
        for (const json& hj : sj.at("h")) {
            if (!hj.is_number() || !(hj.get<double>() > 0.0))
                throw ConfigError("config: study.h entries must be positive numbers");
            study.h_list.push_back(hj.get<double>());
        }
        for (std::size_t k = 0; k + 1 < study.h_list.size(); ++k)
            if (study.h_list[k] <= study.h_list[k + 1])
                throw ConfigError("config: study.h must be strictly descending");
        if (sj.contains("t_eval")) study.t_eval = require_number(sj, "t_eval");
        study.tau = optional_number(sj, "tau");
        if (sj.contains("schemes")) {
            if (!sj.at("schemes").is_array())
                throw ConfigError("config: study.schemes must be an array");
            for (const json& mj : sj.at("schemes"))
                study.schemes.push_back(scheme_from_name(mj.get<std::string>()));
        }
        if (study.schemes.empty()) study.schemes.push_back(config.scheme);
        config.study = std::move(study);
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: JSON parse error in \"" + path + "\": " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& config) {
    json layers = json::array();
    for (std::size_t i = 0; i < config.problem.layers.size(); ++i) {
        const Layer& layer = config.problem.layers[i];
        layers.push_back({{"left", layer.left},
                          {"right", layer.right},
                          {"diffusivity", layer.diffusivity},
                          {"conductivity", layer.conductivity},
                          {"initial", config.initial_sources[i]}});
    }
    json ifaces = json::array();
    for (const InterfaceSpec& spec : config.problem.interfaces) {
        json ij{{"kind", spec.kind == InterfaceKind::GI ? "GI" : "GII"}, {"theta", spec.theta}};
        if (spec.kind == InterfaceKind::GII) ij["H"] = spec.transfer;
        ifaces.push_back(std::move(ij));
    }
    json j{{"schema_version", config.schema_version},
           {"problem",
            {{"layers", layers},
             {"boundary_left",
              {{"a", config.problem.bc_left.a},
               {"b", config.problem.bc_left.b},
               {"c", config.problem.bc_left.c}}},
             {"boundary_right",
              {{"a", config.problem.bc_right.a},
               {"b", config.problem.bc_right.b},
               {"c", config.problem.bc_right.c}}},
             {"interfaces", ifaces}}},
           {"n", config.n},
           {"scheme", scheme_name(config.scheme)}};
    if (config.tau_is_auto)
        j["tau"] = "auto";
    else if (config.tau)
        j["tau"] = *config.tau;
    if (config.t_end) j["t_end"] = *config.t_end;
    if (!config.snapshots.empty()) j["snapshots"] = config.snapshots;
    if (config.study) {
        json sj{{"h", config.study->h_list}, {"t_eval", config.study->t_eval}};
        if (config.study->tau) sj["tau"] = *config.study->tau;
        json schemes = json::array();
        for (SchemeId s : config.study->schemes) schemes.push_back(scheme_name(s));
        sj["schemes"] = schemes;
        j["study"] = std::move(sj);
    }
    return j;
}

} // namespace mldiff
