#include "mldiff/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mldiff/errors.hpp"

namespace mldiff {

namespace {

void require_positive(const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0 && std::isfinite(*v)))
        throw ConfigError(std::string("interface parameter ") + name + " must be positive and finite");
}

void reject(const std::optional<double>& v, const char* name, const char* kind) {
    if (v)
        throw ConfigError(std::string("interface type ") + kind + " does not take parameter " + name);
}

} // namespace

InterfaceSpec canonicalize_interface(RawInterfaceKind kind, const InterfaceParams& params,
                                     Layer& left, Layer& right) {
    require_positive(params.transfer, "H");
    require_positive(params.theta, "theta");
    require_positive(params.gamma_left, "gamma_left");
    require_positive(params.gamma_right, "gamma_right");

    switch (kind) {
    case RawInterfaceKind::I:
        reject(params.transfer, "H", "I");
        reject(params.theta, "theta", "I");
        reject(params.gamma_left, "gamma_left", "I");
        reject(params.gamma_right, "gamma_right", "I");
        left.conductivity = left.diffusivity;
        right.conductivity = right.diffusivity;
        return InterfaceSpec::gi(1.0);
    case RawInterfaceKind::II:
        if (!params.transfer) throw ConfigError("interface type II requires parameter H");
        reject(params.theta, "theta", "II");
        reject(params.gamma_left, "gamma_left", "II");
        reject(params.gamma_right, "gamma_right", "II");
        left.conductivity = left.diffusivity;
        right.conductivity = right.diffusivity;
        return InterfaceSpec::gii(*params.transfer, 1.0);
    case RawInterfaceKind::III:
        if (!params.gamma_left || !params.gamma_right)
            throw ConfigError("interface type III requires parameters gamma_left and gamma_right");
        reject(params.transfer, "H", "III");
        reject(params.theta, "theta", "III");
        left.conductivity = *params.gamma_left;
        right.conductivity = *params.gamma_right;
        return InterfaceSpec::gi(1.0);
    case RawInterfaceKind::IV:
        if (!params.theta) throw ConfigError("interface type IV requires parameter theta");
        reject(params.transfer, "H", "IV");
        reject(params.gamma_left, "gamma_left", "IV");
        reject(params.gamma_right, "gamma_right", "IV");
        left.conductivity = left.diffusivity;
        right.conductivity = right.diffusivity;
        return InterfaceSpec::gi(*params.theta);
    case RawInterfaceKind::GI:
        reject(params.transfer, "H", "GI");
        if (params.gamma_left) left.conductivity = *params.gamma_left;
        if (params.gamma_right) right.conductivity = *params.gamma_right;
        return InterfaceSpec::gi(params.theta.value_or(1.0));
    case RawInterfaceKind::GII:
        if (!params.transfer) throw ConfigError("interface type GII requires parameter H");
        if (std::isinf(*params.transfer))
            throw ConfigError("interface type GII with infinite H is rejected; use GI for perfect contact");
        if (params.gamma_left) left.conductivity = *params.gamma_left;
        if (params.gamma_right) right.conductivity = *params.gamma_right;
        return InterfaceSpec::gii(*params.transfer, params.theta.value_or(1.0));
    }
    throw ConfigError("unknown interface kind");
}

std::vector<std::string> validate(const Problem& problem) {
    std::vector<std::string> issues;
    auto report = [&issues](const std::string& msg) { issues.push_back(msg); };

    const std::size_t m = problem.layers.size();
    if (m == 0) {
        report("problem has no layers");
        return issues;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Layer& layer = problem.layers[i];
        std::ostringstream tag;
        tag << "layer " << i + 1 << ": ";
        if (!(layer.right > layer.left)) report(tag.str() + "right extent must exceed left extent");
        if (!(layer.diffusivity > 0.0) || !std::isfinite(layer.diffusivity))
            report(tag.str() + "diffusivity must be positive");
        if (!(layer.conductivity > 0.0) || !std::isfinite(layer.conductivity))
            report(tag.str() + "conductivity must be positive");
        if (!layer.initial) report(tag.str() + "initial condition is not set");
        if (i + 1 < m && problem.layers[i].right != problem.layers[i + 1].left)
            report(tag.str() + "layers are not contiguous at the interface");
    }

    auto check_bc = [&report](const BoundarySpec& bc, const char* side) {
        if (bc.a < 0.0 || bc.b < 0.0)
            report(std::string(side) + " boundary: coefficients a and b must be non-negative");
        if (bc.a + bc.b <= 0.0)
            report(std::string(side) + " boundary: a + b must be positive, otherwise the boundary condition vanishes");
    };
    check_bc(problem.bc_left, "left");
    check_bc(problem.bc_right, "right");
    if (problem.bc_left.a == 0.0 && problem.bc_right.a == 0.0 && problem.bc_left.b > 0.0 &&
        problem.bc_right.b > 0.0)
        report("Neumann conditions on both boundaries are not supported");

    if (problem.interfaces.size() != m - 1) {
        std::ostringstream msg;
        msg << "expected " << m - 1 << " interface specs for " << m << " layers, got "
            << problem.interfaces.size();
        report(msg.str());
    }
    for (std::size_t i = 0; i < problem.interfaces.size(); ++i) {
        const InterfaceSpec& spec = problem.interfaces[i];
        std::ostringstream tag;
        tag << "interface " << i + 1 << ": ";
        if (!(spec.theta > 0.0) || !std::isfinite(spec.theta))
            report(tag.str() + "theta must be positive and finite");
        if (spec.kind == InterfaceKind::GII &&
            (!(spec.transfer > 0.0) || !std::isfinite(spec.transfer)))
            report(tag.str() + "GII transfer coefficient H must be positive and finite");
    }
    return issues;
}

const Problem& require_valid(const Problem& problem) {
    const auto issues = validate(problem);
    if (!issues.empty()) {
        std::ostringstream msg;
        msg << "invalid problem:";
        for (const auto& issue : issues) msg << "\n  - " << issue;
        throw ConfigError(msg.str());
    }
    return problem;
}

} // namespace mldiff
