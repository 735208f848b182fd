#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mldiff {

/// One material layer [left, right] with diffusivity D, conductivity gamma
/// and initial profile f(x). Conductivity enters only through the interface
/// conditions; it defaults to the diffusivity.
struct Layer {
    double left = 0.0;
    double right = 0.0;
    double diffusivity = 0.0;
    double conductivity = 0.0;
    std::function<double(double)> initial;

    static Layer make(double left, double right, double diffusivity,
                      std::function<double(double)> initial,
                      std::optional<double> conductivity = std::nullopt) {
        Layer layer;
        layer.left = left;
        layer.right = right;
        layer.diffusivity = diffusivity;
        layer.conductivity = conductivity.value_or(diffusivity);
        layer.initial = std::move(initial);
        return layer;
    }

    double width() const { return right - left; }
};

/// Boundary data for a*u -/+ b*u_x = c (minus on the left end, plus on the
/// right). a and b are non-negative with a + b > 0; b == 0 is a Dirichlet
/// condition, a == 0 a Neumann condition.
struct BoundarySpec {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool dirichlet() const { return b == 0.0; }
};

/// The two general interface forms. GI couples the layers through a solution
/// jump u_left = theta * u_right plus conductivity-weighted flux continuity;
/// GII adds a finite contact transfer coefficient H so the flux is
/// proportional to the jump.
enum class InterfaceKind { GI, GII };

struct InterfaceSpec {
    InterfaceKind kind = InterfaceKind::GI;
    double theta = 1.0;
    double transfer = 0.0; // H, used only for GII

    static InterfaceSpec gi(double theta = 1.0) { return {InterfaceKind::GI, theta, 0.0}; }
    static InterfaceSpec gii(double transfer, double theta = 1.0) {
        return {InterfaceKind::GII, theta, transfer};
    }
};

/// The four classical interface condition types accepted at the user surface,
/// plus the two general forms they normalize to.
enum class RawInterfaceKind { I, II, III, IV, GI, GII };

struct InterfaceParams {
    std::optional<double> transfer;    // H
    std::optional<double> theta;       // partition coefficient
    std::optional<double> gamma_left;  // conductivity written into the left layer
    std::optional<double> gamma_right; // conductivity written into the right layer
};

/// Normalizes a classical interface type to GI/GII and writes the implied
/// conductivities into the adjacent layers:
///   Type I   -> GI,  gamma = D, theta = 1
///   Type II  -> GII, gamma = D, theta = 1
///   Type III -> GI,  gamma given, theta = 1
///   Type IV  -> GI,  gamma = D, theta given
/// GI/GII pass through (theta defaulting to 1); their conductivities live on
/// the layers. Throws ConfigError for missing/extra parameters or
/// non-positive H, theta, gamma. A GII with infinite H is rejected: callers
/// wanting perfect contact must choose GI explicitly.
InterfaceSpec canonicalize_interface(RawInterfaceKind kind, const InterfaceParams& params,
                                     Layer& left, Layer& right);

/// A full multilayer diffusion problem. Immutable after validation; safe to
/// share read-only across concurrent solves.
struct Problem {
    std::vector<Layer> layers;
    BoundarySpec bc_left;
    BoundarySpec bc_right;
    std::vector<InterfaceSpec> interfaces;

    std::size_t layer_count() const { return layers.size(); }
};

/// Checks every structural invariant and returns the complete list of
/// violations (empty when the problem is valid).
std::vector<std::string> validate(const Problem& problem);

/// Returns the problem unchanged if valid, otherwise throws ConfigError with
/// all violations joined.
const Problem& require_valid(const Problem& problem);

} // namespace mldiff
