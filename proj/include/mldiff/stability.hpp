#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mldiff/assemble.hpp"
#include "mldiff/mesh.hpp"
#include "mldiff/problem.hpp"
#include "mldiff/tridiag.hpp"

namespace mldiff {

/// Gershgorin data for one row of A, tau-free: center = -a_pp,
/// radius = |a_{p,p-1}| + |a_{p,p+1}|. The forward Euler disc condition
/// tau*(center + radius) <= 2 gives the per-row step bound.
struct GershgorinRow {
    std::size_t row = 0;
    double center = 0.0;
    double radius = 0.0;
    double tau_max = 0.0; // 2 / (center + radius)
};

struct GershgorinBound {
    std::vector<GershgorinRow> rows;
    double tau_max = 0.0;
    std::size_t binding_row = 0;
};

/// Per-row Gershgorin step bounds from the assembled matrix. Throws
/// NumericalError on a non-negative diagonal entry (invalid operator).
GershgorinBound gershgorin_bound(const TriDiag& A);

/// Node classes contributing closed-form forward Euler bounds.
enum class BoundClass {
    Interior,
    LeftBoundary,
    RightBoundary,
    DirichletAdjacent,
    GIInterface,
    GIAdjacent,
    GIIInterface,
    MixedAdjacent, // n == 2 rows modified by two eliminations at once
};

struct BoundEntry {
    BoundClass cls = BoundClass::Interior;
    std::string label;
    std::ptrdiff_t layer = -1;      // 0-based, -1 when not layer-specific
    std::ptrdiff_t interface_ = -1; // 0-based, -1 when not an interface bound
    double tau_max = 0.0;
    bool additional_restriction = false; // false: cannot bind against the
                                         // adjacent interior bounds
};

struct TableBounds {
    std::vector<BoundEntry> entries;
    double tau_max = 0.0;
    std::size_t binding = 0; // index into entries
};

/// The analytic forward Euler bounds, one labeled entry per node class that
/// actually occurs on the mesh. Derived from the problem data alone; agrees
/// with gershgorin_bound on the assembled matrix because both encode the
/// same row magnitudes.
TableBounds table1_bounds(const Problem& problem, const Mesh& mesh);

/// Exact stability of the three schemes at a given tau, from the spectrum
/// of A (real and negative): rho_F = max|1 + tau*lambda|,
/// rho_B = max 1/|1 - tau*lambda|, rho_C = max|(1 + tau/2*lambda)/(1 - tau/2*lambda)|.
struct SpectralVerdict {
    double rho_forward = 0.0;
    double rho_backward = 0.0;
    double rho_crank = 0.0;
    bool stable_forward = false;
    bool stable_backward = false;
    bool stable_crank = false;
};

SpectralVerdict spectral_verdict(const TriDiag& A, double tau);
SpectralVerdict verdict_from_spectrum(const std::vector<double>& spectrum, double tau);

/// Everything the stability command reports: both bound derivations, the
/// exact spectrum, the sharp forward Euler threshold 2/|lambda_min| (the
/// Gershgorin bound is sufficient, not necessary), and scheme verdicts at an
/// optional query tau.
struct StabilityReport {
    GershgorinBound gershgorin;
    TableBounds table;
    std::vector<double> spectrum;
    double tau_max_exact = 0.0; // 2 / |lambda_min|, forward Euler
    std::optional<double> tau;
    std::optional<SpectralVerdict> verdict;
};

StabilityReport analyze_stability(const Problem& problem, const Mesh& mesh,
                                  const SemiDiscreteSystem& system,
                                  std::optional<double> tau = std::nullopt);

} // namespace mldiff
