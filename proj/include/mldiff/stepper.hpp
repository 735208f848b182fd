#pragma once

#include <cstddef>
#include <vector>

#include "mldiff/assemble.hpp"
#include "mldiff/unknowns.hpp"

namespace mldiff {

enum class SchemeId { ForwardEuler, BackwardEuler, CrankNicolson };

const char* scheme_name(SchemeId scheme);

/// One step of the named scheme on du/dt = A u + b:
///   forward Euler   u' = (I + tau A) u + tau b
///   backward Euler  (I - tau A) u' = u + tau b
///   Crank-Nicolson  (I - tau/2 A) u' = (I + tau/2 A) u + tau b
/// Implicit operators are solved with the Thomas algorithm; iteration
/// matrices are never formed densely.
std::vector<double> step(SchemeId scheme, const TriDiag& A, const std::vector<double>& b,
                         double tau, const std::vector<double>& u);

/// Fixed-step time march. Snapshots and states are reconstructed full-node
/// vectors (length m(n+1)).
struct MarchResult {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> final;
    double final_time = 0.0;
    std::size_t step_count = 0;
    double tau = 0.0;
    bool diverged = false;
    std::size_t diverged_at_step = 0;
};

/// Marches K = t_end/tau steps (t_end and every snapshot time must be an
/// integer multiple of tau within a slack of 1e-9*tau; there is no step-size
/// adaptation). The implicit operators are factored once and reused.
///
/// Divergence is declared when the max norm exceeds
/// 1e6 * (|u0|_inf + |steady|_inf); the march then stops early with the
/// diverged flag set.
MarchResult march(const SemiDiscreteSystem& system, const std::vector<double>& u0, double tau,
                  double t_end, SchemeId scheme, const std::vector<double>& snapshot_times,
                  const UnknownMap& map, const Problem& problem);

/// Steady state u = -A^{-1} b.
std::vector<double> steady_state(const SemiDiscreteSystem& system);

} // namespace mldiff
