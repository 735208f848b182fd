#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mldiff/mesh.hpp"
#include "mldiff/problem.hpp"

namespace mldiff {

/// How an eliminated node is recovered from the retained unknowns.
enum class ElimRule {
    DirichletLeft,    // u_{1,0}   = c_L / a_L
    DirichletRight,   // u_{m,n}   = c_R / a_R
    GIEliminateRight, // u_{i+1,0} = u_{i,n} / theta_i   (used when theta_i >= 1)
    GIEliminateLeft,  // u_{i,n}   = theta_i * u_{i+1,0} (used when theta_i <  1)
};

struct EliminatedNode {
    std::size_t layer = 0;
    std::size_t node = 0;       // j within the layer
    ElimRule rule = ElimRule::DirichletLeft;
    std::size_t interface_ = 0; // which interface, for the GI rules
};

/// Which GI interface node to drop. Auto follows the sign of theta - 1;
/// the explicit choices exist so the two formulations can be compared at
/// theta == 1, where they must coincide.
enum class GIElimination { Auto, Right, Left };

/// Maps retained mesh nodes to unknown indices p = 0..N-1 in layer-major
/// order and records one recovery rule per eliminated node.
struct UnknownMap {
    std::size_t layer_count = 0;
    std::size_t per_layer = 0;
    std::vector<std::ptrdiff_t> index; // flat (i,j) -> p, or -1 if eliminated
    std::vector<std::pair<std::size_t, std::size_t>> nodes; // p -> (layer, j)
    std::vector<EliminatedNode> eliminated;
    std::size_t count = 0;                  // N = m(n+1) - q - r
    std::size_t gi_eliminations = 0;        // q
    std::size_t dirichlet_eliminations = 0; // r

    bool retained(std::size_t layer, std::size_t j) const {
        return index[layer * (per_layer + 1) + j] >= 0;
    }
    std::size_t p_of(std::size_t layer, std::size_t j) const {
        return static_cast<std::size_t>(index[layer * (per_layer + 1) + j]);
    }
};

UnknownMap index_unknowns(const Problem& problem, const Mesh& mesh,
                          GIElimination policy = GIElimination::Auto);

/// Expands an unknown vector to values at every mesh node, applying the
/// recorded elimination rules.
std::vector<double> reconstruct_full(const UnknownMap& map, const std::vector<double>& u,
                                     const Problem& problem);

/// Initial unknown vector: f_i evaluated at the retained nodes. Duplicate
/// interface nodes sample their own layer's f.
std::vector<double> sample_initial(const Problem& problem, const Mesh& mesh,
                                   const UnknownMap& map);

} // namespace mldiff
