#pragma once

#include <cstddef>
#include <vector>

#include "mldiff/problem.hpp"

namespace mldiff {

/// Vertex-centered mesh, uniform within each layer: n+1 nodes per layer at
/// x_{i,j} = l_{i-1} + j*h_i. Interfaces carry duplicate nodes, one per side
/// (x_{i,n} == x_{i+1,0}). Control volumes have width h_i in the interior and
/// h_i/2 against a boundary or interface.
struct Mesh {
    std::size_t layer_count = 0; // m
    std::size_t per_layer = 0;   // n; each layer has n+1 nodes
    std::vector<double> spacing; // h_i, one per layer
    std::vector<double> coords;  // flat (i,j) -> x, length m*(n+1)

    std::size_t flat(std::size_t layer, std::size_t j) const { return layer * (per_layer + 1) + j; }
    double x(std::size_t layer, std::size_t j) const { return coords[flat(layer, j)]; }
    double volume_width(std::size_t layer, std::size_t j) const {
        const double h = spacing[layer];
        return (j == 0 || j == per_layer) ? 0.5 * h : h;
    }
    std::size_t node_count() const { return layer_count * (per_layer + 1); }
};

/// Builds the mesh for a validated problem. Requires n >= 2 so every layer
/// has at least one interior node.
Mesh build_mesh(const Problem& problem, std::size_t n);

} // namespace mldiff
