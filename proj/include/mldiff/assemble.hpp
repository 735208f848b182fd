#pragma once

#include <cstddef>
#include <vector>

#include "mldiff/mesh.hpp"
#include "mldiff/problem.hpp"
#include "mldiff/tridiag.hpp"
#include "mldiff/unknowns.hpp"

namespace mldiff {

/// Which finite volume equation produced a row of A.
enum class RowKind {
    Interior,
    LeftBoundary,
    RightBoundary,
    DirichletAdjacent,
    GIInterface,
    GIAdjacent,
    GIILeft,  // row of u_{i,n} at a GII interface
    GIIRight, // row of u_{i+1,0} at a GII interface
};

struct RowOrigin {
    RowKind kind = RowKind::Interior;
    std::size_t layer = 0;        // layer owning the node
    std::ptrdiff_t interface_ = -1; // interface index for interface/adjacent rows
};

/// The semi-discrete system du/dt = A u + b with per-row provenance.
/// A is strictly tridiagonal with negative diagonal entries and positive
/// off-diagonal products.
struct SemiDiscreteSystem {
    TriDiag A;
    std::vector<double> b;
    std::vector<RowOrigin> rows;

    std::size_t unknown_count() const { return A.size(); }
};

/// Fills one finite volume equation per retained node. The elimination
/// choices recorded in the map decide which interface formulation is used.
SemiDiscreteSystem assemble(const Problem& problem, const Mesh& mesh, const UnknownMap& map);

} // namespace mldiff
