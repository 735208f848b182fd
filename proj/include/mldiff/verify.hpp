#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mldiff/mesh.hpp"
#include "mldiff/problem.hpp"
#include "mldiff/stepper.hpp"

namespace mldiff {

/// Relative max-norm error over all mesh nodes:
/// max|ref - num| / max|ref|. Throws NumericalError when the reference norm
/// is zero.
double relative_error(const std::vector<double>& numeric, const std::vector<double>& reference);

enum class ReferenceProvider { FineGridOracle, ExternalTable };

/// A reference solution restricted to the query mesh, with provenance.
struct Reference {
    ReferenceProvider provider = ReferenceProvider::FineGridOracle;
    std::vector<double> values; // full-node values on the query mesh
};

/// Reference solution at time t on the query mesh, produced by a
/// Crank-Nicolson solve on a mesh refined by `factor` (default 16x) with
/// tau_fine <= 0.1 * h_fine. The fine mesh nests the query mesh node for
/// node, so restriction is exact index picking, no interpolation.
Reference fine_grid_oracle(const Problem& problem, double t, const Mesh& query_mesh,
                           std::size_t factor = 16);

/// One row of a grid-refinement study.
struct ErrorRecord {
    double h = 0.0;
    double error = 0.0;
    std::optional<double> ratio; // error(2h) / error(h), absent on the first row
};

/// Marches the problem at each spacing in h_list (descending powers of two),
/// measures the error against the fine-grid oracle at t_eval, and reports
/// successive error ratios. Every layer width must be an integer multiple of
/// each h. Cells run concurrently.
std::vector<ErrorRecord> convergence_study(const Problem& problem, double tau,
                                           const std::vector<double>& h_list, double t_eval,
                                           SchemeId scheme);

/// Spacing -> per-layer node count; throws ConfigError when h does not
/// divide every layer width evenly (per-layer n is uniform).
std::size_t nodes_per_layer_for_spacing(const Problem& problem, double h);

} // namespace mldiff
