#include "mldiff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "mldiff/assemble.hpp"
#include "mldiff/errors.hpp"
#include "mldiff/unknowns.hpp"

namespace mldiff {

double relative_error(const std::vector<double>& numeric, const std::vector<double>& reference) {
    if (numeric.size() != reference.size())
        throw std::invalid_argument("relative_error: node sets differ");
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
        diff = std::max(diff, std::abs(reference[k] - numeric[k]));
        norm = std::max(norm, std::abs(reference[k]));
    }
    if (norm == 0.0) throw NumericalError("relative_error: reference norm is zero");
    return diff / norm;
}

Reference fine_grid_oracle(const Problem& problem, double t, const Mesh& query_mesh,
                           std::size_t factor) {
    if (!(t > 0.0)) throw std::invalid_argument("fine_grid_oracle: t must be positive");
    if (factor < 2) throw std::invalid_argument("fine_grid_oracle: refinement factor must be >= 2");

    const std::size_t n = query_mesh.per_layer;
    const std::size_t n_fine = factor * n;
    const Mesh fine = build_mesh(problem, n_fine);
    const UnknownMap map = index_unknowns(problem, fine);
    const SemiDiscreteSystem system = assemble(problem, fine, map);

    // tau_fine^2 <= 0.01 * h_fine^2, commensurate with t by construction
    const double h_min = *std::min_element(fine.spacing.begin(), fine.spacing.end());
    const auto steps = static_cast<std::size_t>(std::ceil(t / (0.1 * h_min)));
    const double tau = t / static_cast<double>(steps);

    const MarchResult run = march(system, sample_initial(problem, fine, map), tau,
                                  static_cast<double>(steps) * tau, SchemeId::CrankNicolson, {},
                                  map, problem);

    Reference ref;
    ref.provider = ReferenceProvider::FineGridOracle;
    ref.values.resize(query_mesh.node_count());
    for (std::size_t i = 0; i < query_mesh.layer_count; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            ref.values[query_mesh.flat(i, j)] = run.final[fine.flat(i, factor * j)];
    return ref;
}

std::size_t nodes_per_layer_for_spacing(const Problem& problem, double h) {
    if (!(h > 0.0)) throw ConfigError("spacing must be positive");
    std::size_t n = 0;
    for (std::size_t i = 0; i < problem.layers.size(); ++i) {
        const double count = problem.layers[i].width() / h;
        const auto rounded = static_cast<std::size_t>(std::llround(count));
        if (rounded < 2 || std::abs(count - static_cast<double>(rounded)) > 1e-9 * count)
            throw ConfigError("spacing does not divide layer " + std::to_string(i + 1) +
                              " into at least two equal cells");
        if (i == 0)
            n = rounded;
        else if (rounded != n)
            throw ConfigError("per-layer node counts must match; spacing splits layers unevenly");
    }
    return n;
}

std::vector<ErrorRecord> convergence_study(const Problem& problem, double tau,
                                           const std::vector<double>& h_list, double t_eval,
                                           SchemeId scheme) {
    auto cell = [&problem, tau, t_eval, scheme](double h) {
        const std::size_t n = nodes_per_layer_for_spacing(problem, h);
        const Mesh mesh = build_mesh(problem, n);
        const UnknownMap map = index_unknowns(problem, mesh);
        const SemiDiscreteSystem system = assemble(problem, mesh, map);
        const MarchResult run = march(system, sample_initial(problem, mesh, map), tau, t_eval,
                                      scheme, {}, map, problem);
        const Reference ref = fine_grid_oracle(problem, t_eval, mesh);
        return relative_error(run.final, ref.values);
    };

    std::vector<std::future<double>> cells;
    cells.reserve(h_list.size());
    for (double h : h_list) cells.push_back(std::async(std::launch::async, cell, h));

    std::vector<ErrorRecord> records;
    records.reserve(h_list.size());
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        ErrorRecord rec;
        rec.h = h_list[k];
        rec.error = cells[k].get();
        if (k > 0 && records[k - 1].error > 0.0) rec.ratio = records[k - 1].error / rec.error;
        records.push_back(rec);
    }
    return records;
}

} // namespace mldiff
