#include "mldiff/unknowns.hpp"

#include <stdexcept>

namespace mldiff {

UnknownMap index_unknowns(const Problem& problem, const Mesh& mesh, GIElimination policy) {
    const std::size_t m = mesh.layer_count;
    const std::size_t n = mesh.per_layer;
    UnknownMap map;
    map.layer_count = m;
    map.per_layer = n;
    map.index.assign(m * (n + 1), -2); // -2: not yet decided

    auto mark = [&map, n](std::size_t layer, std::size_t j, EliminatedNode e) {
        map.index[layer * (n + 1) + j] = -1;
        map.eliminated.push_back(e);
    };

    if (problem.bc_left.dirichlet()) {
        mark(0, 0, {0, 0, ElimRule::DirichletLeft, 0});
        ++map.dirichlet_eliminations;
    }
    if (problem.bc_right.dirichlet()) {
        mark(m - 1, n, {m - 1, n, ElimRule::DirichletRight, 0});
        ++map.dirichlet_eliminations;
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const InterfaceSpec& spec = problem.interfaces[k];
        if (spec.kind != InterfaceKind::GI) continue;
        const bool drop_right = policy == GIElimination::Auto ? spec.theta >= 1.0
                                                              : policy == GIElimination::Right;
        if (drop_right)
            mark(k + 1, 0, {k + 1, 0, ElimRule::GIEliminateRight, k});
        else
            mark(k, n, {k, n, ElimRule::GIEliminateLeft, k});
        ++map.gi_eliminations;
    }

    std::ptrdiff_t p = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
            const std::size_t f = i * (n + 1) + j;
            if (map.index[f] == -2) {
                map.index[f] = p++;
                map.nodes.emplace_back(i, j);
            }
        }
    map.count = static_cast<std::size_t>(p);
    return map;
}

std::vector<double> reconstruct_full(const UnknownMap& map, const std::vector<double>& u,
                                     const Problem& problem) {
    if (u.size() != map.count)
        throw std::invalid_argument("reconstruct_full: unknown vector has wrong length");
    const std::size_t n = map.per_layer;
    std::vector<double> full(map.layer_count * (n + 1), 0.0);
    for (std::size_t p = 0; p < map.count; ++p) {
        const auto [i, j] = map.nodes[p];
        full[i * (n + 1) + j] = u[p];
    }
    for (const EliminatedNode& e : map.eliminated) {
        double value = 0.0;
        switch (e.rule) {
        case ElimRule::DirichletLeft:
            value = problem.bc_left.c / problem.bc_left.a;
            break;
        case ElimRule::DirichletRight:
            value = problem.bc_right.c / problem.bc_right.a;
            break;
        case ElimRule::GIEliminateRight: // u_{i+1,0} = u_{i,n} / theta
            value = full[(e.layer - 1) * (n + 1) + n] / problem.interfaces[e.interface_].theta;
            break;
        case ElimRule::GIEliminateLeft: // u_{i,n} = theta * u_{i+1,0}
            value = problem.interfaces[e.interface_].theta * full[(e.layer + 1) * (n + 1)];
            break;
        }
        full[e.layer * (n + 1) + e.node] = value;
    }
    return full;
}

std::vector<double> sample_initial(const Problem& problem, const Mesh& mesh,
                                   const UnknownMap& map) {
    std::vector<double> u0(map.count);
    for (std::size_t p = 0; p < map.count; ++p) {
        const auto [i, j] = map.nodes[p];
        u0[p] = problem.layers[i].initial(mesh.x(i, j));
    }
    return u0;
}

} // namespace mldiff
