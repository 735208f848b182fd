#include "mldiff/mesh.hpp"

#include <stdexcept>

namespace mldiff {

Mesh build_mesh(const Problem& problem, std::size_t n) {
    if (n < 2) throw std::invalid_argument("build_mesh: need n >= 2 so every layer has an interior node");
    Mesh mesh;
    mesh.layer_count = problem.layers.size();
    mesh.per_layer = n;
    mesh.spacing.reserve(mesh.layer_count);
    mesh.coords.resize(mesh.layer_count * (n + 1));
    for (std::size_t i = 0; i < mesh.layer_count; ++i) {
        const Layer& layer = problem.layers[i];
        const double h = layer.width() / static_cast<double>(n);
        mesh.spacing.push_back(h);
        for (std::size_t j = 0; j <= n; ++j)
            mesh.coords[mesh.flat(i, j)] = j == n ? layer.right : layer.left + static_cast<double>(j) * h;
    }
    return mesh;
}

} // namespace mldiff
