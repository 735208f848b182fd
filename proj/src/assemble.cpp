#include "mldiff/assemble.hpp"

#include <string>

#include "mldiff/errors.hpp"

namespace mldiff {

namespace {

// Finds the elimination record for node (layer, j), or nullptr.
const EliminatedNode* elimination_at(const UnknownMap& map, std::size_t layer, std::size_t j) {
    for (const EliminatedNode& e : map.eliminated)
        if (e.layer == layer && e.node == j) return &e;
    return nullptr;
}

} // namespace

SemiDiscreteSystem assemble(const Problem& problem, const Mesh& mesh, const UnknownMap& map) {
    const std::size_t m = mesh.layer_count;
    const std::size_t n = mesh.per_layer;
    const std::size_t N = map.count;

    SemiDiscreteSystem sys;
    sys.A = TriDiag(N);
    sys.b.assign(N, 0.0);
    sys.rows.resize(N);

    auto set_sub = [&sys](std::size_t p, double v) { sys.A.sub[p - 1] = v; };
    auto set_super = [&sys](std::size_t p, double v) { sys.A.super[p] = v; };

    for (std::size_t p = 0; p < N; ++p) {
        const auto [i, j] = map.nodes[p];
        const Layer& layer = problem.layers[i];
        const double D = layer.diffusivity;
        const double g = layer.conductivity;
        const double h = mesh.spacing[i];
        RowOrigin origin{RowKind::Interior, i, -1};

        if (i == 0 && j == 0) {
            // Robin/Neumann left boundary (b_L != 0, else the node is eliminated)
            const BoundarySpec& bc = problem.bc_left;
            sys.A.diag[p] = -(2.0 * D / h) * (1.0 / h + bc.a / bc.b);
            set_super(p, 2.0 * D / (h * h));
            sys.b[p] += 2.0 * D * bc.c / (h * bc.b);
            origin.kind = RowKind::LeftBoundary;
        } else if (i == m - 1 && j == n) {
            const BoundarySpec& bc = problem.bc_right;
            set_sub(p, 2.0 * D / (h * h));
            sys.A.diag[p] = -(2.0 * D / h) * (1.0 / h + bc.a / bc.b);
            sys.b[p] += 2.0 * D * bc.c / (h * bc.b);
            origin.kind = RowKind::RightBoundary;
        } else if (j == n) {
            // retained left-hand interface node of interface i
            const InterfaceSpec& spec = problem.interfaces[i];
            const Layer& rlayer = problem.layers[i + 1];
            const double Dr = rlayer.diffusivity, gr = rlayer.conductivity, hr = mesh.spacing[i + 1];
            if (spec.kind == InterfaceKind::GI) {
                // single interface equation; u_{i+1,0} was eliminated
                const double th = spec.theta;
                const double beta = 2.0 * D * Dr * th / (g * h * th * Dr + gr * hr * D);
                set_sub(p, beta * g / h);
                sys.A.diag[p] = -beta * (g / h + gr / (th * hr));
                set_super(p, beta * gr / hr); // column of u_{i+1,1}
                origin.kind = RowKind::GIInterface;
            } else {
                const double H = spec.transfer;
                const double alpha = 2.0 * D / (g * h);
                set_sub(p, 2.0 * D / (h * h));
                sys.A.diag[p] = -alpha * (H + g / h);
                set_super(p, alpha * spec.theta * H); // column of u_{i+1,0}
                origin.kind = RowKind::GIILeft;
            }
            origin.interface_ = static_cast<std::ptrdiff_t>(i);
        } else if (j == 0) {
            // retained right-hand interface node of interface i-1
            const std::size_t k = i - 1;
            const InterfaceSpec& spec = problem.interfaces[k];
            const Layer& llayer = problem.layers[k];
            const double Dl = llayer.diffusivity, gl = llayer.conductivity, hl = mesh.spacing[k];
            if (spec.kind == InterfaceKind::GI) {
                // single interface equation; u_{i-1,n} was eliminated (theta < 1 form)
                const double th = spec.theta;
                const double beta = 2.0 * Dl * D / (gl * hl * th * D + g * h * Dl);
                set_sub(p, beta * gl / hl); // column of u_{i-1,n-1}
                sys.A.diag[p] = -beta * (th * gl / hl + g / h);
                set_super(p, beta * g / h);
                origin.kind = RowKind::GIInterface;
            } else {
                const double H = spec.transfer;
                const double alpha = 2.0 * D / (g * h);
                set_sub(p, alpha * H); // column of u_{i-1,n}
                sys.A.diag[p] = -alpha * (spec.theta * H + g / h);
                set_super(p, 2.0 * D / (h * h));
                origin.kind = RowKind::GIIRight;
            }
            origin.interface_ = static_cast<std::ptrdiff_t>(k);
        } else {
            // interior node; neighbours may be eliminated
            const double w = D / (h * h);
            sys.A.diag[p] = -2.0 * w;
            const EliminatedNode* left = j == 1 ? elimination_at(map, i, 0) : nullptr;
            const EliminatedNode* right = j == n - 1 ? elimination_at(map, i, n) : nullptr;
            if (left == nullptr) {
                set_sub(p, w);
            } else if (left->rule == ElimRule::DirichletLeft) {
                sys.b[p] += w * problem.bc_left.c / problem.bc_left.a;
                origin.kind = RowKind::DirichletAdjacent;
            } else { // GIEliminateRight: u_{i,0} = u_{i-1,n} / theta
                set_sub(p, w / problem.interfaces[left->interface_].theta);
                origin.kind = RowKind::GIAdjacent;
                origin.interface_ = static_cast<std::ptrdiff_t>(left->interface_);
            }
            if (right == nullptr) {
                set_super(p, w);
            } else if (right->rule == ElimRule::DirichletRight) {
                sys.b[p] += w * problem.bc_right.c / problem.bc_right.a;
                origin.kind = RowKind::DirichletAdjacent;
            } else { // GIEliminateLeft: u_{i,n} = theta * u_{i+1,0}
                set_super(p, w * problem.interfaces[right->interface_].theta);
                if (origin.kind != RowKind::DirichletAdjacent) {
                    origin.kind = RowKind::GIAdjacent;
                    origin.interface_ = static_cast<std::ptrdiff_t>(right->interface_);
                }
            }
        }
        sys.rows[p] = origin;
    }

    for (std::size_t p = 0; p < N; ++p)
        if (!(sys.A.diag[p] < 0.0))
            throw NumericalError("assemble: non-negative diagonal entry at row " + std::to_string(p));
    return sys;
}

} // namespace mldiff
