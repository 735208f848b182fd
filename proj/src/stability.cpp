#include "mldiff/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "mldiff/errors.hpp"

namespace mldiff {

GershgorinBound gershgorin_bound(const TriDiag& A) {
    const std::size_t n = A.size();
    GershgorinBound out;
    out.rows.resize(n);
    out.tau_max = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n; ++p) {
        if (!(A.diag[p] < 0.0))
            throw NumericalError("gershgorin_bound: non-negative diagonal entry at row " +
                                 std::to_string(p));
        GershgorinRow& row = out.rows[p];
        row.row = p;
        row.center = -A.diag[p];
        row.radius = 0.0;
        if (p > 0) row.radius += std::abs(A.sub[p - 1]);
        if (p + 1 < n) row.radius += std::abs(A.super[p]);
        row.tau_max = 2.0 / (row.center + row.radius);
        if (row.tau_max < out.tau_max) {
            out.tau_max = row.tau_max;
            out.binding_row = p;
        }
    }
    return out;
}

namespace {

// classical per-layer bound h^2/(2D)
double classical(const Layer& layer, double h) { return h * h / (2.0 * layer.diffusivity); }

struct EntryKey {
    BoundClass cls;
    std::ptrdiff_t layer;
    std::ptrdiff_t interface_;
    bool operator<(const EntryKey& o) const {
        if (cls != o.cls) return cls < o.cls;
        if (layer != o.layer) return layer < o.layer;
        return interface_ < o.interface_;
    }
};

std::string class_label(const EntryKey& key, const Problem& problem) {
    std::ostringstream s;
    switch (key.cls) {
    case BoundClass::Interior:
        s << "interior (layer " << key.layer + 1 << ")";
        break;
    case BoundClass::LeftBoundary:
        s << "left boundary (" << (problem.bc_left.a == 0.0 ? "Neumann" : "Robin") << ")";
        break;
    case BoundClass::RightBoundary:
        s << "right boundary (" << (problem.bc_right.a == 0.0 ? "Neumann" : "Robin") << ")";
        break;
    case BoundClass::DirichletAdjacent:
        s << "Dirichlet-adjacent (layer " << key.layer + 1 << ")";
        break;
    case BoundClass::GIInterface: {
        const InterfaceSpec& spec = problem.interfaces[static_cast<std::size_t>(key.interface_)];
        s << "interface " << key.interface_ + 1 << " (GI, theta "
          << (spec.theta >= 1.0 ? ">= 1" : "< 1") << ")";
        break;
    }
    case BoundClass::GIAdjacent:
        s << "interface-adjacent (interface " << key.interface_ + 1 << ")";
        break;
    case BoundClass::GIIInterface:
        s << "interface " << key.interface_ + 1 << " (GII)";
        break;
    case BoundClass::MixedAdjacent:
        s << "doubly-modified row (layer " << key.layer + 1 << ")";
        break;
    }
    return s.str();
}

} // namespace

TableBounds table1_bounds(const Problem& problem, const Mesh& mesh) {
    const std::size_t m = mesh.layer_count;
    const std::size_t n = mesh.per_layer;

    // elimination pattern, derived from the problem alone
    auto left_end_eliminated = [&](std::size_t i) {
        if (i == 0) return problem.bc_left.dirichlet();
        const InterfaceSpec& spec = problem.interfaces[i - 1];
        return spec.kind == InterfaceKind::GI && spec.theta >= 1.0;
    };
    auto right_end_eliminated = [&](std::size_t i) {
        if (i == m - 1) return problem.bc_right.dirichlet();
        const InterfaceSpec& spec = problem.interfaces[i];
        return spec.kind == InterfaceKind::GI && spec.theta < 1.0;
    };

    std::map<EntryKey, std::pair<double, bool>> grouped; // key -> (tau_max, additional)
    auto add = [&grouped](EntryKey key, double tau_max, bool additional) {
        auto it = grouped.find(key);
        if (it == grouped.end())
            grouped.emplace(key, std::make_pair(tau_max, additional));
        else
            it->second.first = std::min(it->second.first, tau_max);
    };

    for (std::size_t i = 0; i < m; ++i) {
        const Layer& layer = problem.layers[i];
        const double D = layer.diffusivity, g = layer.conductivity, h = mesh.spacing[i];
        const std::ptrdiff_t L = static_cast<std::ptrdiff_t>(i);

        // j = 0 rows
        if (i == 0) {
            if (!problem.bc_left.dirichlet()) {
                const BoundarySpec& bc = problem.bc_left;
                const double bound = (2.0 * bc.b / (2.0 * bc.b + bc.a * h)) * classical(layer, h);
                add({BoundClass::LeftBoundary, L, -1}, bound, bc.a > 0.0);
            }
        } else {
            const InterfaceSpec& spec = problem.interfaces[i - 1];
            const Layer& llayer = problem.layers[i - 1];
            const double Dl = llayer.diffusivity, gl = llayer.conductivity, hl = mesh.spacing[i - 1];
            if (spec.kind == InterfaceKind::GI && spec.theta < 1.0) {
                // interface equation written at the right-hand node
                const double th = spec.theta;
                const double bound = (gl * hl * th * D + g * h * Dl) * hl * h /
                                     (((1.0 + th) * gl * h + 2.0 * g * hl) * Dl * D);
                add({BoundClass::GIInterface, -1, static_cast<std::ptrdiff_t>(i - 1)}, bound, true);
            }
            // GII handled at the left-hand node; GI theta >= 1 eliminates this node
        }

        // j = n rows
        if (i == m - 1) {
            if (!problem.bc_right.dirichlet()) {
                const BoundarySpec& bc = problem.bc_right;
                const double bound = (2.0 * bc.b / (2.0 * bc.b + bc.a * h)) * classical(layer, h);
                add({BoundClass::RightBoundary, L, -1}, bound, bc.a > 0.0);
            }
        } else {
            const InterfaceSpec& spec = problem.interfaces[i];
            const Layer& rlayer = problem.layers[i + 1];
            const double Dr = rlayer.diffusivity, gr = rlayer.conductivity, hr = mesh.spacing[i + 1];
            const double th = spec.theta;
            if (spec.kind == InterfaceKind::GI) {
                if (th >= 1.0) {
                    const double bound = (g * h * th * Dr + gr * hr * D) * h * hr /
                                         ((2.0 * th * g * hr + (1.0 + th) * gr * h) * D * Dr);
                    add({BoundClass::GIInterface, -1, static_cast<std::ptrdiff_t>(i)}, bound,
                        th != 1.0);
                }
            } else {
                const double H = spec.transfer;
                const double left = (2.0 * g / ((1.0 + th) * H * h + 2.0 * g)) * classical(layer, h);
                const double right =
                    (2.0 * gr / ((1.0 + th) * H * hr + 2.0 * gr)) * classical(rlayer, hr);
                add({BoundClass::GIIInterface, -1, static_cast<std::ptrdiff_t>(i)},
                    std::min(left, right), true);
            }
        }

        // interior rows, including eliminated-neighbour modifications
        for (std::size_t j = 1; j < n; ++j) {
            double w_left = 1.0, w_right = 1.0;
            bool dirichlet_mod = false, gi_mod = false;
            std::ptrdiff_t iface = -1;
            if (j == 1 && left_end_eliminated(i)) {
                if (i == 0) {
                    w_left = 0.0;
                    dirichlet_mod = true;
                } else {
                    w_left = 1.0 / problem.interfaces[i - 1].theta;
                    gi_mod = true;
                    iface = static_cast<std::ptrdiff_t>(i - 1);
                }
            }
            if (j == n - 1 && right_end_eliminated(i)) {
                if (i == m - 1) {
                    w_right = 0.0;
                    dirichlet_mod = true;
                } else {
                    w_right = problem.interfaces[i].theta;
                    gi_mod = true;
                    iface = static_cast<std::ptrdiff_t>(i);
                }
            }
            const double bound = (4.0 / (2.0 + w_left + w_right)) * classical(layer, h);
            EntryKey key{BoundClass::Interior, L, -1};
            if (dirichlet_mod && gi_mod)
                key = {BoundClass::MixedAdjacent, L, iface};
            else if (dirichlet_mod)
                key = {BoundClass::DirichletAdjacent, L, -1};
            else if (gi_mod)
                key = {BoundClass::GIAdjacent, L, iface};
            add(key, bound, key.cls == BoundClass::Interior);
        }
    }

    TableBounds out;
    out.tau_max = std::numeric_limits<double>::infinity();
    for (const auto& [key, value] : grouped) {
        BoundEntry entry;
        entry.cls = key.cls;
        entry.layer = key.layer;
        entry.interface_ = key.interface_;
        entry.tau_max = value.first;
        entry.additional_restriction = value.second;
        entry.label = class_label(key, problem);
        if (entry.tau_max < out.tau_max) {
            out.tau_max = entry.tau_max;
            out.binding = out.entries.size();
        }
        out.entries.push_back(std::move(entry));
    }
    return out;
}

SpectralVerdict verdict_from_spectrum(const std::vector<double>& spectrum, double tau) {
    SpectralVerdict v;
    for (double lam : spectrum) {
        v.rho_forward = std::max(v.rho_forward, std::abs(1.0 + tau * lam));
        v.rho_backward = std::max(v.rho_backward, 1.0 / std::abs(1.0 - tau * lam));
        v.rho_crank = std::max(v.rho_crank,
                               std::abs((1.0 + 0.5 * tau * lam) / (1.0 - 0.5 * tau * lam)));
    }
    v.stable_forward = v.rho_forward <= 1.0;
    v.stable_backward = v.rho_backward <= 1.0;
    v.stable_crank = v.rho_crank <= 1.0;
    return v;
}

SpectralVerdict spectral_verdict(const TriDiag& A, double tau) {
    return verdict_from_spectrum(eigenvalues(symmetrize(A).S), tau);
}

StabilityReport analyze_stability(const Problem& problem, const Mesh& mesh,
                                  const SemiDiscreteSystem& system, std::optional<double> tau) {
    StabilityReport report;
    report.gershgorin = gershgorin_bound(system.A);
    report.table = table1_bounds(problem, mesh);
    report.spectrum = eigenvalues(symmetrize(system.A).S);
    report.tau_max_exact = 2.0 / std::abs(report.spectrum.front());
    report.tau = tau;
    if (tau) report.verdict = verdict_from_spectrum(report.spectrum, *tau);
    return report;
}

} // namespace mldiff
