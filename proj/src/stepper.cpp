#include "mldiff/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "mldiff/errors.hpp"

namespace mldiff {

const char* scheme_name(SchemeId scheme) {
    switch (scheme) {
    case SchemeId::ForwardEuler: return "forward-euler";
    case SchemeId::BackwardEuler: return "backward-euler";
    case SchemeId::CrankNicolson: return "crank-nicolson";
    }
    return "?";
}

namespace {

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// out = u + tau*(A u + b), fused
void forward_step(const TriDiag& A, const std::vector<double>& b, double tau,
                  const std::vector<double>& u, std::vector<double>& out) {
    const std::size_t n = u.size();
    for (std::size_t p = 0; p < n; ++p) {
        double acc = A.diag[p] * u[p] + b[p];
        if (p > 0) acc += A.sub[p - 1] * u[p - 1];
        if (p + 1 < n) acc += A.super[p] * u[p + 1];
        out[p] = u[p] + tau * acc;
    }
}

long long commensurate_steps(double value, double tau, const char* what) {
    const double ratio = value / tau;
    const long long k = std::llround(ratio);
    if (std::abs(static_cast<double>(k) * tau - value) > 1e-9 * tau)
        throw std::invalid_argument(std::string(what) +
                                    " is not an integer multiple of the time step");
    return k;
}

} // namespace

std::vector<double> step(SchemeId scheme, const TriDiag& A, const std::vector<double>& b,
                         double tau, const std::vector<double>& u) {
    if (!(tau > 0.0)) throw std::invalid_argument("step: tau must be positive");
    if (u.size() != A.size() || b.size() != A.size())
        throw std::invalid_argument("step: dimension mismatch");
    std::vector<double> out(u.size());
    switch (scheme) {
    case SchemeId::ForwardEuler:
        forward_step(A, b, tau, u, out);
        return out;
    case SchemeId::BackwardEuler: {
        std::vector<double> rhs(u);
        for (std::size_t p = 0; p < u.size(); ++p) rhs[p] += tau * b[p];
        return thomas_solve(identity_plus_scaled(A, -tau), rhs);
    }
    case SchemeId::CrankNicolson: {
        std::vector<double> rhs = matvec(identity_plus_scaled(A, 0.5 * tau), u);
        for (std::size_t p = 0; p < u.size(); ++p) rhs[p] += tau * b[p];
        return thomas_solve(identity_plus_scaled(A, -0.5 * tau), rhs);
    }
    }
    throw std::invalid_argument("step: unknown scheme");
}

MarchResult march(const SemiDiscreteSystem& system, const std::vector<double>& u0, double tau,
                  double t_end, SchemeId scheme, const std::vector<double>& snapshot_times,
                  const UnknownMap& map, const Problem& problem) {
    const TriDiag& A = system.A;
    const std::vector<double>& b = system.b;
    if (u0.size() != A.size()) throw std::invalid_argument("march: initial vector has wrong length");
    if (!(tau > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("march: tau and t_end must be positive");

    const long long steps = commensurate_steps(t_end, tau, "t_end");
    std::vector<long long> snap_steps;
    snap_steps.reserve(snapshot_times.size());
    for (double t : snapshot_times) {
        const long long k = commensurate_steps(t, tau, "snapshot time");
        if (k < 0 || k > steps)
            throw std::invalid_argument("march: snapshot time outside [0, t_end]");
        snap_steps.push_back(k);
    }

    const std::vector<double> steady = steady_state(system);
    const double blowup = 1e6 * (max_norm(u0) + max_norm(steady));

    // fixed tau: factor the implicit operator once
    std::optional<ThomasFactors> factors;
    std::optional<TriDiag> half_forward; // I + tau/2 A for Crank-Nicolson
    if (scheme == SchemeId::BackwardEuler)
        factors.emplace(identity_plus_scaled(A, -tau));
    else if (scheme == SchemeId::CrankNicolson) {
        factors.emplace(identity_plus_scaled(A, -0.5 * tau));
        half_forward = identity_plus_scaled(A, 0.5 * tau);
    }

    MarchResult result;
    result.tau = tau;
    std::vector<double> u(u0), next(u0.size()), rhs(u0.size());

    auto record_snapshot = [&](long long k, const std::vector<double>& state) {
        for (long long s : snap_steps)
            if (s == k) {
                result.times.push_back(static_cast<double>(k) * tau);
                result.states.push_back(reconstruct_full(map, state, problem));
                return;
            }
    };

    record_snapshot(0, u);
    long long k = 0;
    for (; k < steps; ++k) {
        switch (scheme) {
        case SchemeId::ForwardEuler:
            forward_step(A, b, tau, u, next);
            u.swap(next);
            break;
        case SchemeId::BackwardEuler:
            for (std::size_t p = 0; p < u.size(); ++p) u[p] += tau * b[p];
            factors->solve_in_place(u);
            break;
        case SchemeId::CrankNicolson: {
            const TriDiag& M = *half_forward;
            const std::size_t nn = u.size();
            for (std::size_t p = 0; p < nn; ++p) {
                double acc = M.diag[p] * u[p] + tau * b[p];
                if (p > 0) acc += M.sub[p - 1] * u[p - 1];
                if (p + 1 < nn) acc += M.super[p] * u[p + 1];
                rhs[p] = acc;
            }
            u.swap(rhs);
            factors->solve_in_place(u);
            break;
        }
        }
        record_snapshot(k + 1, u);
        if (max_norm(u) > blowup) {
            result.diverged = true;
            result.diverged_at_step = static_cast<std::size_t>(k + 1);
            ++k;
            break;
        }
    }
    result.step_count = static_cast<std::size_t>(k);
    result.final_time = static_cast<double>(k) * tau;
    result.final = reconstruct_full(map, u, problem);
    return result;
}

std::vector<double> steady_state(const SemiDiscreteSystem& system) {
    std::vector<double> rhs(system.b.size());
    for (std::size_t p = 0; p < rhs.size(); ++p) rhs[p] = -system.b[p];
    return thomas_solve(system.A, rhs);
}

} // namespace mldiff
