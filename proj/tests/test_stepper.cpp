#include <doctest.h>

#include <cmath>
#include <random>

#include "mldiff/assemble.hpp"
#include "mldiff/mesh.hpp"
#include "mldiff/stability.hpp"
#include "mldiff/stepper.hpp"
#include "mldiff/unknowns.hpp"
#include "support/cases.hpp"
#include "support/random_problems.hpp"
#include "support/steady_oracle.hpp"

using namespace mldiff;
using namespace mldiff::testing;

namespace {

struct BuiltCase {
    Problem problem;
    Mesh mesh;
    UnknownMap map;
    SemiDiscreteSystem system;
};

BuiltCase build_case(const Problem& problem, std::size_t n) {
    BuiltCase built{problem, build_mesh(problem, n), {}, {}};
    built.map = index_unknowns(built.problem, built.mesh);
    built.system = assemble(built.problem, built.mesh, built.map);
    return built;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
    return gap;
}

} // namespace

TEST_SUITE("stepper") {

TEST_CASE("step: zero system stays zero") {
    TriDiag A(3);
    A.diag = {-1.0, -1.0, -1.0};
    const std::vector<double> zero(3, 0.0);
    for (SchemeId scheme :
         {SchemeId::ForwardEuler, SchemeId::BackwardEuler, SchemeId::CrankNicolson})
        CHECK(max_gap(step(scheme, A, zero, 0.1, zero), zero) == 0.0);
}

TEST_CASE("step: one forward Euler step from a delta, by hand") {
    // u' = u + tau*(A u + b); interior Laplacian row scales the delta's
    // neighbours by tau*D/h^2 and the centre by 1 - 2*tau*D/h^2
    Problem problem;
    problem.layers = {Layer::make(0.0, 1.0, 0.7, zero_initial())};
    problem.bc_left = {1.0, 0.0, 0.0};
    problem.bc_right = {1.0, 0.0, 0.0};
    const BuiltCase built = build_case(problem, 8);
    const double h = built.mesh.spacing[0];
    const double tau = 1e-3;
    std::vector<double> u(built.map.count, 0.0);
    const std::size_t mid = built.map.p_of(0, 4);
    u[mid] = 1.0;
    const auto next = step(SchemeId::ForwardEuler, built.system.A, built.system.b, tau, u);
    const double w = tau * 0.7 / (h * h);
    CHECK(next[mid] == doctest::Approx(1.0 - 2.0 * w));
    CHECK(next[mid - 1] == doctest::Approx(w));
    CHECK(next[mid + 1] == doctest::Approx(w));
    CHECK(next[mid + 2] == doctest::Approx(0.0));
}

TEST_CASE("step: the steady state is a fixed point of all three schemes") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 25; ++rep) {
        const RandomProblem rp = random_problem(rng);
        const BuiltCase built = build_case(rp.problem, rp.n);
        const auto steady = steady_state(built.system);
        double norm = 1e-30;
        for (double v : steady) norm = std::max(norm, std::abs(v));
        for (SchemeId scheme :
             {SchemeId::ForwardEuler, SchemeId::BackwardEuler, SchemeId::CrankNicolson}) {
            const double tau = scheme == SchemeId::ForwardEuler ? 1e-6 : 0.37;
            const auto next = step(scheme, built.system.A, built.system.b, tau, steady);
            CHECK(max_gap(next, steady) <= 1e-10 * norm);
        }
    }
}

TEST_CASE("march: commensurability is enforced") {
    const BuiltCase built = build_case(case_a(), 4);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    CHECK_THROWS_AS(march(built.system, u0, 0.1, 0.35, SchemeId::BackwardEuler, {}, built.map,
                          built.problem),
                    std::invalid_argument);
    CHECK_THROWS_AS(march(built.system, u0, 0.1, 0.4, SchemeId::BackwardEuler, {0.15}, built.map,
                          built.problem),
                    std::invalid_argument);
    CHECK_THROWS_AS(march(built.system, u0, 0.1, 0.4, SchemeId::BackwardEuler, {0.5}, built.map,
                          built.problem),
                    std::invalid_argument);
    // the full-study step divides t_end = 0.2 within the slack
    const auto run = march(built.system, u0, 1e-5, 0.2, SchemeId::BackwardEuler, {0.1, 0.2},
                           built.map, built.problem);
    CHECK(run.step_count == 20000);
    REQUIRE(run.times.size() == 2);
    CHECK(run.times[0] == doctest::Approx(0.1));
    CHECK(run.states[0].size() == built.mesh.node_count());
}

TEST_CASE("march: case E at the stable step approaches the steady state") {
    const BuiltCase built = build_case(case_e(), 20);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    const double tau = 2.78e-4;
    const auto run = march(built.system, u0, tau, 40000.0 * tau, SchemeId::ForwardEuler, {},
                           built.map, built.problem);
    CHECK(!run.diverged);
    const auto steady_full =
        reconstruct_full(built.map, steady_state(built.system), built.problem);
    CHECK(max_gap(run.final, steady_full) < 1e-3);
}

TEST_CASE("march: case F past the classical bound trips the divergence detector") {
    const BuiltCase built = build_case(case_f(), 20);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    const auto run = march(built.system, u0, 1.5625e-3, 1.0, SchemeId::ForwardEuler, {},
                           built.map, built.problem);
    CHECK(run.diverged);
    CHECK(run.diverged_at_step < 100);
    CHECK(run.step_count == run.diverged_at_step);
}

TEST_CASE("march: implicit schemes take the stiff step in stride") {
    const BuiltCase built = build_case(case_f(), 20);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    for (SchemeId scheme : {SchemeId::BackwardEuler, SchemeId::CrankNicolson}) {
        const auto run = march(built.system, u0, 0.05, 10.0, scheme, {}, built.map,
                               built.problem);
        CHECK(!run.diverged);
    }
}

TEST_CASE("steady_state: flux balance at the interface") {
    // Dirichlet at both ends so the steady profile has a genuine kink:
    // D1 s1 = D2 s2 across the interface, u at the interface =
    // (D1 cL + D2 cR) / (D1 + D2) for equal widths
    TwoLayerSpec spec;
    spec.right = {1.0, 0.0, 0.0};
    const BuiltCase built = build_case(two_layer(spec), 16);
    const auto full = reconstruct_full(built.map, steady_state(built.system), built.problem);
    const double u_interface = full[built.mesh.flat(0, 16)];
    CHECK(u_interface == doctest::Approx(1.0 / 1.1).epsilon(1e-10));
    const double s1 = (full[built.mesh.flat(0, 16)] - full[built.mesh.flat(0, 0)]) / 0.5;
    const double s2 = (full[built.mesh.flat(1, 16)] - full[built.mesh.flat(1, 0)]) / 0.5;
    CHECK(1.0 * s1 == doctest::Approx(0.1 * s2).epsilon(1e-10));
    // case A proper (zero-flux right end) settles at u = 1 everywhere
    const BuiltCase a = build_case(case_a(), 16);
    for (double v : reconstruct_full(a.map, steady_state(a.system), a.problem))
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("steady_state: matches the exact piecewise-linear profile on random problems") {
    std::mt19937 rng(37);
    for (int rep = 0; rep < 40; ++rep) {
        const RandomProblem rp = random_problem(rng);
        const BuiltCase built = build_case(rp.problem, rp.n);
        const auto mine = reconstruct_full(built.map, steady_state(built.system), built.problem);
        const auto exact = exact_steady_full(rp.problem, built.mesh);
        double scale = 1.0;
        for (double v : exact) scale = std::max(scale, std::abs(v));
        CHECK(max_gap(mine, exact) <= 1e-9 * scale);
    }
}

TEST_CASE("steady_state: long backward Euler march converges to it") {
    const BuiltCase built = build_case(case_c(), 8);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    const auto run = march(built.system, u0, 0.01, 100000 * 0.01, SchemeId::BackwardEuler, {},
                           built.map, built.problem);
    const auto steady_full =
        reconstruct_full(built.map, steady_state(built.system), built.problem);
    CHECK(max_gap(run.final, steady_full) < 1e-8);
}

TEST_CASE("temporal accuracy: halving tau halves Euler error, quarters Crank-Nicolson") {
    const BuiltCase built = build_case(case_a(), 8);
    const auto u0 = sample_initial(built.problem, built.mesh, built.map);
    const double t = 0.04;
    // reference: same mesh, tiny Crank-Nicolson steps (temporal error ~ 1e-12)
    const auto ref = march(built.system, u0, t / 65536.0, t, SchemeId::CrankNicolson, {},
                           built.map, built.problem);

    auto error_at = [&](SchemeId scheme, double tau) {
        const auto run = march(built.system, u0, tau, t, scheme, {}, built.map, built.problem);
        return max_gap(run.final, ref.final);
    };
    const double tau0 = t / 256.0;
    for (SchemeId scheme : {SchemeId::ForwardEuler, SchemeId::BackwardEuler}) {
        const double ratio = error_at(scheme, tau0) / error_at(scheme, tau0 / 2.0);
        CHECK(ratio > 1.7);
        CHECK(ratio < 2.4);
    }
    const double cn_ratio =
        error_at(SchemeId::CrankNicolson, tau0) / error_at(SchemeId::CrankNicolson, tau0 / 2.0);
    CHECK(cn_ratio > 3.4);
    CHECK(cn_ratio < 4.6);
}

TEST_CASE("unconditional stability of the implicit schemes on random systems") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 15; ++rep) {
        const RandomProblem rp = random_problem(rng);
        const BuiltCase built = build_case(rp.problem, rp.n);
        const auto spectrum = eigenvalues(symmetrize(built.system.A).S);
        for (double tau = 1e-6; tau <= 1e2 * 1.0001; tau *= 10.0) {
            const auto verdict = verdict_from_spectrum(spectrum, tau);
            CHECK(verdict.rho_backward <= 1.0);
            CHECK(verdict.rho_crank <= 1.0);
        }
    }
}

} // TEST_SUITE
