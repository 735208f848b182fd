#include <doctest.h>

#include <cmath>
#include <random>

#include "mldiff/assemble.hpp"
#include "mldiff/errors.hpp"
#include "mldiff/mesh.hpp"
#include "mldiff/stepper.hpp"
#include "mldiff/unknowns.hpp"
#include "support/cases.hpp"
#include "support/random_problems.hpp"

using namespace mldiff;
using namespace mldiff::testing;

TEST_SUITE("discretise") {

TEST_CASE("mesh: two equal layers at n = 20 give h = 0.025") {
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 20);
    CHECK(mesh.spacing[0] == doctest::Approx(0.025));
    CHECK(mesh.spacing[1] == doctest::Approx(0.025));
    CHECK(mesh.x(0, 20) == mesh.x(1, 0)); // duplicate interface nodes coincide exactly
    CHECK(mesh.volume_width(0, 0) == doctest::Approx(0.0125));
    CHECK(mesh.volume_width(0, 10) == doctest::Approx(0.025));
    CHECK(mesh.volume_width(0, 20) == doctest::Approx(0.0125));
}

TEST_CASE("mesh: single layer with n = 2") {
    Problem problem;
    problem.layers = {Layer::make(0.0, 1.0, 1.0, zero_initial())};
    problem.bc_left = {1.0, 1.0, 0.0};
    problem.bc_right = {0.0, 1.0, 0.0};
    const Mesh mesh = build_mesh(problem, 2);
    CHECK(mesh.x(0, 0) == 0.0);
    CHECK(mesh.x(0, 1) == doctest::Approx(0.5));
    CHECK(mesh.x(0, 2) == 1.0);
}

TEST_CASE("mesh: n = 8 on half-unit layers gives h = 2^-4") {
    const Mesh mesh = build_mesh(case_a(), 8);
    CHECK(mesh.spacing[0] == doctest::Approx(0.0625));
}

TEST_CASE("mesh: n < 2 is rejected") {
    CHECK_THROWS_AS(build_mesh(case_a(), 1), std::invalid_argument);
}

TEST_CASE("unknowns: counts for the standard cases at n = 20") {
    const Mesh mesh = build_mesh(case_a(), 20);

    const UnknownMap a = index_unknowns(case_a(), mesh);
    CHECK(a.gi_eliminations == 1);
    CHECK(a.dirichlet_eliminations == 1);
    CHECK(a.count == 40); // 2*21 - 1 - 1

    const UnknownMap b = index_unknowns(case_b(), mesh);
    CHECK(b.gi_eliminations == 0);
    CHECK(b.dirichlet_eliminations == 1);
    CHECK(b.count == 41);

    const UnknownMap f = index_unknowns(case_f(), mesh);
    CHECK(f.gi_eliminations == 0);
    CHECK(f.dirichlet_eliminations == 2);
    CHECK(f.count == 40);
}

TEST_CASE("unknowns: every node is retained or eliminated with exactly one rule") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        const RandomProblem rp = random_problem(rng);
        REQUIRE(validate(rp.problem).empty());
        const Mesh mesh = build_mesh(rp.problem, rp.n);
        const UnknownMap map = index_unknowns(rp.problem, mesh);
        CHECK(map.count + map.eliminated.size() == mesh.node_count());
        CHECK(map.count ==
              mesh.node_count() - map.gi_eliminations - map.dirichlet_eliminations);
        // indices are layer-major increasing over retained nodes
        for (std::size_t p = 1; p < map.count; ++p) {
            const auto [i0, j0] = map.nodes[p - 1];
            const auto [i1, j1] = map.nodes[p];
            CHECK((i1 > i0 || (i1 == i0 && j1 > j0)));
        }
    }
}

TEST_CASE("assemble: interior row for D = 1, h = 0.025") {
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);
    const std::size_t p = map.p_of(0, 5);
    CHECK(sys.A.sub[p - 1] == doctest::Approx(1600.0));
    CHECK(sys.A.diag[p] == doctest::Approx(-3200.0));
    CHECK(sys.A.super[p] == doctest::Approx(1600.0));
    CHECK(sys.rows[p].kind == RowKind::Interior);
}

TEST_CASE("assemble: case A interface row matches a scalar evaluation") {
    // direct evaluation of the interface equation coefficients:
    // weight = 2 D1 D2 th / (g1 h1 th D2 + g2 h2 D1), row =
    // weight * [g1/h1, -(g1/h1 + g2/(th h2)), g2/h2]
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);

    const double d1 = 1.0, d2 = 0.1, g1 = 1.0, g2 = 0.1, h = 0.025, th = 1.0;
    const double weight = 2.0 * d1 * d2 * th / (g1 * h * th * d2 + g2 * h * d1);
    const std::size_t p = map.p_of(0, 20);
    CHECK(sys.rows[p].kind == RowKind::GIInterface);
    CHECK(sys.A.sub[p - 1] == doctest::Approx(weight * g1 / h).epsilon(1e-14));
    CHECK(sys.A.diag[p] ==
          doctest::Approx(-weight * (g1 / h + g2 / (th * h))).epsilon(1e-14));
    CHECK(sys.A.super[p] == doctest::Approx(weight * g2 / h).epsilon(1e-14));
    // frozen values: weight = 40
    CHECK(sys.A.sub[p - 1] == doctest::Approx(1600.0));
    CHECK(sys.A.diag[p] == doctest::Approx(-1760.0));
    CHECK(sys.A.super[p] == doctest::Approx(160.0));
}

TEST_CASE("assemble: case E GII row pair, frozen coefficients") {
    const Problem problem = case_e();
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);

    const std::size_t p = map.p_of(0, 20);
    CHECK(sys.rows[p].kind == RowKind::GIILeft);
    CHECK(sys.A.sub[p - 1] == doctest::Approx(3200.0));
    CHECK(sys.A.diag[p] == doctest::Approx(-3600.0));
    CHECK(sys.A.super[p] == doctest::Approx(400.0));

    const std::size_t q = map.p_of(1, 0);
    CHECK(q == p + 1);
    CHECK(sys.rows[q].kind == RowKind::GIIRight);
    CHECK(sys.A.sub[q - 1] == doctest::Approx(400.0));
    CHECK(sys.A.diag[q] == doctest::Approx(-720.0));
    CHECK(sys.A.super[q] == doctest::Approx(320.0));
}

TEST_CASE("assemble: boundary rows carry the source terms") {
    // left Dirichlet-adjacent picks up D c / (h^2 a); right Neumann row has
    // zero source for c_R = 0
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);

    const std::size_t p0 = map.p_of(0, 1);
    CHECK(sys.rows[p0].kind == RowKind::DirichletAdjacent);
    CHECK(sys.b[p0] == doctest::Approx(1600.0)); // D/h^2 * c/a
    CHECK(p0 == 0);

    const std::size_t pn = map.p_of(1, 20);
    CHECK(sys.rows[pn].kind == RowKind::RightBoundary);
    CHECK(sys.b[pn] == 0.0);
    CHECK(sys.A.diag[pn] == doctest::Approx(-320.0));
    CHECK(sys.A.sub[pn - 1] == doctest::Approx(320.0));
}

TEST_CASE("assemble: robin boundary row") {
    TwoLayerSpec spec;
    spec.left = {2.0, 1.0, 3.0}; // 2u - u_x = 3
    const Problem problem = two_layer(spec);
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);
    const double d = 1.0, h = 0.025;
    CHECK(sys.A.diag[0] == doctest::Approx(-(2.0 * d / h) * (1.0 / h + 2.0)));
    CHECK(sys.A.super[0] == doctest::Approx(2.0 * d / (h * h)));
    CHECK(sys.b[0] == doctest::Approx(2.0 * d * 3.0 / h));
}

TEST_CASE("assemble: negative diagonal, positive off-diagonal products, everywhere") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 100; ++rep) {
        const RandomProblem rp = random_problem(rng);
        const Mesh mesh = build_mesh(rp.problem, rp.n);
        const UnknownMap map = index_unknowns(rp.problem, mesh);
        const auto sys = assemble(rp.problem, mesh, map);
        for (std::size_t p = 0; p < sys.A.size(); ++p) CHECK(sys.A.diag[p] < 0.0);
        for (std::size_t p = 0; p + 1 < sys.A.size(); ++p)
            CHECK(sys.A.sub[p] * sys.A.super[p] > 0.0);
    }
}

TEST_CASE("reconstruct: elimination rules") {
    SUBCASE("dirichlet value") {
        const Problem problem = case_a();
        const Mesh mesh = build_mesh(problem, 4);
        const UnknownMap map = index_unknowns(problem, mesh);
        std::vector<double> u(map.count, 0.0);
        const auto full = reconstruct_full(map, u, problem);
        CHECK(full[mesh.flat(0, 0)] == doctest::Approx(1.0)); // c/a
    }
    SUBCASE("theta >= 1 drops the right node: u_right = u_left / theta") {
        const Problem problem = case_c(); // theta = 1.2
        const Mesh mesh = build_mesh(problem, 4);
        const UnknownMap map = index_unknowns(problem, mesh);
        std::vector<double> u(map.count, 0.0);
        u[map.p_of(0, 4)] = 0.6;
        const auto full = reconstruct_full(map, u, problem);
        CHECK(full[mesh.flat(1, 0)] == doctest::Approx(0.5));
    }
    SUBCASE("theta < 1 drops the left node: u_left = theta * u_right") {
        TwoLayerSpec spec;
        spec.interface_ = InterfaceSpec::gi(0.5);
        const Problem problem = two_layer(spec);
        const Mesh mesh = build_mesh(problem, 4);
        const UnknownMap map = index_unknowns(problem, mesh);
        std::vector<double> u(map.count, 0.0);
        u[map.p_of(1, 0)] = 0.4;
        const auto full = reconstruct_full(map, u, problem);
        CHECK(full[mesh.flat(0, 4)] == doctest::Approx(0.2));
    }
}

TEST_CASE("sample_initial: zero profile stays zero") {
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 20);
    const UnknownMap map = index_unknowns(problem, mesh);
    for (double v : sample_initial(problem, mesh, map)) CHECK(v == 0.0);
}

TEST_CASE("sample_initial: f(x) = x on a single layer") {
    Problem problem;
    problem.layers = {Layer::make(0.0, 1.0, 1.0, [](double x) { return x; })};
    problem.bc_left = {1.0, 1.0, 0.0}; // Robin left, Neumann right keeps all nodes
    problem.bc_right = {0.0, 1.0, 0.0};
    const Mesh mesh = build_mesh(problem, 2);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto u0 = sample_initial(problem, mesh, map);
    REQUIRE(u0.size() == 3);
    CHECK(u0[0] == doctest::Approx(0.0));
    CHECK(u0[1] == doctest::Approx(0.5));
    CHECK(u0[2] == doctest::Approx(1.0));
}

TEST_CASE("sample_initial: duplicate interface nodes use their own layer's f") {
    Problem problem = case_b();
    problem.layers[0].initial = [](double) { return 2.0; };
    problem.layers[1].initial = [](double) { return 5.0; };
    const Mesh mesh = build_mesh(problem, 4);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto u0 = sample_initial(problem, mesh, map);
    CHECK(u0[map.p_of(0, 4)] == 2.0);
    CHECK(u0[map.p_of(1, 0)] == 5.0);
}

TEST_CASE("steady state of the discrete Laplacian is the linear interpolant") {
    Problem problem;
    problem.layers = {Layer::make(0.0, 1.0, 0.7, zero_initial())};
    problem.bc_left = {1.0, 0.0, 1.0};
    problem.bc_right = {1.0, 0.0, 0.0};
    const std::size_t n = 32;
    const Mesh mesh = build_mesh(problem, n);
    const UnknownMap map = index_unknowns(problem, mesh);
    const auto sys = assemble(problem, mesh, map);
    const auto full = reconstruct_full(map, steady_state(sys), problem);
    for (std::size_t j = 0; j <= n; ++j)
        CHECK(full[mesh.flat(0, j)] ==
              doctest::Approx(1.0 - mesh.x(0, j)).epsilon(1e-13 * static_cast<double>(n)));
}

TEST_CASE("the two GI formulations coincide at theta = 1") {
    const Problem problem = case_d();
    const Mesh mesh = build_mesh(problem, 8);
    const UnknownMap drop_right = index_unknowns(problem, mesh, GIElimination::Right);
    const UnknownMap drop_left = index_unknowns(problem, mesh, GIElimination::Left);
    REQUIRE(drop_right.count == drop_left.count);
    const auto sys_r = assemble(problem, mesh, drop_right);
    const auto sys_l = assemble(problem, mesh, drop_left);
    for (std::size_t p = 0; p < sys_r.A.size(); ++p)
        CHECK(sys_r.A.diag[p] == doctest::Approx(sys_l.A.diag[p]).epsilon(1e-14));
    for (std::size_t p = 0; p + 1 < sys_r.A.size(); ++p) {
        CHECK(sys_r.A.sub[p] == doctest::Approx(sys_l.A.sub[p]).epsilon(1e-14));
        CHECK(sys_r.A.super[p] == doctest::Approx(sys_l.A.super[p]).epsilon(1e-14));
    }
    // and the assembly is continuous in theta across the branch switch
    Problem near_one = problem;
    near_one.interfaces[0].theta = 1.0 - 1e-9;
    const UnknownMap map_lo = index_unknowns(near_one, mesh);
    const auto sys_lo = assemble(near_one, mesh, map_lo);
    for (std::size_t p = 0; p < sys_r.A.size(); ++p)
        CHECK(sys_lo.A.diag[p] == doctest::Approx(sys_r.A.diag[p]).epsilon(1e-6));
}

TEST_CASE("forcing the opposite branch at theta = 1 yields the same solution") {
    const Problem problem = case_a();
    const Mesh mesh = build_mesh(problem, 10);
    for (GIElimination policy : {GIElimination::Right, GIElimination::Left}) {
        const UnknownMap map = index_unknowns(problem, mesh, policy);
        const auto sys = assemble(problem, mesh, map);
        const auto full = reconstruct_full(map, steady_state(sys), problem);
        for (std::size_t k = 0; k < full.size(); ++k)
            CHECK(full[k] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

} // TEST_SUITE
