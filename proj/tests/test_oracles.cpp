#include "hsbem/oracles.hpp"

#include "hsbem/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace hsbem;

TEST_CASE("image_field_empty: value, symmetry and the wall condition")
{
    const double k = 1.0;
    const Vec2 x0{0.0, 1.0};

    // frozen value at (0,2): (i/4)[H0(1) + H0(3)]
    const auto u = image_field_empty(x0, k, std::vector<Vec2>{{0.0, 2.0}});
    const Complex ref = Complex(0.0, 0.25) * (hankel1(0, 1.0) + hankel1(0, 3.0));
    CHECK(std::abs(u[0] - ref) < 1e-14);

    // even in y by construction: centered difference across the wall is exactly zero
    const auto pair =
        image_field_empty(x0, k, std::vector<Vec2>{{0.7, 1e-5}, {0.7, -1e-5}});
    CHECK(std::abs(pair[0] - pair[1]) < 1e-14);

    // one-sided second-order derivative at the wall
    const double d = 1e-5;
    const auto col = image_field_empty(x0, k, std::vector<Vec2>{{0.7, 0.0}, {0.7, d}, {0.7, 2 * d}});
    const Complex dy = (-3.0 * col[0] + 4.0 * col[1] - col[2]) / (2.0 * d);
    CHECK(std::abs(dy) < 1e-8);

    // reflection symmetry of evaluation point combined with source mirroring
    const auto a = image_field_empty({0.3, 2.0}, k, std::vector<Vec2>{{1.0, 0.4}});
    const auto b = image_field_empty({0.3, 2.0}, k, std::vector<Vec2>{{1.0, -0.4}});
    // the image formula continues evenly through the wall
    CHECK(std::abs(a[0] - b[0]) < 1e-14);
}

TEST_CASE("image_bem with no panels reduces to the empty image field")
{
    const double k = 1.5;
    const Vec2 x0{0.2, 1.2};
    Mesh empty;
    const auto sol = image_bem_solve(empty, x0, k, Complex(0.0, -1.0 / k));
    const std::vector<Vec2> pts{{1.0, 0.5}, {-2.0, 2.2}};
    const auto u = image_bem_field(sol, pts);
    const auto ref = image_field_empty(x0, k, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(u[i] - ref[i]) < 1e-14);
}

TEST_CASE("image_bem satisfies the wall condition by kernel symmetry")
{
    const double k = 2.0;
    const Mesh circle = discretize_circle({0.0, 1.5}, 1.0, 80);
    const auto sol = image_bem_solve(circle, {1.0, 3.0}, k, Complex(0.0, -1.0 / k));
    const double d = 1e-5;
    for (double x : {-2.0, 0.4, 3.0}) {
        const auto col =
            image_bem_field(sol, std::vector<Vec2>{{x, 0.0}, {x, d}, {x, 2 * d}});
        const Complex dy = (-3.0 * col[0] + 4.0 * col[1] - col[2]) / (2.0 * d);
        CHECK(std::abs(dy) < 1e-8);
    }
}

TEST_CASE("image_bem scatterer boundary condition holds at the collocation points")
{
    const double k = 2.0;
    const Mesh circle = discretize_circle({0.0, 1.5}, 1.0, 96);
    const auto sol = image_bem_solve(circle, {1.0, 3.0}, k, Complex(0.0, -1.0 / k));
    const auto trace = image_bem_boundary_trace(sol);
    const auto ev = [&](std::span<const Vec2> q) { return image_bem_field(sol, q); };
    const auto res = bc_residual(ev, trace, circle, 1e-3);
    for (double r : res)
        CHECK(r < 2e-3);
}

TEST_CASE("relative_error metric")
{
    const std::vector<Complex> c{{1.0, 0.0}, {0.0, 2.0}, {-3.0, 0.0}};
    CHECK(relative_error(c, c) == 0.0);
    std::vector<Complex> twice(c);
    for (auto& v : twice)
        v *= 2.0;
    CHECK(relative_error(twice, c) == doctest::Approx(1.0));

    std::vector<Complex> pert(c);
    pert[0] += Complex(std::abs(c[0]), 0.0);
    CHECK(relative_error(pert, c) == doctest::Approx(std::abs(c[0]) / 6.0));

    // scale invariance
    std::vector<Complex> p{{1.1, 0.2}, {0.4, 1.9}, {-2.7, 0.3}};
    std::vector<Complex> ps(p), cs(c);
    for (auto& v : ps)
        v *= Complex(0.0, 3.0);
    for (auto& v : cs)
        v *= Complex(0.0, 3.0);
    CHECK(relative_error(ps, cs) == doctest::Approx(relative_error(p, c)).epsilon(1e-12));

    const std::vector<Complex> zero(3, Complex(0.0, 0.0));
    CHECK_THROWS(relative_error(p, zero));
}

TEST_CASE("bc_residual on synthetic fields")
{
    const Mesh wall = discretize_segment({-1.0, 0.0}, {1.0, 0.0}, 10);

    // constant field: zero residual
    const std::vector<Complex> trace(wall.size(), Complex(3.0, -1.0));
    const auto const_ev = [](std::span<const Vec2> q) {
        return std::vector<Complex>(q.size(), Complex(3.0, -1.0));
    };
    for (double r : bc_residual(const_ev, trace, wall, 1e-3))
        CHECK(r == 0.0);

    // u = y: residual equals eps against the wall normal (0,1)
    const std::vector<Complex> ytrace(wall.size(), Complex(0.0, 0.0));
    const auto y_ev = [](std::span<const Vec2> q) {
        std::vector<Complex> v(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            v[i] = Complex(q[i].y, 0.0);
        return v;
    };
    for (double r : bc_residual(y_ev, ytrace, wall, 1e-3))
        CHECK(r == doctest::Approx(1e-3));

    CHECK_THROWS(bc_residual(const_ev, trace, wall, -1.0));
}

TEST_CASE("bc_residual decreases linearly with eps for smooth fields")
{
    const double k = 1.0;
    const Vec2 x0{0.0, 2.0};
    const Mesh probe = discretize_segment({0.5, 1.0}, {1.5, 1.0}, 4); // off-wall line
    const auto ev = [&](std::span<const Vec2> q) { return image_field_empty(x0, k, q); };
    std::vector<Complex> trace;
    {
        std::vector<Vec2> mids;
        for (const auto& p : probe.panels)
            mids.push_back(p.mid);
        trace = image_field_empty(x0, k, mids);
    }
    const auto r1 = bc_residual(ev, trace, probe, 1e-3);
    const auto r2 = bc_residual(ev, trace, probe, 5e-4);
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(r2[i] == doctest::Approx(0.5 * r1[i]).epsilon(2e-3));
}

TEST_CASE("mirror_mesh reflects panels and normals")
{
    const Mesh circle = discretize_circle({0.0, 1.5}, 1.0, 16);
    const Mesh m = mirror_mesh(circle);
    for (std::size_t i = 0; i < circle.size(); ++i) {
        CHECK(m.panels[i].mid.x == circle.panels[i].mid.x);
        CHECK(m.panels[i].mid.y == -circle.panels[i].mid.y);
        CHECK(m.panels[i].normal.x == circle.panels[i].normal.x);
        CHECK(m.panels[i].normal.y == -circle.panels[i].normal.y);
        CHECK(m.panels[i].length == circle.panels[i].length);
    }
}
