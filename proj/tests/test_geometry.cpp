#include "hsbem/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace hsbem;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("discretize_segment: uniform subdivision with left normals")
{
    const Mesh m = discretize_segment({-20.0, 0.0}, {20.0, 0.0}, 4);
    REQUIRE(m.size() == 4);
    CHECK(m.total_length() == doctest::Approx(40.0));
    const double mids[] = {-15.0, -5.0, 5.0, 15.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(m.panels[i].mid.x == doctest::Approx(mids[i]));
        CHECK(m.panels[i].length == doctest::Approx(10.0));
        CHECK(m.panels[i].normal.x == doctest::Approx(0.0));
        CHECK(m.panels[i].normal.y == doctest::Approx(1.0));
    }

    const Mesh one = discretize_segment({0.0, 0.0}, {1.0, 0.0}, 1);
    CHECK(one.panels[0].mid.x == doctest::Approx(0.5));
    CHECK(one.panels[0].length == doctest::Approx(1.0));

    CHECK_THROWS(discretize_segment({1.0, 2.0}, {1.0, 2.0}, 3));
}

TEST_CASE("discretize_circle: inscribed polygon, outward radial normals")
{
    const Vec2 c{0.0, 1.5};
    const int n = 400;
    const Mesh m = discretize_circle(c, 1.0, n);
    REQUIRE(m.size() == 400);
    CHECK(m.total_length() == doctest::Approx(2 * n * std::sin(pi / n)).epsilon(1e-12));
    CHECK(m.total_length() == doctest::Approx(6.28306).epsilon(1e-5));
    for (const auto& p : m.panels) {
        const Vec2 r = p.mid - c;
        CHECK(norm(r) == doctest::Approx(std::cos(pi / n)).epsilon(1e-12));
        // radial normal
        CHECK(std::abs(r.x * p.normal.y - r.y * p.normal.x) < 1e-12);
        CHECK(dot(r, p.normal) > 0.0);
    }
    CHECK_THROWS(discretize_circle(c, 1.0, 2));
    CHECK_THROWS(discretize_circle(c, -1.0, 10));
}

TEST_CASE("closed meshes satisfy the divergence identity sum h_j n_j = 0")
{
    const Mesh m = discretize_circle({2.0, 3.0}, 1.7, 57);
    Vec2 s{};
    for (const auto& p : m.panels)
        s = s + p.length * p.normal;
    CHECK(std::abs(s.x) < 1e-12);
    CHECK(std::abs(s.y) < 1e-12);
}

TEST_CASE("discretize_arc spans the requested angles with exact endpoints")
{
    const Mesh m = discretize_arc({0.0, 0.0}, 3.0, 0.0, pi, 3);
    REQUIRE(m.size() == 3);
    CHECK(m.panels[0].p0.x == doctest::Approx(3.0));
    CHECK(m.panels[0].p0.y == doctest::Approx(0.0));
    CHECK(m.panels[2].p1.x == doctest::Approx(-3.0));
    CHECK(std::abs(m.panels[2].p1.y) < 1e-14);
    // interior vertices at pi/3, 2pi/3
    CHECK(m.panels[0].p1.x == doctest::Approx(3.0 * std::cos(pi / 3)));
    CHECK(m.panels[0].p1.y == doctest::Approx(3.0 * std::sin(pi / 3)));

    // lower half-disc cavity boundary
    const Mesh cav = discretize_arc({0.0, 0.0}, 1.0, pi, 2.0 * pi, 64);
    for (const auto& p : cav.panels)
        CHECK(p.mid.y < 0.0);

    // arc length converges to r * dtheta
    const Mesh fine = discretize_arc({0.0, 0.0}, 2.0, 0.3, 1.8, 4000);
    CHECK(fine.total_length() == doctest::Approx(2.0 * 1.5).epsilon(1e-6));

    CHECK_THROWS(discretize_arc({0.0, 0.0}, 1.0, 1.0, 1.0, 4));
}

TEST_CASE("grade_segment: geometric progression away from the focus")
{
    const Mesh m = grade_segment({0.0, 0.0}, {7.0, 0.0}, {0.0, 0.0}, 2.0, 3);
    REQUIRE(m.size() == 3);
    CHECK(m.panels[0].length == doctest::Approx(1.0));
    CHECK(m.panels[1].length == doctest::Approx(2.0));
    CHECK(m.panels[2].length == doctest::Approx(4.0));
    CHECK(m.total_length() == doctest::Approx(7.0));

    // symmetric about a midpoint focus
    const Mesh s = grade_segment({0.0, 0.0}, {10.0, 0.0}, {5.0, 0.0}, 1.5, 8);
    REQUIRE(s.size() == 8);
    for (int i = 0; i < 4; ++i)
        CHECK(s.panels[i].length == doctest::Approx(s.panels[7 - i].length));
    CHECK(s.total_length() == doctest::Approx(10.0));

    // cap limits the largest panels
    const Mesh c = grade_segment({0.0, 0.0}, {10.0, 0.0}, {0.0, 0.0}, 3.0, 12, 1.25);
    double maxlen = 0.0;
    for (const auto& p : c.panels)
        maxlen = std::max(maxlen, p.length);
    CHECK(maxlen <= 1.25 * (1 + 1e-9));
    CHECK(c.total_length() == doctest::Approx(10.0));

    CHECK_THROWS(grade_segment({0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, 2.0, 3));
    CHECK_THROWS(grade_segment({0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, 0.9, 3));
}

TEST_CASE("collocation midpoints are pairwise distinct")
{
    const Mesh m = discretize_circle({0.0, 0.0}, 1.0, 123);
    std::set<std::pair<double, double>> seen;
    for (const auto& p : m.panels)
        CHECK(seen.insert({p.mid.x, p.mid.y}).second);
}

TEST_CASE("uniform refinement halves the maximum panel length")
{
    auto maxh = [](const Mesh& m) {
        double h = 0.0;
        for (const auto& p : m.panels)
            h = std::max(h, p.length);
        return h;
    };
    const Mesh a = discretize_segment({0.0, 0.0}, {3.0, 1.0}, 10);
    const Mesh b = discretize_segment({0.0, 0.0}, {3.0, 1.0}, 20);
    CHECK(maxh(a) == doctest::Approx(2.0 * maxh(b)));
}

TEST_CASE("wave parameters")
{
    const WaveParams w = WaveParams::from_omega(10.0, 2.0);
    CHECK(w.k == doctest::Approx(5.0));
    CHECK(w.wavelength() == doctest::Approx(2.0 * pi / 5.0));
    CHECK_THROWS(WaveParams::from_omega(-1.0));
}

TEST_CASE("flip_normals reverses orientation in place")
{
    Mesh m = discretize_arc({0.0, 0.0}, 1.0, 0.0, pi, 16);
    const Vec2 n0 = m.panels[3].normal;
    const double len = m.total_length();
    m.flip_normals();
    CHECK(m.total_length() == doctest::Approx(len));
    bool found = false;
    for (const auto& p : m.panels)
        if (std::abs(p.normal.x + n0.x) < 1e-12 && std::abs(p.normal.y + n0.y) < 1e-12)
            found = true;
    CHECK(found);
}
