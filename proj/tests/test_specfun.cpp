#include "hsbem/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace hsbem;

namespace {

// 50-digit mpmath reference values, truncated to double precision.
struct BesselRow {
    double x, j0, y0, j1, y1;
};
constexpr BesselRow bessel_table[] = {
    {0.001, 0.9999997500000156, -4.4714166113759233, 0.0004999999375000026, -636.62216723113943},
    {0.01, 0.9999750001562496, -3.0054556370836460, 0.0049999375002604161, -63.678596282060656},
    {0.1, 0.9975015620660400, -1.5342386513503668, 0.0499375260362419976, -6.4589510947020270},
    {0.5, 0.9384698072408129, -0.4445187335067066, 0.2422684576748738864, -1.4714723926702431},
    {1.0, 0.7651976865579666, 0.0882569642156770, 0.4400505857449335160, -0.7812128213002887},
    {2.0, 0.2238907791412357, 0.5103756726497451, 0.5767248077568734, -0.1070324315409375},
    {5.0, -0.1775967713143383, -0.3085176252490338, -0.3275791375914652, 0.1478631433912268},
    {8.0, 0.1716508071375539, 0.2235214893875662, 0.2346363468539146, -0.1580604617312475},
    {11.9, 0.0250494416995896, -0.2298332139433751, -0.2289832496619241, -0.0347114983340305},
    {12.1, 0.0696667736068074, -0.2184383805509255, -0.2157489733769248, -0.0787369314513958},
    {16.0, -0.1748990739836292, 0.0958109970807124, 0.0903971756613042, 0.1779751689394169},
    {25.0, 0.0962667832759581, -0.1272494322680061, -0.1253502495802899, -0.0988299647832374},
    {50.0, 0.0558123276692518, -0.0980649954700771, -0.0975118281251751, -0.0567956685620148},
    {100.0, 0.0199858503042231, -0.0772443133650832, -0.0771453520141122, -0.0203723120027598},
};

} // namespace

TEST_CASE("bessel functions match the high-precision table")
{
    for (const auto& r : bessel_table) {
        CHECK(bessel_j0(r.x) == doctest::Approx(r.j0).epsilon(1e-12));
        CHECK(bessel_y0(r.x) == doctest::Approx(r.y0).epsilon(1e-12));
        CHECK(bessel_j1(r.x) == doctest::Approx(r.j1).epsilon(1e-12));
        CHECK(bessel_y1(r.x) == doctest::Approx(r.y1).epsilon(1e-12));
    }
}

TEST_CASE("hankel1 examples")
{
    const Complex h0 = hankel1(0, 1.0);
    CHECK(h0.real() == doctest::Approx(0.7651976866).epsilon(1e-9));
    CHECK(h0.imag() == doctest::Approx(0.0882569642).epsilon(1e-9));
    const Complex h1 = hankel1(1, 1.0);
    CHECK(h1.real() == doctest::Approx(0.4400505857).epsilon(1e-9));
    CHECK(h1.imag() == doctest::Approx(-0.7812128213).epsilon(1e-9));
}

TEST_CASE("hankel1 small-argument limit: Re -> 1, Im -> -inf logarithmically")
{
    double prev = 0.0;
    for (double x : {1e-2, 1e-4, 1e-6}) {
        const Complex h = hankel1(0, x);
        CHECK(h.real() == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(h.imag() < prev); // decreasing towards -inf
        prev = h.imag();
    }
    // logarithmic rate: Y0(x) ~ (2/pi)(ln(x/2) + gamma)
    const double y = bessel_y0(1e-6);
    CHECK(y == doctest::Approx(2.0 / pi * (std::log(5e-7) + euler_gamma)).epsilon(1e-9));
}

TEST_CASE("hankel1 domain errors")
{
    CHECK_THROWS_AS((void)hankel1(0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)hankel1(0, -1.0), std::domain_error);
    CHECK_THROWS_AS((void)hankel1(1, std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)hankel1(2, 1.0), std::domain_error);
}

TEST_CASE("seam continuity between series and asymptotic branches")
{
    // the branches meet at x = 14; stepping 1e-7 across the seam must move
    // the value by no more than slope * step plus a sub-1e-12 branch jump
    const double eps = 1e-7;
    const double slope_bound = 1.0 * 2 * eps; // |J'|, |Y'| < 1 near x = 14
    CHECK(std::abs(bessel_j0(14.0 + eps) - bessel_j0(14.0 - eps)) < slope_bound + 1e-11);
    CHECK(std::abs(bessel_j1(14.0 + eps) - bessel_j1(14.0 - eps)) < slope_bound + 1e-11);
    CHECK(std::abs(bessel_y0(14.0 + eps) - bessel_y0(14.0 - eps)) < slope_bound + 1e-11);
    CHECK(std::abs(bessel_y1(14.0 + eps) - bessel_y1(14.0 - eps)) < slope_bound + 1e-11);
}

TEST_CASE("wronskian identity J_n(x) Y_n'(x) - J_n'(x) Y_n(x) = 2/(pi x)")
{
    for (double x = 0.01; x <= 50.0; x *= 1.37) {
        const double j0 = bessel_j0(x), y0 = bessel_y0(x);
        const double j1 = bessel_j1(x), y1 = bessel_y1(x);
        // J0' = -J1, Y0' = -Y1
        const double w = j0 * (-y1) - (-j1) * y0;
        CHECK(std::abs(w * (pi * x / 2.0) - 1.0) < 1e-9);
    }
}

TEST_CASE("erf values and symmetry")
{
    CHECK(hsbem::erf(0.0) == 0.0);
    CHECK(hsbem::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-13));
    CHECK(hsbem::erf(2.0) == doctest::Approx(0.9953222650189527).epsilon(1e-13));
    CHECK(std::abs(hsbem::erf(10.0) - 1.0) < 1e-15);
    for (double x : {0.3, 1.7, 4.2})
        CHECK(hsbem::erf(-x) == -hsbem::erf(x));
}

TEST_CASE("erf against the Maclaurin-series oracle")
{
    // erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        long double term = x, sum = x;
        for (int n = 1; n < 80; ++n) {
            term *= -(long double)x * x / n;
            sum += term / (2 * n + 1);
        }
        const double ref = (double)(2.0L / std::sqrt((long double)pi) * sum);
        CHECK(hsbem::erf(x) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("sommerfeld_sqrt branch values")
{
    const double k = 1.0;
    CHECK(sommerfeld_sqrt({2.0, 0.0}, k).real() == doctest::Approx(std::sqrt(3.0)));
    CHECK(sommerfeld_sqrt({2.0, 0.0}, k).imag() == doctest::Approx(0.0));
    CHECK(sommerfeld_sqrt({0.0, 0.0}, k).real() == doctest::Approx(0.0));
    CHECK(sommerfeld_sqrt({0.0, 0.0}, k).imag() == doctest::Approx(-1.0));
    CHECK(std::abs(sommerfeld_sqrt({1.0, 0.0}, k)) == doctest::Approx(0.0));
}

TEST_CASE("sommerfeld_sqrt properties: square recovers argument, signs on axis")
{
    const double k = 2.3;
    for (double lr : {-7.0, -1.5, -0.3, 0.0, 0.4, 1.9, 6.0}) {
        for (double li : {-0.5, -0.1, 0.0}) {
            const Complex lam(lr, li);
            const Complex s = sommerfeld_sqrt(lam, k);
            const Complex sq = s * s - (lam * lam - k * k);
            CHECK(std::abs(sq) < 1e-12 * (std::abs(lam * lam) + k * k));
        }
        const Complex s = sommerfeld_sqrt({lr, 0.0}, k);
        if (std::abs(lr) < k)
            CHECK(s.imag() <= 0.0);
        else
            CHECK(s.real() >= 0.0);
    }
}

TEST_CASE("sommerfeld_sqrt gives decay along the deformed contour")
{
    const double k = 3.0, a = 2.0;
    for (double t = -20.0; t <= 20.0; t += 0.37) {
        const auto node = contour_node(t, a);
        const Complex s = sommerfeld_sqrt(node.lambda, k);
        CHECK(s.real() >= -1e-14); // e^{-s y} bounded for y > 0
    }
}

TEST_CASE("contour_node values and symmetry")
{
    const auto c = contour_node(0.0, 2.0);
    CHECK(c.lambda.real() == 0.0);
    CHECK(c.lambda.imag() == 0.0);
    CHECK(c.dlambda_dt.real() == doctest::Approx(1.0));
    CHECK(c.dlambda_dt.imag() == doctest::Approx(-0.5));

    const auto far = contour_node(30.0, 4.0);
    CHECK(far.lambda.imag() == doctest::Approx(-0.25).epsilon(1e-12)); // tanh saturation

    for (double t : {0.3, 1.1, 4.0}) {
        const auto p = contour_node(t, 2.0);
        const auto m = contour_node(-t, 2.0);
        CHECK(m.lambda.real() == doctest::Approx(-p.lambda.real()));
        CHECK(m.lambda.imag() == doctest::Approx(-p.lambda.imag())); // tanh is odd
    }
}

TEST_CASE("contour keeps clear of the branch points")
{
    const double a = 2.0;
    for (double k : {1.0, 5.0}) {
        const auto node = contour_node(k, a);
        CHECK(std::abs(node.lambda - Complex(k, 0.0)) > 0.9 * std::tanh(k) / a);
    }
}
