#include "hsbem/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hsbem;

namespace {

ComplexMatrix random_matrix(int n, unsigned seed, double diag_boost = 0.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexMatrix A(n, n);
    for (auto& v : A.a)
        v = Complex(d(rng), d(rng));
    for (int i = 0; i < n; ++i)
        A(i, i) += Complex(diag_boost, 0.0);
    return A;
}

} // namespace

TEST_CASE("lu solve recovers a known solution")
{
    const int n = 93;
    ComplexMatrix A = random_matrix(n, 7);
    std::vector<Complex> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = Complex(std::sin(i + 1.0), std::cos(2.0 * i));
    const auto b = matvec(A, x);
    const auto f = lu_factor(A);
    const auto y = lu_solve(f, b);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(y[i] - x[i]) < 1e-10);
}

TEST_CASE("serial and parallel factorizations are bit-identical")
{
    const int n = 257;
    const ComplexMatrix A = random_matrix(n, 11);
    const auto f1 = lu_factor_serial(A);
    const auto f2 = lu_factor(A, true);
    REQUIRE(f1.piv == f2.piv);
    for (std::size_t i = 0; i < f1.lu.a.size(); ++i) {
        CHECK(f1.lu.a[i].real() == f2.lu.a[i].real());
        CHECK(f1.lu.a[i].imag() == f2.lu.a[i].imag());
    }
}

TEST_CASE("adjoint solve matches an explicitly conjugate-transposed system")
{
    const int n = 40;
    ComplexMatrix A = random_matrix(n, 3);
    ComplexMatrix Ah(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Ah(i, j) = std::conj(A(j, i));
    std::vector<Complex> b(n);
    for (int i = 0; i < n; ++i)
        b[i] = Complex(0.3 * i, 1.0 - 0.1 * i);

    auto fa = lu_factor(A);
    auto bb = b;
    lu_solve_adjoint_inplace(fa, bb.data());

    auto fh = lu_factor(Ah);
    const auto ref = lu_solve(fh, b);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(bb[i] - ref[i]) < 1e-9);
}

TEST_CASE("rcond estimate tracks conditioning")
{
    // well conditioned
    const auto fgood = lu_factor(random_matrix(60, 5, 10.0));
    const double rgood = rcond_estimate(fgood);
    CHECK(rgood > 1e-4);

    // nearly dependent rows
    ComplexMatrix A = random_matrix(60, 9);
    for (int j = 0; j < 60; ++j)
        A(1, j) = A(0, j) * Complex(1.0, 0.0) + Complex(1e-12, 0.0) * A(2, j);
    const auto fbad = lu_factor(A);
    CHECK(rcond_estimate(fbad) < 1e-9);
}

TEST_CASE("exactly singular matrices throw with rcond = 0")
{
    ComplexMatrix A(3, 3); // all zeros
    CHECK_THROWS_AS((void)lu_factor(A), SolverError);
}

TEST_CASE("norm1 is the maximum column sum")
{
    ComplexMatrix A(2, 2);
    A(0, 0) = {3.0, 4.0}; // |.| = 5
    A(1, 0) = {0.0, 1.0};
    A(0, 1) = {1.0, 0.0};
    A(1, 1) = {2.0, 0.0};
    CHECK(A.norm1() == doctest::Approx(6.0));
}
