// Dense complex linear algebra: LU with partial pivoting and a Hager-style
// reciprocal-condition estimate. The factorization is blocked with an
// OpenMP trailing update; lu_factor_serial is the reference path kept for
// testing and benchmarking.
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsbem {

using Complex = std::complex<double>;

struct ComplexMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> a; // row-major

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}

    Complex& operator()(int i, int j) { return a[(std::size_t)i * cols + j]; }
    const Complex& operator()(int i, int j) const { return a[(std::size_t)i * cols + j]; }
    Complex* row(int i) { return a.data() + (std::size_t)i * cols; }
    const Complex* row(int i) const { return a.data() + (std::size_t)i * cols; }

    double norm1() const; // max column sum of |a_ij|
};

struct SolverError : std::runtime_error {
    double rcond;
    explicit SolverError(const std::string& what, double rc) : std::runtime_error(what), rcond(rc) {}
};

struct LuFactors {
    ComplexMatrix lu;
    std::vector<int> piv; // row j was swapped with piv[j]
    double anorm1 = 0.0;  // 1-norm of the original matrix
};

LuFactors lu_factor(ComplexMatrix A, bool parallel = true);
LuFactors lu_factor_serial(ComplexMatrix A);

void lu_solve_inplace(const LuFactors& f, Complex* b);         // A x = b
void lu_solve_adjoint_inplace(const LuFactors& f, Complex* b); // A^H x = b
std::vector<Complex> lu_solve(const LuFactors& f, std::vector<Complex> b);

// Estimate of 1 / (||A||_1 ||A^-1||_1); returns 0 for an exactly singular factor.
double rcond_estimate(const LuFactors& f);

// y = A x
std::vector<Complex> matvec(const ComplexMatrix& A, std::span<const Complex> x);

} // namespace hsbem
