#include "hsbem/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hsbem {

namespace {

inline double cabs1(Complex z)
{
    return std::abs(z.real()) + std::abs(z.imag());
}

// a[0..m) -= l * u[0..m), manual real/imag arithmetic so the loop vectorizes
inline void axpy_neg(Complex l, const Complex* __restrict u, Complex* __restrict a, int m)
{
    const double lr = l.real(), li = l.imag();
    const double* __restrict ur = reinterpret_cast<const double*>(u);
    double* __restrict ar = reinterpret_cast<double*>(a);
    for (int c = 0; c < 2 * m; c += 2) {
        const double xr = ur[c], xi = ur[c + 1];
        ar[c] -= lr * xr - li * xi;
        ar[c + 1] -= lr * xi + li * xr;
    }
}

constexpr int block_nb = 48;   // panel width
constexpr int chunk_cols = 256; // trailing-update tile width

LuFactors lu_factor_impl(ComplexMatrix A, bool parallel)
{
    const int n = A.rows;
    if (n != A.cols)
        throw std::invalid_argument("lu_factor: matrix must be square");
    LuFactors f;
    f.anorm1 = A.norm1();
    f.piv.resize(n);
    ComplexMatrix& M = A;

    for (int k0 = 0; k0 < n; k0 += block_nb) {
        const int k1 = std::min(n, k0 + block_nb);
        // unblocked panel factorization, swaps applied across the full rows
        for (int j = k0; j < k1; ++j) {
            int p = j;
            double best = cabs1(M(j, j));
            for (int i = j + 1; i < n; ++i) {
                const double v = cabs1(M(i, j));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            f.piv[j] = p;
            if (best == 0.0)
                throw SolverError("lu_factor: matrix is exactly singular", 0.0);
            if (p != j)
                std::swap_ranges(M.row(j), M.row(j) + n, M.row(p));
            const Complex inv = 1.0 / M(j, j);
            for (int i = j + 1; i < n; ++i) {
                M(i, j) *= inv;
                const Complex lij = M(i, j);
                axpy_neg(lij, M.row(j) + j + 1, M.row(i) + j + 1, k1 - j - 1);
            }
        }
        if (k1 == n)
            break;
        // U12 = L11^{-1} A12 (unit lower triangular solve on panel rows)
        for (int j = k0; j < k1; ++j)
            for (int i = j + 1; i < k1; ++i)
                axpy_neg(M(i, j), M.row(j) + k1, M.row(i) + k1, n - k1);
        // trailing update A22 -= L21 U12, row-parallel
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
        for (int i = k1; i < n; ++i) {
            Complex* __restrict ai = M.row(i);
            for (int c0 = k1; c0 < n; c0 += chunk_cols) {
                const int m = std::min(n, c0 + chunk_cols) - c0;
                for (int j = k0; j < k1; ++j) {
                    const Complex lij = ai[j];
                    if (lij.real() == 0.0 && lij.imag() == 0.0)
                        continue;
                    axpy_neg(lij, M.row(j) + c0, ai + c0, m);
                }
            }
        }
    }
    f.lu = std::move(A);
    return f;
}

} // namespace

double ComplexMatrix::norm1() const
{
    std::vector<double> colsum(cols, 0.0);
    for (int i = 0; i < rows; ++i) {
        const Complex* r = row(i);
        for (int j = 0; j < cols; ++j)
            colsum[j] += std::abs(r[j]);
    }
    double m = 0.0;
    for (double s : colsum)
        m = std::max(m, s);
    return m;
}

LuFactors lu_factor(ComplexMatrix A, bool parallel)
{
    return lu_factor_impl(std::move(A), parallel);
}

LuFactors lu_factor_serial(ComplexMatrix A)
{
    return lu_factor_impl(std::move(A), false);
}

void lu_solve_inplace(const LuFactors& f, Complex* b)
{
    const int n = f.lu.rows;
    for (int j = 0; j < n; ++j)
        if (f.piv[j] != j)
            std::swap(b[j], b[f.piv[j]]);
    for (int i = 1; i < n; ++i) {
        Complex s = b[i];
        const Complex* r = f.lu.row(i);
        for (int j = 0; j < i; ++j)
            s -= r[j] * b[j];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        Complex s = b[i];
        const Complex* r = f.lu.row(i);
        for (int j = i + 1; j < n; ++j)
            s -= r[j] * b[j];
        b[i] = s / r[i];
    }
}

void lu_solve_adjoint_inplace(const LuFactors& f, Complex* b)
{
    // A^H = U^H L^H P with PA = LU
    const int n = f.lu.rows;
    for (int i = 0; i < n; ++i) { // U^H w = b, forward, non-unit diagonal
        Complex s = b[i];
        for (int j = 0; j < i; ++j)
            s -= std::conj(f.lu(j, i)) * b[j];
        b[i] = s / std::conj(f.lu(i, i));
    }
    for (int i = n - 1; i >= 0; --i) { // L^H v = w, backward, unit diagonal
        Complex s = b[i];
        for (int j = i + 1; j < n; ++j)
            s -= std::conj(f.lu(j, i)) * b[j];
        b[i] = s;
    }
    for (int j = n - 1; j >= 0; --j)
        if (f.piv[j] != j)
            std::swap(b[j], b[f.piv[j]]);
}

std::vector<Complex> lu_solve(const LuFactors& f, std::vector<Complex> b)
{
    lu_solve_inplace(f, b.data());
    return b;
}

double rcond_estimate(const LuFactors& f)
{
    const int n = f.lu.rows;
    if (n == 0 || f.anorm1 == 0.0)
        return 0.0;
    std::vector<Complex> x(n, Complex(1.0 / n, 0.0));
    double est = 0.0;
    int last = -1;
    for (int iter = 0; iter < 5; ++iter) {
        lu_solve_inplace(f, x.data()); // y = A^-1 x
        double n1 = 0.0;
        for (auto& v : x)
            n1 += std::abs(v);
        est = std::max(est, n1);
        for (auto& v : x) {
            const double m = std::abs(v);
            v = (m > 0.0) ? v / m : Complex(1.0, 0.0);
        }
        lu_solve_adjoint_inplace(f, x.data()); // z = A^-H xi
        int jmax = 0;
        double zmax = 0.0;
        for (int j = 0; j < n; ++j) {
            const double m = std::abs(x[j]);
            if (m > zmax) {
                zmax = m;
                jmax = j;
            }
        }
        if (jmax == last)
            break;
        last = jmax;
        std::fill(x.begin(), x.end(), Complex(0.0, 0.0));
        x[jmax] = 1.0;
    }
    if (est == 0.0)
        return 0.0;
    return 1.0 / (f.anorm1 * est);
}

std::vector<Complex> matvec(const ComplexMatrix& A, std::span<const Complex> x)
{
    std::vector<Complex> y(A.rows, Complex(0.0, 0.0));
    for (int i = 0; i < A.rows; ++i) {
        Complex s{};
        const Complex* r = A.row(i);
        for (int j = 0; j < A.cols; ++j)
            s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

} // namespace hsbem
