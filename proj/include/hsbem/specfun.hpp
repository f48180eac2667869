// Self-contained special functions: Bessel/Hankel kernels of order 0/1,
// the error function, and the branch-cut square root / deformed contour
// shared by all Sommerfeld integrals.
#pragma once

#include <complex>

namespace hsbem {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Bessel functions of the first and second kind, order 0 and 1.
// Power series below the seam, Hankel asymptotic expansion beyond,
// cross-validated at the seam by the unit tests.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

// H_n^(1)(x) = J_n(x) + i Y_n(x), n in {0,1}, x > 0.
// Throws std::domain_error for non-positive or non-finite x, or n outside {0,1}.
Complex hankel1(int n, double x);

double erf(double x);

// Regular parts used by the singular quadrature in the potentials module:
//   y0_reg(z) = Y0(z) - (2/pi) ln(z/2) J0(z)                (entire)
//   h1_over_z_reg(z) = H1(z)/z + 2i/(pi z^2) - (2i/pi) ln(z/2) J1(z)/z   (entire)
//   j1_over_z(z) = J1(z)/z                                  (entire, -> 1/2)
double y0_reg(double z);
double j1_over_z(double z);
Complex h1_over_z_reg(double z);

// sqrt(lambda^2 - k^2) on the Sommerfeld branch: positive real for real
// |lambda| > k, -i sqrt(k^2 - lambda^2) for real |lambda| < k, and the
// analytic continuation with Im <= 0 elsewhere so that e^{-sqrt(.) y}
// decays for y > 0.
Complex sommerfeld_sqrt(Complex lambda, double k);

// Deformed integration path lambda(t) = t - i tanh(t)/a and its derivative.
struct ContourNode {
    Complex lambda;
    Complex dlambda_dt;
};
ContourNode contour_node(double t, double a);

} // namespace hsbem
