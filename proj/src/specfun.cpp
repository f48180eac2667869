#include "hsbem/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbem {

namespace {

// Seam between the power series and the Hankel asymptotic expansion.
// At x = 14 the optimally truncated asymptotic tail is ~e^{-2x} ~ 7e-13
// and the series, accumulated in long double, still carries ~14 digits.
constexpr double series_cut = 14.0;
constexpr int series_max_terms = 48;

long double harmonic(int m)
{
    static long double h[series_max_terms + 2] = {0.0L};
    static int filled = 0;
    if (filled == 0) {
        h[0] = 0.0L;
        for (int j = 1; j <= series_max_terms + 1; ++j)
            h[j] = h[j - 1] + 1.0L / j;
        filled = 1;
    }
    return h[m];
}

struct J0Y0 {
    double j0, y0;
};
struct J1Y1 {
    double j1, y1;
};

J0Y0 series_j0y0(double x)
{
    const long double q = (long double)x * x / 4.0L;
    long double term = 1.0L, j0 = 1.0L, ysum = 0.0L;
    for (int m = 1; m <= series_max_terms; ++m) {
        term *= -q / ((long double)m * m);
        j0 += term;
        ysum += -term * harmonic(m); // (-1)^{m+1} H_m q^m/(m!)^2
        if (std::abs((double)term) < 1e-26)
            break;
    }
    const long double lg = std::log((long double)x / 2.0L) + (long double)euler_gamma;
    const long double y0 = (2.0L / (long double)pi) * (lg * j0 + ysum);
    return {(double)j0, (double)y0};
}

J1Y1 series_j1y1(double x)
{
    const long double q = (long double)x * x / 4.0L;
    long double term = 1.0L, s_j = 1.0L, s_y = harmonic(0) + harmonic(1);
    for (int m = 1; m <= series_max_terms; ++m) {
        term *= -q / ((long double)m * (m + 1));
        s_j += term;
        s_y += term * (harmonic(m) + harmonic(m + 1));
        if (std::abs((double)term) < 1e-26)
            break;
    }
    const long double xl = (long double)x;
    const long double j1 = (xl / 2.0L) * s_j;
    const long double lg = std::log(xl / 2.0L) + (long double)euler_gamma;
    const long double y1 = (2.0L / (long double)pi) * lg * j1 - 2.0L / ((long double)pi * xl)
                           - (xl / (2.0L * (long double)pi)) * s_y;
    return {(double)j1, (double)y1};
}

// P + iQ = sum_m i^m a_m(n) / x^m, truncated at the smallest term.
void asymptotic_pq(int n, double x, double& p, double& q)
{
    const long double mu = 4.0L * n * n;
    long double a = 1.0L, xl = (long double)x;
    long double pr = 1.0L, qi = 0.0L;
    long double prev = 1e30L, pw = 1.0L;
    for (int m = 1; m <= 40; ++m) {
        a *= (mu - (2.0L * m - 1) * (2.0L * m - 1)) / (8.0L * m);
        pw *= xl;
        const long double t = a / pw;
        if (std::abs((double)t) >= std::abs((double)prev))
            break; // smallest term reached
        prev = t;
        switch (m & 3) { // i^m
        case 0: pr += t; break;
        case 1: qi += t; break;
        case 2: pr -= t; break;
        case 3: qi -= t; break;
        }
        if (std::abs((double)t) < 1e-20)
            break;
    }
    p = (double)pr;
    q = (double)qi;
}

void asymptotic_jy(int n, double x, double& j, double& y)
{
    double p, q;
    asymptotic_pq(n, x, p, q);
    const double w = x - 0.5 * n * pi - 0.25 * pi;
    const double amp = std::sqrt(2.0 / (pi * x));
    const double c = std::cos(w), s = std::sin(w);
    j = amp * (p * c - q * s);
    y = amp * (p * s + q * c);
}

} // namespace

double bessel_j0(double x)
{
    x = std::abs(x);
    if (x < series_cut)
        return series_j0y0(x).j0;
    double j, y;
    asymptotic_jy(0, x, j, y);
    return j;
}

double bessel_j1(double x)
{
    const double s = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    if (x == 0.0)
        return 0.0;
    if (x < series_cut)
        return s * series_j1y1(x).j1;
    double j, y;
    asymptotic_jy(1, x, j, y);
    return s * j;
}

double bessel_y0(double x)
{
    if (x < series_cut)
        return series_j0y0(x).y0;
    double j, y;
    asymptotic_jy(0, x, j, y);
    return y;
}

double bessel_y1(double x)
{
    if (x < series_cut)
        return series_j1y1(x).y1;
    double j, y;
    asymptotic_jy(1, x, j, y);
    return y;
}

Complex hankel1(int n, double x)
{
    if (!(n == 0 || n == 1))
        throw std::domain_error("hankel1: order must be 0 or 1");
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("hankel1: argument must be positive and finite");
    if (x < series_cut) {
        if (n == 0) {
            const auto v = series_j0y0(x);
            return {v.j0, v.y0};
        }
        const auto v = series_j1y1(x);
        return {v.j1, v.y1};
    }
    double j, y;
    asymptotic_jy(n, x, j, y);
    return {j, y};
}

double erf(double x)
{
    return std::erf(x);
}

double y0_reg(double z)
{
    if (z >= 2.0)
        return bessel_y0(z) - (2.0 / pi) * std::log(z / 2.0) * bessel_j0(z);
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L, j0 = 1.0L, ysum = 0.0L;
    for (int m = 1; m <= series_max_terms; ++m) {
        term *= -q / ((long double)m * m);
        j0 += term;
        ysum += -term * harmonic(m);
        if (std::abs((double)term) < 1e-26)
            break;
    }
    return (double)((2.0L / (long double)pi) * ((long double)euler_gamma * j0 + ysum));
}

double j1_over_z(double z)
{
    if (z >= 2.0)
        return bessel_j1(z) / z;
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L, s = 1.0L;
    for (int m = 1; m <= series_max_terms; ++m) {
        term *= -q / ((long double)m * (m + 1));
        s += term;
        if (std::abs((double)term) < 1e-26)
            break;
    }
    return (double)(0.5L * s);
}

Complex h1_over_z_reg(double z)
{
    if (z >= 2.0) {
        const Complex h1 = hankel1(1, z);
        const Complex sing(0.0, -2.0 / (pi * z * z));
        const Complex logpart = Complex(0.0, 2.0 / pi) * std::log(z / 2.0) * (bessel_j1(z) / z);
        return h1 / z - sing - logpart;
    }
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L, s_j = 1.0L, s1 = harmonic(0) + harmonic(1);
    for (int m = 1; m <= series_max_terms; ++m) {
        term *= -q / ((long double)m * (m + 1));
        s_j += term;
        s1 += term * (harmonic(m) + harmonic(m + 1));
        if (std::abs((double)term) < 1e-26)
            break;
    }
    const double g1 = (double)(0.5L * s_j); // J1(z)/z
    const double s1d = (double)(0.5L * s1);
    return {g1, (2.0 * euler_gamma / pi) * g1 - s1d / pi};
}

Complex sommerfeld_sqrt(Complex lambda, double k)
{
    Complex w = std::sqrt(lambda * lambda - k * k);
    if (w.imag() > 0.0)
        w = -w;
    return w;
}

ContourNode contour_node(double t, double a)
{
    const double th = std::tanh(t);
    const double sech2 = 1.0 - th * th;
    return {Complex(t, -th / a), Complex(1.0, -sech2 / a)};
}

} // namespace hsbem
