// Window function, deformed-contour Fourier quadrature, the Sommerfeld
// field/normal-derivative operators F and H, and closed-form wall-line
// Fourier transforms of sources and layer-potential traces.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/linalg.hpp"
#include "hsbem/potentials.hpp"

#include <span>
#include <vector>

namespace hsbem {

struct TruncationParams {
    double M0; // window half-width
    double N0; // Fourier truncation
    double a;  // contour-deformation parameter
};

// W(x) = [erf(x + M0/2) - erf(x - M0/2)] / 2
double window(double x, double M0);

struct SommerfeldRule {
    std::vector<double> t;        // strictly increasing, symmetric about 0
    std::vector<double> w;        // trapezoid weights
    std::vector<Complex> lambda;  // lambda(t_j) on the deformed contour
    std::vector<Complex> dlambda; // dlambda/dt at t_j
    double N0 = 0.0, a = 0.0;

    std::size_t size() const { return t.size(); }
};

// Uniform t-grid on [-N0, N0] with at least `density` nodes per unit t,
// adjusted to include both endpoints and t = 0.
SommerfeldRule build_rule(double N0, double a, double density);

// F[xi](x,y) = (1/4pi) sum_j w_j (dl/dt)_j e^{-s_j y} e^{i l_j x} xi_j / s_j
std::vector<Complex> eval_F(const SommerfeldRule& rule, std::span<const Complex> xi,
                            std::span<const Vec2> pts, double k, bool parallel = true);
// H[xi] = normal derivative of F: factor (i l_j n_x - s_j n_y)
std::vector<Complex> eval_H(const SommerfeldRule& rule, std::span<const Complex> xi,
                            std::span<const Vec2> pts, std::span<const Vec2> normals, double k,
                            bool parallel = true);

// Matrix columns mapping nodal spectral densities to F/H values at points.
ComplexMatrix f_columns(const SommerfeldRule& rule, std::span<const Vec2> pts, double k,
                        bool parallel = true);
ComplexMatrix h_columns(const SommerfeldRule& rule, std::span<const Vec2> pts,
                        std::span<const Vec2> normals, double k, bool parallel = true);

// Wall-line transform of the incident field G(.,x0) and of its y-derivative,
// sampled at the rule nodes. Requires y0 > 0.
std::vector<Complex> fourier_of_source(Vec2 x0, const SommerfeldRule& rule, double k);
std::vector<Complex> fourier_of_source_dn(Vec2 x0, const SommerfeldRule& rule, double k);

// sigma_W transform: T(j,p) = integral over wall panel p of W(x) e^{-i l_j x} dx.
ComplexMatrix windowed_transform_columns(const Mesh& wall, double M0, const SommerfeldRule& rule,
                                         int quad_order = 10, bool parallel = true);
std::vector<Complex> fourier_of_windowed_density(const Mesh& wall, std::span<const Complex> sigma,
                                                 double M0, const SommerfeldRule& rule,
                                                 int quad_order = 10);

// Wall-line transforms of layer-potential traces from a source mesh strictly
// above the wall, via the closed spectral kernel. Supported kinds:
// AdjointDouble (with wall normal (0,1)) and Hypersingular.
ComplexMatrix spectral_layer_columns(LayerKind kind, const Mesh& src, const SommerfeldRule& rule,
                                     double k, int quad_order = 10, bool parallel = true);
std::vector<Complex> fourier_of_layer_trace(LayerKind kind, const Mesh& src,
                                            std::span<const Complex> density,
                                            const SommerfeldRule& rule, double k,
                                            int quad_order = 10);

} // namespace hsbem
