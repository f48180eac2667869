// Independent reference solvers and error metrics: method of images,
// image-kernel BEM for scatterers over a flat wall, the relative-error
// metric, and the numerical-derivative boundary-condition residual.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/potentials.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hsbem {

struct ErrorReport {
    double rel_error = 0.0; // sum |p - c| / sum |c|
    double l1_re = 0.0;     // L1 relative error of the real part
    double l1_im = 0.0;     // L1 relative error of the imaginary part
    double max_bc_residual = 0.0;
    std::size_t n_points = 0;
};

// u_in(x; x0) + u_in(x; mirror(x0)) for the empty rigid half-space.
std::vector<Complex> image_field_empty(Vec2 x0, double k, std::span<const Vec2> pts);

// Burton-Miller BEM on the scatterer alone with the half-space Green
// function G(x,x') + G(x,mirror(x')) as kernel, so the wall condition is
// exact by construction.
struct ImageBemSolution {
    Mesh mesh;
    Mesh mirror;
    std::vector<Complex> sigma;
    Vec2 source;
    double k = 0.0;
    Complex beta{};
    AssemblyOptions opt{};
    double rcond = 0.0;
};

ImageBemSolution image_bem_solve(const Mesh& scatterer, Vec2 x0, double k, Complex beta,
                                 const AssemblyOptions& opt = {});
std::vector<Complex> image_bem_field(const ImageBemSolution& sol, std::span<const Vec2> pts);
// fluid-side trace of u on the scatterer surface at the collocation midpoints
std::vector<Complex> image_bem_boundary_trace(const ImageBemSolution& sol);

Mesh mirror_mesh(const Mesh& m);

double relative_error(std::span<const Complex> p, std::span<const Complex> c);
double l1_relative_error_real(std::span<const Complex> p, std::span<const Complex> c);
double l1_relative_error_imag(std::span<const Complex> p, std::span<const Complex> c);

// |u(x) - u(x - eps n)| per collocation point, with n directed out of the
// fluid; meshes here carry into-fluid normals, so the interior offset point
// is mid + eps * normal.
using FieldEvaluator = std::function<std::vector<Complex>(std::span<const Vec2>)>;
std::vector<double> bc_residual(const FieldEvaluator& eval_interior,
                                std::span<const Complex> trace_at_mids, const Mesh& mesh,
                                double eps);

} // namespace hsbem
