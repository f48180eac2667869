#include "hsbem/oracles.hpp"

#include "hsbem/linalg.hpp"
#include "hsbem/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbem {

std::vector<Complex> image_field_empty(Vec2 x0, double k, std::span<const Vec2> pts)
{
    if (!(x0.y > 0.0))
        throw std::domain_error("image_field_empty: source must lie above the wall");
    const Vec2 xm{x0.x, -x0.y};
    std::vector<Complex> u(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        u[i] = kernel_G(pts[i], x0, k) + kernel_G(pts[i], xm, k);
    return u;
}

Mesh mirror_mesh(const Mesh& m)
{
    Mesh r = m;
    for (auto& p : r.panels) {
        p.p0.y = -p.p0.y;
        p.p1.y = -p.p1.y;
        std::swap(p.p0, p.p1); // keep the left-normal convention coherent
        p.mid.y = -p.mid.y;
        p.normal.y = -p.normal.y;
    }
    return r;
}

ImageBemSolution image_bem_solve(const Mesh& scatterer, Vec2 x0, double k, Complex beta,
                                 const AssemblyOptions& opt)
{
    for (const auto& p : scatterer.panels)
        if (std::min(p.p0.y, p.p1.y) <= 0.0)
            throw std::domain_error("image_bem_solve: scatterer must lie in y > 0");
    ImageBemSolution sol;
    sol.mesh = scatterer;
    sol.mirror = mirror_mesh(scatterer);
    sol.source = x0;
    sol.k = k;
    sol.beta = beta;
    sol.opt = opt;

    const Collocation c = collocation_of(scatterer);
    const int n = (int)c.size();
    if (n == 0) {
        sol.rcond = 1.0;
        return sol; // no scatterer: the image of the source alone
    }
    const auto Dd = assemble_layer(LayerKind::AdjointDouble, c, sol.mesh, k, opt, 0);
    const auto Nd = assemble_layer(LayerKind::Hypersingular, c, sol.mesh, k, opt, 0);
    const auto Dm = assemble_layer(LayerKind::AdjointDouble, c, sol.mirror, k, opt);
    const auto Nm = assemble_layer(LayerKind::Hypersingular, c, sol.mirror, k, opt);

    ComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = Dd(i, j) + Dm(i, j) + beta * (Nd(i, j) + Nm(i, j));
    for (int i = 0; i < n; ++i)
        A(i, i) += Complex(-0.5, 0.0);

    const Vec2 xm{x0.x, -x0.y};
    std::vector<Complex> rhs(n);
    for (int i = 0; i < n; ++i)
        rhs[i] = -(kernel_dG_dnx(c.points[i], x0, c.normals[i], k)
                   + kernel_dG_dnx(c.points[i], xm, c.normals[i], k));

    auto f = lu_factor(std::move(A), opt.parallel);
    sol.rcond = rcond_estimate(f);
    if (sol.rcond < 1e-15)
        throw SolverError("image_bem_solve: singular system", sol.rcond);
    sol.sigma = lu_solve(f, std::move(rhs));
    return sol;
}

std::vector<Complex> image_bem_field(const ImageBemSolution& sol, std::span<const Vec2> pts)
{
    const Vec2 xm{sol.source.x, -sol.source.y};
    auto u = eval_layer(LayerKind::Single, sol.mesh, sol.sigma, pts, sol.k, sol.opt);
    const auto um = eval_layer(LayerKind::Single, sol.mirror, sol.sigma, pts, sol.k, sol.opt);
    const auto ud = eval_layer(LayerKind::Double, sol.mesh, sol.sigma, pts, sol.k, sol.opt);
    const auto udm = eval_layer(LayerKind::Double, sol.mirror, sol.sigma, pts, sol.k, sol.opt);
    for (std::size_t i = 0; i < pts.size(); ++i)
        u[i] += um[i] + sol.beta * (ud[i] + udm[i]) + kernel_G(pts[i], sol.source, sol.k)
                + kernel_G(pts[i], xm, sol.k);
    return u;
}

std::vector<Complex> image_bem_boundary_trace(const ImageBemSolution& sol)
{
    const Collocation c = collocation_of(sol.mesh);
    const Vec2 xm{sol.source.x, -sol.source.y};
    const auto S = assemble_layer(LayerKind::Single, c, sol.mesh, sol.k, sol.opt, 0);
    const auto D = assemble_layer(LayerKind::Double, c, sol.mesh, sol.k, sol.opt, 0);
    auto u = matvec(S, sol.sigma);
    const auto ud = matvec(D, sol.sigma);
    const auto um = eval_layer(LayerKind::Single, sol.mirror, sol.sigma, c.points, sol.k, sol.opt);
    const auto udm = eval_layer(LayerKind::Double, sol.mirror, sol.sigma, c.points, sol.k, sol.opt);
    for (std::size_t i = 0; i < c.size(); ++i)
        u[i] += sol.beta * (ud[i] + 0.5 * sol.sigma[i] + udm[i]) + um[i]
                + kernel_G(c.points[i], sol.source, sol.k) + kernel_G(c.points[i], xm, sol.k);
    return u;
}

double relative_error(std::span<const Complex> p, std::span<const Complex> c)
{
    if (p.size() != c.size())
        throw std::invalid_argument("relative_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        num += std::abs(p[i] - c[i]);
        den += std::abs(c[i]);
    }
    if (den == 0.0)
        throw std::invalid_argument("relative_error: all-zero reference");
    return num / den;
}

double l1_relative_error_real(std::span<const Complex> p, std::span<const Complex> c)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        num += std::abs(p[i].real() - c[i].real());
        den += std::abs(c[i].real());
    }
    if (den == 0.0)
        throw std::invalid_argument("l1_relative_error_real: all-zero reference");
    return num / den;
}

double l1_relative_error_imag(std::span<const Complex> p, std::span<const Complex> c)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        num += std::abs(p[i].imag() - c[i].imag());
        den += std::abs(c[i].imag());
    }
    if (den == 0.0)
        throw std::invalid_argument("l1_relative_error_imag: all-zero reference");
    return num / den;
}

std::vector<double> bc_residual(const FieldEvaluator& eval_interior,
                                std::span<const Complex> trace_at_mids, const Mesh& mesh,
                                double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("bc_residual: eps must be positive");
    if (trace_at_mids.size() != mesh.size())
        throw std::invalid_argument("bc_residual: trace length mismatch");
    std::vector<Vec2> inner(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i)
        inner[i] = mesh.panels[i].mid + eps * mesh.panels[i].normal;
    const auto ui = eval_interior(inner);
    std::vector<double> r(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i)
        r[i] = std::abs(trace_at_mids[i] - ui[i]);
    return r;
}

} // namespace hsbem
