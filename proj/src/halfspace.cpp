#include "hsbem/halfspace.hpp"

#include "hsbem/linalg.hpp"
#include "hsbem/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbem {

Mesh make_wall_mesh(double M0, double k, double panels_per_wavelength)
{
    const double h = (2.0 * pi / k) / panels_per_wavelength;
    const int n = std::max(2, (int)std::ceil(2.0 * M0 / h));
    return discretize_segment({-M0, 0.0}, {M0, 0.0}, n, BoundaryRole::Wall);
}

Mesh make_wall_mesh_graded(double M0, double k, double panels_per_wavelength, double focus_x,
                           double min_length, double ratio)
{
    const double cap = (2.0 * pi / k) / panels_per_wavelength;
    // panel count: geometric growth from min_length up to the cap on both
    // sides of the focus, then uniform at the cap
    double len = 2.0 * M0;
    int n = 0;
    double l = min_length;
    while (len > 0.0 && l < cap) {
        len -= 2.0 * l;
        n += 2;
        l *= ratio;
    }
    if (len > 0.0)
        n += (int)std::ceil(len / cap);
    return grade_segment({-M0, 0.0}, {M0, 0.0}, {focus_x, 0.0}, ratio, n, cap,
                         BoundaryRole::Wall);
}

bool point_in_closed_mesh(const Mesh& closed, Vec2 p)
{
    // even-odd rule over the panel segments
    bool inside = false;
    for (const auto& pa : closed.panels) {
        const Vec2 a = pa.p0, b = pa.p1;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xi > p.x)
                inside = !inside;
        }
    }
    return inside;
}

namespace {

void check_wall(const Mesh& wall)
{
    for (const auto& p : wall.panels)
        if (std::abs(p.mid.y) > 1e-12 || p.normal.y < 0.99)
            throw std::invalid_argument("halfspace: wall mesh must lie on y=0 with normals (0,1)");
}

std::vector<Complex> neumann_rhs(const Collocation& c, Vec2 x0, double k)
{
    std::vector<Complex> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        r[i] = -kernel_dG_dnx(c.points[i], x0, c.normals[i], k);
    return r;
}

} // namespace

DensitySolution solve_halfspace_empty(const WaveParams& wave, const SourceSpec& source,
                                      const TruncationParams& trunc, const Mesh& wall,
                                      const SolverOptions& opt)
{
    check_wall(wall);
    if (!(source.position.y > 0.0))
        throw std::domain_error("solve_halfspace_empty: source must lie strictly above the wall");
    const double k = wave.k;
    DensitySolution sol;
    sol.rule = build_rule(trunc.N0, trunc.a, opt.rule_density(k));

    // sigma = 2 dU_in/dn at the wall collocation points (normals into the fluid)
    sol.sigma_wall.resize(wall.size());
    for (std::size_t i = 0; i < wall.size(); ++i)
        sol.sigma_wall[i] =
            2.0 * kernel_dG_dnx(wall.panels[i].mid, source.position, wall.panels[i].normal, k);

    // xi = 2 (dU_in/dn)^ - sigma_W^ : the transform of (1 - W) sigma
    const auto ghat = fourier_of_source_dn(source.position, sol.rule, k);
    const auto swhat = fourier_of_windowed_density(wall, sol.sigma_wall, trunc.M0, sol.rule,
                                                   opt.assembly.quad_order);
    sol.xi.resize(sol.rule.size());
    for (std::size_t j = 0; j < sol.rule.size(); ++j)
        sol.xi[j] = 2.0 * ghat[j] - swhat[j];
    sol.rcond = 1.0;
    return sol;
}

HalfspaceSystem build_halfspace_system(const HalfspaceProblem& pb)
{
    check_wall(pb.wall);
    if (!(pb.source.position.y > 0.0))
        throw std::domain_error("assemble_and_solve: source must lie strictly above the wall");
    for (const auto& sc : pb.scatterers)
        for (const auto& p : sc.panels)
            if (std::min(p.p0.y, p.p1.y) <= 0.0)
                throw std::domain_error("assemble_and_solve: scatterers must lie in y > 0");

    const double k = pb.wave.k;
    HalfspaceSystem sys;
    sys.rule = build_rule(pb.trunc.N0, pb.trunc.a, pb.opt.rule_density(k));
    const int n0 = (int)pb.wall.size();
    int m = 0;
    for (const auto& sc : pb.scatterers)
        m += (int)sc.size();
    const int nl = (int)sys.rule.size();
    const int n = n0 + m + nl;
    sys.n_wall = n0;
    sys.n_scatterer = m;

    AssemblyOptions aopt = pb.opt.assembly;
    aopt.parallel = pb.opt.parallel;

    const Collocation cw = collocation_of(pb.wall);
    std::vector<Collocation> cs;
    for (const auto& sc : pb.scatterers)
        cs.push_back(collocation_of(sc));

    std::vector<double> wweight(n0); // window at wall panel midpoints
    for (int p = 0; p < n0; ++p)
        wweight[p] = window(pb.wall.panels[p].mid.x, pb.trunc.M0);

    ComplexMatrix& A = sys.a0;
    A = ComplexMatrix(n, n);
    if (m > 0)
        sys.a1 = ComplexMatrix(n, n); // hypersingular blocks, scaled by beta at solve time
    sys.rhs.resize(n);

    // --- wall rows: -1/2 sigma0 + D*_wall[sigma0](=0 flat) + (D*+bN)_sc = -dG/dn
    for (int i = 0; i < n0; ++i)
        A(i, i) = Complex(-0.5, 0.0);
    {
        int col = n0;
        for (std::size_t s = 0; s < pb.scatterers.size(); ++s) {
            const auto Ds = assemble_layer(LayerKind::AdjointDouble, cw, pb.scatterers[s], k, aopt);
            const auto Ns = assemble_layer(LayerKind::Hypersingular, cw, pb.scatterers[s], k, aopt);
            for (int i = 0; i < n0; ++i)
                for (int j = 0; j < (int)pb.scatterers[s].size(); ++j) {
                    A(i, col + j) = Ds(i, j);
                    sys.a1(i, col + j) = Ns(i, j);
                }
            col += (int)pb.scatterers[s].size();
        }
        const auto r = neumann_rhs(cw, pb.source.position, k);
        for (int i = 0; i < n0; ++i)
            sys.rhs[i] = r[i];
    }

    // --- scatterer rows
    int row = n0;
    for (std::size_t s = 0; s < pb.scatterers.size(); ++s) {
        const int ms = (int)pb.scatterers[s].size();
        // windowed wall columns
        const auto Dw = assemble_layer(LayerKind::AdjointDouble, cs[s], pb.wall, k, aopt);
        for (int i = 0; i < ms; ++i)
            for (int p = 0; p < n0; ++p)
                A(row + i, p) = Dw(i, p) * wweight[p];
        // scatterer-scatterer blocks
        int col = n0;
        for (std::size_t s2 = 0; s2 < pb.scatterers.size(); ++s2) {
            const int self = (s2 == s) ? 0 : -1;
            const auto Ds =
                assemble_layer(LayerKind::AdjointDouble, cs[s], pb.scatterers[s2], k, aopt, self);
            const auto Ns =
                assemble_layer(LayerKind::Hypersingular, cs[s], pb.scatterers[s2], k, aopt, self);
            for (int i = 0; i < ms; ++i)
                for (int j = 0; j < (int)pb.scatterers[s2].size(); ++j) {
                    A(row + i, col + j) = Ds(i, j);
                    sys.a1(row + i, col + j) = Ns(i, j);
                }
            if (s2 == s)
                for (int i = 0; i < ms; ++i)
                    A(row + i, col + i) += Complex(-0.5, 0.0);
            col += (int)pb.scatterers[s2].size();
        }
        // spectral columns: H operator at the scatterer collocation points
        const auto Hc = h_columns(sys.rule, cs[s].points, cs[s].normals, k, pb.opt.parallel);
        for (int i = 0; i < ms; ++i)
            for (int j = 0; j < nl; ++j)
                A(row + i, n0 + m + j) = Hc(i, j);
        const auto r = neumann_rhs(cs[s], pb.source.position, k);
        for (int i = 0; i < ms; ++i)
            sys.rhs[row + i] = r[i];
        row += ms;
    }

    // --- spectral rows: -1/2 sigma_W^ + (D*+bN)_sc^ - 1/2 xi = -(dG/dn)^
    {
        const auto T = windowed_transform_columns(pb.wall, pb.trunc.M0, sys.rule,
                                                  aopt.quad_order, pb.opt.parallel);
        for (int j = 0; j < nl; ++j)
            for (int p = 0; p < n0; ++p)
                A(n0 + m + j, p) = -0.5 * T(j, p);
        int col = n0;
        for (std::size_t s = 0; s < pb.scatterers.size(); ++s) {
            const auto Dh = spectral_layer_columns(LayerKind::AdjointDouble, pb.scatterers[s],
                                                   sys.rule, k, aopt.quad_order, pb.opt.parallel);
            const auto Nh = spectral_layer_columns(LayerKind::Hypersingular, pb.scatterers[s],
                                                   sys.rule, k, aopt.quad_order, pb.opt.parallel);
            for (int j = 0; j < nl; ++j)
                for (int q = 0; q < (int)pb.scatterers[s].size(); ++q) {
                    A(n0 + m + j, col + q) = Dh(j, q);
                    sys.a1(n0 + m + j, col + q) = Nh(j, q);
                }
            col += (int)pb.scatterers[s].size();
        }
        for (int j = 0; j < nl; ++j)
            A(n0 + m + j, n0 + m + j) += Complex(-0.5, 0.0);
        const auto gh = fourier_of_source_dn(pb.source.position, sys.rule, k);
        for (int j = 0; j < nl; ++j)
            sys.rhs[n0 + m + j] = -gh[j];
    }
    return sys;
}

DensitySolution solve_with_beta(const HalfspaceSystem& sys, Complex beta, bool parallel)
{
    ComplexMatrix A = sys.a0;
    if (sys.a1.rows > 0)
        for (std::size_t i = 0; i < A.a.size(); ++i)
            A.a[i] += beta * sys.a1.a[i];
    auto f = lu_factor(std::move(A), parallel);
    const double rc = rcond_estimate(f);
    if (rc < 1e-15)
        throw SolverError("assemble_and_solve: system is numerically singular", rc);
    auto x = lu_solve(f, sys.rhs);

    DensitySolution sol;
    sol.rule = sys.rule;
    sol.rcond = rc;
    sol.sigma_wall.assign(x.begin(), x.begin() + sys.n_wall);
    sol.sigma_scatterer.assign(x.begin() + sys.n_wall,
                               x.begin() + sys.n_wall + sys.n_scatterer);
    sol.xi.assign(x.begin() + sys.n_wall + sys.n_scatterer, x.end());
    return sol;
}

DensitySolution assemble_and_solve(const HalfspaceProblem& pb)
{
    const HalfspaceSystem sys = build_halfspace_system(pb);
    return solve_with_beta(sys, pb.beta, pb.opt.parallel);
}

std::vector<Complex> eval_total_field(const HalfspaceProblem& pb, const DensitySolution& sol,
                                      std::span<const Vec2> pts)
{
    const double k = pb.wave.k;
    for (const auto& p : pts) {
        if (!(p.y > 0.0))
            throw std::domain_error("eval_total_field: points must lie in y > 0");
        for (const auto& sc : pb.scatterers)
            if (point_in_closed_mesh(sc, p))
                throw std::domain_error("eval_total_field: point inside a scatterer");
    }
    AssemblyOptions aopt = pb.opt.assembly;
    aopt.parallel = pb.opt.parallel;

    std::vector<Complex> sigw(pb.wall.size());
    for (std::size_t p = 0; p < pb.wall.size(); ++p)
        sigw[p] = sol.sigma_wall[p] * window(pb.wall.panels[p].mid.x, pb.trunc.M0);

    std::vector<Complex> u = eval_layer(LayerKind::Single, pb.wall, sigw, pts, k, aopt);
    const auto uf = eval_F(sol.rule, sol.xi, pts, k, pb.opt.parallel);
    for (std::size_t i = 0; i < pts.size(); ++i)
        u[i] += uf[i] + kernel_G(pts[i], pb.source.position, k);

    std::size_t off = 0;
    for (const auto& sc : pb.scatterers) {
        const std::span<const Complex> s(sol.sigma_scatterer.data() + off, sc.size());
        const auto us = eval_layer(LayerKind::Single, sc, s, pts, k, aopt);
        const auto ud = eval_layer(LayerKind::Double, sc, s, pts, k, aopt);
        for (std::size_t i = 0; i < pts.size(); ++i)
            u[i] += us[i] + pb.beta * ud[i];
        off += sc.size();
    }
    return u;
}

std::vector<Complex> wall_trace(const HalfspaceProblem& pb, const DensitySolution& sol)
{
    const double k = pb.wave.k;
    AssemblyOptions aopt = pb.opt.assembly;
    aopt.parallel = pb.opt.parallel;
    const Collocation cw = collocation_of(pb.wall);

    std::vector<Complex> sigw(pb.wall.size());
    for (std::size_t p = 0; p < pb.wall.size(); ++p)
        sigw[p] = sol.sigma_wall[p] * window(pb.wall.panels[p].mid.x, pb.trunc.M0);

    // S is continuous across the wall; the self panel uses the closed form
    const auto S = assemble_layer(LayerKind::Single, cw, pb.wall, k, aopt, 0);
    std::vector<Complex> u = matvec(S, sigw);
    const auto uf = eval_F(sol.rule, sol.xi, cw.points, k, pb.opt.parallel);
    for (std::size_t i = 0; i < cw.size(); ++i)
        u[i] += uf[i] + kernel_G(cw.points[i], pb.source.position, k);

    std::size_t off = 0;
    for (const auto& sc : pb.scatterers) {
        const std::span<const Complex> s(sol.sigma_scatterer.data() + off, sc.size());
        const auto us = eval_layer(LayerKind::Single, sc, s, cw.points, k, aopt);
        const auto ud = eval_layer(LayerKind::Double, sc, s, cw.points, k, aopt);
        for (std::size_t i = 0; i < cw.size(); ++i)
            u[i] += us[i] + pb.beta * ud[i];
        off += sc.size();
    }
    return u;
}

std::vector<Complex> scatterer_trace(const HalfspaceProblem& pb, const DensitySolution& sol,
                                     std::size_t si)
{
    const double k = pb.wave.k;
    AssemblyOptions aopt = pb.opt.assembly;
    aopt.parallel = pb.opt.parallel;
    const Mesh& mesh = pb.scatterers.at(si);
    const Collocation c = collocation_of(mesh);

    std::vector<Complex> sigw(pb.wall.size());
    for (std::size_t p = 0; p < pb.wall.size(); ++p)
        sigw[p] = sol.sigma_wall[p] * window(pb.wall.panels[p].mid.x, pb.trunc.M0);

    std::vector<Complex> u = eval_layer(LayerKind::Single, pb.wall, sigw, c.points, k, aopt);
    const auto uf = eval_F(sol.rule, sol.xi, c.points, k, pb.opt.parallel);
    for (std::size_t i = 0; i < c.size(); ++i)
        u[i] += uf[i] + kernel_G(c.points[i], pb.source.position, k);

    std::size_t off = 0;
    for (std::size_t s2 = 0; s2 < pb.scatterers.size(); ++s2) {
        const Mesh& sc = pb.scatterers[s2];
        const std::span<const Complex> s(sol.sigma_scatterer.data() + off, sc.size());
        if (s2 == si) {
            // fluid-side trace: S continuous (closed-form self entry),
            // D jumps by +sigma/2 towards the fluid
            const auto S = assemble_layer(LayerKind::Single, c, sc, k, aopt, 0);
            const auto D = assemble_layer(LayerKind::Double, c, sc, k, aopt, 0);
            const auto us = matvec(S, s);
            const auto ud = matvec(D, s);
            for (std::size_t i = 0; i < c.size(); ++i)
                u[i] += us[i] + pb.beta * (ud[i] + 0.5 * s[i]);
        } else {
            const auto us = eval_layer(LayerKind::Single, sc, s, c.points, k, aopt);
            const auto ud = eval_layer(LayerKind::Double, sc, s, c.points, k, aopt);
            for (std::size_t i = 0; i < c.size(); ++i)
                u[i] += us[i] + pb.beta * ud[i];
        }
        off += sc.size();
    }
    return u;
}

} // namespace hsbem
