#include "hsbem/cavity.hpp"

#include "hsbem/linalg.hpp"
#include "hsbem/quadrature.hpp"
#include "hsbem/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbem {

namespace {

double min_distance_to_mesh(const Mesh& m, Vec2 p)
{
    double d = std::numeric_limits<double>::infinity();
    for (const auto& pa : m.panels)
        d = std::min(d, point_segment_distance(p, pa.p0, pa.p1));
    return d;
}

// even-odd crossing test over an arbitrary set of segments forming closed loops
bool inside_segments(std::span<const Mesh* const> meshes, Vec2 p)
{
    bool inside = false;
    for (const Mesh* m : meshes)
        for (const auto& pa : m->panels) {
            const Vec2 a = pa.p0, b = pa.p1;
            if ((a.y > p.y) != (b.y > p.y)) {
                const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if (xi > p.x)
                    inside = !inside;
            }
        }
    return inside;
}

std::vector<Complex> dirichlet_rhs_diff(const std::vector<Vec2>& pts,
                                        const std::optional<SourceSpec>& s1,
                                        const std::optional<SourceSpec>& s2, double k)
{
    std::vector<Complex> r(pts.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (s2)
            r[i] += kernel_G(pts[i], s2->position, k);
        if (s1)
            r[i] -= kernel_G(pts[i], s1->position, k);
    }
    return r;
}

} // namespace

Mesh make_cavity_wall_mesh(double M0, double k, double panels_per_wavelength, double foot)
{
    // Panel edges should land on the virtual-boundary feet at x = +-foot, so
    // that the collocation midpoints stay h/2 clear of the junction corner
    // (the coupled kernels are singular there).
    const double h0 = (2.0 * pi / k) / panels_per_wavelength;
    const int n0 = std::max(2, (int)std::ceil(2.0 * M0 / h0));
    int best = n0;
    double best_frac = std::numeric_limits<double>::infinity();
    for (int n = n0; n < n0 + 64; ++n) {
        const double h = 2.0 * M0 / n;
        const double t = (foot + M0) / h;
        const double frac = std::abs(t - std::round(t));
        if (frac < best_frac) {
            best_frac = frac;
            best = n;
        }
        if (frac < 0.02)
            break;
    }
    return discretize_segment({-M0, 0.0}, {M0, 0.0}, best, BoundaryRole::Wall);
}

Region classify_point(const CavityProblem& pb, Vec2 p, double tol)
{
    double d = std::min(min_distance_to_mesh(pb.gamma1, p), min_distance_to_mesh(pb.gamma2, p));
    for (const auto& sc : pb.scatterers1)
        d = std::min(d, min_distance_to_mesh(sc, p));
    for (const auto& sc : pb.scatterers2)
        d = std::min(d, min_distance_to_mesh(sc, p));
    if (p.y > 0.0)
        d = std::min(d, min_distance_to_mesh(pb.wall, p));
    else if (std::abs(p.y) < tol)
        d = std::abs(p.y);
    if (d < tol)
        return Region::BoundaryAdjacent;

    for (const auto& sc : pb.scatterers1)
        if (point_in_closed_mesh(sc, p))
            return Region::OutsideFluid;
    for (const auto& sc : pb.scatterers2)
        if (point_in_closed_mesh(sc, p))
            return Region::OutsideFluid;

    const Mesh* loop[2] = {&pb.gamma1, &pb.gamma2};
    if (inside_segments(loop, p))
        return Region::Omega2;
    return p.y > 0.0 ? Region::Omega1 : Region::OutsideFluid;
}

CavityDensities solve_cavity(const CavityProblem& pb)
{
    if (!pb.scatterers1.empty() || !pb.scatterers2.empty())
        throw std::invalid_argument("solve_cavity: use solve_cavity_with_scatterers");
    return solve_cavity_with_scatterers(pb);
}

CavityDensities solve_cavity_with_scatterers(const CavityProblem& pb)
{
    if (pb.wall.size() == 0 || pb.gamma1.size() == 0 || pb.gamma2.size() == 0)
        throw std::invalid_argument("solve_cavity: wall, gamma1 and gamma2 must be meshed");
    if (pb.source1 && classify_point(pb, pb.source1->position) != Region::Omega1)
        throw std::domain_error("solve_cavity: source1 must lie in Omega1");
    if (pb.source2 && classify_point(pb, pb.source2->position) != Region::Omega2)
        throw std::domain_error("solve_cavity: source2 must lie in Omega2");

    const double k = pb.wave.k;
    SommerfeldRule rule = build_rule(pb.trunc.N0, pb.trunc.a, pb.opt.rule_density(k));
    AssemblyOptions aopt = pb.opt.assembly;
    aopt.parallel = pb.opt.parallel;

    const int n0 = (int)pb.wall.size();
    const int n1 = (int)pb.gamma1.size();
    const int n2 = (int)pb.gamma2.size();
    int m1 = 0, m2 = 0;
    for (const auto& sc : pb.scatterers1)
        m1 += (int)sc.size();
    for (const auto& sc : pb.scatterers2)
        m2 += (int)sc.size();
    const int nl = (int)rule.size();
    const int n = n0 + n1 + 2 * n2 + m1 + m2 + nl;

    // column offsets
    const int c_s0 = 0, c_s1 = n0, c_s2 = n0 + n1, c_mu = n0 + n1 + n2;
    const int c_m1 = n0 + n1 + 2 * n2, c_m2 = c_m1 + m1, c_xi = c_m2 + m2;
    // row offsets
    const int r_g0 = 0, r_g1 = n0, r_p = n0 + n1, r_v = n0 + n1 + n2;
    const int r_m1 = n0 + n1 + 2 * n2, r_m2 = r_m1 + m1, r_sp = r_m2 + m2;

    const Collocation cw = collocation_of(pb.wall);
    const Collocation c1 = collocation_of(pb.gamma1);
    const Collocation c2 = collocation_of(pb.gamma2);
    std::vector<Collocation> csc1, csc2;
    for (const auto& sc : pb.scatterers1)
        csc1.push_back(collocation_of(sc));
    for (const auto& sc : pb.scatterers2)
        csc2.push_back(collocation_of(sc));

    std::vector<double> wweight(n0);
    for (int p = 0; p < n0; ++p)
        wweight[p] = window(pb.wall.panels[p].mid.x, pb.trunc.M0);

    ComplexMatrix A(n, n);
    std::vector<Complex> rhs(n);

    auto put = [&](int r0, int c0, const ComplexMatrix& B, Complex scale = {1.0, 0.0}) {
        for (int i = 0; i < B.rows; ++i)
            for (int j = 0; j < B.cols; ++j)
                A(r0 + i, c0 + j) += scale * B(i, j);
    };
    auto put_bm = [&](int r0, int c0, const ComplexMatrix& D, const ComplexMatrix& N,
                      Complex scale = {1.0, 0.0}) {
        for (int i = 0; i < D.rows; ++i)
            for (int j = 0; j < D.cols; ++j)
                A(r0 + i, c0 + j) += scale * (D(i, j) + pb.beta * N(i, j));
    };

    // --- Gamma0 rows: -1/2 s0 + D*_G2[s2] + N_G2[mu] + (D*+bN)_sc1 = -du1/dn
    for (int i = 0; i < n0; ++i)
        A(r_g0 + i, c_s0 + i) = Complex(-0.5, 0.0);
    put(r_g0, c_s2, assemble_layer(LayerKind::AdjointDouble, cw, pb.gamma2, k, aopt));
    put(r_g0, c_mu, assemble_layer(LayerKind::Hypersingular, cw, pb.gamma2, k, aopt));
    // --- Gamma1 rows: -1/2 s1 + D*_G1[s1] + D*_G2[s2] + N_G2[mu] + (D*+bN)_sc2 = -du2/dn
    put(r_g1, c_s1, assemble_layer(LayerKind::AdjointDouble, c1, pb.gamma1, k, aopt, 0));
    for (int i = 0; i < n1; ++i)
        A(r_g1 + i, c_s1 + i) += Complex(-0.5, 0.0);
    put(r_g1, c_s2, assemble_layer(LayerKind::AdjointDouble, c1, pb.gamma2, k, aopt));
    put(r_g1, c_mu, assemble_layer(LayerKind::Hypersingular, c1, pb.gamma2, k, aopt));
    {
        int col = c_m2;
        for (const auto& sc : pb.scatterers2) {
            put_bm(r_g1, col, assemble_layer(LayerKind::AdjointDouble, c1, sc, k, aopt),
                   assemble_layer(LayerKind::Hypersingular, c1, sc, k, aopt));
            col += (int)sc.size();
        }
    }
    if (pb.source2) {
        for (int i = 0; i < n1; ++i)
            rhs[r_g1 + i] = -kernel_dG_dnx(c1.points[i], pb.source2->position, c1.normals[i], k);
    }

    // --- Gamma2 pressure rows:
    //     S_G0[s0_W] + F[xi] - S_G1[s1] + mu + (S+bD)_sc1 - (S+bD)_sc2 = G(x02) - G(x01)
    {
        auto Sw = assemble_layer(LayerKind::Single, c2, pb.wall, k, aopt);
        for (int i = 0; i < n2; ++i)
            for (int p = 0; p < n0; ++p)
                A(r_p + i, c_s0 + p) = Sw(i, p) * (pb.windowed_continuity ? wweight[p] : 1.0);
        put(r_p, c_s1, assemble_layer(LayerKind::Single, c2, pb.gamma1, k, aopt), {-1.0, 0.0});
        for (int i = 0; i < n2; ++i)
            A(r_p + i, c_mu + i) += Complex(1.0, 0.0);
        int col = c_m1;
        for (const auto& sc : pb.scatterers1) {
            put_bm(r_p, col, assemble_layer(LayerKind::Single, c2, sc, k, aopt),
                   assemble_layer(LayerKind::Double, c2, sc, k, aopt));
            col += (int)sc.size();
        }
        col = c_m2;
        for (const auto& sc : pb.scatterers2) {
            put_bm(r_p, col, assemble_layer(LayerKind::Single, c2, sc, k, aopt),
                   assemble_layer(LayerKind::Double, c2, sc, k, aopt), {-1.0, 0.0});
            col += (int)sc.size();
        }
        put(r_p, c_xi, f_columns(rule, c2.points, k, pb.opt.parallel));
        const auto r = dirichlet_rhs_diff(c2.points, pb.source1, pb.source2, k);
        for (int i = 0; i < n2; ++i)
            rhs[r_p + i] = r[i];
    }

    // --- Gamma2 velocity rows:
    //     D*_G0[s0_W] + H[xi] - s2 - D*_G1[s1] + (D*+bN)_sc1 - (D*+bN)_sc2 = du2/dn - du1/dn
    {
        auto Dw = assemble_layer(LayerKind::AdjointDouble, c2, pb.wall, k, aopt);
        for (int i = 0; i < n2; ++i)
            for (int p = 0; p < n0; ++p)
                A(r_v + i, c_s0 + p) = Dw(i, p) * (pb.windowed_continuity ? wweight[p] : 1.0);
        put(r_v, c_s1, assemble_layer(LayerKind::AdjointDouble, c2, pb.gamma1, k, aopt),
            {-1.0, 0.0});
        for (int i = 0; i < n2; ++i)
            A(r_v + i, c_s2 + i) += Complex(-1.0, 0.0);
        int col = c_m1;
        for (const auto& sc : pb.scatterers1) {
            put_bm(r_v, col, assemble_layer(LayerKind::AdjointDouble, c2, sc, k, aopt),
                   assemble_layer(LayerKind::Hypersingular, c2, sc, k, aopt));
            col += (int)sc.size();
        }
        col = c_m2;
        for (const auto& sc : pb.scatterers2) {
            put_bm(r_v, col, assemble_layer(LayerKind::AdjointDouble, c2, sc, k, aopt),
                   assemble_layer(LayerKind::Hypersingular, c2, sc, k, aopt), {-1.0, 0.0});
            col += (int)sc.size();
        }
        put(r_v, c_xi, h_columns(rule, c2.points, c2.normals, k, pb.opt.parallel));
        for (int i = 0; i < n2; ++i) {
            Complex r{};
            if (pb.source2)
                r += kernel_dG_dnx(c2.points[i], pb.source2->position, c2.normals[i], k);
            if (pb.source1)
                r -= kernel_dG_dnx(c2.points[i], pb.source1->position, c2.normals[i], k);
            rhs[r_v + i] = r;
        }
    }

    // --- scatterer-1 rows (Omega1 representation)
    {
        int row = r_m1, col1 = c_m1;
        for (std::size_t s = 0; s < pb.scatterers1.size(); ++s) {
            const int ms = (int)pb.scatterers1[s].size();
            auto Dw = assemble_layer(LayerKind::AdjointDouble, csc1[s], pb.wall, k, aopt);
            for (int i = 0; i < ms; ++i)
                for (int p = 0; p < n0; ++p)
                    A(row + i, c_s0 + p) = Dw(i, p) * wweight[p];
            put(row, c_s2, assemble_layer(LayerKind::AdjointDouble, csc1[s], pb.gamma2, k, aopt));
            put(row, c_mu, assemble_layer(LayerKind::Hypersingular, csc1[s], pb.gamma2, k, aopt));
            int col = col1;
            for (std::size_t s2 = 0; s2 < pb.scatterers1.size(); ++s2) {
                const int self = (s2 == s) ? 0 : -1;
                put_bm(row, col,
                       assemble_layer(LayerKind::AdjointDouble, csc1[s], pb.scatterers1[s2], k,
                                      aopt, self),
                       assemble_layer(LayerKind::Hypersingular, csc1[s], pb.scatterers1[s2], k,
                                      aopt, self));
                if (s2 == s)
                    for (int i = 0; i < ms; ++i)
                        A(row + i, col + i) += Complex(-0.5, 0.0);
                col += (int)pb.scatterers1[s2].size();
            }
            put(row, c_xi, h_columns(rule, csc1[s].points, csc1[s].normals, k, pb.opt.parallel));
            if (pb.source1)
                for (int i = 0; i < ms; ++i)
                    rhs[row + i] =
                        -kernel_dG_dnx(csc1[s].points[i], pb.source1->position, csc1[s].normals[i], k);
            row += ms;
        }
    }

    // --- scatterer-2 rows (Omega2 representation)
    {
        int row = r_m2, col2 = c_m2;
        for (std::size_t s = 0; s < pb.scatterers2.size(); ++s) {
            const int ms = (int)pb.scatterers2[s].size();
            put(row, c_s1, assemble_layer(LayerKind::AdjointDouble, csc2[s], pb.gamma1, k, aopt));
            put(row, c_s2, assemble_layer(LayerKind::AdjointDouble, csc2[s], pb.gamma2, k, aopt));
            put(row, c_mu, assemble_layer(LayerKind::Hypersingular, csc2[s], pb.gamma2, k, aopt));
            int col = col2;
            for (std::size_t s2 = 0; s2 < pb.scatterers2.size(); ++s2) {
                const int self = (s2 == s) ? 0 : -1;
                put_bm(row, col,
                       assemble_layer(LayerKind::AdjointDouble, csc2[s], pb.scatterers2[s2], k,
                                      aopt, self),
                       assemble_layer(LayerKind::Hypersingular, csc2[s], pb.scatterers2[s2], k,
                                      aopt, self));
                if (s2 == s)
                    for (int i = 0; i < ms; ++i)
                        A(row + i, col + i) += Complex(-0.5, 0.0);
                col += (int)pb.scatterers2[s2].size();
            }
            if (pb.source2)
                for (int i = 0; i < ms; ++i)
                    rhs[row + i] =
                        -kernel_dG_dnx(csc2[s].points[i], pb.source2->position, csc2[s].normals[i], k);
            row += ms;
        }
    }

    // --- spectral rows: -1/2 s0_W^ + D*_G2^ + N_G2^ + (D*+bN)_sc1^ - 1/2 xi = -(du1/dn)^
    {
        const auto T = windowed_transform_columns(pb.wall, pb.trunc.M0, rule, aopt.quad_order,
                                                  pb.opt.parallel);
        for (int j = 0; j < nl; ++j)
            for (int p = 0; p < n0; ++p)
                A(r_sp + j, c_s0 + p) = -0.5 * T(j, p);
        put(r_sp, c_s2,
            spectral_layer_columns(LayerKind::AdjointDouble, pb.gamma2, rule, k, aopt.quad_order,
                                   pb.opt.parallel));
        put(r_sp, c_mu,
            spectral_layer_columns(LayerKind::Hypersingular, pb.gamma2, rule, k, aopt.quad_order,
                                   pb.opt.parallel));
        int col = c_m1;
        for (const auto& sc : pb.scatterers1) {
            put_bm(r_sp, col,
                   spectral_layer_columns(LayerKind::AdjointDouble, sc, rule, k, aopt.quad_order,
                                          pb.opt.parallel),
                   spectral_layer_columns(LayerKind::Hypersingular, sc, rule, k, aopt.quad_order,
                                          pb.opt.parallel));
            col += (int)sc.size();
        }
        for (int j = 0; j < nl; ++j)
            A(r_sp + j, c_xi + j) += Complex(-0.5, 0.0);
        if (pb.source1) {
            const auto gh = fourier_of_source_dn(pb.source1->position, rule, k);
            for (int j = 0; j < nl; ++j)
                rhs[r_sp + j] = -gh[j];
        }
    }

    auto f = lu_factor(std::move(A), pb.opt.parallel);
    const double rc = rcond_estimate(f);
    if (rc < 1e-15)
        throw SolverError("solve_cavity: system is numerically singular", rc);
    auto x = lu_solve(f, std::move(rhs));

    CavityDensities d;
    d.rule = std::move(rule);
    d.rcond = rc;
    d.sigma_wall.assign(x.begin() + c_s0, x.begin() + c_s0 + n0);
    d.sigma_g1.assign(x.begin() + c_s1, x.begin() + c_s1 + n1);
    d.sigma_g2.assign(x.begin() + c_s2, x.begin() + c_s2 + n2);
    d.mu_g2.assign(x.begin() + c_mu, x.begin() + c_mu + n2);
    d.sigma_sc1.assign(x.begin() + c_m1, x.begin() + c_m1 + m1);
    d.sigma_sc2.assign(x.begin() + c_m2, x.begin() + c_m2 + m2);
    d.xi.assign(x.begin() + c_xi, x.end());
    return d;
}

namespace {

// shared field pieces
struct CavityEval {
    const CavityProblem& pb;
    const CavityDensities& d;
    AssemblyOptions aopt;
    std::vector<Complex> sigw;

    CavityEval(const CavityProblem& pb_, const CavityDensities& d_) : pb(pb_), d(d_)
    {
        aopt = pb.opt.assembly;
        aopt.parallel = pb.opt.parallel;
        sigw.resize(pb.wall.size());
        for (std::size_t p = 0; p < pb.wall.size(); ++p)
            sigw[p] = d.sigma_wall[p] * window(pb.wall.panels[p].mid.x, pb.trunc.M0);
    }

    // u_virtual = S_G2[s2] + D_G2[mu] at points off Gamma2
    std::vector<Complex> virtual_layers(std::span<const Vec2> pts) const
    {
        auto u = eval_layer(LayerKind::Single, pb.gamma2, d.sigma_g2, pts, pb.wave.k, aopt);
        const auto ud = eval_layer(LayerKind::Double, pb.gamma2, d.mu_g2, pts, pb.wave.k, aopt);
        for (std::size_t i = 0; i < pts.size(); ++i)
            u[i] += ud[i];
        return u;
    }

    std::vector<Complex> scatterer_layers(const std::vector<Mesh>& scs,
                                          std::span<const Complex> sig,
                                          std::span<const Vec2> pts) const
    {
        std::vector<Complex> u(pts.size(), Complex(0.0, 0.0));
        std::size_t off = 0;
        for (const auto& sc : scs) {
            const std::span<const Complex> s(sig.data() + off, sc.size());
            const auto us = eval_layer(LayerKind::Single, sc, s, pts, pb.wave.k, aopt);
            const auto ud = eval_layer(LayerKind::Double, sc, s, pts, pb.wave.k, aopt);
            for (std::size_t i = 0; i < pts.size(); ++i)
                u[i] += us[i] + pb.beta * ud[i];
            off += sc.size();
        }
        return u;
    }

    // Omega1: u_in1 + S_G0[s0_W] + F[xi] + virtual + scatterers1
    std::vector<Complex> omega1(std::span<const Vec2> pts) const
    {
        auto u = eval_layer(LayerKind::Single, pb.wall, sigw, pts, pb.wave.k, aopt);
        const auto uf = eval_F(d.rule, d.xi, pts, pb.wave.k, pb.opt.parallel);
        const auto uv = virtual_layers(pts);
        const auto us = scatterer_layers(pb.scatterers1, d.sigma_sc1, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            u[i] += uf[i] + uv[i] + us[i];
            if (pb.source1)
                u[i] += kernel_G(pts[i], pb.source1->position, pb.wave.k);
        }
        return u;
    }

    // Omega2: u_in2 + S_G1[s1] + virtual + scatterers2
    std::vector<Complex> omega2(std::span<const Vec2> pts) const
    {
        auto u = eval_layer(LayerKind::Single, pb.gamma1, d.sigma_g1, pts, pb.wave.k, aopt);
        const auto uv = virtual_layers(pts);
        const auto us = scatterer_layers(pb.scatterers2, d.sigma_sc2, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            u[i] += uv[i] + us[i];
            if (pb.source2)
                u[i] += kernel_G(pts[i], pb.source2->position, pb.wave.k);
        }
        return u;
    }
};

} // namespace

std::vector<Complex> eval_total_field_cavity(const CavityProblem& pb, const CavityDensities& d,
                                             std::span<const Vec2> pts)
{
    const CavityEval ev(pb, d);
    std::vector<Vec2> p1, p2;
    std::vector<std::size_t> i1, i2;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        switch (classify_point(pb, pts[i])) {
        case Region::Omega1:
            p1.push_back(pts[i]);
            i1.push_back(i);
            break;
        case Region::Omega2:
            p2.push_back(pts[i]);
            i2.push_back(i);
            break;
        default:
            throw std::domain_error("eval_total_field_cavity: point outside the fluid");
        }
    }
    std::vector<Complex> out(pts.size());
    const auto u1 = ev.omega1(p1);
    const auto u2 = ev.omega2(p2);
    for (std::size_t j = 0; j < i1.size(); ++j)
        out[i1[j]] = u1[j];
    for (std::size_t j = 0; j < i2.size(); ++j)
        out[i2[j]] = u2[j];
    return out;
}

std::vector<Complex> cavity_gamma1_trace(const CavityProblem& pb, const CavityDensities& d)
{
    const CavityEval ev(pb, d);
    const Collocation c1 = collocation_of(pb.gamma1);
    // S_G1 self entries by the closed form; everything else is regular here
    const auto S = assemble_layer(LayerKind::Single, c1, pb.gamma1, pb.wave.k, ev.aopt, 0);
    auto u = matvec(S, d.sigma_g1);
    const auto uv = ev.virtual_layers(c1.points);
    const auto us = ev.scatterer_layers(pb.scatterers2, d.sigma_sc2, c1.points);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        u[i] += uv[i] + us[i];
        if (pb.source2)
            u[i] += kernel_G(c1.points[i], pb.source2->position, pb.wave.k);
    }
    return u;
}

std::vector<Complex> cavity_wall_trace(const CavityProblem& pb, const CavityDensities& d)
{
    const CavityEval ev(pb, d);
    const Collocation cw = collocation_of(pb.wall);
    const auto S = assemble_layer(LayerKind::Single, cw, pb.wall, pb.wave.k, ev.aopt, 0);
    auto u = matvec(S, ev.sigw);
    const auto uf = eval_F(d.rule, d.xi, cw.points, pb.wave.k, pb.opt.parallel);
    const auto uv = ev.virtual_layers(cw.points);
    const auto us = ev.scatterer_layers(pb.scatterers1, d.sigma_sc1, cw.points);
    for (std::size_t i = 0; i < cw.size(); ++i) {
        u[i] += uf[i] + uv[i] + us[i];
        if (pb.source1)
            u[i] += kernel_G(cw.points[i], pb.source1->position, pb.wave.k);
    }
    return u;
}

} // namespace hsbem
