#include "hsbem/potentials.hpp"

#include "hsbem/quadrature.hpp"
#include "hsbem/specfun.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hsbem {

Collocation collocation_of(const Mesh& m)
{
    Collocation c;
    c.points.reserve(m.size());
    c.normals.reserve(m.size());
    for (const auto& p : m.panels) {
        c.points.push_back(p.mid);
        c.normals.push_back(p.normal);
    }
    return c;
}

Complex kernel_G(Vec2 x, Vec2 xs, double k)
{
    const double r = norm(x - xs);
    if (r == 0.0)
        throw std::domain_error("kernel_G: coincident points");
    return Complex(0.0, 0.25) * hankel1(0, k * r);
}

Complex kernel_dG_dny(Vec2 x, Vec2 xs, Vec2 n_src, double k)
{
    const Vec2 d = x - xs;
    const double r = norm(d);
    if (r == 0.0)
        throw std::domain_error("kernel_dG_dny: coincident points");
    const double rn = (d.x * n_src.x + d.y * n_src.y) / r;
    return Complex(0.0, 0.25 * k) * hankel1(1, k * r) * rn;
}

Complex kernel_dG_dnx(Vec2 x, Vec2 xs, Vec2 n_col, double k)
{
    const Vec2 d = x - xs;
    const double r = norm(d);
    if (r == 0.0)
        throw std::domain_error("kernel_dG_dnx: coincident points");
    const double rn = (d.x * n_col.x + d.y * n_col.y) / r;
    return Complex(0.0, -0.25 * k) * hankel1(1, k * r) * rn;
}

Complex kernel_d2G(Vec2 x, Vec2 xs, Vec2 n_col, Vec2 n_src, double k)
{
    const Vec2 d = x - xs;
    const double r = norm(d);
    if (r == 0.0)
        throw std::domain_error("kernel_d2G: coincident points");
    const double rn = (d.x * n_col.x + d.y * n_col.y) / r;
    const double rns = (d.x * n_src.x + d.y * n_src.y) / r;
    const double nn = n_col.x * n_src.x + n_col.y * n_src.y;
    const Complex h0 = hankel1(0, k * r);
    const Complex h1 = hankel1(1, k * r);
    return Complex(0.0, 0.25 * k) * (k * h0 * rn * rns + h1 * (nn - 2.0 * rn * rns) / r);
}

namespace {

using KernelFn = std::function<Complex(Vec2)>; // source-point kernel at fixed collocation

Complex gauss_segment(const KernelFn& f, Vec2 a, Vec2 b, int order)
{
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 half = 0.5 * (b - a);
    const double jac = norm(b - a) * 0.5;
    Complex acc{};
    for (const auto& g : gauss_rule(order))
        acc += g.w * f(mid + g.x * half);
    return acc * jac;
}

// abs_floor guards against refining pure roundoff (a kernel that is
// analytically zero on the panel evaluates to ~1e-17, not 0)
Complex adaptive_segment(const KernelFn& f, Vec2 a, Vec2 b, int order, double tol, int depth,
                         double scale, double abs_floor)
{
    const Complex whole = gauss_segment(f, a, b, order);
    const Vec2 mid = 0.5 * (a + b);
    const Complex left = gauss_segment(f, a, mid, order);
    const Complex right = gauss_segment(f, mid, b, order);
    const Complex fine = left + right;
    if (depth <= 0
        || std::abs(whole - fine) <= tol * std::max(scale, std::abs(fine)) + abs_floor)
        return fine;
    const double s = std::max(scale, std::abs(fine));
    return adaptive_segment(f, a, mid, order, tol, depth - 1, s, abs_floor)
           + adaptive_segment(f, mid, b, order, tol, depth - 1, s, abs_floor);
}

KernelFn bind_kernel(LayerKind kind, Vec2 x, Vec2 nx, Vec2 n_src, double k)
{
    switch (kind) {
    case LayerKind::Single:
        return [=](Vec2 y) { return kernel_G(x, y, k); };
    case LayerKind::Double:
        return [=](Vec2 y) { return kernel_dG_dny(x, y, n_src, k); };
    case LayerKind::AdjointDouble:
        return [=](Vec2 y) { return kernel_dG_dnx(x, y, nx, k); };
    case LayerKind::Hypersingular:
        return [=](Vec2 y) { return kernel_d2G(x, y, nx, n_src, k); };
    }
    throw std::logic_error("bind_kernel: bad kind");
}

Complex panel_entry(LayerKind kind, Vec2 x, Vec2 nx, const Panel& p, double k,
                    const AssemblyOptions& opt)
{
    const KernelFn f = bind_kernel(kind, x, nx, p.normal, k);
    const double d = point_segment_distance(x, p.p0, p.p1);
    if (d < opt.near_factor * p.length)
        return adaptive_segment(f, p.p0, p.p1, opt.quad_order, opt.near_tol, opt.max_depth, 0.0,
                                1e-13 * p.length);
    return gauss_segment(f, p.p0, p.p1, opt.quad_order);
}

} // namespace

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 d = b - a;
    const double L2 = dot(d, d);
    const double t = (L2 > 0.0) ? std::clamp(dot(p - a, d) / L2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * d));
}

Complex single_layer_self(double h, double k, int quad_order)
{
    // integral of G over the panel with the collocation point at its midpoint:
    // -(1/2pi) int ln|s| ds  +  2 int_0^{h/2} [G(s) + ln(s)/2pi] ds
    const double log_part = -(1.0 / (2.0 * pi)) * h * (std::log(0.5 * h) - 1.0);
    const double lk2 = std::log(0.5 * k);
    Complex reg{};
    for (const auto& g : gauss_rule(quad_order)) {
        const double s = 0.25 * h * (g.x + 1.0); // [0, h/2]
        const double z = k * s;
        const double j0 = bessel_j0(z);
        const Complex greg = Complex(0.0, 0.25) * j0 - 0.25 * y0_reg(z)
                             - (1.0 / (2.0 * pi)) * (lk2 * j0 + std::log(s) * (j0 - 1.0));
        reg += g.w * greg;
    }
    return Complex(log_part, 0.0) + 2.0 * (0.25 * h) * reg;
}

Complex hypersingular_self(double h, double k, int quad_order)
{
    // Hadamard finite part of (i k^2/4) H1(k|s|)/(k|s|) over the panel:
    // the 1/s^2 part contributes -2/(pi h); the log and entire parts are
    // integrated on [0, h/2].
    const double fp_part = -2.0 / (pi * h);
    const double lk2 = std::log(0.5 * k);
    const double log_coeff = -k * k / (2.0 * pi); // multiplies ln(ks/2) g1(ks)
    // analytic integral of ln|s| against the constant g1(0) = 1/2
    const double log_part = 2.0 * log_coeff * 0.5 * (0.5 * h) * (std::log(0.5 * h) - 1.0);
    Complex reg{};
    for (const auto& g : gauss_rule(quad_order)) {
        const double s = 0.25 * h * (g.x + 1.0);
        const double z = k * s;
        const double g1 = j1_over_z(z);
        const Complex chi = log_coeff * (lk2 * g1 + std::log(s) * (g1 - 0.5))
                            + Complex(0.0, 0.25 * k * k) * h1_over_z_reg(z);
        reg += g.w * chi;
    }
    return Complex(fp_part + log_part, 0.0) + 2.0 * (0.25 * h) * reg;
}

ComplexMatrix assemble_layer(LayerKind kind, const Collocation& colloc, const Mesh& src, double k,
                             const AssemblyOptions& opt, int self_start)
{
    const int nr = (int)colloc.size();
    const int nc = (int)src.size();
    ComplexMatrix A(nr, nc);
    const bool need_nx = (kind == LayerKind::AdjointDouble || kind == LayerKind::Hypersingular);
    if (need_nx && colloc.normals.size() != colloc.points.size())
        throw std::invalid_argument("assemble_layer: collocation normals required");
    std::atomic<bool> on_foreign_panel{false};

#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
    for (int i = 0; i < nr; ++i) {
        const Vec2 x = colloc.points[i];
        const Vec2 nx = need_nx ? colloc.normals[i] : Vec2{};
        Complex* row = A.row(i);
        for (int j = 0; j < nc; ++j) {
            const Panel& p = src.panels[j];
            if (self_start >= 0 && i - self_start == j) {
                switch (kind) {
                case LayerKind::Single: row[j] = single_layer_self(p.length, k); break;
                case LayerKind::Hypersingular: row[j] = hypersingular_self(p.length, k); break;
                default: row[j] = Complex(0.0, 0.0); break; // D, D* vanish on straight panels
                }
                continue;
            }
            if (point_segment_distance(x, p.p0, p.p1) < 1e-13 * std::max(1.0, p.length)) {
                on_foreign_panel = true;
                row[j] = Complex(0.0, 0.0);
                continue;
            }
            row[j] = panel_entry(kind, x, nx, p, k, opt);
        }
    }
    if (on_foreign_panel)
        throw std::domain_error("assemble_layer: collocation point lies on a foreign panel");
    return A;
}

ComplexMatrix assemble_layer_serial(LayerKind kind, const Collocation& colloc, const Mesh& src,
                                    double k, const AssemblyOptions& opt, int self_start)
{
    AssemblyOptions o = opt;
    o.parallel = false;
    return assemble_layer(kind, colloc, src, k, o, self_start);
}

std::vector<Complex> eval_layer(LayerKind kind, const Mesh& mesh, std::span<const Complex> density,
                                std::span<const Vec2> pts, double k, const AssemblyOptions& opt)
{
    if (density.size() != mesh.size())
        throw std::invalid_argument("eval_layer: density length mismatch");
    if (kind != LayerKind::Single && kind != LayerKind::Double)
        throw std::invalid_argument("eval_layer: only S and D fields are evaluated");
    std::vector<Complex> out(pts.size());
    std::atomic<bool> on_panel{false};

#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
    for (int i = 0; i < (int)pts.size(); ++i) {
        const Vec2 x = pts[i];
        Complex acc{};
        for (std::size_t j = 0; j < mesh.size(); ++j) {
            const Panel& p = mesh.panels[j];
            const double d = point_segment_distance(x, p.p0, p.p1);
            if (d < 1e-12 * std::max(1.0, p.length)) {
                on_panel = true;
                break;
            }
            acc += density[j] * panel_entry(kind, x, Vec2{}, p, k, opt);
        }
        out[i] = acc;
    }
    if (on_panel)
        throw std::domain_error("eval_layer: point lies on a panel");
    return out;
}

std::vector<Complex> eval_layer_serial(LayerKind kind, const Mesh& mesh,
                                       std::span<const Complex> density,
                                       std::span<const Vec2> pts, double k,
                                       const AssemblyOptions& opt)
{
    AssemblyOptions o = opt;
    o.parallel = false;
    return eval_layer(kind, mesh, density, pts, k, o);
}

} // namespace hsbem
