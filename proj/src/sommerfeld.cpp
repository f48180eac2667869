#include "hsbem/sommerfeld.hpp"

#include "hsbem/quadrature.hpp"
#include "hsbem/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hsbem {

double window(double x, double M0)
{
    return 0.5 * (erf(x + 0.5 * M0) - erf(x - 0.5 * M0));
}

SommerfeldRule build_rule(double N0, double a, double density)
{
    if (!(N0 > 0.0) || !(a > 0.0) || !(density > 0.0))
        throw std::invalid_argument("build_rule: N0, a, density must be positive");
    const int half = std::max(1, (int)std::ceil(N0 * density));
    const double dt = N0 / half;
    const int n = 2 * half + 1;
    SommerfeldRule r;
    r.N0 = N0;
    r.a = a;
    r.t.resize(n);
    r.w.resize(n);
    r.lambda.resize(n);
    r.dlambda.resize(n);
    for (int j = 0; j < n; ++j) {
        const double t = (j - half) * dt;
        const auto node = contour_node(t, a);
        r.t[j] = t;
        r.w[j] = (j == 0 || j == n - 1) ? 0.5 * dt : dt;
        r.lambda[j] = node.lambda;
        r.dlambda[j] = node.dlambda_dt;
    }
    return r;
}

namespace {

struct NodeFactors {
    std::vector<Complex> s;      // sommerfeld_sqrt(lambda_j, k)
    std::vector<Complex> coef_f; // w_j (dl/dt)_j / (4 pi s_j)
};

NodeFactors node_factors(const SommerfeldRule& r, double k)
{
    NodeFactors nf;
    const std::size_t n = r.size();
    nf.s.resize(n);
    nf.coef_f.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        nf.s[j] = sommerfeld_sqrt(r.lambda[j], k);
        nf.coef_f[j] = r.w[j] * r.dlambda[j] / (4.0 * pi * nf.s[j]);
    }
    return nf;
}

} // namespace

std::vector<Complex> eval_F(const SommerfeldRule& rule, std::span<const Complex> xi,
                            std::span<const Vec2> pts, double k, bool parallel)
{
    if (xi.size() != rule.size())
        throw std::invalid_argument("eval_F: density length mismatch");
    const auto nf = node_factors(rule, k);
    std::vector<Complex> out(pts.size());
    const int np = (int)pts.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < np; ++i) {
        const double x = pts[i].x, y = pts[i].y;
        Complex acc{};
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const Complex e = std::exp(-nf.s[j] * y + Complex(0.0, 1.0) * rule.lambda[j] * x);
            acc += nf.coef_f[j] * e * xi[j];
        }
        out[i] = acc;
    }
    return out;
}

std::vector<Complex> eval_H(const SommerfeldRule& rule, std::span<const Complex> xi,
                            std::span<const Vec2> pts, std::span<const Vec2> normals, double k,
                            bool parallel)
{
    if (xi.size() != rule.size())
        throw std::invalid_argument("eval_H: density length mismatch");
    if (normals.size() != pts.size())
        throw std::invalid_argument("eval_H: normals length mismatch");
    const auto nf = node_factors(rule, k);
    std::vector<Complex> out(pts.size());
    const int np = (int)pts.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < np; ++i) {
        const double x = pts[i].x, y = pts[i].y;
        const double nx = normals[i].x, ny = normals[i].y;
        Complex acc{};
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const Complex dir = Complex(0.0, 1.0) * rule.lambda[j] * nx - nf.s[j] * ny;
            const Complex e = std::exp(-nf.s[j] * y + Complex(0.0, 1.0) * rule.lambda[j] * x);
            acc += nf.coef_f[j] * dir * e * xi[j];
        }
        out[i] = acc;
    }
    return out;
}

ComplexMatrix f_columns(const SommerfeldRule& rule, std::span<const Vec2> pts, double k,
                        bool parallel)
{
    const auto nf = node_factors(rule, k);
    ComplexMatrix A((int)pts.size(), (int)rule.size());
    const int np = (int)pts.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < np; ++i) {
        Complex* row = A.row(i);
        const double x = pts[i].x, y = pts[i].y;
        for (std::size_t j = 0; j < rule.size(); ++j)
            row[j] = nf.coef_f[j] * std::exp(-nf.s[j] * y + Complex(0.0, 1.0) * rule.lambda[j] * x);
    }
    return A;
}

ComplexMatrix h_columns(const SommerfeldRule& rule, std::span<const Vec2> pts,
                        std::span<const Vec2> normals, double k, bool parallel)
{
    if (normals.size() != pts.size())
        throw std::invalid_argument("h_columns: normals length mismatch");
    const auto nf = node_factors(rule, k);
    ComplexMatrix A((int)pts.size(), (int)rule.size());
    const int np = (int)pts.size();
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < np; ++i) {
        Complex* row = A.row(i);
        const double x = pts[i].x, y = pts[i].y;
        const double nx = normals[i].x, ny = normals[i].y;
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const Complex dir = Complex(0.0, 1.0) * rule.lambda[j] * nx - nf.s[j] * ny;
            row[j] = nf.coef_f[j] * dir
                     * std::exp(-nf.s[j] * y + Complex(0.0, 1.0) * rule.lambda[j] * x);
        }
    }
    return A;
}

std::vector<Complex> fourier_of_source(Vec2 x0, const SommerfeldRule& rule, double k)
{
    if (!(x0.y > 0.0))
        throw std::domain_error("fourier_of_source: source must lie above the wall");
    std::vector<Complex> out(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const Complex s = sommerfeld_sqrt(rule.lambda[j], k);
        out[j] = std::exp(-s * x0.y - Complex(0.0, 1.0) * rule.lambda[j] * x0.x) / (2.0 * s);
    }
    return out;
}

std::vector<Complex> fourier_of_source_dn(Vec2 x0, const SommerfeldRule& rule, double k)
{
    if (!(x0.y > 0.0))
        throw std::domain_error("fourier_of_source_dn: source must lie above the wall");
    std::vector<Complex> out(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const Complex s = sommerfeld_sqrt(rule.lambda[j], k);
        out[j] = 0.5 * std::exp(-s * x0.y - Complex(0.0, 1.0) * rule.lambda[j] * x0.x);
    }
    return out;
}

ComplexMatrix windowed_transform_columns(const Mesh& wall, double M0, const SommerfeldRule& rule,
                                         int quad_order, bool parallel)
{
    for (const auto& p : wall.panels)
        if (std::abs(p.mid.y) > 1e-12)
            throw std::invalid_argument("windowed_transform_columns: mesh must lie on y = 0");
    const int nl = (int)rule.size();
    const int np = (int)wall.size();
    ComplexMatrix T(nl, np);
    const auto rulepts = gauss_rule(quad_order);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < nl; ++j) {
        Complex* row = T.row(j);
        const Complex il = Complex(0.0, 1.0) * rule.lambda[j];
        for (int p = 0; p < np; ++p) {
            const Panel& pan = wall.panels[p];
            const double xm = pan.mid.x, hh = 0.5 * pan.length;
            Complex acc{};
            for (const auto& g : rulepts) {
                const double x = xm + g.x * hh;
                acc += g.w * window(x, M0) * std::exp(-il * x);
            }
            row[p] = acc * hh;
        }
    }
    return T;
}

std::vector<Complex> fourier_of_windowed_density(const Mesh& wall, std::span<const Complex> sigma,
                                                 double M0, const SommerfeldRule& rule,
                                                 int quad_order)
{
    if (sigma.size() != wall.size())
        throw std::invalid_argument("fourier_of_windowed_density: density length mismatch");
    const ComplexMatrix T = windowed_transform_columns(wall, M0, rule, quad_order);
    return matvec(T, sigma);
}

ComplexMatrix spectral_layer_columns(LayerKind kind, const Mesh& src, const SommerfeldRule& rule,
                                     double k, int quad_order, bool parallel)
{
    if (kind != LayerKind::AdjointDouble && kind != LayerKind::Hypersingular)
        throw std::invalid_argument("spectral_layer_columns: kind must be D* or N");
    for (const auto& p : src.panels)
        if (std::min(p.p0.y, p.p1.y) < -1e-12)
            throw std::invalid_argument("spectral_layer_columns: source mesh must lie in y >= 0");
    const int nl = (int)rule.size();
    const int np = (int)src.size();
    ComplexMatrix A(nl, np);
    const auto rulepts = gauss_rule(quad_order);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < nl; ++j) {
        Complex* row = A.row(j);
        const Complex lam = rule.lambda[j];
        const Complex s = sommerfeld_sqrt(lam, k);
        const Complex il = Complex(0.0, 1.0) * lam;
        for (int p = 0; p < np; ++p) {
            const Panel& pan = src.panels[p];
            const Vec2 mid = pan.mid, half = 0.5 * (pan.p1 - pan.p0);
            const double hh = 0.5 * pan.length;
            Complex acc{};
            for (const auto& g : rulepts) {
                const Vec2 y = mid + g.x * half;
                const Complex e = 0.5 * std::exp(-s * y.y - il * y.x);
                if (kind == LayerKind::AdjointDouble)
                    acc += g.w * e;
                else
                    acc += g.w * e * (-il * pan.normal.x - s * pan.normal.y);
            }
            row[p] = acc * hh;
        }
    }
    return A;
}

std::vector<Complex> fourier_of_layer_trace(LayerKind kind, const Mesh& src,
                                            std::span<const Complex> density,
                                            const SommerfeldRule& rule, double k, int quad_order)
{
    if (density.size() != src.size())
        throw std::invalid_argument("fourier_of_layer_trace: density length mismatch");
    const ComplexMatrix A = spectral_layer_columns(kind, src, rule, k, quad_order);
    return matvec(A, density);
}

} // namespace hsbem
