#include "hsbem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsbem {

Panel make_panel(Vec2 p0, Vec2 p1)
{
    const Vec2 d = p1 - p0;
    const double h = norm(d);
    if (!(h > 0.0))
        throw std::invalid_argument("make_panel: zero-length panel");
    // left normal of the traversal direction
    return {p0, p1, 0.5 * (p0 + p1), {-d.y / h, d.x / h}, h};
}

double Mesh::total_length() const
{
    double s = 0.0;
    for (const auto& p : panels)
        s += p.length;
    return s;
}

Mesh& Mesh::flip_normals()
{
    for (auto& p : panels) {
        std::swap(p.p0, p.p1);
        p.normal = -p.normal;
    }
    std::reverse(panels.begin(), panels.end());
    return *this;
}

WaveParams WaveParams::from_omega(double omega, double c)
{
    if (!(omega > 0.0) || !(c > 0.0))
        throw std::invalid_argument("WaveParams: omega and c must be positive");
    return {omega / c, omega, c};
}

WaveParams WaveParams::from_k(double k, double c)
{
    if (!(k > 0.0) || !(c > 0.0))
        throw std::invalid_argument("WaveParams: k and c must be positive");
    return {k, k * c, c};
}

Mesh discretize_segment(Vec2 p0, Vec2 p1, int n_panels, BoundaryRole role)
{
    if (norm(p1 - p0) == 0.0)
        throw std::invalid_argument("discretize_segment: zero-length segment");
    if (n_panels < 1)
        throw std::invalid_argument("discretize_segment: need at least one panel");
    Mesh m;
    m.role = role;
    m.panels.reserve(n_panels);
    for (int i = 0; i < n_panels; ++i) {
        const double t0 = (double)i / n_panels, t1 = (double)(i + 1) / n_panels;
        m.panels.push_back(make_panel(p0 + t0 * (p1 - p0), p0 + t1 * (p1 - p0)));
    }
    return m;
}

Mesh discretize_circle(Vec2 center, double radius, int n_panels, BoundaryRole role)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("discretize_circle: radius must be positive");
    if (n_panels < 3)
        throw std::invalid_argument("discretize_circle: need at least 3 panels");
    Mesh m;
    m.role = role;
    m.panels.reserve(n_panels);
    auto vertex = [&](int i) {
        const double th = 2.0 * 3.14159265358979323846 * i / n_panels;
        return Vec2{center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
    };
    for (int i = 0; i < n_panels; ++i) {
        // counter-clockwise traversal with the normal forced radially outward
        Panel p = make_panel(vertex(i), vertex(i + 1));
        const Vec2 r = p.mid - center;
        if (dot(r, p.normal) < 0.0)
            p.normal = -p.normal;
        m.panels.push_back(p);
    }
    return m;
}

Mesh discretize_arc(Vec2 center, double radius, double theta_start, double theta_end,
                    int n_panels, BoundaryRole role)
{
    if (theta_start == theta_end)
        throw std::invalid_argument("discretize_arc: empty arc");
    if (n_panels < 1)
        throw std::invalid_argument("discretize_arc: need at least one panel");
    Mesh m;
    m.role = role;
    m.panels.reserve(n_panels);
    auto vertex = [&](int i) {
        const double th = theta_start + (theta_end - theta_start) * i / n_panels;
        return Vec2{center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
    };
    for (int i = 0; i < n_panels; ++i) {
        // panels follow the arc parameter; the normal is forced radially outward
        Panel p = make_panel(vertex(i), vertex(i + 1));
        const Vec2 r = p.mid - center;
        if (dot(r, p.normal) < 0.0)
            p.normal = -p.normal;
        m.panels.push_back(p);
    }
    return m;
}

namespace {

// Lengths for one side of a graded mesh: geometric growth with common
// ratio `ratio` starting at the focus, clamped to max_length, scaled to
// fill `side_length` with exactly m panels.
std::vector<double> graded_side(double side_length, int m, double ratio, double max_length)
{
    std::vector<double> len(m);
    if (m == 0)
        return len;
    for (int t = m; t >= 1; --t) {
        // panels j >= t are clamped at max_length
        double wsum = 0.0, w = 1.0;
        for (int j = 0; j < t; ++j, w *= ratio)
            wsum += w;
        const double rest = (m == t) ? 0.0 : (m - t) * max_length;
        if (side_length - rest <= 0.0)
            continue;
        const double s = (side_length - rest) / wsum;
        const double largest = s * std::pow(ratio, t - 1);
        if (largest <= max_length * (1.0 + 1e-12) || t == 1) {
            w = s;
            for (int j = 0; j < m; ++j) {
                len[j] = (j < t) ? w : max_length;
                if (j < t - 1)
                    w *= ratio;
            }
            return len;
        }
    }
    throw std::invalid_argument("grade_segment: cap infeasible for the requested panel count");
}

} // namespace

Mesh grade_segment(Vec2 p0, Vec2 p1, Vec2 focus, double ratio, int n_panels,
                   double max_length, BoundaryRole role)
{
    const Vec2 d = p1 - p0;
    const double L = norm(d);
    if (L == 0.0)
        throw std::invalid_argument("grade_segment: degenerate segment");
    if (!(ratio > 1.0))
        throw std::invalid_argument("grade_segment: ratio must exceed 1");
    if (n_panels < 1)
        throw std::invalid_argument("grade_segment: need at least one panel");
    const double tf = std::clamp(dot(focus - p0, d) / (L * L), 0.0, 1.0);
    const double a = tf * L, b = L - a; // side lengths
    int ma;
    if (n_panels == 1)
        ma = (a >= b) ? 1 : 0;
    else if (a == 0.0)
        ma = 0;
    else if (b == 0.0)
        ma = n_panels;
    else
        ma = std::clamp((int)std::lround(n_panels * a / L), 1, n_panels - 1);
    const int mb = n_panels - ma;

    std::vector<double> cuts; // distances from p0
    cuts.push_back(0.0);
    if (ma > 0) {
        auto la = graded_side(a, ma, ratio, max_length);
        std::reverse(la.begin(), la.end()); // largest panel at p0, shrinking towards the focus
        double acc = 0.0;
        for (int j = 0; j < ma; ++j) {
            acc += la[j];
            cuts.push_back(j == ma - 1 ? a : acc);
        }
    }
    if (mb > 0) {
        auto lb = graded_side(b, mb, ratio, max_length);
        double acc = a;
        for (int j = 0; j < mb; ++j) {
            acc += lb[j];
            cuts.push_back(j == mb - 1 ? L : acc);
        }
    }

    Mesh m;
    m.role = role;
    m.panels.reserve(n_panels);
    const Vec2 u = (1.0 / L) * d;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        m.panels.push_back(make_panel(p0 + cuts[i] * u, p0 + cuts[i + 1] * u));
    return m;
}

Mesh concat(const Mesh& a, const Mesh& b)
{
    Mesh m = a;
    m.panels.insert(m.panels.end(), b.panels.begin(), b.panels.end());
    return m;
}

} // namespace hsbem
