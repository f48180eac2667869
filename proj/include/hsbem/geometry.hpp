// Panel meshes: straight constant elements with midpoint collocation nodes.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace hsbem {

struct Vec2 {
    double x{}, y{};

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Panel {
    Vec2 p0, p1;   // endpoints
    Vec2 mid;      // collocation node
    Vec2 normal;   // unit normal, left of the p0->p1 direction
    double length; // |p1 - p0|
};

Panel make_panel(Vec2 p0, Vec2 p1);

enum class BoundaryRole { Wall, Scatterer, Cavity, Virtual };

struct Mesh {
    std::vector<Panel> panels;
    BoundaryRole role = BoundaryRole::Wall;

    std::size_t size() const { return panels.size(); }
    double total_length() const;
    Mesh& flip_normals(); // reverses panel orientation in place
};

struct WaveParams {
    double k;     // wavenumber
    double omega; // angular frequency
    double c;     // phase velocity

    static WaveParams from_omega(double omega, double c = 1.0);
    static WaveParams from_k(double k, double c = 1.0);
    double wavelength() const { return 2.0 * 3.14159265358979323846 / k; }
};

struct SourceSpec {
    Vec2 position;
};

// Uniform subdivision of the segment [p0,p1]; normals are the left normal
// of the traversal direction.
Mesh discretize_segment(Vec2 p0, Vec2 p1, int n_panels, BoundaryRole role = BoundaryRole::Wall);

// Closed inscribed polygon, vertices on the circle, normals radially outward.
Mesh discretize_circle(Vec2 center, double radius, int n_panels,
                       BoundaryRole role = BoundaryRole::Scatterer);

// Open polygonal arc from theta_start to theta_end (radians), endpoints
// exactly on the arc ends; normals radially outward from the center.
Mesh discretize_arc(Vec2 center, double radius, double theta_start, double theta_end,
                    int n_panels, BoundaryRole role = BoundaryRole::Wall);

// Geometric grading away from a focus point on the segment: panel lengths
// grow by at most `ratio` per step and are capped at `max_length`.
Mesh grade_segment(Vec2 p0, Vec2 p1, Vec2 focus, double ratio, int n_panels,
                   double max_length = std::numeric_limits<double>::infinity(),
                   BoundaryRole role = BoundaryRole::Wall);

// Concatenates meshes (same role expected by the caller).
Mesh concat(const Mesh& a, const Mesh& b);

} // namespace hsbem
