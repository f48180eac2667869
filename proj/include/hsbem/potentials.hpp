// Point kernels of the 2D Helmholtz fundamental solution and the
// panel-integrated layer operators S, D, D*, N on constant elements.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/linalg.hpp"

#include <span>
#include <vector>

namespace hsbem {

enum class LayerKind { Single, Double, AdjointDouble, Hypersingular };

struct Collocation {
    std::vector<Vec2> points;
    std::vector<Vec2> normals; // required for D* and N rows

    std::size_t size() const { return points.size(); }
};

Collocation collocation_of(const Mesh& m);

// G(x,x') = (i/4) H0^(1)(k|x-x'|); throws std::domain_error on coincident points.
Complex kernel_G(Vec2 x, Vec2 xs, double k);
// dG/dn(x') (double layer kernel)
Complex kernel_dG_dny(Vec2 x, Vec2 xs, Vec2 n_src, double k);
// dG/dn(x) (adjoint double layer kernel)
Complex kernel_dG_dnx(Vec2 x, Vec2 xs, Vec2 n_col, double k);
// d^2G/dn(x)dn(x') (hypersingular kernel)
Complex kernel_d2G(Vec2 x, Vec2 xs, Vec2 n_col, Vec2 n_src, double k);

struct AssemblyOptions {
    int quad_order = 10;      // Gauss points per panel away from singularities
    double near_factor = 1.0; // adaptive subdivision within this many panel lengths
    double near_tol = 1e-8;
    int max_depth = 24;
    bool parallel = true;
};

// Entry (i,j) = integral over source panel j of the kind-kernel against
// collocation point i. When self_start >= 0, collocation i is the midpoint
// of panel (i - self_start); those entries use the closed singular forms
// (log-split for S, Hadamard finite part for N, exact zero for D and D*).
// Jump terms are never folded in; the solvers add them explicitly.
ComplexMatrix assemble_layer(LayerKind kind, const Collocation& colloc, const Mesh& src,
                             double k, const AssemblyOptions& opt = {}, int self_start = -1);
ComplexMatrix assemble_layer_serial(LayerKind kind, const Collocation& colloc, const Mesh& src,
                                    double k, const AssemblyOptions& opt = {}, int self_start = -1);

// Field of a single or double layer at points off the mesh. Near points are
// integrated adaptively; a point lying on a panel raises std::domain_error.
std::vector<Complex> eval_layer(LayerKind kind, const Mesh& mesh, std::span<const Complex> density,
                                std::span<const Vec2> pts, double k, const AssemblyOptions& opt = {});
std::vector<Complex> eval_layer_serial(LayerKind kind, const Mesh& mesh,
                                       std::span<const Complex> density, std::span<const Vec2> pts,
                                       double k, const AssemblyOptions& opt = {});

// Closed singular self terms (exposed for tests).
Complex single_layer_self(double panel_length, double k, int quad_order = 16);
Complex hypersingular_self(double panel_length, double k, int quad_order = 16);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

} // namespace hsbem
