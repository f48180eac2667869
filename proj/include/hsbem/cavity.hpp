// Scattering in a half-space with a locally perturbed boundary: the hybrid
// wall representation coupled through a virtual boundary to a cavity-side
// layer representation, with optional Burton-Miller scatterers in both
// subdomains.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/halfspace.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hsbem {

struct CavityProblem {
    WaveParams wave;
    std::optional<SourceSpec> source1; // in Omega1 (outside the virtual boundary)
    std::optional<SourceSpec> source2; // in Omega2 (inside)
    Mesh wall;   // Gamma0: flat segment (-M0,M0) on y=0, normals (0,1)
    Mesh gamma1; // physical boundary enclosed by the virtual boundary, normals into the fluid
    Mesh gamma2; // virtual boundary, normals directed from Omega2 into Omega1
    std::vector<Mesh> scatterers1; // rigid scatterers in Omega1
    std::vector<Mesh> scatterers2; // rigid scatterers in Omega2
    TruncationParams trunc;
    Complex beta{0.0, 0.0};
    SolverOptions opt{};
    // S_Gamma0 / D*_Gamma0 columns in the Gamma2 continuity rows use the
    // windowed density (the representation form); the literal unwindowed
    // variant is kept selectable.
    bool windowed_continuity = true;
};

struct CavityDensities {
    std::vector<Complex> sigma_wall;
    std::vector<Complex> sigma_g1;
    std::vector<Complex> sigma_g2;
    std::vector<Complex> mu_g2;
    std::vector<Complex> sigma_sc1; // concatenated over scatterers1
    std::vector<Complex> sigma_sc2; // concatenated over scatterers2
    std::vector<Complex> xi;
    SommerfeldRule rule;
    double rcond = 0.0;
};

enum class Region { Omega1, Omega2, OutsideFluid, BoundaryAdjacent };

Region classify_point(const CavityProblem& pb, Vec2 p, double tol = 1e-9);

// Wall mesh for cavity problems: adjusts the panel count so that no
// collocation midpoint falls onto the virtual-boundary feet at x = +-foot,
// where the coupled kernels are singular.
Mesh make_cavity_wall_mesh(double M0, double k, double panels_per_wavelength, double foot);

// Coupled solve without scatterers (throws if any are present).
CavityDensities solve_cavity(const CavityProblem& pb);
// General solve; with empty scatterer lists it reduces to solve_cavity.
CavityDensities solve_cavity_with_scatterers(const CavityProblem& pb);

// Region-dependent total field; throws std::domain_error for outside-fluid points.
std::vector<Complex> eval_total_field_cavity(const CavityProblem& pb, const CavityDensities& d,
                                             std::span<const Vec2> points);

// Fluid-side traces at collocation midpoints, for BC residuals.
std::vector<Complex> cavity_gamma1_trace(const CavityProblem& pb, const CavityDensities& d);
// Omega1-side wall trace; physically meaningful only where Gamma0 is a real
// wall (outside the virtual boundary footprint).
std::vector<Complex> cavity_wall_trace(const CavityProblem& pb, const CavityDensities& d);

} // namespace hsbem
