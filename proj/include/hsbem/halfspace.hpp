// Coupled Burton-Miller hybrid system for a rigid half-space with optional
// bounded scatterers, plus the closed-form no-scatterer path.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/potentials.hpp"
#include "hsbem/sommerfeld.hpp"
#include "hsbem/specfun.hpp"

#include <span>
#include <vector>

namespace hsbem {

struct SolverOptions {
    AssemblyOptions assembly{};
    // Trapezoid spacing for the Fourier rule: dt = wavelength / points_per_wavelength,
    // overridden by lambda_spacing when positive.
    double lambda_points_per_wavelength = 40.0;
    double lambda_spacing = 0.0;
    bool parallel = true;

    double rule_density(double k) const
    {
        const double dt = lambda_spacing > 0.0 ? lambda_spacing
                                               : (2.0 * pi / k) / lambda_points_per_wavelength;
        return 1.0 / dt;
    }
};

struct HalfspaceProblem {
    WaveParams wave;
    SourceSpec source;
    std::vector<Mesh> scatterers; // may be empty
    Mesh wall;                    // on y = 0, normals (0,1)
    TruncationParams trunc;
    Complex beta{0.0, 0.0};
    SolverOptions opt{};
};

struct DensitySolution {
    std::vector<Complex> sigma_wall;
    std::vector<Complex> sigma_scatterer; // concatenated over scatterer meshes
    std::vector<Complex> xi;              // nodal spectral density at the rule nodes
    SommerfeldRule rule;
    double rcond = 0.0;
};

// Standard wall mesh for Gamma0 = (-M0, M0) at `panels_per_wavelength`
// resolution; optionally graded towards a focus x-position.
Mesh make_wall_mesh(double M0, double k, double panels_per_wavelength);
Mesh make_wall_mesh_graded(double M0, double k, double panels_per_wavelength, double focus_x,
                           double min_length, double ratio = 1.2);

// Closed-form path: sigma from the incident field, xi from the spectral
// source form. Throws std::domain_error if the source sits on the wall.
DensitySolution solve_halfspace_empty(const WaveParams& wave, const SourceSpec& source,
                                      const TruncationParams& trunc, const Mesh& wall,
                                      const SolverOptions& opt = {});

DensitySolution assemble_and_solve(const HalfspaceProblem& problem);

// The dense system is affine in the Burton-Miller parameter: A = A0 + beta A1.
// Frequency sweeps that vary only beta reuse one assembly.
struct HalfspaceSystem {
    ComplexMatrix a0;
    ComplexMatrix a1; // empty when there are no scatterers
    std::vector<Complex> rhs;
    SommerfeldRule rule;
    int n_wall = 0, n_scatterer = 0;
};
HalfspaceSystem build_halfspace_system(const HalfspaceProblem& problem);
DensitySolution solve_with_beta(const HalfspaceSystem& sys, Complex beta, bool parallel = true);

std::vector<Complex> eval_total_field(const HalfspaceProblem& problem,
                                      const DensitySolution& solution,
                                      std::span<const Vec2> points);

// Fluid-side trace of the total field at the wall / scatterer collocation
// midpoints (used by boundary-condition residuals and boundary-trace errors).
std::vector<Complex> wall_trace(const HalfspaceProblem& problem, const DensitySolution& solution);
std::vector<Complex> scatterer_trace(const HalfspaceProblem& problem,
                                     const DensitySolution& solution, std::size_t scatterer_index);

bool point_in_closed_mesh(const Mesh& closed, Vec2 p);

} // namespace hsbem
