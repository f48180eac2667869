#include "hsbem/runner.hpp"

#include "hsbem/specfun.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace hsbem {

namespace {

namespace fs = std::filesystem;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_config_header(std::ostream& os, const RunConfig& cfg, const std::string& command,
                         const std::string& columns)
{
    os << "# hsbem " << command << " output\n";
    os << "# columns: " << columns << "\n";
    os << "# config-begin\n";
    std::istringstream cfgs(serialize_config(cfg));
    std::string line;
    while (std::getline(cfgs, line))
        os << "# " << line << "\n";
    os << "# config-end\n";
}

struct Grid {
    std::vector<Vec2> pts; // fluid points only
};

bool masked_out(const RunConfig& cfg, Vec2 p)
{
    return cfg.mask == "right-half" && p.x < 0.0;
}

Grid make_grid(const RunConfig& cfg, const BuiltProblem& pb, bool apply_mask)
{
    Grid g;
    for (int iy = 0; iy < cfg.grid_ny; ++iy)
        for (int ix = 0; ix < cfg.grid_nx; ++ix) {
            const double x = cfg.grid_nx == 1
                                 ? cfg.grid_x0
                                 : cfg.grid_x0 + (cfg.grid_x1 - cfg.grid_x0) * ix / (cfg.grid_nx - 1);
            const double y = cfg.grid_ny == 1
                                 ? cfg.grid_y0
                                 : cfg.grid_y0 + (cfg.grid_y1 - cfg.grid_y0) * iy / (cfg.grid_ny - 1);
            const Vec2 p{x, y};
            if (apply_mask && masked_out(cfg, p))
                continue;
            if (pb.is_cavity) {
                if (classify_point(pb.cav, p) == Region::Omega1
                    || classify_point(pb.cav, p) == Region::Omega2)
                    g.pts.push_back(p);
            } else {
                if (!(p.y > 0.0))
                    continue;
                bool inside = false;
                for (const auto& sc : pb.hs.scatterers)
                    inside = inside || point_in_closed_mesh(sc, p);
                if (!inside)
                    g.pts.push_back(p);
            }
        }
    return g;
}

int circle_panels(double radius, double h)
{
    return std::max(16, (int)std::ceil(2.0 * pi * radius / h));
}

} // namespace

BuiltProblem build_problem(const RunConfig& cfg, double k_override)
{
    BuiltProblem b;
    const double k = k_override > 0.0 ? k_override : cfg.omega / cfg.c;
    const WaveParams wave = WaveParams::from_k(k, cfg.c);
    const double h = wave.wavelength() / cfg.panels_per_wavelength;

    SolverOptions opt;
    opt.assembly.quad_order = cfg.quad_order;
    opt.lambda_points_per_wavelength = cfg.lambda_ppw;
    opt.lambda_spacing = cfg.lambda_spacing;

    const TruncationParams trunc{cfg.M0, cfg.N0, cfg.contour_a};

    if (cfg.problem == ProblemKind::Cavity) {
        b.is_cavity = true;
        CavityProblem& c = b.cav;
        c.wave = wave;
        c.trunc = trunc;
        c.beta = cfg.beta(k);
        c.opt = opt;
        c.windowed_continuity = cfg.windowed_continuity;
        if (cfg.source1)
            c.source1 = SourceSpec{*cfg.source1};
        if (cfg.source2)
            c.source2 = SourceSpec{*cfg.source2};
        c.wall = make_cavity_wall_mesh(cfg.M0, k, cfg.panels_per_wavelength, cfg.virtual_radius);

        const double vr = cfg.virtual_radius;
        Mesh g1;
        g1.role = BoundaryRole::Cavity;
        switch (cfg.cavity_kind) {
        case CavityKind::Flat: {
            g1 = discretize_segment({-vr, 0.0}, {vr, 0.0}, std::max(2, (int)std::ceil(2 * vr / h)),
                                    BoundaryRole::Cavity);
            break;
        }
        case CavityKind::HalfDisc: {
            const double cr = cfg.cavity_radius;
            Mesh left = discretize_segment({-vr, 0.0}, {-cr, 0.0},
                                           std::max(1, (int)std::ceil((vr - cr) / h)),
                                           BoundaryRole::Cavity);
            Mesh arc = discretize_arc({0.0, 0.0}, cr, pi, 2.0 * pi,
                                      std::max(8, (int)std::ceil(pi * cr / h)),
                                      BoundaryRole::Cavity);
            arc.flip_normals(); // into the cavity fluid
            Mesh right = discretize_segment({cr, 0.0}, {vr, 0.0},
                                            std::max(1, (int)std::ceil((vr - cr) / h)),
                                            BoundaryRole::Cavity);
            g1 = concat(concat(left, arc), right);
            break;
        }
        case CavityKind::Circle: {
            const double w = 0.5 * cfg.cavity_opening;
            const double cy = cfg.cavity_center_y;
            if (!(cy < 0.0) || !(w > 0.0))
                throw ConfigError("config: circle cavity needs center_y < 0 and opening > 0");
            const double rc = std::hypot(cy, w);
            const double th_r = std::atan2(-cy, w);       // right mouth lip
            const double th_l = pi - th_r;                // left mouth lip
            const double harc = std::min(h, cfg.cavity_opening / 3.0);
            const int narc = std::max(24, (int)std::ceil((2.0 * pi - (th_l - th_r)) * rc / harc));
            Mesh arc = discretize_arc({0.0, cy}, rc, th_r, th_l - 2.0 * pi, narc,
                                      BoundaryRole::Cavity);
            arc.flip_normals(); // into the cavity fluid
            const double lip_len = std::max(w / 4.0, 1e-3);
            Mesh left = grade_segment({-vr, 0.0}, {-w, 0.0}, {-w, 0.0}, cfg.grade_ratio,
                                      std::max(4, (int)std::ceil((vr - w) / h) + 6), h,
                                      BoundaryRole::Cavity);
            Mesh right = grade_segment({w, 0.0}, {vr, 0.0}, {w, 0.0}, cfg.grade_ratio,
                                       std::max(4, (int)std::ceil((vr - w) / h) + 6), h,
                                       BoundaryRole::Cavity);
            (void)lip_len;
            g1 = concat(concat(left, arc), right);
            break;
        }
        case CavityKind::None:
            throw ConfigError("config: cavity problems need cavity.kind");
        }
        c.gamma1 = g1;
        c.gamma2 = discretize_arc({0.0, 0.0}, vr, 0.0, pi,
                                  std::max(8, (int)std::ceil(pi * vr / h)), BoundaryRole::Virtual);
        for (const auto& s : cfg.scatterers) {
            Mesh m = discretize_circle(s.center, s.radius, circle_panels(s.radius, h));
            (s.region == 1 ? c.scatterers1 : c.scatterers2).push_back(std::move(m));
        }
        return b;
    }

    HalfspaceProblem& p = b.hs;
    p.wave = wave;
    p.source = SourceSpec{*cfg.source};
    p.trunc = trunc;
    p.beta = cfg.beta(k);
    p.opt = opt;
    const double y0 = cfg.source->y;
    if (cfg.grade_auto && y0 < wave.wavelength() / 8.0)
        p.wall = make_wall_mesh_graded(cfg.M0, k, cfg.panels_per_wavelength, cfg.source->x,
                                       std::max(y0 / 4.0, 1e-6), cfg.grade_ratio);
    else
        p.wall = make_wall_mesh(cfg.M0, k, cfg.panels_per_wavelength);
    for (const auto& s : cfg.scatterers)
        p.scatterers.push_back(discretize_circle(s.center, s.radius, circle_panels(s.radius, h)));
    return b;
}

namespace {

struct SolveOutputs {
    std::vector<Vec2> pts;
    std::vector<Complex> u;
    double rcond = 0.0;
    double max_residual_wall = 0.0, max_residual_other = 0.0;
    double assemble_seconds = 0.0, eval_seconds = 0.0;
    int system_size = 0;
    std::optional<DensitySolution> hs_sol;
    std::optional<CavityDensities> cav_sol;
};

// strided subsample keeps residual reporting affordable on big meshes
std::vector<int> residual_sample(std::size_t n, std::size_t cap = 300)
{
    std::vector<int> idx;
    const std::size_t stride = std::max<std::size_t>(1, (n + cap - 1) / cap);
    for (std::size_t i = 0; i < n; i += stride)
        idx.push_back((int)i);
    return idx;
}

Mesh submesh(const Mesh& m, const std::vector<int>& idx)
{
    Mesh r;
    r.role = m.role;
    for (int i : idx)
        r.panels.push_back(m.panels[i]);
    return r;
}

SolveOutputs run_halfspace(const RunConfig& cfg, const BuiltProblem& pb, bool want_residuals)
{
    SolveOutputs out;
    const auto t0 = std::chrono::steady_clock::now();
    out.hs_sol = assemble_and_solve(pb.hs);
    const DensitySolution& sol = *out.hs_sol;
    const auto t1 = std::chrono::steady_clock::now();
    out.rcond = sol.rcond;
    out.system_size = (int)(sol.sigma_wall.size() + sol.sigma_scatterer.size() + sol.xi.size());

    const Grid grid = make_grid(cfg, pb, false);
    out.pts = grid.pts;
    out.u = eval_total_field(pb.hs, sol, grid.pts);
    const auto t2 = std::chrono::steady_clock::now();

    if (want_residuals) {
        const auto widx = residual_sample(pb.hs.wall.size());
        const Mesh wsub = submesh(pb.hs.wall, widx);
        const auto wtrace_full = wall_trace(pb.hs, sol);
        std::vector<Complex> wtrace;
        for (int i : widx)
            wtrace.push_back(wtrace_full[i]);
        const auto ev = [&](std::span<const Vec2> q) {
            return eval_total_field(pb.hs, sol, q);
        };
        for (double r : bc_residual(ev, wtrace, wsub, 1e-3))
            out.max_residual_wall = std::max(out.max_residual_wall, r);
        for (std::size_t si = 0; si < pb.hs.scatterers.size(); ++si) {
            const auto strace = scatterer_trace(pb.hs, sol, si);
            for (double r : bc_residual(ev, strace, pb.hs.scatterers[si], 1e-3))
                out.max_residual_other = std::max(out.max_residual_other, r);
        }
    }
    out.assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.eval_seconds = std::chrono::duration<double>(t2 - t1).count();
    return out;
}

SolveOutputs run_cavity(const RunConfig& cfg, const BuiltProblem& pb, bool want_residuals)
{
    SolveOutputs out;
    const auto t0 = std::chrono::steady_clock::now();
    out.cav_sol = solve_cavity_with_scatterers(pb.cav);
    const CavityDensities& d = *out.cav_sol;
    const auto t1 = std::chrono::steady_clock::now();
    out.rcond = d.rcond;
    out.system_size = (int)(d.sigma_wall.size() + d.sigma_g1.size() + 2 * d.sigma_g2.size()
                            + d.sigma_sc1.size() + d.sigma_sc2.size() + d.xi.size());

    const Grid grid = make_grid(cfg, pb, false);
    out.pts = grid.pts;
    out.u = eval_total_field_cavity(pb.cav, d, grid.pts);
    const auto t2 = std::chrono::steady_clock::now();

    if (want_residuals) {
        const auto ev = [&](std::span<const Vec2> q) {
            return eval_total_field_cavity(pb.cav, d, q);
        };
        // Gamma1 is physical everywhere
        const auto g1idx = residual_sample(pb.cav.gamma1.size());
        const Mesh g1sub = submesh(pb.cav.gamma1, g1idx);
        const auto g1trace_full = cavity_gamma1_trace(pb.cav, d);
        std::vector<Complex> g1trace;
        for (int i : g1idx)
            g1trace.push_back(g1trace_full[i]);
        for (double r : bc_residual(ev, g1trace, g1sub, 1e-3))
            out.max_residual_other = std::max(out.max_residual_other, r);
        // Gamma0 is physical outside the virtual boundary footprint
        std::vector<int> widx;
        for (std::size_t i = 0; i < pb.cav.wall.size(); ++i)
            if (std::abs(pb.cav.wall.panels[i].mid.x) > cfg.virtual_radius + 2e-2)
                widx.push_back((int)i);
        const std::size_t stride = std::max<std::size_t>(1, widx.size() / 300);
        std::vector<int> wkeep;
        for (std::size_t i = 0; i < widx.size(); i += stride)
            wkeep.push_back(widx[i]);
        const Mesh wsub = submesh(pb.cav.wall, wkeep);
        const auto wtrace_full = cavity_wall_trace(pb.cav, d);
        std::vector<Complex> wtrace;
        for (int i : wkeep)
            wtrace.push_back(wtrace_full[i]);
        for (double r : bc_residual(ev, wtrace, wsub, 1e-3))
            out.max_residual_wall = std::max(out.max_residual_wall, r);
    }
    out.assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.eval_seconds = std::chrono::duration<double>(t2 - t1).count();
    return out;
}

void write_field_csv(const fs::path& path, const RunConfig& cfg, const SolveOutputs& out)
{
    std::ofstream os(path);
    write_config_header(os, cfg, "solve", "x,y,re_u,im_u,abs2_u");
    os << "x,y,re_u,im_u,abs2_u\n";
    for (std::size_t i = 0; i < out.pts.size(); ++i) {
        const Complex u = out.u[i];
        os << format_double(out.pts[i].x) << "," << format_double(out.pts[i].y) << ","
           << format_double(u.real()) << "," << format_double(u.imag()) << ","
           << format_double(std::norm(u)) << "\n";
    }
}

void write_summary(const fs::path& path, const RunConfig& cfg, const SolveOutputs& out)
{
    std::ofstream os(path);
    os << "hsbem run summary\n=================\n\n";
    os << "system_size = " << out.system_size << "\n";
    os << "rcond_estimate = " << format_double(out.rcond) << "\n";
    os << "assemble_solve_seconds = " << format_double(out.assemble_seconds) << "\n";
    os << "field_eval_seconds = " << format_double(out.eval_seconds) << "\n";
    os << "max_bc_residual_wall = " << format_double(out.max_residual_wall) << "\n";
    os << "max_bc_residual_other = " << format_double(out.max_residual_other) << "\n";
    for (const auto& w : cfg.warnings())
        os << "warning: " << w << "\n";
    os << "\neffective config\n----------------\n" << serialize_config(cfg);
}

} // namespace

int cmd_solve(const RunConfig& cfg, const RunContext& ctx)
{
    try {
        const BuiltProblem pb = build_problem(cfg);
        const SolveOutputs out =
            pb.is_cavity ? run_cavity(cfg, pb, true) : run_halfspace(cfg, pb, true);
        fs::create_directories(ctx.out_dir);
        write_field_csv(fs::path(ctx.out_dir) / "field.csv", cfg, out);
        write_summary(fs::path(ctx.out_dir) / "summary.txt", cfg, out);

        // boundary densities
        std::ofstream os(fs::path(ctx.out_dir) / "densities.csv");
        write_config_header(os, cfg, "solve", "block,index,x,y,re,im");
        os << "block,index,x,y,re,im\n";
        if (pb.is_cavity) {
            const CavityDensities& d = *out.cav_sol;
            auto dump = [&](const char* name, const Mesh& m, const std::vector<Complex>& v) {
                for (std::size_t i = 0; i < v.size(); ++i)
                    os << name << "," << i << "," << format_double(m.panels[i].mid.x) << ","
                       << format_double(m.panels[i].mid.y) << "," << format_double(v[i].real())
                       << "," << format_double(v[i].imag()) << "\n";
            };
            dump("sigma_wall", pb.cav.wall, d.sigma_wall);
            dump("sigma_gamma1", pb.cav.gamma1, d.sigma_g1);
            dump("sigma_gamma2", pb.cav.gamma2, d.sigma_g2);
            dump("mu_gamma2", pb.cav.gamma2, d.mu_g2);
            for (std::size_t j = 0; j < d.xi.size(); ++j)
                os << "xi," << j << "," << format_double(d.rule.lambda[j].real()) << ","
                   << format_double(d.rule.lambda[j].imag()) << ","
                   << format_double(d.xi[j].real()) << "," << format_double(d.xi[j].imag())
                   << "\n";
        } else {
            const DensitySolution& sol = *out.hs_sol;
            for (std::size_t i = 0; i < sol.sigma_wall.size(); ++i)
                os << "sigma_wall," << i << "," << format_double(pb.hs.wall.panels[i].mid.x)
                   << "," << format_double(pb.hs.wall.panels[i].mid.y) << ","
                   << format_double(sol.sigma_wall[i].real()) << ","
                   << format_double(sol.sigma_wall[i].imag()) << "\n";
            std::size_t off = 0;
            for (std::size_t s = 0; s < pb.hs.scatterers.size(); ++s) {
                for (std::size_t i = 0; i < pb.hs.scatterers[s].size(); ++i, ++off)
                    os << "sigma_scatterer" << (s + 1) << "," << i << ","
                       << format_double(pb.hs.scatterers[s].panels[i].mid.x) << ","
                       << format_double(pb.hs.scatterers[s].panels[i].mid.y) << ","
                       << format_double(sol.sigma_scatterer[off].real()) << ","
                       << format_double(sol.sigma_scatterer[off].imag()) << "\n";
            }
            for (std::size_t j = 0; j < sol.xi.size(); ++j)
                os << "xi," << j << "," << format_double(sol.rule.lambda[j].real()) << ","
                   << format_double(sol.rule.lambda[j].imag()) << ","
                   << format_double(sol.xi[j].real()) << "," << format_double(sol.xi[j].imag())
                   << "\n";
        }
        if (!ctx.quiet)
            std::cout << "solve: wrote " << ctx.out_dir << "/field.csv, densities.csv, summary.txt\n";
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    }
}

namespace {

struct SweepRow {
    std::vector<double> values;
};

double intensity_sum(const RunConfig& cfg, const BuiltProblem& pb, const std::vector<Vec2>& pts,
                     const std::vector<Complex>& u)
{
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!masked_out(cfg, pts[i]))
            s += std::norm(u[i]);
    return s;
}

} // namespace

int cmd_sweep(const RunConfig& cfg, const RunContext& ctx)
{
    if (!cfg.sweep) {
        std::cerr << "error: config has no [sweep] section\n";
        return exit_config;
    }
    try {
        const SweepSpec sw = *cfg.sweep;
        std::vector<double> params;
        for (double v = sw.from; v <= sw.to + 1e-12 * std::max(1.0, std::abs(sw.to)); v += sw.step)
            params.push_back(v);

        std::vector<std::string> header;
        std::vector<SweepRow> rows(sw.param == "M0N0" ? params.size() * params.size()
                                                      : params.size());

        auto run_point = [&](std::size_t idx) {
            if (sw.param == "M0N0") {
                RunConfig c2 = cfg;
                c2.M0 = params[idx / params.size()];
                c2.N0 = params[idx % params.size()];
                const BuiltProblem pb = build_problem(c2);
                const DensitySolution sol = assemble_and_solve(pb.hs);
                if (pb.hs.scatterers.empty())
                    throw ConfigError("sweep M0N0: needs a scatterer for the boundary-trace error");
                const auto trace = scatterer_trace(pb.hs, sol, 0);
                const auto oracle = image_bem_solve(pb.hs.scatterers[0], pb.hs.source.position,
                                                    pb.hs.wave.k, pb.hs.beta, pb.hs.opt.assembly);
                const auto ref = image_bem_boundary_trace(oracle);
                rows[idx].values = {c2.M0, c2.N0, l1_relative_error_real(trace, ref),
                                    l1_relative_error_imag(trace, ref)};
                return;
            }
            const double k = sw.param == "k" ? params[idx] : params[idx] / cfg.c;
            const BuiltProblem pb = build_problem(cfg, k);
            if (sw.observable == "intensity") {
                const Grid grid = make_grid(cfg, pb, false);
                const auto u = pb.is_cavity
                                   ? [&] {
                                         const CavityDensities d =
                                             solve_cavity_with_scatterers(pb.cav);
                                         return eval_total_field_cavity(pb.cav, d, grid.pts);
                                     }()
                                   : [&] {
                                         const DensitySolution s = assemble_and_solve(pb.hs);
                                         return eval_total_field(pb.hs, s, grid.pts);
                                     }();
                rows[idx].values = {params[idx], intensity_sum(cfg, pb, grid.pts, u)};
                return;
            }
            // observable == "error": relative error vs the image-based oracle
            if (pb.is_cavity)
                throw ConfigError("sweep error: image oracles apply to flat-wall problems only");
            const Grid grid = make_grid(cfg, pb, false);
            const DensitySolution sol = assemble_and_solve(pb.hs);
            const auto u = eval_total_field(pb.hs, sol, grid.pts);
            std::vector<Complex> ref;
            if (pb.hs.scatterers.empty()) {
                ref = image_field_empty(pb.hs.source.position, pb.hs.wave.k, grid.pts);
            } else {
                const auto ob = image_bem_solve(pb.hs.scatterers[0], pb.hs.source.position,
                                                pb.hs.wave.k, Complex(0.0, -1.0 / pb.hs.wave.k),
                                                pb.hs.opt.assembly);
                ref = image_bem_field(ob, grid.pts);
            }
            rows[idx].values = {params[idx], relative_error(u, ref)};
        };

        header = sw.param == "M0N0"
                     ? std::vector<std::string>{"M0", "N0", "l1_err_re", "l1_err_im"}
                     : (sw.observable == "intensity"
                            ? std::vector<std::string>{sw.param, "intensity_sum"}
                            : std::vector<std::string>{sw.param, "rel_error"});

        const int workers = std::max(1, ctx.workers);
        if (workers == 1) {
            for (std::size_t i = 0; i < rows.size(); ++i)
                run_point(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            std::mutex err_mutex;
            std::string first_error;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (;;) {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= rows.size())
                            return;
                        try {
                            run_point(i);
                        } catch (const std::exception& e) {
                            std::scoped_lock lk(err_mutex);
                            if (first_error.empty())
                                first_error = e.what();
                        }
                    }
                });
            for (auto& t : pool)
                t.join();
            if (!first_error.empty())
                throw std::runtime_error(first_error);
        }

        fs::create_directories(ctx.out_dir);
        std::ofstream os(fs::path(ctx.out_dir) / "sweep.csv");
        std::string cols;
        for (std::size_t i = 0; i < header.size(); ++i)
            cols += (i ? "," : "") + header[i];
        write_config_header(os, cfg, "sweep", cols);
        os << cols << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.values.size(); ++i)
                os << (i ? "," : "") << format_double(r.values[i]);
            os << "\n";
        }
        if (!ctx.quiet)
            std::cout << "sweep: wrote " << ctx.out_dir << "/sweep.csv (" << rows.size()
                      << " rows)\n";
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    }
}

int cmd_validate(const RunConfig& cfg, const RunContext& ctx)
{
    try {
        const BuiltProblem pb = build_problem(cfg);
        std::string oracle = cfg.validate_oracle;
        if (oracle == "auto") {
            if (pb.is_cavity)
                oracle = "transparency";
            else
                oracle = pb.hs.scatterers.empty() ? "image" : "image-bem";
        }
        const Grid grid = make_grid(cfg, pb, false);
        std::vector<Complex> u, ref;
        if (pb.is_cavity) {
            if (oracle != "transparency")
                throw ConfigError("validate: image oracles require a flat wall; use the "
                                  "transparency oracle for cavity geometries");
            if (cfg.cavity_kind != CavityKind::Flat)
                throw ConfigError("validate: the transparency oracle needs a degenerate (flat) "
                                  "cavity");
            if (pb.cav.source1 || !pb.cav.scatterers1.empty() || !pb.cav.scatterers2.empty())
                throw ConfigError("validate: transparency oracle expects a single source2 and no "
                                  "scatterers");
            const CavityDensities d = solve_cavity_with_scatterers(pb.cav);
            u = eval_total_field_cavity(pb.cav, d, grid.pts);
            ref = image_field_empty(pb.cav.source2->position, pb.cav.wave.k, grid.pts);
        } else {
            const DensitySolution sol = assemble_and_solve(pb.hs);
            u = eval_total_field(pb.hs, sol, grid.pts);
            if (oracle == "image") {
                if (!pb.hs.scatterers.empty())
                    throw ConfigError("validate: the image oracle applies to the empty half-space");
                ref = image_field_empty(pb.hs.source.position, pb.hs.wave.k, grid.pts);
            } else {
                if (pb.hs.scatterers.empty())
                    throw ConfigError("validate: image-bem oracle needs a scatterer");
                const auto ob = image_bem_solve(pb.hs.scatterers[0], pb.hs.source.position,
                                                pb.hs.wave.k, Complex(0.0, -1.0 / pb.hs.wave.k),
                                                pb.hs.opt.assembly);
                ref = image_bem_field(ob, grid.pts);
            }
        }

        ErrorReport rep;
        rep.rel_error = relative_error(u, ref);
        rep.l1_re = l1_relative_error_real(u, ref);
        rep.l1_im = l1_relative_error_imag(u, ref);
        rep.n_points = grid.pts.size();

        fs::create_directories(ctx.out_dir);
        {
            std::ofstream os(fs::path(ctx.out_dir) / "errors.csv");
            write_config_header(os, cfg, "validate", "x,y,abs_err,abs_ref");
            os << "x,y,abs_err,abs_ref\n";
            for (std::size_t i = 0; i < grid.pts.size(); ++i)
                os << format_double(grid.pts[i].x) << "," << format_double(grid.pts[i].y) << ","
                   << format_double(std::abs(u[i] - ref[i])) << ","
                   << format_double(std::abs(ref[i])) << "\n";
        }
        {
            std::ofstream os(fs::path(ctx.out_dir) / "report.txt");
            os << "hsbem validation report\n=======================\n\n";
            os << "oracle = " << oracle << "\n";
            os << "points = " << rep.n_points << "\n";
            os << "rel_error = " << format_double(rep.rel_error) << "\n";
            os << "l1_rel_error_re = " << format_double(rep.l1_re) << "\n";
            os << "l1_rel_error_im = " << format_double(rep.l1_im) << "\n";
            os << "threshold = " << format_double(cfg.validate_threshold) << "\n";
            os << "pass = " << (rep.rel_error <= cfg.validate_threshold ? "yes" : "no") << "\n";
            os << "\neffective config\n----------------\n" << serialize_config(cfg);
        }
        if (!ctx.quiet)
            std::cout << "validate: rel_error = " << format_double(rep.rel_error)
                      << (rep.rel_error <= cfg.validate_threshold ? " (pass)\n" : " (FAIL)\n");
        return rep.rel_error <= cfg.validate_threshold ? exit_ok : exit_validation;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    }
}

} // namespace hsbem
