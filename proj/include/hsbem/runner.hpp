// Batch driver behind the CLI: builds problems from a RunConfig, runs
// solve/sweep/validate and writes CSV + summary artifacts.
#pragma once

#include "hsbem/cavity.hpp"
#include "hsbem/config.hpp"
#include "hsbem/halfspace.hpp"
#include "hsbem/oracles.hpp"

#include <string>

namespace hsbem {

struct RunContext {
    std::string out_dir = "out";
    int workers = 1;
    bool quiet = false;
};

// exit codes: 0 success, 2 config error, 3 solver failure, 4 validation failure
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_solver = 3;
inline constexpr int exit_validation = 4;

struct BuiltProblem {
    bool is_cavity = false;
    HalfspaceProblem hs;
    CavityProblem cav;
};

// Instantiates meshes and solver options; k_override replaces the config
// wavenumber when positive (used by sweeps).
BuiltProblem build_problem(const RunConfig& cfg, double k_override = 0.0);

int cmd_solve(const RunConfig& cfg, const RunContext& ctx);
int cmd_sweep(const RunConfig& cfg, const RunContext& ctx);
int cmd_validate(const RunConfig& cfg, const RunContext& ctx);

} // namespace hsbem
