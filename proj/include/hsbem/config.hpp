// Structured key/value run configuration with nested sections.
#pragma once

#include "hsbem/geometry.hpp"
#include "hsbem/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsbem {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat view: "section.key" -> value string. Section-less keys use the bare name.
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_key_values(const std::string& text); // throws ConfigError
std::string serialize_key_values(const KeyValueMap& kv);

enum class ProblemKind { Halfspace, Cavity, ValidateImage };
enum class CavityKind { None, HalfDisc, Circle, Flat };

struct ScattererSpec {
    Vec2 center{};
    double radius = 1.0;
    int region = 1; // Omega1 or Omega2 for cavity problems
};

struct SweepSpec {
    std::string param;      // "k", "omega" or "M0N0"
    double from = 0.0, to = 0.0, step = 0.0;
    std::string observable; // "error" or "intensity"
};

struct RunConfig {
    ProblemKind problem = ProblemKind::Halfspace;
    double omega = 1.0, c = 1.0;
    std::optional<SweepSpec> sweep;
    std::optional<Vec2> source;  // halfspace
    std::optional<Vec2> source1; // cavity Omega1
    std::optional<Vec2> source2; // cavity Omega2

    double M0 = 20.0, N0 = 30.0, contour_a = 2.0;
    double lambda_ppw = 40.0, lambda_spacing = 0.0;

    double panels_per_wavelength = 40.0;
    int quad_order = 10;
    bool grade_auto = true;
    double grade_ratio = 1.2;

    std::vector<ScattererSpec> scatterers;

    CavityKind cavity_kind = CavityKind::None;
    double cavity_radius = 1.0;
    double cavity_center_y = -1.0;
    double cavity_opening = 0.1;
    double virtual_radius = 3.0;
    bool windowed_continuity = true;

    std::string beta_mode = "-i/k"; // "-i/k", "i/k", "0" or "re,im"
    Complex beta_fixed{};

    double grid_x0 = -4.0, grid_x1 = 4.0, grid_y0 = 0.1, grid_y1 = 8.0;
    int grid_nx = 101, grid_ny = 101;
    std::string mask = "none"; // "none" or "right-half"

    std::string validate_oracle = "auto"; // "auto", "image", "image-bem", "transparency"
    double validate_threshold = 1e-2;

    KeyValueMap raw; // effective values, defaults expanded

    Complex beta(double k) const;
    std::vector<std::string> warnings() const; // soft checks (N0 vs omega, M0 vs extent)
};

RunConfig parse_config_text(const std::string& text); // throws ConfigError
RunConfig load_config_file(const std::string& path);  // throws ConfigError
// Effective config, defaults expanded; parse(serialize(.)) reproduces it.
std::string serialize_config(const RunConfig& cfg);

} // namespace hsbem
