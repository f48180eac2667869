#include "hsbem/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hsbem {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    if (d != std::floor(d))
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
    return (int)d;
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "off" || v == "0")
        return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

const std::set<std::string> known_scalar_keys = {
    "problem",
    "wave.omega", "wave.k", "wave.c",
    "sweep.param", "sweep.from", "sweep.to", "sweep.step", "sweep.observable",
    "source.x", "source.y", "source1.x", "source1.y", "source2.x", "source2.y",
    "truncation.M0", "truncation.N0", "truncation.a",
    "truncation.lambda_points_per_wavelength", "truncation.lambda_spacing",
    "mesh.panels_per_wavelength", "mesh.quad_order", "mesh.grade_auto", "mesh.grade_ratio",
    "cavity.kind", "cavity.radius", "cavity.center_y", "cavity.opening",
    "cavity.virtual_radius", "cavity.windowed_continuity",
    "bm.beta",
    "output.grid_x0", "output.grid_x1", "output.grid_y0", "output.grid_y1",
    "output.grid_nx", "output.grid_ny", "output.mask",
    "validate.oracle", "validate.threshold",
};

bool is_scatterer_key(const std::string& key, int& index, std::string& field)
{
    if (key.rfind("scatterer", 0) != 0)
        return false;
    const auto dotpos = key.find('.');
    if (dotpos == std::string::npos)
        return false;
    const std::string sec = key.substr(0, dotpos);
    const std::string idx = sec.substr(9);
    if (idx.empty())
        return false;
    int v = 0;
    const auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), v);
    if (ec != std::errc() || p != idx.data() + idx.size() || v < 1)
        return false;
    index = v;
    field = key.substr(dotpos + 1);
    return field == "cx" || field == "cy" || field == "r" || field == "region";
}

} // namespace

KeyValueMap parse_key_values(const std::string& text)
{
    KeyValueMap kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line "
                                  + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config: empty section name at line " + std::to_string(lineno));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key at line " + std::to_string(lineno));
        const std::string full = section.empty() ? key : section + "." + key;
        if (kv.count(full))
            throw ConfigError("config: duplicate key '" + full + "'");
        kv[full] = val;
    }
    return kv;
}

std::string serialize_key_values(const KeyValueMap& kv)
{
    std::ostringstream os;
    // section-less keys first, then sections in map order
    for (const auto& [key, val] : kv)
        if (key.find('.') == std::string::npos)
            os << key << " = " << val << "\n";
    std::string section;
    for (const auto& [key, val] : kv) {
        const auto dot = key.find('.');
        if (dot == std::string::npos)
            continue;
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            os << "[" << sec << "]\n";
            section = sec;
        }
        os << key.substr(dot + 1) << " = " << val << "\n";
    }
    return os.str();
}

Complex RunConfig::beta(double k) const
{
    if (beta_mode == "-i/k")
        return {0.0, -1.0 / k};
    if (beta_mode == "i/k")
        return {0.0, 1.0 / k};
    if (beta_mode == "0")
        return {0.0, 0.0};
    return beta_fixed;
}

std::vector<std::string> RunConfig::warnings() const
{
    std::vector<std::string> w;
    if (N0 <= omega)
        w.push_back("N0 <= omega: the Fourier truncation should exceed the angular frequency");
    double ext = 0.0;
    auto upd = [&](double x) { ext = std::max(ext, std::abs(x)); };
    if (source)
        upd(source->x);
    if (source1)
        upd(source1->x);
    if (source2)
        upd(source2->x);
    for (const auto& s : scatterers)
        upd(std::abs(s.center.x) + s.radius);
    if (M0 < 2.0 * ext)
        w.push_back("M0 smaller than the source/scatterer extent: enlarge the window");
    return w;
}

RunConfig parse_config_text(const std::string& text)
{
    const KeyValueMap kv = parse_key_values(text);
    RunConfig c;

    // validate keys
    std::map<int, ScattererSpec> scat;
    for (const auto& [key, val] : kv) {
        int idx;
        std::string field;
        if (known_scalar_keys.count(key))
            continue;
        if (is_scatterer_key(key, idx, field))
            continue;
        throw ConfigError("config: unknown key '" + key + "'");
    }
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        return it->second;
    };

    if (const auto p = get("problem")) {
        if (*p == "halfspace")
            c.problem = ProblemKind::Halfspace;
        else if (*p == "cavity")
            c.problem = ProblemKind::Cavity;
        else if (*p == "validate-image")
            c.problem = ProblemKind::ValidateImage;
        else
            throw ConfigError("config: problem must be halfspace, cavity or validate-image");
    } else {
        throw ConfigError("config: missing 'problem'");
    }

    if (const auto v = get("wave.c"))
        c.c = to_double("wave.c", *v);
    if (const auto v = get("wave.omega"))
        c.omega = to_double("wave.omega", *v);
    else if (const auto w = get("wave.k"))
        c.omega = to_double("wave.k", *w) * c.c;
    else
        throw ConfigError("config: missing wave.omega or wave.k");
    if (!(c.omega > 0.0) || !(c.c > 0.0))
        throw ConfigError("config: wave.omega and wave.c must be positive");

    if (get("sweep.param")) {
        SweepSpec s;
        s.param = *get("sweep.param");
        if (s.param != "k" && s.param != "omega" && s.param != "M0N0")
            throw ConfigError("config: sweep.param must be k, omega or M0N0");
        if (!get("sweep.from") || !get("sweep.to") || !get("sweep.step"))
            throw ConfigError("config: sweep requires from, to and step");
        s.from = to_double("sweep.from", *get("sweep.from"));
        s.to = to_double("sweep.to", *get("sweep.to"));
        s.step = to_double("sweep.step", *get("sweep.step"));
        if (!(s.step > 0.0) || s.to < s.from)
            throw ConfigError("config: sweep range must run forward with a positive step");
        s.observable = get("sweep.observable").value_or("error");
        if (s.observable != "error" && s.observable != "intensity")
            throw ConfigError("config: sweep.observable must be error or intensity");
        c.sweep = s;
    }

    auto read_point = [&](const std::string& sec) -> std::optional<Vec2> {
        const auto x = get(sec + ".x"), y = get(sec + ".y");
        if (!x && !y)
            return std::nullopt;
        if (!x || !y)
            throw ConfigError("config: section [" + sec + "] needs both x and y");
        return Vec2{to_double(sec + ".x", *x), to_double(sec + ".y", *y)};
    };
    c.source = read_point("source");
    c.source1 = read_point("source1");
    c.source2 = read_point("source2");

    if (const auto v = get("truncation.M0"))
        c.M0 = to_double("truncation.M0", *v);
    if (const auto v = get("truncation.N0"))
        c.N0 = to_double("truncation.N0", *v);
    if (const auto v = get("truncation.a"))
        c.contour_a = to_double("truncation.a", *v);
    if (const auto v = get("truncation.lambda_points_per_wavelength"))
        c.lambda_ppw = to_double("truncation.lambda_points_per_wavelength", *v);
    if (const auto v = get("truncation.lambda_spacing"))
        c.lambda_spacing = to_double("truncation.lambda_spacing", *v);
    if (!(c.M0 > 0.0) || !(c.N0 > 0.0) || !(c.contour_a > 0.0))
        throw ConfigError("config: truncation parameters must be positive");

    if (const auto v = get("mesh.panels_per_wavelength"))
        c.panels_per_wavelength = to_double("mesh.panels_per_wavelength", *v);
    if (const auto v = get("mesh.quad_order"))
        c.quad_order = to_int("mesh.quad_order", *v);
    if (const auto v = get("mesh.grade_auto"))
        c.grade_auto = to_bool("mesh.grade_auto", *v);
    if (const auto v = get("mesh.grade_ratio"))
        c.grade_ratio = to_double("mesh.grade_ratio", *v);
    if (!(c.panels_per_wavelength > 0.0) || c.quad_order < 1)
        throw ConfigError("config: mesh parameters out of range");

    for (const auto& [key, val] : kv) {
        int idx;
        std::string field;
        if (!is_scatterer_key(key, idx, field))
            continue;
        auto& s = scat[idx];
        if (field == "cx")
            s.center.x = to_double(key, val);
        else if (field == "cy")
            s.center.y = to_double(key, val);
        else if (field == "r")
            s.radius = to_double(key, val);
        else
            s.region = to_int(key, val);
    }
    for (auto& [idx, s] : scat) {
        if (!(s.radius > 0.0))
            throw ConfigError("config: scatterer radius must be positive");
        if (s.region != 1 && s.region != 2)
            throw ConfigError("config: scatterer region must be 1 or 2");
        c.scatterers.push_back(s);
    }

    if (const auto v = get("cavity.kind")) {
        if (*v == "none")
            c.cavity_kind = CavityKind::None;
        else if (*v == "halfdisc")
            c.cavity_kind = CavityKind::HalfDisc;
        else if (*v == "circle")
            c.cavity_kind = CavityKind::Circle;
        else if (*v == "flat")
            c.cavity_kind = CavityKind::Flat;
        else
            throw ConfigError("config: cavity.kind must be none, halfdisc, circle or flat");
    }
    if (const auto v = get("cavity.radius"))
        c.cavity_radius = to_double("cavity.radius", *v);
    if (const auto v = get("cavity.center_y"))
        c.cavity_center_y = to_double("cavity.center_y", *v);
    if (const auto v = get("cavity.opening"))
        c.cavity_opening = to_double("cavity.opening", *v);
    if (const auto v = get("cavity.virtual_radius"))
        c.virtual_radius = to_double("cavity.virtual_radius", *v);
    if (const auto v = get("cavity.windowed_continuity"))
        c.windowed_continuity = to_bool("cavity.windowed_continuity", *v);

    if (c.problem == ProblemKind::Cavity && c.cavity_kind == CavityKind::None)
        throw ConfigError("config: cavity problems need cavity.kind");
    if (c.problem == ProblemKind::Cavity && !c.source1 && !c.source2)
        throw ConfigError("config: cavity problems need source1 and/or source2");
    if (c.problem != ProblemKind::Cavity && !c.source)
        throw ConfigError("config: halfspace problems need a [source]");

    if (const auto v = get("bm.beta")) {
        const std::string b = *v;
        if (b == "-i/k" || b == "i/k" || b == "0") {
            c.beta_mode = b;
        } else {
            const auto comma = b.find(',');
            if (comma == std::string::npos)
                throw ConfigError("config: bm.beta must be -i/k, i/k, 0 or 're,im'");
            c.beta_mode = "fixed";
            c.beta_fixed = {to_double("bm.beta", trim(b.substr(0, comma))),
                            to_double("bm.beta", trim(b.substr(comma + 1)))};
        }
    }

    if (const auto v = get("output.grid_x0"))
        c.grid_x0 = to_double("output.grid_x0", *v);
    if (const auto v = get("output.grid_x1"))
        c.grid_x1 = to_double("output.grid_x1", *v);
    if (const auto v = get("output.grid_y0"))
        c.grid_y0 = to_double("output.grid_y0", *v);
    if (const auto v = get("output.grid_y1"))
        c.grid_y1 = to_double("output.grid_y1", *v);
    if (const auto v = get("output.grid_nx"))
        c.grid_nx = to_int("output.grid_nx", *v);
    if (const auto v = get("output.grid_ny"))
        c.grid_ny = to_int("output.grid_ny", *v);
    if (const auto v = get("output.mask")) {
        if (*v != "none" && *v != "right-half")
            throw ConfigError("config: output.mask must be none or right-half");
        c.mask = *v;
    }
    if (c.grid_nx < 1 || c.grid_ny < 1)
        throw ConfigError("config: output grid must have at least one point per axis");

    if (const auto v = get("validate.oracle")) {
        if (*v != "auto" && *v != "image" && *v != "image-bem" && *v != "transparency")
            throw ConfigError("config: validate.oracle must be auto, image, image-bem or "
                              "transparency");
        c.validate_oracle = *v;
    }
    if (const auto v = get("validate.threshold"))
        c.validate_threshold = to_double("validate.threshold", *v);

    // effective key/value map, defaults expanded
    KeyValueMap eff;
    eff["problem"] = c.problem == ProblemKind::Halfspace
                         ? "halfspace"
                         : (c.problem == ProblemKind::Cavity ? "cavity" : "validate-image");
    eff["wave.omega"] = fmt(c.omega);
    eff["wave.c"] = fmt(c.c);
    if (c.sweep) {
        eff["sweep.param"] = c.sweep->param;
        eff["sweep.from"] = fmt(c.sweep->from);
        eff["sweep.to"] = fmt(c.sweep->to);
        eff["sweep.step"] = fmt(c.sweep->step);
        eff["sweep.observable"] = c.sweep->observable;
    }
    auto put_point = [&](const std::string& sec, const std::optional<Vec2>& p) {
        if (p) {
            eff[sec + ".x"] = fmt(p->x);
            eff[sec + ".y"] = fmt(p->y);
        }
    };
    put_point("source", c.source);
    put_point("source1", c.source1);
    put_point("source2", c.source2);
    eff["truncation.M0"] = fmt(c.M0);
    eff["truncation.N0"] = fmt(c.N0);
    eff["truncation.a"] = fmt(c.contour_a);
    eff["truncation.lambda_points_per_wavelength"] = fmt(c.lambda_ppw);
    eff["truncation.lambda_spacing"] = fmt(c.lambda_spacing);
    eff["mesh.panels_per_wavelength"] = fmt(c.panels_per_wavelength);
    eff["mesh.quad_order"] = std::to_string(c.quad_order);
    eff["mesh.grade_auto"] = c.grade_auto ? "true" : "false";
    eff["mesh.grade_ratio"] = fmt(c.grade_ratio);
    for (std::size_t i = 0; i < c.scatterers.size(); ++i) {
        const std::string sec = "scatterer" + std::to_string(i + 1);
        eff[sec + ".cx"] = fmt(c.scatterers[i].center.x);
        eff[sec + ".cy"] = fmt(c.scatterers[i].center.y);
        eff[sec + ".r"] = fmt(c.scatterers[i].radius);
        eff[sec + ".region"] = std::to_string(c.scatterers[i].region);
    }
    if (c.problem == ProblemKind::Cavity) {
        eff["cavity.kind"] = c.cavity_kind == CavityKind::HalfDisc
                                 ? "halfdisc"
                                 : (c.cavity_kind == CavityKind::Circle ? "circle" : "flat");
        eff["cavity.radius"] = fmt(c.cavity_radius);
        eff["cavity.center_y"] = fmt(c.cavity_center_y);
        eff["cavity.opening"] = fmt(c.cavity_opening);
        eff["cavity.virtual_radius"] = fmt(c.virtual_radius);
        eff["cavity.windowed_continuity"] = c.windowed_continuity ? "true" : "false";
    }
    eff["bm.beta"] = c.beta_mode == "fixed"
                         ? fmt(c.beta_fixed.real()) + "," + fmt(c.beta_fixed.imag())
                         : c.beta_mode;
    eff["output.grid_x0"] = fmt(c.grid_x0);
    eff["output.grid_x1"] = fmt(c.grid_x1);
    eff["output.grid_y0"] = fmt(c.grid_y0);
    eff["output.grid_y1"] = fmt(c.grid_y1);
    eff["output.grid_nx"] = std::to_string(c.grid_nx);
    eff["output.grid_ny"] = std::to_string(c.grid_ny);
    eff["output.mask"] = c.mask;
    eff["validate.oracle"] = c.validate_oracle;
    eff["validate.threshold"] = fmt(c.validate_threshold);
    c.raw = std::move(eff);
    return c;
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg)
{
    return serialize_key_values(cfg.raw);
}

} // namespace hsbem
