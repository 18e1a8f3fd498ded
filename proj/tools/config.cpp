#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace wvl::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    require_object(j, where);
    for (const auto& item : j.items()) {
        if (allowed.count(item.key()) == 0) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

double get_number(const json& j, const std::string& key, double fallback, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(join(where, key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(join(where, key) + ": must be finite");
    return d;
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(join(where, key) + ": expected an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback, const std::string& where) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    if (!j.at(key).is_string()) throw ConfigError(join(where, key) + ": expected a string");
    return j.at(key).get<std::string>();
}

json section(const json& doc, const std::string& key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return json::object();
    return doc.at(key);
}

SigmaDriver parse_driver(const json& j, const PhysicalParams& params) {
    const std::string where = "driver";
    require_object(j, where);
    const std::string type = get_string(j, "type", "mathieu", where);
    if (type == "constant") {
        require_keys(j, {"type", "sigma0", "omega0"}, where);
        if (j.contains("sigma0") && j.contains("omega0")) throw ConfigError("driver: give sigma0 or omega0, not both");
        if (j.contains("omega0")) {
            const double w = get_number(j, "omega0", 1.0, where);
            if (!(w > 0.0)) throw ConfigError("driver.omega0: must be positive");
            return ConstantDriver::from_frequency(w, params);
        }
        return ConstantDriver{get_number(j, "sigma0", ConstantDriver::from_frequency(1.0, params).sigma0, where)};
    }
    if (type == "sin_squared") {
        require_keys(j, {"type", "sigma0", "varpi0"}, where);
        return SinSquaredDriver{get_number(j, "sigma0", 1.0, where), get_number(j, "varpi0", 1.0, where)};
    }
    if (type == "separatrix") {
        require_keys(j, {"type", "c1", "c2", "sign"}, where);
        return SeparatrixDriver{get_number(j, "c1", 1.0, where), get_number(j, "c2", 0.0, where),
                                get_int(j, "sign", 1, where)};
    }
    if (type == "mathieu") {
        require_keys(j, {"type", "a", "g", "sigma0", "sigma_dot0"}, where);
        MathieuDriver d;
        d.a = get_number(j, "a", 1.0, where);
        d.g = get_number(j, "g", 0.2, where);
        if (j.contains("sigma0") && !j.at("sigma0").is_null()) d.sigma0 = get_number(j, "sigma0", 1.0, where);
        d.sigma_dot0 = get_number(j, "sigma_dot0", 0.0, where);
        return d;
    }
    throw ConfigError("driver.type: unknown driver '" + type + "' (constant, sin_squared, separatrix, mathieu)");
}

AxisConfig parse_axis(const json& j, const AxisConfig& fallback, const std::string& where) {
    require_keys(j, {"points", "half_width"}, where);
    AxisConfig a;
    a.points = get_int(j, "points", fallback.points, where);
    a.half_width = get_number(j, "half_width", fallback.half_width, where);
    if (a.points < 3 || a.points % 2 == 0) throw ConfigError(where + ".points: must be odd and at least 3");
    if (a.half_width < 0.0) throw ConfigError(where + ".half_width: must be nonnegative");
    return a;
}

RangeConfig parse_range(const json& j, const RangeConfig& fallback, const std::string& where) {
    require_keys(j, {"min", "max", "points"}, where);
    RangeConfig r;
    r.min = get_number(j, "min", fallback.min, where);
    r.max = get_number(j, "max", fallback.max, where);
    r.points = get_int(j, "points", fallback.points, where);
    if (r.points < 2) throw ConfigError(where + ".points: resolution must be at least 2");
    if (!(r.max > r.min)) throw ConfigError(where + ": max must exceed min");
    return r;
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

std::vector<double> ScenarioConfig::time_grid() const {
    std::vector<double> ts;
    const auto steps = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
    for (long k = 0; k <= steps; ++k) ts.push_back(t0 + static_cast<double>(k) * dt);
    if (t1 - ts.back() > 1e-9 * std::max(1.0, std::abs(t1))) ts.push_back(t1);
    return ts;
}

double ScenarioConfig::horizon() const {
    double h = t1;
    for (double t : wigner_times) h = std::max(h, t);
    h = std::max(h, verify.t);
    return h + 4.0 * verify.dt + step;
}

void apply_override(json& doc, const Override& ov) {
    if (ov.first.empty()) throw ConfigError("empty override key");
    std::string pointer;
    std::size_t start = 0;
    while (start <= ov.first.size()) {
        const std::size_t dot = ov.first.find('.', start);
        const std::string part = ov.first.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("malformed override key '" + ov.first + "'");
        pointer += "/" + part;
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    json value;
    try {
        value = json::parse(ov.second);
    } catch (const json::parse_error&) {
        value = ov.second;
    }
    try {
        doc[json::json_pointer(pointer)] = value;
    } catch (const json::exception& e) {
        throw ConfigError("cannot apply override '" + ov.first + "': " + e.what());
    }
}

ScenarioConfig parse_config(const json& doc) {
    require_keys(doc, {"params", "driver", "states", "time", "grid", "output", "wigner", "rank4", "spectrum",
                       "stability", "verify"},
                 "config");
    ScenarioConfig cfg;
    try {
        const json p = section(doc, "params");
        require_keys(p, {"m", "hbar", "hbar2"}, "params");
        const double hbar = get_number(p, "hbar", 1.0, "params");
        cfg.params = PhysicalParams(get_number(p, "m", 1.0, "params"), hbar, get_number(p, "hbar2", hbar, "params"));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    cfg.driver = parse_driver(section(doc, "driver"), cfg.params);

    if (doc.contains("states")) {
        const json& s = doc.at("states");
        if (!s.is_array() || s.empty()) throw ConfigError("states: expected a nonempty array of orders");
        cfg.states.clear();
        for (const auto& v : s) {
            if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 40) {
                throw ConfigError("states: orders must be integers in [0, 40]");
            }
            cfg.states.push_back(v.get<int>());
        }
    }

    const json t = section(doc, "time");
    require_keys(t, {"t0", "t1", "dt", "step"}, "time");
    cfg.t0 = get_number(t, "t0", cfg.t0, "time");
    cfg.t1 = get_number(t, "t1", cfg.t1, "time");
    cfg.dt = get_number(t, "dt", cfg.dt, "time");
    cfg.step = get_number(t, "step", cfg.step, "time");
    if (cfg.t0 < 0.0) throw ConfigError("time.t0: must be nonnegative");
    if (!(cfg.t1 >= cfg.t0)) throw ConfigError("time.t1: must not precede t0");
    if (!(cfg.dt > 0.0)) throw ConfigError("time.dt: must be positive");
    if (!(cfg.step > 0.0) || cfg.step > 0.1) throw ConfigError("time.step: must lie in (0, 0.1]");

    const json g = section(doc, "grid");
    require_keys(g, {"x", "p", "resolution"}, "grid");
    cfg.x_axis = parse_axis(section(g, "x"), cfg.x_axis, "grid.x");
    cfg.p_axis = parse_axis(section(g, "p"), cfg.p_axis, "grid.p");
    cfg.resolution = get_number(g, "resolution", cfg.resolution, "grid");
    if (!(cfg.resolution > 0.0)) throw ConfigError("grid.resolution: must be positive");

    const json o = section(doc, "output");
    require_keys(o, {"dir"}, "output");
    cfg.out_dir = get_string(o, "dir", cfg.out_dir.string(), "output");

    const json w = section(doc, "wigner");
    require_keys(w, {"times"}, "wigner");
    if (w.contains("times")) cfg.wigner_times = number_list(w.at("times"), "wigner.times");
    for (double tw : cfg.wigner_times) {
        if (!(tw >= 0.0) || !std::isfinite(tw)) throw ConfigError("wigner.times: must be finite and nonnegative");
    }

    const json r = section(doc, "rank4");
    require_keys(r, {"sign", "slices"}, "rank4");
    try {
        cfg.rank4_sign = parse_rank4_sign(get_string(r, "sign", "reduced", "rank4"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("rank4.sign: ") + e.what());
    }
    if (r.contains("slices")) {
        if (!r.at("slices").is_array()) throw ConfigError("rank4.slices: expected an array");
        for (const auto& s : r.at("slices")) {
            require_keys(s, {"p_dot", "p_ddot"}, "rank4.slices[]");
            cfg.rank4_slices.push_back({get_number(s, "p_dot", 0.0, "rank4.slices[]"),
                                        get_number(s, "p_ddot", 0.0, "rank4.slices[]")});
        }
    }

    const json sp = section(doc, "spectrum");
    require_keys(sp, {"launch_angle", "tolerance"}, "spectrum");
    cfg.launch_angle = get_number(sp, "launch_angle", cfg.launch_angle, "spectrum");
    cfg.spectrum_tolerance = get_number(sp, "tolerance", cfg.spectrum_tolerance, "spectrum");
    if (!(cfg.spectrum_tolerance > 0.0)) throw ConfigError("spectrum.tolerance: must be positive");

    const json st = section(doc, "stability");
    require_keys(st, {"a", "g"}, "stability");
    cfg.a_range = parse_range(section(st, "a"), cfg.a_range, "stability.a");
    cfg.g_range = parse_range(section(st, "g"), cfg.g_range, "stability.g");

    const json v = section(doc, "verify");
    require_keys(v, {"t", "dt", "omega2_offset", "tolerances"}, "verify");
    cfg.verify.t = get_number(v, "t", cfg.verify.t, "verify");
    cfg.verify.dt = get_number(v, "dt", cfg.verify.dt, "verify");
    cfg.verify.omega2_offset = get_number(v, "omega2_offset", 0.0, "verify");
    if (!(cfg.verify.dt > 0.0) || cfg.verify.dt > 0.1) throw ConfigError("verify.dt: must lie in (0, 0.1]");
    if (cfg.verify.t < 2.0 * cfg.verify.dt) throw ConfigError("verify.t: must leave room for the time stencil");
    if (v.contains("tolerances")) {
        const json& tol = v.at("tolerances");
        require_object(tol, "verify.tolerances");
        for (const auto& item : tol.items()) {
            if (!item.value().is_number() || !(item.value().get<double>() > 0.0)) {
                throw ConfigError("verify.tolerances." + item.key() + ": must be a positive number");
            }
            cfg.verify.tolerances[item.key()] = item.value().get<double>();
        }
    }

    try {
        validate_driver(cfg.driver, cfg.params);
        if (const auto* m = std::get_if<MathieuDriver>(&cfg.driver)) (void)m->initial_sigma(cfg.params);
    } catch (const Error& e) {
        throw ConfigError(std::string("driver: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
    json doc = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config " + path.string());
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config " + path.string() + ": " + e.what());
        }
    }
    for (const auto& ov : overrides) apply_override(doc, ov);
    return parse_config(doc);
}

json to_json(const ScenarioConfig& cfg) {
    json d = std::visit(
        [&](const auto& drv) -> json {
            using T = std::decay_t<decltype(drv)>;
            if constexpr (std::is_same_v<T, ConstantDriver>) {
                return {{"type", "constant"}, {"sigma0", drv.sigma0}};
            } else if constexpr (std::is_same_v<T, SinSquaredDriver>) {
                return {{"type", "sin_squared"}, {"sigma0", drv.sigma0}, {"varpi0", drv.varpi0}};
            } else if constexpr (std::is_same_v<T, SeparatrixDriver>) {
                return {{"type", "separatrix"}, {"c1", drv.c1}, {"c2", drv.c2}, {"sign", drv.sign}};
            } else {
                return {{"type", "mathieu"},
                        {"a", drv.a},
                        {"g", drv.g},
                        {"sigma0", drv.initial_sigma(cfg.params)},
                        {"sigma_dot0", drv.sigma_dot0}};
            }
        },
        cfg.driver);

    json slices = json::array();
    for (const auto& s : cfg.rank4_slices) slices.push_back({{"p_dot", s.p_dot}, {"p_ddot", s.p_ddot}});
    json tolerances = json::object();
    for (const auto& [k, v] : cfg.verify.tolerances) tolerances[k] = v;

    return {
        {"params", {{"m", cfg.params.m()}, {"hbar", cfg.params.hbar()}, {"hbar2", cfg.params.hbar2()}}},
        {"driver", d},
        {"states", cfg.states},
        {"time", {{"t0", cfg.t0}, {"t1", cfg.t1}, {"dt", cfg.dt}, {"step", cfg.step}}},
        {"grid",
         {{"x", {{"points", cfg.x_axis.points}, {"half_width", cfg.x_axis.half_width}}},
          {"p", {{"points", cfg.p_axis.points}, {"half_width", cfg.p_axis.half_width}}},
          {"resolution", cfg.resolution}}},
        {"output", {{"dir", cfg.out_dir.string()}}},
        {"wigner", {{"times", cfg.wigner_times}}},
        {"rank4", {{"sign", to_string(cfg.rank4_sign)}, {"slices", slices}}},
        {"spectrum", {{"launch_angle", cfg.launch_angle}, {"tolerance", cfg.spectrum_tolerance}}},
        {"stability",
         {{"a", {{"min", cfg.a_range.min}, {"max", cfg.a_range.max}, {"points", cfg.a_range.points}}},
          {"g", {{"min", cfg.g_range.min}, {"max", cfg.g_range.max}, {"points", cfg.g_range.points}}}}},
        {"verify",
         {{"t", cfg.verify.t},
          {"dt", cfg.verify.dt},
          {"omega2_offset", cfg.verify.omega2_offset},
          {"tolerances", tolerances}}},
    };
}

}  // namespace wvl::cli
