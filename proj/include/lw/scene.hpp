#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lw/correspondence.hpp"
#include "lw/null_curve.hpp"
#include "lw/surface.hpp"

namespace lw {

using nlohmann::json;

/// Scene validation failure; the message carries a JSON-pointer-style path
/// to the offending field.
struct SceneError : std::runtime_error {
    SceneError(const std::string& path, const std::string& msg)
        : std::runtime_error(path + ": " + msg) {}
};

struct CurveSpec {
    std::optional<std::string> f, g, h;
    int omega = 1;
};

struct SceneFile {
    std::string name;
    Space space = Space::R42;
    bool canonical = true;
    std::string variable = "t";
    std::vector<CurveSpec> curves;
    Rect domain;
    int grid1 = 20, grid2 = 20;
};

namespace detail {

inline Interval parse_interval(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SceneError(path, "expected [lo, hi]");
    Interval iv{j[0].get<double>(), j[1].get<double>()};
    if (!(iv.a < iv.b)) throw SceneError(path, "domain interval is empty");
    return iv;
}

inline Expression parse_expr_field(const json& curve, const char* key, const std::string& var,
                                   const std::string& path) {
    if (!curve.contains(key) || !curve[key].is_string())
        throw SceneError(path + "/" + key, "missing expression string");
    try {
        return Expression::parse(curve[key].get<std::string>(), var);
    } catch (const ParseError& e) {
        throw SceneError(path + "/" + key, e.what());
    }
}

}  // namespace detail

inline SceneFile parse_scene(const json& j) {
    SceneFile s;
    s.name = j.value("name", "");
    std::string space = j.value("space", "");
    if (space == "R31") s.space = Space::R31;
    else if (space == "R42") s.space = Space::R42;
    else throw SceneError("/space", "must be \"R31\" or \"R42\"");
    std::string kind = j.value("kind", "canonical");
    if (kind == "canonical") s.canonical = true;
    else if (kind == "general") s.canonical = false;
    else throw SceneError("/kind", "must be \"canonical\" or \"general\"");
    s.variable = j.value("variable", "t");

    if (!j.contains("domain") || !j["domain"].is_object())
        throw SceneError("/domain", "missing domain object");
    s.domain.t1 = detail::parse_interval(j["domain"].value("t1", json()), "/domain/t1");
    if (j["domain"].contains("t2"))
        s.domain.t2 = detail::parse_interval(j["domain"]["t2"], "/domain/t2");
    else
        s.domain.t2 = s.domain.t1;

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_array() || g.empty() || g.size() > 2)
            throw SceneError("/grid", "expected [n] or [n, m]");
        s.grid1 = g[0].get<int>();
        s.grid2 = g.size() == 2 ? g[1].get<int>() : s.grid1;
        if (s.grid1 < 2 || s.grid2 < 2) throw SceneError("/grid", "resolution must be >= 2");
    }

    if (!j.contains("curves") || !j["curves"].is_array() || j["curves"].empty())
        throw SceneError("/curves", "expected a non-empty array of curve objects");
    int idx = 0;
    for (const auto& c : j["curves"]) {
        std::string path = "/curves/" + std::to_string(idx++);
        CurveSpec spec;
        if (c.contains("f")) spec.f = c["f"].get<std::string>();
        if (c.contains("g")) spec.g = c["g"].get<std::string>();
        if (c.contains("h")) spec.h = c["h"].get<std::string>();
        spec.omega = c.value("omega", 1);
        if (spec.omega != 1 && spec.omega != -1) throw SceneError(path + "/omega", "must be +-1");
        if (!spec.g) throw SceneError(path + "/g", "missing expression string");
        if (s.canonical && spec.f) throw SceneError(path + "/f", "canonical data has no f");
        if (!s.canonical && !spec.f) throw SceneError(path + "/f", "general data needs f");
        if (s.space == Space::R42 && !spec.h) throw SceneError(path + "/h", "R42 data needs h");
        if (s.space == Space::R31 && spec.h) throw SceneError(path + "/h", "R31 data has no h");
        s.curves.push_back(std::move(spec));
    }
    return s;
}

inline json scene_to_json(const SceneFile& s) {
    json j;
    if (!s.name.empty()) j["name"] = s.name;
    j["space"] = s.space == Space::R31 ? "R31" : "R42";
    j["kind"] = s.canonical ? "canonical" : "general";
    j["variable"] = s.variable;
    j["domain"]["t1"] = {s.domain.t1.a, s.domain.t1.b};
    j["domain"]["t2"] = {s.domain.t2.a, s.domain.t2.b};
    j["grid"] = {s.grid1, s.grid2};
    j["curves"] = json::array();
    for (const auto& c : s.curves) {
        json jc;
        if (c.f) jc["f"] = *c.f;
        if (c.g) jc["g"] = *c.g;
        if (c.h) jc["h"] = *c.h;
        jc["omega"] = c.omega;
        j["curves"].push_back(jc);
    }
    return j;
}

/// Builds the null curve for entry `index` of the scene over the matching
/// domain interval.
inline NullCurve make_curve(const SceneFile& s, size_t index) {
    if (index >= s.curves.size()) throw SceneError("/curves", "curve index out of range");
    const CurveSpec& spec = s.curves[index];
    Interval iv = index == 0 ? s.domain.t1 : s.domain.t2;
    const std::string& var = s.variable;
    auto expr = [&](const std::optional<std::string>& src, const char* key) {
        json dummy{{key, *src}};
        return detail::parse_expr_field(dummy, key, var, "/curves/" + std::to_string(index));
    };
    if (s.canonical) {
        if (s.space == Space::R42)
            return canonical_r42(expr(spec.g, "g"), expr(spec.h, "h"), spec.omega, iv);
        return canonical_r31(expr(spec.g, "g"), spec.omega, iv);
    }
    if (s.space == Space::R42)
        return weier_r42({expr(spec.f, "f"), expr(spec.g, "g"), expr(spec.h, "h")}, iv);
    return weier_r31({expr(spec.f, "f"), expr(spec.g, "g")}, iv);
}

/// A surface together with the curvature evaluator appropriate to its
/// representation kind.
struct SurfaceModel {
    MinimalSurface surface;
    std::function<CurvaturePair(double, double)> curvatures;
    std::optional<CanonicalSurfaceDataR42> canonical_r42_data;
    std::optional<CanonicalSurfaceDataR31> canonical_r31_data;
    std::optional<SurfaceType> type;
};

inline SurfaceModel make_surface(const SceneFile& s) {
    if (s.curves.size() != 2)
        throw SceneError("/curves", "a surface scene needs exactly two curves");
    SurfaceModel model;
    model.surface = build_surface(make_curve(s, 0), make_curve(s, 1), s.domain);

    const std::string& var = s.variable;
    auto parse = [&](const std::optional<std::string>& src) {
        return Expression::parse(*src, var);
    };
    if (s.canonical && s.space == Space::R42) {
        CanonicalSurfaceDataR42 d{parse(s.curves[0].g), parse(s.curves[0].h),
                                  parse(s.curves[1].g), parse(s.curves[1].h),
                                  s.curves[0].omega, s.curves[1].omega, s.domain};
        model.type = classify_type(d);
        model.curvatures = [d](double u, double v) { return curvatures_r42_canonical(d, u, v); };
        model.canonical_r42_data = std::move(d);
    } else if (s.canonical) {
        CanonicalSurfaceDataR31 d{parse(s.curves[0].g), parse(s.curves[1].g),
                                  s.curves[0].omega, s.curves[1].omega, s.domain};
        model.curvatures = [d](double u, double v) { return curvature_r31_canonical(d, u, v); };
        model.canonical_r31_data = std::move(d);
    } else if (s.space == Space::R42) {
        GeneralSurfaceDataR42 d{parse(s.curves[0].f), parse(s.curves[0].g), parse(s.curves[0].h),
                                parse(s.curves[1].f), parse(s.curves[1].g), parse(s.curves[1].h),
                                s.domain};
        model.curvatures = [d](double u, double v) { return curvatures_r42(d, u, v); };
    } else {
        GeneralSurfaceDataR31 d{parse(s.curves[0].f), parse(s.curves[0].g),
                                parse(s.curves[1].f), parse(s.curves[1].g), s.domain};
        model.curvatures = [d](double u, double v) { return curvature_r31(d, u, v); };
    }
    return model;
}

// ---------------------------------------------------------------------------
// Built-in scenes (the worked catenoid example)
// ---------------------------------------------------------------------------

inline std::optional<json> builtin_scene(const std::string& name) {
    // Domains avoid the excluded line t1 + t2 = 0 of the merged surface.
    static const char* merged = R"json({
        "name": "catenoid-merged", "space": "R42", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "exp(t)", "h": "exp(t)", "omega": 1},
                    {"g": "-exp(t)", "h": "exp(-t)", "omega": 1} ],
        "domain": {"t1": [0.2, 2.0], "t2": [0.2, 2.0]}, "grid": [20, 20]
    })json";
    static const char* gamma1 = R"json({
        "name": "catenoid-gamma1", "space": "R42", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "exp(t)", "h": "exp(t)", "omega": 1} ],
        "domain": {"t1": [0.2, 2.0]}, "grid": [20]
    })json";
    static const char* gamma2 = R"json({
        "name": "catenoid-gamma2", "space": "R42", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "-exp(t)", "h": "exp(-t)", "omega": 1} ],
        "domain": {"t1": [0.2, 2.0]}, "grid": [20]
    })json";
    static const char* ma = R"json({
        "name": "catenoid-Ma", "space": "R31", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "exp(t)", "omega": 1}, {"g": "-exp(t)", "omega": 1} ],
        "domain": {"t1": [0.2, 2.0], "t2": [0.2, 2.0]}, "grid": [20, 20]
    })json";
    static const char* mb = R"json({
        "name": "catenoid-Mb", "space": "R31", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "exp(t)", "omega": 1}, {"g": "exp(-t)", "omega": 1} ],
        "domain": {"t1": [0.2, 2.0], "t2": [0.2, 2.0]}, "grid": [20, 20]
    })json";
    if (name == "catenoid-merged") return json::parse(merged);
    if (name == "catenoid-gamma1") return json::parse(gamma1);
    if (name == "catenoid-gamma2") return json::parse(gamma2);
    if (name == "catenoid-Ma") return json::parse(ma);
    if (name == "catenoid-Mb") return json::parse(mb);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// MotionSpec JSON
// ---------------------------------------------------------------------------

struct MotionSpec {
    Space space;
    std::optional<MotionR31> r31;
    std::optional<MotionR42> r42;
};

inline MotionSpec parse_motion(const json& j) {
    std::string space = j.value("space", "");
    if (space != "R31" && space != "R42") throw SceneError("/space", "must be \"R31\" or \"R42\"");
    int n = space == "R31" ? 3 : 4;
    if (!j.contains("matrix") || !j["matrix"].is_array() || int(j["matrix"].size()) != n)
        throw SceneError("/matrix", "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                        " matrix");
    std::array<double, 4> b{};
    if (j.contains("translation")) {
        if (!j["translation"].is_array() || int(j["translation"].size()) != n)
            throw SceneError("/translation", "expected " + std::to_string(n) + " entries");
        for (int i = 0; i < n; ++i) b[i] = j["translation"][i].get<double>();
    }
    MotionSpec spec;
    try {
        if (n == 3) {
            Mat3 A;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) A(i, k) = j["matrix"][i][k].get<double>();
            spec.space = Space::R31;
            spec.r31 = MotionR31::make(A, Vec3L{{b[0], b[1], b[2]}});
        } else {
            Mat4 A;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) A(i, k) = j["matrix"][i][k].get<double>();
            spec.space = Space::R42;
            spec.r42 = MotionR42::make(A, Vec4L{{b[0], b[1], b[2], b[3]}});
        }
    } catch (const std::invalid_argument& e) {
        throw SceneError("/matrix", e.what());
    }
    return spec;
}

/// split at the scene level: a canonical R42 surface scene becomes the
/// pair of R31 scenes carrying its g- and h-data.
inline std::pair<SceneFile, SceneFile> split_scene(const SceneFile& s) {
    if (s.space != Space::R42 || !s.canonical || s.curves.size() != 2)
        throw SceneError("/", "split needs a canonical R42 surface scene");
    SceneFile mg = s, mh = s;
    mg.space = Space::R31;
    mg.name = s.name.empty() ? "m_g" : s.name + "-g";
    mh.space = Space::R31;
    mh.name = s.name.empty() ? "m_h" : s.name + "-h";
    for (int i = 0; i < 2; ++i) {
        mg.curves[i] = CurveSpec{std::nullopt, s.curves[i].g, std::nullopt, 1};
        mh.curves[i] = CurveSpec{std::nullopt, s.curves[i].h, std::nullopt, 1};
    }
    return {mg, mh};
}

/// merge at the scene level; validates cross conditions via merge_surfaces.
inline SceneFile merge_scenes(const SceneFile& mg, const SceneFile& mh, int omega1, int omega2) {
    if (mg.space != Space::R31 || mh.space != Space::R31 || !mg.canonical || !mh.canonical)
        throw SceneError("/", "merge needs two canonical R31 surface scenes");
    if (mg.curves.size() != 2 || mh.curves.size() != 2)
        throw SceneError("/curves", "merge needs surface scenes with two curves each");
    SurfacePair pair;
    pair.m_g = CanonicalSurfaceDataR31{Expression::parse(*mg.curves[0].g, mg.variable),
                                       Expression::parse(*mg.curves[1].g, mg.variable), 1, 1,
                                       mg.domain};
    pair.m_h = CanonicalSurfaceDataR31{Expression::parse(*mh.curves[0].g, mh.variable),
                                       Expression::parse(*mh.curves[1].g, mh.variable), 1, 1,
                                       mg.domain};
    CanonicalSurfaceDataR42 merged = merge_surfaces(pair, omega1, omega2);
    SceneFile s = mg;
    s.space = Space::R42;
    s.name = "merged";
    s.curves = {CurveSpec{std::nullopt, merged.g1.to_string(), merged.h1.to_string(), omega1},
                CurveSpec{std::nullopt, merged.g2.to_string(), merged.h2.to_string(), omega2}};
    return s;
}

}  // namespace lw
