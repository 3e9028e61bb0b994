#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "lw/mesh_io.hpp"
#include "lw/scene.hpp"

using namespace lw;

static size_t count_prefix(const std::string& text, const std::string& prefix) {
    size_t n = 0, pos = 0;
    while ((pos = text.find(prefix, pos)) != std::string::npos) {
        if (pos == 0 || text[pos - 1] == '\n') ++n;
        pos += prefix.size();
    }
    return n;
}

static size_t count_lines(const std::string& text) {
    size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

TEST_CASE("scene parsing reports JSON-pointer paths") {
    auto path_of = [](const char* src) {
        try {
            parse_scene(json::parse(src));
        } catch (const SceneError& e) {
            std::string msg = e.what();
            return msg.substr(0, msg.find(':'));
        }
        FAIL("expected SceneError");
        return std::string();
    };
    CHECK(path_of(R"json({"space": "R5"})json") == "/space");
    CHECK(path_of(R"json({"space": "R42"})json") == "/domain");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [1, 0]},
                          "curves": [{"g": "t", "h": "t"}]})json") == "/domain/t1");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [0, 1]}, "grid": [1],
                          "curves": [{"g": "t", "h": "t"}]})json") == "/grid");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [0, 1]}, "curves": []})json") ==
          "/curves");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [0, 1]},
                          "curves": [{"g": "t", "h": "t", "omega": 2}]})json") ==
          "/curves/0/omega");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [0, 1]},
                          "curves": [{"h": "t"}]})json") == "/curves/0/g");
    CHECK(path_of(R"json({"space": "R42", "domain": {"t1": [0, 1]},
                          "curves": [{"g": "t"}]})json") == "/curves/0/h");
    CHECK(path_of(R"json({"space": "R31", "domain": {"t1": [0, 1]},
                          "curves": [{"g": "t", "h": "t"}]})json") == "/curves/0/h");
    CHECK(path_of(R"json({"space": "R31", "kind": "general", "domain": {"t1": [0, 1]},
                          "curves": [{"g": "t"}]})json") == "/curves/0/f");
    CHECK(path_of(R"json({"space": "R31", "domain": {"t1": [0, 1]},
                          "curves": [{"f": "1", "g": "t"}]})json") == "/curves/0/f");
}

TEST_CASE("expression errors surface when the curve is built") {
    SceneFile s = parse_scene(json::parse(R"json({
        "space": "R31", "domain": {"t1": [0.1, 1.0]},
        "curves": [{"g": "2t"}]
    })json"));
    try {
        make_curve(s, 0);
        FAIL("expected SceneError");
    } catch (const SceneError& e) {
        std::string msg = e.what();
        CHECK(msg.find("/curves/0/g") != std::string::npos);
        CHECK(msg.find("offset 1") != std::string::npos);
    }
}

TEST_CASE("builtin scenes") {
    for (const char* name : {"catenoid-merged", "catenoid-gamma1", "catenoid-gamma2",
                             "catenoid-Ma", "catenoid-Mb"}) {
        auto j = builtin_scene(name);
        REQUIRE(j.has_value());
        SceneFile s = parse_scene(*j);
        CHECK(s.name == name);
        CHECK_NOTHROW(make_curve(s, 0));
    }
    CHECK_FALSE(builtin_scene("no-such-scene").has_value());

    SceneFile merged = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(merged);
    REQUIRE(model.type.has_value());
    CHECK(*model.type == SurfaceType::First);
    CHECK(model.curvatures(1.0, 1.0).K == Catch::Approx(-0.7335177).margin(5e-6));
}

TEST_CASE("scene round trip through JSON") {
    SceneFile s = parse_scene(*builtin_scene("catenoid-merged"));
    SceneFile r = parse_scene(scene_to_json(s));
    CHECK(r.name == s.name);
    CHECK(r.space == s.space);
    CHECK(r.canonical == s.canonical);
    CHECK(r.variable == s.variable);
    CHECK(r.domain.t1.a == s.domain.t1.a);
    CHECK(r.domain.t2.b == s.domain.t2.b);
    CHECK(r.grid1 == s.grid1);
    REQUIRE(r.curves.size() == s.curves.size());
    for (size_t i = 0; i < s.curves.size(); ++i) {
        CHECK(r.curves[i].g == s.curves[i].g);
        CHECK(r.curves[i].h == s.curves[i].h);
        CHECK(r.curves[i].omega == s.curves[i].omega);
    }
}

TEST_CASE("OBJ mesh topology") {
    SceneFile s = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(s);
    std::string obj = surface_to_obj(model.surface, 4, 5, Projection::Drop3);
    CHECK(count_prefix(obj, "v ") == 4 * 5);
    CHECK(count_prefix(obj, "f ") == 3 * 4 * 2);
    // faces reference valid 1-based indices only
    CHECK(obj.find("f 0") == std::string::npos);
    CHECK(obj.find(" 21\n") == std::string::npos);
}

TEST_CASE("CSV tables have one row per sample plus a header") {
    SceneFile s = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(s);
    std::string csv = surface_to_csv(model, 3, 4);
    CHECK(count_lines(csv) == 3 * 4 + 1);
    CHECK(csv.rfind("t1,t2,x1,x2,x3,x4,F,K,kappa,type\n", 0) == 0);
    CHECK(csv.find(",first\n") != std::string::npos);

    NullCurve c = make_curve(s, 0);
    std::string curve = curve_to_csv(c, 2);
    CHECK(count_lines(curve) == 3);
    CHECK(curve.rfind("t,x1,x2,x3,x4,dx1,dx2,dx3,dx4,accel_norm2,s\n", 0) == 0);
}

TEST_CASE("writers are deterministic") {
    SceneFile s = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(s);
    CHECK(surface_to_obj(model.surface, 6, 6, Projection::Drop3) ==
          surface_to_obj(model.surface, 6, 6, Projection::Drop3));
    CHECK(surface_to_csv(model, 5, 5) == surface_to_csv(model, 5, 5));
    CHECK(surface_to_json(model, 4, 4).dump(2) == surface_to_json(model, 4, 4).dump(2));
    NullCurve c = make_curve(s, 0);
    CHECK(curve_to_csv(c, 16) == curve_to_csv(c, 16));
}

TEST_CASE("motion specs") {
    MotionSpec boost = parse_motion(json::parse(R"json({
        "space": "R31",
        "matrix": [[1.2551690056309431, 0.7585837018395335, 0],
                   [0.7585837018395335, 1.2551690056309431, 0],
                   [0, 0, 1]],
        "translation": [1, 2, 3]
    })json"));
    REQUIRE(boost.r31.has_value());
    CHECK(boost.r31->proper);
    CHECK(boost.r31->orthochronous);

    CHECK_THROWS_AS(parse_motion(json::parse(R"json({
        "space": "R31",
        "matrix": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
    })json")),
                    SceneError);
    CHECK_THROWS_AS(parse_motion(json::parse(R"json({"space": "R9", "matrix": []})json")),
                    SceneError);
}

TEST_CASE("scene-level split and merge round trip") {
    SceneFile s = parse_scene(*builtin_scene("catenoid-merged"));
    auto [mg, mh] = split_scene(s);
    CHECK(mg.space == Space::R31);
    CHECK(mg.name == "catenoid-merged-g");
    CHECK(mh.name == "catenoid-merged-h");
    CHECK(*mg.curves[0].g == "exp(t)");
    CHECK(*mh.curves[1].g == "exp(-t)");
    CHECK_FALSE(mg.curves[0].h.has_value());

    SceneFile merged = merge_scenes(mg, mh, 1, 1);
    CHECK(merged.space == Space::R42);
    REQUIRE(merged.curves.size() == 2);
    // the data survives the round trip (up to printing)
    for (int i = 0; i < 2; ++i) {
        Expression gback = Expression::parse(*merged.curves[i].g, "t");
        Expression gorig = Expression::parse(*s.curves[i].g, "t");
        Expression hback = Expression::parse(*merged.curves[i].h, "t");
        Expression horig = Expression::parse(*s.curves[i].h, "t");
        for (double t : {0.3, 1.0, 1.8}) {
            CHECK(gback.eval_value(t) == gorig.eval_value(t));
            CHECK(hback.eval_value(t) == horig.eval_value(t));
        }
    }

    // splitting a non-canonical or R31 scene is rejected
    CHECK_THROWS_AS(split_scene(mg), SceneError);
}
