// lwgeo: scene files in, meshes / tables / verification reports out.
//
// Subcommands:
//   curve    CSV of t, alpha, alpha', alpha''^2, s for each curve of a scene
//   surface  OBJ mesh + CSV table (t1, t2, x, F, K, kappa, type)
//   split    canonical R42 surface scene -> pair of R31 scenes
//   merge    pair of R31 scenes -> canonical R42 surface scene
//   verify   JSON verification report
//
// Exit codes: 0 success, 1 verification failure, 2 usage or scene error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lw/mesh_io.hpp"
#include "lw/scene.hpp"
#include "lw/verify.hpp"

namespace fs = std::filesystem;

namespace {

// --scene accepts a file path or the name of a built-in scene
lw::json load_scene_json(const std::string& ref) {
    if (fs::exists(ref)) {
        std::ifstream in(ref);
        if (!in) throw lw::SceneError("/", "cannot open scene file: " + ref);
        try {
            return lw::json::parse(in);
        } catch (const lw::json::parse_error& e) {
            throw lw::SceneError("/", std::string("invalid JSON: ") + e.what());
        }
    }
    if (auto builtin = lw::builtin_scene(ref)) return *builtin;
    throw lw::SceneError("/", "no such scene file or built-in scene: " + ref);
}

std::pair<int, int> parse_grid(const std::string& txt) {
    size_t x = txt.find('x');
    try {
        int n = std::stoi(txt.substr(0, x));
        int m = x == std::string::npos ? n : std::stoi(txt.substr(x + 1));
        if (n < 2 || m < 2) throw lw::SceneError("/grid", "resolution must be >= 2");
        return {n, m};
    } catch (const std::invalid_argument&) {
        throw lw::SceneError("/grid", "expected N or NxM, got '" + txt + "'");
    }
}

void write_file(const std::string& out_dir, const std::string& name, const std::string& body) {
    fs::create_directories(out_dir);
    fs::path p = fs::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << body;
    std::cerr << "wrote " << p.string() << "\n";
}

std::string scene_stem(const lw::SceneFile& s) { return s.name.empty() ? "scene" : s.name; }

struct CommonArgs {
    std::string scene_ref;
    std::string out_dir;
    std::string grid;
    std::string projection = "drop3";
    std::string format;
    double tolerance = 0.0;
    uint64_t seed = 20260823;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool scene_required = true,
                bool add_scene = true) {
    if (add_scene) {
        auto* opt =
            cmd->add_option("--scene", a.scene_ref, "scene file path or built-in scene name");
        if (scene_required) opt->required();
    }
    cmd->add_option("--out", a.out_dir, "output directory (default: stdout)");
    cmd->add_option("--grid", a.grid, "sampling resolution N or NxM (overrides the scene)");
    cmd->add_option("--projection", a.projection, "4D->3D projection for OBJ output")
        ->check(CLI::IsMember({"drop1", "drop2", "drop3", "drop4"}));
    cmd->add_option("--tolerance", a.tolerance, "tolerance override for verification checks");
    cmd->add_option("--seed", a.seed, "seed for randomized suites");
    cmd->add_option("--format", a.format, "stdout format")
        ->check(CLI::IsMember({"obj", "csv", "json"}));
}

int cmd_curve(const CommonArgs& a) {
    lw::SceneFile scene = lw::parse_scene(load_scene_json(a.scene_ref));
    int n = scene.grid1;
    if (!a.grid.empty()) n = parse_grid(a.grid).first;
    for (size_t i = 0; i < scene.curves.size(); ++i) {
        lw::NullCurve c = lw::make_curve(scene, i);
        std::string csv = lw::curve_to_csv(c, n);
        if (a.out_dir.empty())
            std::cout << csv;
        else
            write_file(a.out_dir, scene_stem(scene) + "-curve" + std::to_string(i + 1) + ".csv",
                       csv);
    }
    return 0;
}

int cmd_surface(const CommonArgs& a) {
    lw::SceneFile scene = lw::parse_scene(load_scene_json(a.scene_ref));
    int n1 = scene.grid1, n2 = scene.grid2;
    if (!a.grid.empty()) std::tie(n1, n2) = parse_grid(a.grid);
    lw::SurfaceModel model = lw::make_surface(scene);
    lw::Projection proj = lw::parse_projection(a.projection);
    if (a.out_dir.empty()) {
        std::string format = a.format.empty() ? "obj" : a.format;
        if (format == "obj") std::cout << lw::surface_to_obj(model.surface, n1, n2, proj);
        else if (format == "csv") std::cout << lw::surface_to_csv(model, n1, n2);
        else std::cout << lw::surface_to_json(model, n1, n2).dump(2) << "\n";
        return 0;
    }
    std::string stem = scene_stem(scene);
    write_file(a.out_dir, stem + ".obj", lw::surface_to_obj(model.surface, n1, n2, proj));
    write_file(a.out_dir, stem + ".csv", lw::surface_to_csv(model, n1, n2));
    if (a.format == "json")
        write_file(a.out_dir, stem + ".json", lw::surface_to_json(model, n1, n2).dump(2) + "\n");
    return 0;
}

int cmd_split(const CommonArgs& a) {
    lw::SceneFile scene = lw::parse_scene(load_scene_json(a.scene_ref));
    auto [mg, mh] = lw::split_scene(scene);
    // validate that both factor scenes actually build
    lw::make_surface(mg);
    lw::make_surface(mh);
    lw::json report;
    report["m_g"] = lw::scene_to_json(mg);
    report["m_h"] = lw::scene_to_json(mh);
    if (a.out_dir.empty()) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    write_file(a.out_dir, mg.name + ".json", lw::scene_to_json(mg).dump(2) + "\n");
    write_file(a.out_dir, mh.name + ".json", lw::scene_to_json(mh).dump(2) + "\n");
    return 0;
}

int cmd_merge(const std::vector<std::string>& refs, const CommonArgs& a) {
    lw::SceneFile mg = lw::parse_scene(load_scene_json(refs[0]));
    lw::SceneFile mh = lw::parse_scene(load_scene_json(refs[1]));
    lw::SceneFile merged = lw::merge_scenes(mg, mh, 1, 1);
    lw::make_surface(merged);  // validates the combined data
    std::string body = lw::scene_to_json(merged).dump(2) + "\n";
    if (a.out_dir.empty())
        std::cout << body;
    else
        write_file(a.out_dir, merged.name + ".json", body);
    return 0;
}

int cmd_verify(const CommonArgs& a, const std::string& corpus) {
    lw::VerifyOptions opt;
    opt.seed = a.seed;
    opt.tolerance_override = a.tolerance;
    std::vector<lw::CheckResult> checks;
    if (!a.scene_ref.empty())
        checks = lw::check_scene(lw::parse_scene(load_scene_json(a.scene_ref)), opt);
    else if (corpus == "none")
        checks = {};
    else if (corpus == "paper-example")
        checks = lw::run_all_checks(opt);
    else
        throw lw::SceneError("/corpus", "unknown corpus '" + corpus + "'");
    lw::json report = lw::report_to_json(checks);
    std::string body = report.dump(2) + "\n";
    if (a.out_dir.empty())
        std::cout << body;
    else
        write_file(a.out_dir, "report.json", body);
    return report["failed"].get<int>() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"null curves and minimal Lorentz surfaces from Weierstrass-type data"};
    app.require_subcommand(1);

    CommonArgs curve_a, surface_a, split_a, merge_a, verify_a;
    std::vector<std::string> merge_refs;
    std::string corpus = "paper-example";

    add_common(app.add_subcommand("curve", "sample a scene's null curves to CSV"), curve_a);
    add_common(app.add_subcommand("surface", "export a surface mesh and table"), surface_a);
    add_common(app.add_subcommand("split", "split a canonical R42 surface scene"), split_a);
    auto* merge = app.add_subcommand("merge", "merge two R31 surface scenes");
    merge->add_option("--scene", merge_refs, "the two R31 scenes (g-factor first)")
        ->expected(2)
        ->required();
    add_common(merge, merge_a, false, false);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, verify_a, false);
    verify->add_option("--corpus", corpus, "'paper-example' (default) or 'none'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("curve")) return cmd_curve(curve_a);
        if (app.got_subcommand("surface")) return cmd_surface(surface_a);
        if (app.got_subcommand("split")) return cmd_split(split_a);
        if (app.got_subcommand("merge")) return cmd_merge(merge_refs, merge_a);
        if (app.got_subcommand("verify")) return cmd_verify(verify_a, corpus);
    } catch (const lw::SceneError& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return 2;
    } catch (const lw::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const lw::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
