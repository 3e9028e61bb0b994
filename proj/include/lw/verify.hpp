#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lw/correspondence.hpp"
#include "lw/mesh_io.hpp"
#include "lw/scene.hpp"

namespace lw {

/// One verified identity: grid size, worst absolute and relative error,
/// the tolerance it was held to, and the verdict.
struct CheckResult {
    std::string name;
    int points = 0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyOptions {
    uint64_t seed = 20260823;
    double tolerance_override = 0.0;  // > 0 replaces every check's tolerance
};

namespace detail {

struct ErrAccum {
    double max_abs = 0.0;
    double max_rel = 0.0;
    int points = 0;

    void add(double got, double want) {
        double abs = std::fabs(got - want);
        max_abs = std::max(max_abs, abs);
        double scale = std::fabs(want);
        max_rel = std::max(max_rel, scale > 0.0 ? abs / scale : (abs > 0.0 ? HUGE_VAL : 0.0));
        ++points;
    }
    // error relative to 1 + |want|, for quantities that pass through zero
    void add_scaled(double got, double want) {
        double abs = std::fabs(got - want);
        max_abs = std::max(max_abs, abs);
        max_rel = std::max(max_rel, abs / (1.0 + std::fabs(want)));
        ++points;
    }
};

inline CheckResult finish(const std::string& name, const ErrAccum& e, double tol, bool use_rel,
                          const VerifyOptions& opt, const std::string& note = {}) {
    CheckResult r;
    r.name = name;
    r.points = e.points;
    r.max_abs_err = e.max_abs;
    r.max_rel_err = e.max_rel;
    r.tolerance = opt.tolerance_override > 0.0 ? opt.tolerance_override : tol;
    r.pass = (use_rel ? e.max_rel : e.max_abs) <= r.tolerance;
    r.note = note;
    return r;
}

/// Randomized Weierstrass data: f bounded away from 0 on [-1, 1], g and h
/// with derivative bounded away from 0 there.
struct RandomData {
    std::mt19937_64 rng;
    explicit RandomData(uint64_t seed) : rng(seed) {}

    double uni(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    Expression positive_f(const std::string& var = "t") {
        // a + b t + c t^2 with a in [1, 2] and |b|, |c| <= 0.2: >= 0.6 on [-1, 1]
        std::string src =
            fmt(uni(1.0, 2.0)) + "+" + fmt(uni(-0.2, 0.2)) + "*t+" + fmt(uni(-0.2, 0.2)) + "*t^2";
        return Expression::parse(src, var);
    }

    Expression monotone(const std::string& var = "t") {
        // a t + b sin(t) + c with |a| in [1, 2] and |b| <= 0.5: |g'| >= 0.5
        double a = uni(1.0, 2.0) * (uni(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        std::string src = fmt(a) + "*t+" + fmt(uni(-0.5, 0.5)) + "*sin(t)+" + fmt(uni(-1.0, 1.0));
        return Expression::parse(src, var);
    }

    SpinMatrix unit_det_spin() {
        for (;;) {
            SpinMatrix B{uni(-2.0, 2.0), uni(-2.0, 2.0), uni(-2.0, 2.0), uni(-2.0, 2.0)};
            double d = B.det();
            if (std::fabs(d) < 0.3) continue;
            double s = 1.0 / std::sqrt(std::fabs(d));
            return {B.a * s, B.b * s, B.c * s, B.d * s};
        }
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

/// The surface corpus: the worked catenoid example in both representations,
/// one surface of each type, and R31 companions.
inline std::vector<SceneFile> verification_corpus() {
    std::vector<SceneFile> corpus;
    corpus.push_back(parse_scene(*builtin_scene("catenoid-merged")));
    corpus.push_back(parse_scene(json::parse(R"json({
        "name": "catenoid-general", "space": "R42", "kind": "general", "variable": "t",
        "curves": [ {"f": "exp(-t)/2", "g": "exp(t)", "h": "exp(t)"},
                    {"f": "1/2", "g": "-exp(t)", "h": "exp(-t)"} ],
        "domain": {"t1": [0.2, 2.0], "t2": [0.2, 2.0]}, "grid": [20, 20]
    })json")));
    corpus.push_back(parse_scene(json::parse(R"json({
        "name": "second-type", "space": "R42", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "t", "h": "-t", "omega": 1}, {"g": "t+3", "h": "-t+3", "omega": 1} ],
        "domain": {"t1": [0.0, 1.0], "t2": [0.0, 1.0]}, "grid": [20, 20]
    })json")));
    corpus.push_back(parse_scene(json::parse(R"json({
        "name": "third-type", "space": "R42", "kind": "canonical", "variable": "t",
        "curves": [ {"g": "t", "h": "t", "omega": 1}, {"g": "t+3", "h": "-t+3", "omega": 1} ],
        "domain": {"t1": [0.0, 1.0], "t2": [0.0, 1.0]}, "grid": [20, 20]
    })json")));
    corpus.push_back(parse_scene(*builtin_scene("catenoid-Ma")));
    corpus.push_back(parse_scene(*builtin_scene("catenoid-Mb")));
    corpus.push_back(parse_scene(json::parse(R"json({
        "name": "r31-general", "space": "R31", "kind": "general", "variable": "t",
        "curves": [ {"f": "1+t^2/4", "g": "t"}, {"f": "1", "g": "t+3"} ],
        "domain": {"t1": [0.0, 1.0], "t2": [0.0, 1.0]}, "grid": [20, 20]
    })json")));
    return corpus;
}

// ---------------------------------------------------------------------------
// Suite 1: the worked catenoid example
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_catenoid(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    SceneFile scene = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(scene);

    auto closed = [](double u, double v) {
        return std::array<double, 4>{0.5 * std::sinh(u), 0.5 * (std::cosh(u) - v),
                                     0.5 * std::sinh(v), 0.5 * (u - std::cosh(v))};
    };
    auto g1 = scene.domain.t1.grid(20);
    auto g2 = scene.domain.t2.grid(20);
    // additive constant fixed at the first grid point
    std::array<double, 4> off{};
    {
        auto x = model.surface.evaluate(g1[0], g2[0]);
        auto c = closed(g1[0], g2[0]);
        for (int k = 0; k < 4; ++k) off[k] = x[k] - c[k];
    }
    std::vector<std::array<double, 4>> pts = sample_surface(model.surface, 20, 20);
    detail::ErrAccum ex;
    for (size_t i = 0; i < g1.size(); ++i)
        for (size_t j = 0; j < g2.size(); ++j) {
            auto c = closed(g1[i], g2[j]);
            const auto& x = pts[i * g2.size() + j];
            for (int k = 0; k < 4; ++k) ex.add_scaled(x[k], c[k] + off[k]);
        }
    out.push_back(detail::finish("catenoid-x-closed-form", ex, 1e-8, false, opt,
                                 "x = (sinh t1, cosh t1 - t2, sinh t2, t1 - cosh t2)/2 up to a "
                                 "constant vector"));

    detail::ErrAccum ek;
    for (double u : g1)
        for (double v : g2) {
            double want = -4.0 * std::cosh(u) * std::cosh(v) /
                          std::pow(std::sinh(u) + std::sinh(v), 3.0);
            ek.add(model.curvatures(u, v).K, want);
        }
    out.push_back(detail::finish("catenoid-K-closed-form", ek, 1e-6, true, opt,
                                 "K = -4 cosh t1 cosh t2 / (sinh t1 + sinh t2)^3"));

    detail::ErrAccum ef;
    ef.add(first_form_F(model.surface, 1.0, 1.0), -2.0 * std::sinh(1.0) / 4.0);
    out.push_back(detail::finish("catenoid-F-at-1-1", ef, 1e-10, false, opt));

    SurfaceModel ma = make_surface(parse_scene(*builtin_scene("catenoid-Ma")));
    detail::ErrAccum ema;
    ema.add(first_form_F(ma.surface, 1.0, 1.0), -0.5);
    ema.add(ma.curvatures(1.0, 1.0).K, -1.0);
    out.push_back(detail::finish("Ma-F-and-K-values", ema, 1e-10, false, opt,
                                 "F(1,1) = -1/2, K = -4/(cosh(t1-t2)+1)^2 = -1 on the diagonal"));

    SurfaceModel mb = make_surface(parse_scene(*builtin_scene("catenoid-Mb")));
    detail::ErrAccum emb;
    emb.add(mb.curvatures(1.0, 1.0).K, -16.0 / std::pow(M_E - 1.0 / M_E, 4.0));
    out.push_back(detail::finish("Mb-K-at-1-1", emb, 1e-10, false, opt));
    return out;
}

// ---------------------------------------------------------------------------
// Suite 2: kappa adjudication on the worked example
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_example_kappa(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    SceneFile merged = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(merged);
    const CanonicalSurfaceDataR42& canon = *model.canonical_r42_data;

    GeneralSurfaceDataR42 general{
        Expression::parse("exp(-t)/2", "t"), Expression::parse("exp(t)", "t"),
        Expression::parse("exp(t)", "t"),    Expression::parse("1/2", "t"),
        Expression::parse("-exp(t)", "t"),   Expression::parse("exp(-t)", "t"),
        merged.domain};
    CanonicalSurfaceDataR31 m_a{canon.g1, canon.g2, 1, 1, merged.domain};
    CanonicalSurfaceDataR31 m_b{canon.h1, canon.h2, 1, 1, merged.domain};

    detail::ErrAccum agree;
    auto grid1 = merged.domain.t1.grid(5);
    auto grid2 = merged.domain.t2.grid(5);
    for (double u : grid1)
        for (double v : grid2) {
            CurvaturePair direct = curvatures_r42(general, u, v);
            CurvaturePair canonical = curvatures_r42_canonical(canon, u, v);
            double K_g = curvature_r31_canonical(m_a, u, v).K;
            double K_h = curvature_r31_canonical(m_b, u, v).K;
            int eta = canonical.K >= 0.0 ? 1 : -1;
            CurvaturePair related = curvature_relation(K_g, K_h, SurfaceType::First, eta);
            agree.add(canonical.kappa, direct.kappa);
            agree.add(related.kappa, direct.kappa);
            agree.add(related.K, direct.K);
        }
    double kappa11 = curvatures_r42(general, 1.0, 1.0).kappa;
    out.push_back(detail::finish(
        "kappa-three-formula-agreement", agree, 1e-6, true, opt,
        "general, canonical and factor-relation formulas agree; kappa(1,1) = " + fmt(kappa11)));

    // The worked example also states a closed form for kappa.  It does not
    // match the three mutually consistent formulas; this check passes when
    // the disagreement is present, documenting it instead of adopting
    // either side.
    double closed11 = (4.0 - 4.0 * std::cosh(1.0) * std::cosh(1.0)) /
                      std::pow(std::sinh(1.0) + std::sinh(1.0), 3.0);
    double rel = std::fabs(closed11 - kappa11) / std::fabs(kappa11);
    CheckResult flag;
    flag.name = "example-kappa-closed-form";
    flag.points = 1;
    flag.max_abs_err = std::fabs(closed11 - kappa11);
    flag.max_rel_err = rel;
    flag.tolerance = 1e-2;  // disagreement threshold
    flag.pass = rel > flag.tolerance;
    flag.note = "paper-internal inconsistency: the source's closed form gives kappa(1,1) = " +
                fmt(closed11) + " while its own generating data yields " + fmt(kappa11) +
                " under three mutually consistent formulas; the closed form is flagged, not "
                "adopted";
    out.push_back(flag);
    return out;
}

// ---------------------------------------------------------------------------
// Suite 3: null condition on randomized data
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_null_condition(const VerifyOptions& opt) {
    detail::RandomData rnd(opt.seed);
    Interval iv{-1.0, 1.0};
    detail::ErrAccum e42, e31;
    for (int k = 0; k < 50; ++k) {
        NullCurve c42 = weier_r42({rnd.positive_f(), rnd.monotone(), rnd.monotone()}, iv);
        NullCurve c31 = weier_r31({rnd.positive_f(), rnd.monotone()}, iv);
        for (double t : iv.grid(200)) {
            auto d4 = c42.derivative(t);
            e42.add_scaled(dot_n(Space::R42, d4, d4), 0.0);
            auto d3 = c31.derivative(t);
            e31.add_scaled(dot_n(Space::R31, d3, d3), 0.0);
        }
    }
    return {detail::finish("null-condition-R42", e42, 1e-10, false, opt,
                           "dot(alpha', alpha') = 0 for 50 random data sets"),
            detail::finish("null-condition-R31", e31, 1e-10, false, opt,
                           "dot(alpha', alpha') = 0 for 50 random data sets")};
}

// ---------------------------------------------------------------------------
// Suite 4: round trips
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_round_trips(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    detail::RandomData rnd(opt.seed + 1);
    Interval iv{-1.0, 1.0};
    detail::ErrAccum e42, e31;
    for (int k = 0; k < 10; ++k) {
        WeierstrassR42 d42{rnd.positive_f(), rnd.monotone(), rnd.monotone()};
        auto back42 = weier_data_r42(weier_r42(d42, iv));
        WeierstrassR31 d31{rnd.positive_f(), rnd.monotone()};
        auto back31 = weier_data_r31(weier_r31(d31, iv));
        for (double t : iv.grid(64)) {
            e42.add_scaled(back42.f(t).v, d42.f.eval_value(t));
            e42.add_scaled(back42.g(t).v, d42.g.eval_value(t));
            e42.add_scaled(back42.h(t).v, d42.h.eval_value(t));
            e31.add_scaled(back31.f(t).v, d31.f.eval_value(t));
            e31.add_scaled(back31.g(t).v, d31.g.eval_value(t));
        }
    }
    out.push_back(detail::finish("weier-data-round-trip-R42", e42, 1e-10, true, opt));
    out.push_back(detail::finish("weier-data-round-trip-R31", e31, 1e-10, true, opt));

    SceneFile merged = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(merged);
    const CanonicalSurfaceDataR42& data = *model.canonical_r42_data;
    SurfacePair pair = split_surface(data);
    CanonicalSurfaceDataR42 again = merge_surfaces(pair, data.omega1, data.omega2);
    SurfacePair pair2 = split_surface(again);
    bool ast_ok = again.g1.structurally_equal(data.g1) && again.h1.structurally_equal(data.h1) &&
                  again.g2.structurally_equal(data.g2) && again.h2.structurally_equal(data.h2) &&
                  pair2.m_g.g1.structurally_equal(pair.m_g.g1) &&
                  pair2.m_g.g2.structurally_equal(pair.m_g.g2) &&
                  pair2.m_h.g1.structurally_equal(pair.m_h.g1) &&
                  pair2.m_h.g2.structurally_equal(pair.m_h.g2);
    CheckResult r;
    r.name = "split-merge-round-trip";
    r.points = 8;
    r.tolerance = 0.0;
    r.pass = ast_ok;
    r.note = "merge(split(M)) and split(merge(pair)) are the identity on expression data "
             "(exact AST equality)";
    out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Suite 5: natural parameter
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_natural_param(const VerifyOptions& opt) {
    detail::RandomData rnd(opt.seed + 2);
    Interval iv{-1.0, 1.0};
    detail::ErrAccum e42, e31;
    for (int k = 0; k < 20; ++k) {
        NullCurve c42 = weier_r42({rnd.positive_f(), rnd.monotone(), rnd.monotone()}, iv);
        NullCurve n42 = reparametrize_natural(c42, 0.0);
        for (double s : n42.interval.grid(200)) e42.add(std::fabs(accel_norm2(n42, s)), 1.0);
        NullCurve c31 = weier_r31({rnd.positive_f(), rnd.monotone()}, iv);
        NullCurve n31 = reparametrize_natural(c31, 0.0);
        for (double s : n31.interval.grid(200)) e31.add(std::fabs(accel_norm2(n31, s)), 1.0);
    }
    return {detail::finish("natural-parameter-R42", e42, 1e-6, false, opt,
                           "|alpha''^2| = 1 after reparametrization, 20 random curves"),
            detail::finish("natural-parameter-R31", e31, 1e-6, false, opt,
                           "|alpha''^2| = 1 after reparametrization, 20 random curves")};
}

// ---------------------------------------------------------------------------
// Suite 6: spinor map
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_spinor(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    detail::RandomData rnd(opt.seed + 3);

    std::vector<SpinMatrix> sample;
    for (int k = 0; k < 100; ++k) sample.push_back(rnd.unit_det_spin());

    detail::ErrAccum mult;
    for (size_t k = 0; k + 1 < sample.size(); ++k) {
        const SpinMatrix &B1 = sample[k], &B2 = sample[k + 1];
        Mat3 lhs = spinor_to_so21(B1 * B2).A;
        Mat3 rhs = spinor_to_so21(B1).A * spinor_to_so21(B2).A;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mult.add_scaled(lhs(i, j), rhs(i, j));
    }
    out.push_back(detail::finish("spinor-multiplicativity", mult, 1e-10, false, opt));

    detail::ErrAccum metric;
    for (const auto& B : sample) {
        Mat3 A = spinor_to_so21(B).A;
        Vec3L v{{rnd.uni(-1, 1), rnd.uni(-1, 1), rnd.uni(-1, 1)}};
        Vec3L w{{rnd.uni(-1, 1), rnd.uni(-1, 1), rnd.uni(-1, 1)}};
        auto av = A.apply(v.c), aw = A.apply(w.c);
        metric.add_scaled(dot3(Vec3L{av}, Vec3L{aw}), dot3(v, w));
    }
    out.push_back(detail::finish("spinor-metric-preservation", metric, 1e-9, false, opt));

    // kernel: +-I map to I exactly; no other sampled matrix comes close
    auto dist_to_id = [](const Mat3& A) {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d = std::max(d, std::fabs(A(i, j) - (i == j ? 1.0 : 0.0)));
        return d;
    };
    double id_defect = std::max(dist_to_id(spinor_to_so21(SpinMatrix{1, 0, 0, 1}).A),
                                dist_to_id(spinor_to_so21(SpinMatrix{-1, 0, 0, -1}).A));
    double min_other = HUGE_VAL;
    for (const auto& B : sample) {
        double to_pm_i = std::min(
            std::max({std::fabs(B.a - 1), std::fabs(B.b), std::fabs(B.c), std::fabs(B.d - 1)}),
            std::max({std::fabs(B.a + 1), std::fabs(B.b), std::fabs(B.c), std::fabs(B.d + 1)}));
        if (to_pm_i < 1e-6) continue;
        min_other = std::min(min_other, dist_to_id(spinor_to_so21(B).A));
    }
    CheckResult kernel;
    kernel.name = "spinor-kernel";
    kernel.points = 102;
    kernel.max_abs_err = id_defect;
    kernel.tolerance = 1e-12;
    kernel.pass = id_defect <= 1e-12 && min_other > 1e-6;
    kernel.note = "+-I map to the identity; the nearest other sampled image is " + fmt(min_other) +
                  " away from it";
    out.push_back(kernel);

    // Mobius action on data vs the motion acting on the curve itself
    Expression f = Expression::parse("1+t^2/4", "t");
    Expression g = Expression::parse("sin(t)/4", "t");
    Interval iv{-1.0, 1.0};
    NullCurve base = weier_r31({f, g}, iv);
    detail::ErrAccum mob;
    int used = 0;
    for (const auto& B : sample) {
        // keep the denominator c g + d away from zero on the interval
        double min_den = HUGE_VAL;
        for (double t : iv.grid(64))
            min_den = std::min(min_den, std::fabs(B.c * g.eval_value(t) + B.d));
        if (min_den < 0.2) continue;
        MotionKind kind;
        if (B.det() > 0.0)
            kind = (used % 2 == 0) ? MotionKind::ProperOrthochronous
                                   : MotionKind::NonProperNonOrthochronous;
        else
            kind = (used % 2 == 0) ? MotionKind::ProperNonOrthochronous
                                   : MotionKind::NonProperOrthochronous;
        ++used;
        auto [f_hat, g_hat] = mobius_on_weierstrass(f, g, B, kind);
        NullCurve via_data = weier_r31({f_hat, g_hat}, iv);
        NullCurve via_motion = apply_motion_to_curve(base, motion_for_mobius(B, kind));
        for (double t : iv.grid(20)) {
            auto a = via_data.derivative(t);
            auto b = via_motion.derivative(t);
            for (int i = 0; i < 3; ++i) mob.add_scaled(a[i], b[i]);
        }
    }
    out.push_back(detail::finish("mobius-curve-consistency", mob, 1e-8, true, opt,
                                 std::to_string(used) + " of 100 matrices usable (denominator "
                                 "bounded away from zero); all four motion kinds exercised"));
    return out;
}

// ---------------------------------------------------------------------------
// Suite 7: curvature oracle
// ---------------------------------------------------------------------------

namespace detail {

inline Rect interior(const Rect& d, double margin = 0.05) {
    double m1 = margin * (d.t1.b - d.t1.a);
    double m2 = margin * (d.t2.b - d.t2.a);
    return Rect{Interval{d.t1.a + m1, d.t1.b - m1}, Interval{d.t2.a + m2, d.t2.b - m2}};
}

}  // namespace detail

inline CheckResult check_oracle_scene(const SceneFile& scene, const VerifyOptions& opt) {
    SurfaceModel model = make_surface(scene);
    Rect in = detail::interior(scene.domain);
    detail::ErrAccum e;
    bool kappa_zero = true;
    for (double u : in.t1.grid(10))
        for (double v : in.t2.grid(10)) {
            CurvaturePair c = model.curvatures(u, v);
            e.add_scaled(c.K, gauss_curvature_oracle(model.surface, u, v));
            if (scene.space == Space::R31 && c.kappa != 0.0) kappa_zero = false;
        }
    std::string note = "formula K vs finite-difference -(1/F) d2 ln|F| / dt1 dt2";
    if (scene.space == Space::R31)
        note += kappa_zero ? "; kappa = 0 exactly" : "; KAPPA NONZERO IN R31";
    CheckResult r = detail::finish("oracle-" + scene.name, e, 1e-4, true, opt, note);
    r.pass = r.pass && kappa_zero;
    return r;
}

inline std::vector<CheckResult> check_curvature_oracle(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    for (const SceneFile& scene : verification_corpus())
        out.push_back(check_oracle_scene(scene, opt));
    return out;
}

// ---------------------------------------------------------------------------
// Suite 8: correspondence (factor-pair relations)
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_correspondence_scene(const SceneFile& scene,
                                                           const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    {
        SurfaceModel model = make_surface(scene);
        const CanonicalSurfaceDataR42& data = *model.canonical_r42_data;
        SurfaceType type = *model.type;
        SurfacePair pair = split_surface(data);

        Rect in = detail::interior(scene.domain);
        Interval i1 = in.t1, i2 = in.t2;
        detail::ErrAccum rel, area, link;
        bool prop23 = true;
        for (double u : i1.grid(5))
            for (double v : i2.grid(5)) {
                CurvaturePair direct = curvatures_r42_canonical(data, u, v);
                double K_g = curvature_r31_canonical(pair.m_g, u, v).K;
                double K_h = curvature_r31_canonical(pair.m_h, u, v).K;
                double target = type == SurfaceType::Third ? direct.kappa : direct.K;
                int eta = target >= 0.0 ? 1 : -1;
                CurvaturePair related = curvature_relation(K_g, K_h, type, eta);
                rel.add(related.K, direct.K);
                rel.add(related.kappa, direct.kappa);

                double F = first_form_F_canonical_r42(data, u, v);
                area.add(std::fabs(F),
                         std::sqrt(abs_F_r31(pair.m_g, u, v) * abs_F_r31(pair.m_h, u, v)));

                link.add(sqrt_abs_K_r31(pair.m_g, u, v), std::sqrt(std::fabs(K_g)));

                double discr = direct.K * direct.K - direct.kappa * direct.kappa;
                bool want_pos = type != SurfaceType::Third;
                if ((discr > 0.0) != want_pos || discr == 0.0) prop23 = false;
            }
        CheckResult r = detail::finish("curvature-relation-" + scene.name, rel, 1e-6, true, opt,
                                       std::string("factor relation, ") + to_string(type) +
                                           " type; sign of K^2 - kappa^2 " +
                                           (prop23 ? "matches" : "CONTRADICTS") + " the type");
        r.pass = r.pass && prop23;
        out.push_back(r);
        out.push_back(detail::finish("area-relation-" + scene.name, area, 1e-8, false, opt,
                                     "|F| = sqrt|F_g F_h|"));
        out.push_back(detail::finish("factor-curvature-link-" + scene.name, link, 1e-8, true, opt,
                                     "sqrt|K_g| = 4|g1'g2'|/(g1-g2)^2"));
    }
    return out;
}

inline std::vector<CheckResult> check_correspondence(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    for (const SceneFile& scene : verification_corpus()) {
        if (scene.space != Space::R42 || !scene.canonical) continue;
        for (auto& r : check_correspondence_scene(scene, opt)) out.push_back(std::move(r));
    }
    return out;
}

/// Scene-level verification used by the CLI: null condition of the
/// generating curves, oracle agreement for surface scenes, and the
/// factor-pair relations for canonical R42 surfaces.
inline std::vector<CheckResult> check_scene(const SceneFile& scene, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    detail::ErrAccum null_e;
    for (size_t i = 0; i < scene.curves.size(); ++i) {
        NullCurve c = make_curve(scene, i);
        for (double t : c.interval.grid(200)) {
            auto d = c.derivative(t);
            null_e.add_scaled(dot_n(c.space, d, d), 0.0);
        }
    }
    out.push_back(detail::finish("null-condition", null_e, 1e-10, false, opt));
    if (scene.curves.size() == 2) {
        out.push_back(check_oracle_scene(scene, opt));
        if (scene.space == Space::R42 && scene.canonical)
            for (auto& r : check_correspondence_scene(scene, opt)) out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suite 9: motion invariance
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_motion_invariance(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    SceneFile scene = parse_scene(*builtin_scene("catenoid-merged"));
    SurfaceModel model = make_surface(scene);
    const CanonicalSurfaceDataR42& data = *model.canonical_r42_data;
    NullCurve c1 = make_curve(scene, 0);
    NullCurve c2 = make_curve(scene, 1);

    double m1 = 0.05 * (scene.domain.t1.b - scene.domain.t1.a);
    Interval i1{scene.domain.t1.a + m1, scene.domain.t1.b - m1};
    Interval i2 = i1;

    // Proper motion: apply, re-extract (g, h) from the moved curves, and
    // compare the split pair's Gauss curvature fields.  A proper isometry
    // preserves the natural parameter, so points correspond directly.
    uint64_t seed = opt.seed + 4;
    WeierstrassSamplesR42 s1, s2;
    for (int attempt = 0;; ++attempt, ++seed) {
        try {
            MotionR42 motion = random_proper_motion_r42(seed);
            s1 = weier_data_r42(apply_motion_to_curve(c1, motion));
            s2 = weier_data_r42(apply_motion_to_curve(c2, motion));
            break;
        } catch (const ValidationError&) {
            if (attempt >= 9) throw;
        }
    }
    auto K_r31 = [](const Jet2& a, const Jet2& b) {
        double dg = a.v - b.v;
        double prod = a.d1 * b.d1;
        return 16.0 * std::fabs(prod) * prod / (dg * dg * dg * dg);
    };
    detail::ErrAccum proper;
    for (double u : i1.grid(5))
        for (double v : i2.grid(5)) {
            proper.add(K_r31(s1.g(u), s2.g(v)),
                       curvature_r31_canonical(split_surface(data).m_g, u, v).K);
            proper.add(K_r31(s1.h(u), s2.h(v)),
                       curvature_r31_canonical(split_surface(data).m_h, u, v).K);
        }
    out.push_back(detail::finish("proper-motion-split-invariance", proper, 1e-5, true, opt,
                                 "seeded proper motion " + std::to_string(seed) +
                                     "; split-pair K fields at corresponding points"));

    // Anti-isometry at the data level: M_{-h} is a motion image of M_h, so
    // its K field must match exactly.
    SurfacePair anti_pair = anti_isometry_split(data);
    SurfacePair plain_pair = split_surface(data);
    detail::ErrAccum field;
    for (double u : i1.grid(5))
        for (double v : i2.grid(5))
            field.add(curvature_r31_canonical(anti_pair.m_h, u, v).K,
                      curvature_r31_canonical(plain_pair.m_h, u, v).K);
    out.push_back(detail::finish("anti-isometry-split-K-field", field, 1e-12, true, opt,
                                 "K field of M_{-h} equals K field of M_h"));

    // Anti-isometry acting on the curves themselves: re-extract data from
    // the moved curves and recompute (K, kappa) at corresponding points.
    MotionR42 anti = standard_anti_isometry_r42();
    WeierstrassSamplesR42 a1 = weier_data_r42(apply_motion_to_curve(c1, anti));
    WeierstrassSamplesR42 a2 = weier_data_r42(apply_motion_to_curve(c2, anti));
    detail::ErrAccum kneg, kpres;
    for (double u : i1.grid(5))
        for (double v : i2.grid(5)) {
            CurvaturePair orig = curvatures_r42_canonical(data, u, v);
            CurvaturePair moved =
                curvatures_r42_jets(a1.f(u), a1.g(u), a1.h(u), a2.f(v), a2.g(v), a2.h(v));
            kneg.add(moved.kappa, -orig.kappa);
            kpres.add(moved.K, orig.K);
        }
    out.push_back(detail::finish("anti-isometry-negates-kappa", kneg, 1e-8, true, opt));
    out.push_back(detail::finish(
        "anti-isometry-preserves-K", kpres, 1e-8, true, opt,
        "stated invariance does not hold: the measured K after an orientation-preserving "
        "anti-isometry equals -K at every sampled point, since reversing the sign of the scalar "
        "product reverses F and hence the Gauss curvature; K-preservation with kappa-negation is "
        "instead the behavior of non-proper isometries (data swap g <-> h).  Reported as a "
        "failure rather than silently adjusting the expectation"));
    return out;
}

// ---------------------------------------------------------------------------
// Full run + JSON report
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_all_checks(const VerifyOptions& opt) {
    std::vector<CheckResult> all;
    auto append = [&](std::vector<CheckResult> v) {
        for (auto& r : v) all.push_back(std::move(r));
    };
    append(check_catenoid(opt));
    append(check_example_kappa(opt));
    append(check_null_condition(opt));
    append(check_round_trips(opt));
    append(check_natural_param(opt));
    append(check_spinor(opt));
    append(check_curvature_oracle(opt));
    append(check_correspondence(opt));
    append(check_motion_invariance(opt));
    return all;
}

inline json report_to_json(const std::vector<CheckResult>& checks) {
    json out;
    out["checks"] = json::array();
    int failed = 0;
    for (const auto& c : checks) {
        json j;
        j["name"] = c.name;
        j["points"] = c.points;
        j["max_abs_err"] = c.max_abs_err;
        j["max_rel_err"] = c.max_rel_err;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (!c.note.empty()) j["note"] = c.note;
        out["checks"].push_back(std::move(j));
        if (!c.pass) ++failed;
    }
    out["total"] = checks.size();
    out["failed"] = failed;
    return out;
}

}  // namespace lw
