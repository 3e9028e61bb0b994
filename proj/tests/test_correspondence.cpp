#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lw/correspondence.hpp"

using namespace lw;

static Expression E(const std::string& s) { return Expression::parse(s, "t"); }

static CanonicalSurfaceDataR42 catenoid_data() {
    return {E("exp(t)"), E("exp(t)"), E("-exp(t)"), E("exp(-t)"), 1, 1,
            Rect{{0.2, 2.0}, {0.2, 2.0}}};
}

TEST_CASE("split and merge round-trip the data") {
    CanonicalSurfaceDataR42 data = catenoid_data();
    SurfacePair pair = split_surface(data);
    CHECK(pair.m_g.g1.structurally_equal(data.g1));
    CHECK(pair.m_g.g2.structurally_equal(data.g2));
    CHECK(pair.m_h.g1.structurally_equal(data.h1));
    CHECK(pair.m_h.g2.structurally_equal(data.h2));

    CanonicalSurfaceDataR42 back = merge_surfaces(pair, data.omega1, data.omega2);
    CHECK(back.g1.structurally_equal(data.g1));
    CHECK(back.h1.structurally_equal(data.h1));
    CHECK(back.g2.structurally_equal(data.g2));
    CHECK(back.h2.structurally_equal(data.h2));
    CHECK(back.omega1 == data.omega1);
    CHECK(back.omega2 == data.omega2);
}

TEST_CASE("merge validates the cross conditions with a witness") {
    // g1 = t and g2 = t share values on [0,1]^2: g1(u) = g2(v) on the diagonal
    SurfacePair bad;
    bad.m_g = CanonicalSurfaceDataR31{E("t"), E("t"), 1, 1, Rect{{0.0, 1.0}, {0.0, 1.0}}};
    bad.m_h = CanonicalSurfaceDataR31{E("t+3"), E("-t+3"), 1, 1, Rect{{0.0, 1.0}, {0.0, 1.0}}};
    try {
        merge_surfaces(bad, 1, 1);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.witness == 0.0);  // first grid point of the diagonal
        CHECK(std::string(e.what()).find("g1(t1) = g2(t2)") != std::string::npos);
    }
    // the h condition is checked too
    SurfacePair bad_h;
    bad_h.m_g = CanonicalSurfaceDataR31{E("t"), E("t+3"), 1, 1, Rect{{0.0, 1.0}, {0.0, 1.0}}};
    bad_h.m_h = CanonicalSurfaceDataR31{E("t"), E("t"), 1, 1, Rect{{0.0, 1.0}, {0.0, 1.0}}};
    CHECK_THROWS_AS(merge_surfaces(bad_h, 1, 1), ValidationError);
}

TEST_CASE("splitting the catenoid generator gives the R31 catenoid curve") {
    auto [cg, ch] = split_curve(E("exp(t)"), E("exp(t)"), 1, {0.2, 2.0});
    CHECK(cg.space == Space::R31);
    for (double t : {0.5, 1.0, 1.5}) {
        auto d = cg.derivative(t);
        CHECK(d[0] == Catch::Approx(std::cosh(t)).epsilon(1e-12));
        CHECK(d[1] == Catch::Approx(std::sinh(t)).epsilon(1e-12));
        CHECK(d[2] == Catch::Approx(1.0).epsilon(1e-12));
        // both representatives are naturally parametrized
        CHECK(accel_norm2(cg, t) == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(accel_norm2(ch, t) == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("curvature relation: closed form against the direct formulas") {
    CanonicalSurfaceDataR42 data = catenoid_data();
    SurfacePair pair = split_surface(data);
    SurfaceType type = classify_type(data);
    CHECK(type == SurfaceType::First);
    for (double u : {0.4, 1.0, 1.7})
        for (double v : {0.3, 1.0, 1.9}) {
            CurvaturePair direct = curvatures_r42_canonical(data, u, v);
            double Kg = curvature_r31_canonical(pair.m_g, u, v).K;
            double Kh = curvature_r31_canonical(pair.m_h, u, v).K;
            int eta = direct.K > 0.0 ? 1 : -1;
            CurvaturePair rel = curvature_relation(Kg, Kh, type, eta);
            CHECK(rel.K == Catch::Approx(direct.K).epsilon(1e-12));
            CHECK(rel.kappa == Catch::Approx(direct.kappa).margin(1e-12));
        }
}

TEST_CASE("curvature relation: structural identities") {
    // equal factor curvatures give kappa = 0 and K = eta |K_g|
    CurvaturePair c = curvature_relation(-0.25, -0.25, SurfaceType::First, -1);
    CHECK(c.K == Catch::Approx(-0.25).epsilon(1e-14));
    CHECK(c.kappa == 0.0);
    // third type swaps the roles
    CurvaturePair t = curvature_relation(-0.25, -0.25, SurfaceType::Third, 1);
    CHECK(t.K == 0.0);
    CHECK(t.kappa == Catch::Approx(0.25).epsilon(1e-14));
    // zero factor curvature is rejected
    CHECK_THROWS_AS(curvature_relation(0.0, -1.0, SurfaceType::First, 1), std::invalid_argument);
}

TEST_CASE("area element relation |F| = sqrt(|F_g||F_h|)") {
    CanonicalSurfaceDataR42 data = catenoid_data();
    SurfacePair pair = split_surface(data);
    for (double u : {0.5, 1.2})
        for (double v : {0.8, 1.6}) {
            double F = first_form_F_canonical_r42(data, u, v);
            double Fg = abs_F_r31(pair.m_g, u, v);
            double Fh = abs_F_r31(pair.m_h, u, v);
            CHECK(std::fabs(F) == Catch::Approx(std::sqrt(Fg * Fh)).epsilon(1e-13));
            // sqrt|K_g| links the canonical curvature to the relation
            CHECK(sqrt_abs_K_r31(pair.m_g, u, v) ==
                  Catch::Approx(std::sqrt(std::fabs(curvature_r31_canonical(pair.m_g, u, v).K)))
                      .epsilon(1e-13));
        }
}

TEST_CASE("anti-isometry at the split level") {
    CanonicalSurfaceDataR42 data = catenoid_data();
    SurfacePair pair = split_surface(data);
    SurfacePair anti = anti_isometry_split(data);

    // the g factor is untouched
    CHECK(anti.m_g.g1.structurally_equal(pair.m_g.g1));
    CHECK(anti.m_g.g2.structurally_equal(pair.m_g.g2));
    // the h factor changes sign
    CHECK(anti.m_h.g1.structurally_equal(pair.m_h.g1.negated()));
    CHECK(anti.m_h.g2.structurally_equal(pair.m_h.g2.negated()));

    // negating both h's is a motion of R31: the Gauss curvature field of
    // M_h is bitwise unchanged
    for (double u : {0.4, 1.3})
        for (double v : {0.7, 1.8})
            CHECK(curvature_r31_canonical(anti.m_h, u, v).K ==
                  curvature_r31_canonical(pair.m_h, u, v).K);
}
