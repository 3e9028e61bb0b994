#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lw/pseudo_euclidean.hpp"

using namespace lw;

TEST_CASE("scalar products") {
    Vec3L a{{1.0, 2.0, 3.0}}, b{{4.0, 5.0, 6.0}};
    CHECK(dot3(a, b) == -4.0 + 10.0 + 18.0);

    // the catenoid generators' derivatives at t = 1 are orthogonal up to
    // the -2 sinh 1 cross term
    double s = std::sinh(1.0), c = std::cosh(1.0);
    Vec4L g1{{c, s, 0.0, 1.0}}, g2{{0.0, -1.0, c, -s}};
    CHECK(dot4(g1, g2) == Catch::Approx(-2.0 * s).epsilon(1e-15));
    CHECK(dot4(g1, g1) == Catch::Approx(0.0).margin(1e-15));  // null
    CHECK(dot4(g2, g2) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("embedding preserves the scalar product") {
    Vec3L a{{1.5, -0.5, 2.0}}, b{{0.25, 3.0, -1.0}};
    CHECK(dot4(embed_r31(a), embed_r31(b)) == dot3(a, b));
}

TEST_CASE("motions validate their defining equation") {
    CHECK_NOTHROW(MotionR31::make(Mat3::identity()));
    Mat3 bad = Mat3::identity();
    bad(1, 1) = 2.0;
    CHECK_THROWS_AS(MotionR31::make(bad), std::invalid_argument);

    // boost in the (x1, x2) plane of R31
    double phi = 0.7;
    Mat3 boost = Mat3::identity();
    boost(0, 0) = std::cosh(phi);
    boost(1, 1) = std::cosh(phi);
    boost(0, 1) = std::sinh(phi);
    boost(1, 0) = std::sinh(phi);
    MotionR31 m = MotionR31::make(boost, Vec3L{{1.0, 2.0, 3.0}});
    CHECK(m.proper);
    CHECK(m.orthochronous);
    Vec3L v{{0.3, -1.2, 0.8}}, w{{1.0, 0.5, -0.25}};
    // linear part preserves the product
    auto av = boost.apply(v.c), aw = boost.apply(w.c);
    CHECK(dot3(Vec3L{av}, Vec3L{aw}) == Catch::Approx(dot3(v, w)).margin(1e-14));

    Mat3 flip = Mat3::identity();
    flip(2, 2) = -1.0;
    CHECK_FALSE(MotionR31::make(flip).proper);
    Mat3 timeflip = Mat3::identity();
    timeflip(0, 0) = -1.0;
    CHECK_FALSE(MotionR31::make(timeflip).orthochronous);
}

TEST_CASE("R42 plane rotations and random proper motions are isometries") {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Mat4 A = plane_rotation_r42(i, j, 0.37);
            MotionR42 m = MotionR42::make(A);
            CHECK(m.proper);
            CHECK_FALSE(m.anti_isometry);
        }
    for (uint64_t seed : {1u, 2u, 42u}) {
        MotionR42 m = random_proper_motion_r42(seed);
        CHECK(m.A.det() == Catch::Approx(1.0).epsilon(1e-10));
        CHECK_FALSE(m.anti_isometry);
        Vec4L v{{0.3, 1.0, -0.7, 0.2}}, w{{-1.1, 0.4, 0.9, 2.0}};
        auto av = m.A.apply(v.c), aw = m.A.apply(w.c);
        CHECK(dot4(Vec4L{av}, Vec4L{aw}) == Catch::Approx(dot4(v, w)).margin(1e-12));
    }
}

TEST_CASE("standard anti-isometry reverses the scalar product") {
    MotionR42 m = standard_anti_isometry_r42();
    CHECK(m.anti_isometry);
    CHECK(m.proper);
    Vec4L v{{0.3, 1.0, -0.7, 0.2}}, w{{-1.1, 0.4, 0.9, 2.0}};
    auto av = m.A.apply(v.c), aw = m.A.apply(w.c);
    CHECK(dot4(Vec4L{av}, Vec4L{aw}) == Catch::Approx(-dot4(v, w)).margin(1e-14));

    // a non-proper anti-isometry is rejected
    Mat4 bad = m.A;
    for (int i = 0; i < 4; ++i) bad(i, 0) = -bad(i, 0);  // negate a column
    CHECK_THROWS_AS(MotionR42::make(bad), std::invalid_argument);
}

TEST_CASE("spinor map: worked example") {
    // conjugation by [[1,1],[0,1]] corresponds to the shear worked out by
    // hand from the Weierstrass transformation g -> g + 1
    Mat3 A = spinor_to_so21(SpinMatrix{1, 1, 0, 1}).A;
    double want[3][3] = {{1.5, -0.5, 1.0}, {0.5, 0.5, 1.0}, {1.0, -1.0, 1.0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(A(i, j) == Catch::Approx(want[i][j]).margin(1e-14));
}

TEST_CASE("spinor map requires unit determinant") {
    CHECK_THROWS_AS(spinor_to_so21(SpinMatrix{2, 0, 0, 1}), std::invalid_argument);
    // det = -1 is accepted and lands in the proper non-orthochronous part
    MotionR31 m = spinor_to_so21(SpinMatrix{1, 0, 0, -1});
    CHECK(m.proper);
    CHECK_FALSE(m.orthochronous);
}

TEST_CASE("mobius action on Weierstrass data") {
    Expression f = Expression::parse("1+t^2", "t");
    Expression g = Expression::parse("sin(t)", "t");

    // identity leaves the data untouched (AST-identical)
    auto [f_id, g_id] = mobius_on_weierstrass(f, g, SpinMatrix{1, 0, 0, 1},
                                              MotionKind::ProperOrthochronous);
    CHECK(f_id.structurally_equal(f));
    CHECK(g_id.structurally_equal(g));

    // translation b = 1: g -> g + 1, f unchanged
    auto [f_tr, g_tr] = mobius_on_weierstrass(f, g, SpinMatrix{1, 1, 0, 1},
                                              MotionKind::ProperOrthochronous);
    CHECK(f_tr.structurally_equal(f));
    CHECK(g_tr.eval_value(0.5) == Catch::Approx(std::sin(0.5) + 1.0));

    // the non-orthochronous kinds negate f
    auto [f_no, g_no] = mobius_on_weierstrass(f, g, SpinMatrix{1, 0, 0, 1},
                                              MotionKind::NonProperNonOrthochronous);
    CHECK(f_no.eval_value(0.5) == Catch::Approx(-f.eval_value(0.5)));
    CHECK(g_no.structurally_equal(g));

    // kind and determinant must match
    CHECK_THROWS_AS(mobius_on_weierstrass(f, g, SpinMatrix{1, 0, 0, -1},
                                          MotionKind::ProperOrthochronous),
                    std::invalid_argument);
}

TEST_CASE("motion_for_mobius kinds carry the right flags") {
    SpinMatrix plus{1.1, 0.3, 0.2, (1.0 + 0.3 * 0.2) / 1.1};   // det = +1
    SpinMatrix minus{1.1, 0.3, 0.2, (-1.0 + 0.3 * 0.2) / 1.1}; // det = -1
    CHECK(plus.det() == Catch::Approx(1.0));
    CHECK(minus.det() == Catch::Approx(-1.0));

    MotionR31 po = motion_for_mobius(plus, MotionKind::ProperOrthochronous);
    CHECK((po.proper && po.orthochronous));
    MotionR31 pn = motion_for_mobius(minus, MotionKind::ProperNonOrthochronous);
    CHECK((pn.proper && !pn.orthochronous));
    MotionR31 no = motion_for_mobius(minus, MotionKind::NonProperOrthochronous);
    CHECK((!no.proper && no.orthochronous));
    MotionR31 nn = motion_for_mobius(plus, MotionKind::NonProperNonOrthochronous);
    CHECK((!nn.proper && !nn.orthochronous));
}
