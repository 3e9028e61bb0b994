#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lw/null_curve.hpp"

using namespace lw;

static Expression E(const std::string& s) { return Expression::parse(s, "t"); }

TEST_CASE("weierstrass curves are null") {
    NullCurve c42 = weier_r42({E("1+t^2"), E("sin(t)+2*t"), E("t^3+t")}, {-1.0, 1.0});
    NullCurve c31 = weier_r31({E("exp(t)"), E("cosh(t)+t")}, {-1.0, 1.0});
    for (double t : Interval{-1.0, 1.0}.grid(50)) {
        auto d4 = c42.derivative(t);
        CHECK(std::fabs(dot_n(Space::R42, d4, d4)) < 1e-12);
        auto d3 = c31.derivative(t);
        CHECK(std::fabs(dot_n(Space::R31, d3, d3)) < 1e-12);
    }
}

TEST_CASE("catenoid generator: derivative, acceleration, antiderivative") {
    // g = h = exp(t) with omega = +1 gives alpha' = (cosh t, sinh t, 0, 1)
    NullCurve c = canonical_r42(E("exp(t)"), E("exp(t)"), 1, {0.2, 2.0});
    for (double t : {0.3, 1.0, 1.7}) {
        auto d = c.derivative(t);
        CHECK(d[0] == Catch::Approx(std::cosh(t)).epsilon(1e-12));
        CHECK(d[1] == Catch::Approx(std::sinh(t)).epsilon(1e-12));
        CHECK(d[2] == Catch::Approx(0.0).margin(1e-12));
        CHECK(d[3] == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(accel_norm2(c, t) == Catch::Approx(1.0).epsilon(1e-12));  // natural parameter
    }
    // alpha(t) = (sinh t, cosh t, 0, t) + const, integrated from t0 = 0.2
    auto p = integrate_curve(c, 1.0);
    CHECK(p[0] == Catch::Approx(std::sinh(1.0) - std::sinh(0.2)).epsilon(1e-9));
    CHECK(p[1] == Catch::Approx(std::cosh(1.0) - std::cosh(0.2)).epsilon(1e-9));
    CHECK(p[2] == Catch::Approx(0.0).margin(1e-10));
    CHECK(p[3] == Catch::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("construction preconditions are validated with witnesses") {
    // f vanishes at a validation grid point (the left endpoint)
    CHECK_THROWS_AS(weier_r31({E("t"), E("t+1")}, {0.0, 1.0}), ValidationError);
    // canonical data needs g' != 0
    CHECK_THROWS_AS(canonical_r31(E("t^2"), 1, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(canonical_r42(E("t^2"), E("t"), 1, {0.0, 1.0}), ValidationError);
    try {
        weier_r31({E("t-0.25"), E("t")}, {0.25, 1.25});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.witness == Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("degeneracy detection: g = t, h = t^3") {
    // alpha''^2 = 4 f^2 g'h' = 12 t^2 vanishes at t = 0
    NullCurve c = weier_r42({E("1"), E("t"), E("t^3")}, {0.0, 1.0});
    auto report = is_nondegenerate(c);
    CHECK_FALSE(report.nondegenerate);
    CHECK(report.witness == 0.0);
    CHECK_THROWS_AS(natural_param(c, 0.5), ValidationError);
}

TEST_CASE("natural parameter with a closed-form oracle") {
    // f = 1, g = t: alpha''^2 = 4, so s(t) = sqrt(2) (t - t0)
    NullCurve c = weier_r31({E("1"), E("t")}, {-1.0, 1.0});
    NaturalParamMap map = natural_param(c, 0.0);
    CHECK(map.sign == 1.0);
    for (double t : {-0.9, -0.2, 0.5, 1.0}) {
        CHECK(map.forward(t) == Catch::Approx(std::sqrt(2.0) * t).epsilon(1e-10));
        CHECK(map.inverse(map.forward(t)) == Catch::Approx(t).margin(1e-10));
    }
    CHECK(map.s_range.a == Catch::Approx(-std::sqrt(2.0)).epsilon(1e-10));

    // timelike acceleration: g'h' < 0 makes alpha''^2 negative
    NullCurve neg = weier_r42({E("1"), E("t"), E("-t")}, {-1.0, 1.0});
    CHECK(natural_param(neg, 0.0).sign == -1.0);
}

TEST_CASE("reparametrization yields |alpha''^2| = 1") {
    NullCurve c42 = weier_r42({E("1+t^2"), E("sin(t)+2*t"), E("t^3+t+1")}, {0.1, 1.0});
    NullCurve n = reparametrize_natural(c42, 0.1);
    for (double s : n.interval.grid(25))
        CHECK(std::fabs(accel_norm2(n, s)) == Catch::Approx(1.0).epsilon(1e-9));
    // base point anchors alpha(t0)
    CHECK(n.base == integrate_curve(c42, 0.1));
}

TEST_CASE("data extraction inverts the representation") {
    WeierstrassR42 data{E("1+t^2"), E("sin(t)+2*t"), E("t^3+t")};
    NullCurve c = weier_r42(data, {-1.0, 1.0});
    auto samples = weier_data_r42(c);
    for (double t : Interval{-1.0, 1.0}.grid(20)) {
        CHECK(samples.f(t).v == Catch::Approx(data.f.eval_value(t)).epsilon(1e-12));
        CHECK(samples.g(t).v == Catch::Approx(data.g.eval_value(t)).epsilon(1e-12));
        CHECK(samples.h(t).v == Catch::Approx(data.h.eval_value(t)).epsilon(1e-12));
        // first derivatives survive the round trip too
        CHECK(samples.g(t).d1 == Catch::Approx(data.g.eval_jet2(t).d1).margin(1e-11));
    }
    CHECK_THROWS_AS(weier_data_r31(c), std::invalid_argument);  // wrong space
}

TEST_CASE("motions act linearly on curves") {
    NullCurve c = weier_r31({E("1"), E("t")}, {-1.0, 1.0});
    Mat3 boost = Mat3::identity();
    boost(0, 0) = std::cosh(0.5);
    boost(1, 1) = std::cosh(0.5);
    boost(0, 1) = std::sinh(0.5);
    boost(1, 0) = std::sinh(0.5);
    MotionR31 m = MotionR31::make(boost, Vec3L{{1.0, 0.0, -2.0}});
    NullCurve moved = apply_motion_to_curve(c, m);
    for (double t : {-0.5, 0.0, 0.75}) {
        auto d = c.derivative(t);
        auto dm = moved.derivative(t);
        auto want = boost.apply({d[0], d[1], d[2]});
        for (int i = 0; i < 3; ++i) CHECK(dm[i] == Catch::Approx(want[i]).margin(1e-14));
        // isometries preserve alpha''^2
        CHECK(accel_norm2(moved, t) == Catch::Approx(accel_norm2(c, t)).margin(1e-12));
    }
    // base point moves affinely
    CHECK(moved.base[0] == Catch::Approx(m.apply(Vec3L{{c.base[0], c.base[1], c.base[2]}})[0]));

    NullCurve c42 = weier_r42({E("1"), E("t"), E("2*t")}, {-1.0, 1.0});
    CHECK_THROWS_AS(apply_motion_to_curve(c42, m), std::invalid_argument);

    // anti-isometry negates alpha''^2
    NullCurve anti = apply_motion_to_curve(c42, standard_anti_isometry_r42());
    for (double t : {-0.5, 0.3})
        CHECK(accel_norm2(anti, t) == Catch::Approx(-accel_norm2(c42, t)).margin(1e-12));
}

TEST_CASE("embedded R31 curves are null in R42 with spacelike acceleration") {
    NullCurve c = weier_r31({E("exp(t)"), E("t+sin(t)/2")}, {-1.0, 1.0});
    NullCurve e = embed_curve_r42(c);
    CHECK(e.space == Space::R42);
    for (double t : Interval{-1.0, 1.0}.grid(20)) {
        auto d = e.derivative(t);
        CHECK(std::fabs(dot_n(Space::R42, d, d)) < 1e-12);
        CHECK(d[2] == 0.0);
        CHECK(accel_norm2(e, t) >= 0.0);  // g' h' = g'^2 >= 0
        CHECK(accel_norm2(e, t) == Catch::Approx(accel_norm2(c, t)).margin(1e-14));
    }
}

TEST_CASE("negated curve") {
    NullCurve c = weier_r31({E("1"), E("t")}, {-1.0, 1.0});
    NullCurve n = negate_curve(c);
    auto d = c.derivative(0.5);
    auto dn = n.derivative(0.5);
    for (int i = 0; i < 3; ++i) CHECK(dn[i] == -d[i]);
}
