#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "lw/expr.hpp"
#include "lw/null_curve.hpp"

namespace lw {

struct Rect {
    Interval t1, t2;

    bool contains(double u, double v) const { return t1.contains(u) && t2.contains(v); }
    std::pair<double, double> anchor() const {
        return {t1.clamp_origin(), t2.clamp_origin()};
    }
};

struct CurvaturePair {
    double K = 0.0;
    double kappa = 0.0;
};

enum class SurfaceType { First, Second, Third };

inline const char* to_string(SurfaceType t) {
    switch (t) {
    case SurfaceType::First: return "first";
    case SurfaceType::Second: return "second";
    case SurfaceType::Third: return "third";
    }
    return "?";
}

/// x(t1,t2) = (alpha1(t1) + alpha2(t2)) / 2 for a pair of null curves in
/// the same space.  In these coordinates E = G = 0 and F = alpha1'.alpha2'/4.
struct MinimalSurface {
    Space space = Space::R42;
    NullCurve alpha1, alpha2;
    Rect domain;

    std::array<double, 4> evaluate(double u, double v) const {
        auto p1 = integrate_curve(alpha1, u);
        auto p2 = integrate_curve(alpha2, v);
        std::array<double, 4> x{};
        for (int i = 0; i < 4; ++i) x[i] = 0.5 * (p1[i] + p2[i]);
        return x;
    }
};

/// F = alpha1'(t1) . alpha2'(t2) / 4.
inline double first_form_F(const MinimalSurface& s, double t1, double t2) {
    return dot_n(s.space, s.alpha1.derivative(t1), s.alpha2.derivative(t2)) / 4.0;
}

/// Validates that the metric does not degenerate: F keeps a constant
/// nonzero sign on a product grid over the domain.
inline MinimalSurface build_surface(const NullCurve& a1, const NullCurve& a2, Rect domain,
                                    int check_grid = 32) {
    if (a1.space != a2.space)
        throw std::invalid_argument("surface factors must live in the same space");
    MinimalSurface s;
    s.space = a1.space;
    s.alpha1 = a1;
    s.alpha2 = a2;
    s.domain = domain;
    auto [u0, v0] = domain.anchor();
    s.alpha1.t0 = u0;
    s.alpha2.t0 = v0;
    double sign = 0.0;
    for (double u : domain.t1.grid(check_grid))
        for (double v : domain.t2.grid(check_grid)) {
            double F = first_form_F(s, u, v);
            if (std::fabs(F) <= kDegenerateTol)
                throw ValidationError("F vanishes on the domain (degenerate metric) at t2 = " +
                                          std::to_string(v),
                                      u);
            if (sign == 0.0) sign = F > 0.0 ? 1.0 : -1.0;
            else if ((F > 0.0 ? 1.0 : -1.0) != sign)
                throw ValidationError("F changes sign on the domain at t2 = " + std::to_string(v),
                                      u);
        }
    return s;
}

/// y(t1,t2) = (alpha1(t1) - alpha2(t2)) / 2, the hyperbolic harmonic
/// conjugate; F flips sign, |F| is unchanged.
inline MinimalSurface conjugate_surface(const MinimalSurface& s) {
    MinimalSurface c = s;
    c.alpha2 = negate_curve(s.alpha2);
    return c;
}

// ---------------------------------------------------------------------------
// Curvatures from Weierstrass data
// ---------------------------------------------------------------------------

/// Gauss and normal curvature of an R42 surface from general data
/// (f_i, g_i, h_i), evaluated on jets:
///   prefactor = 2 / (f1 f2 (g1-g2)(h1-h2))
///   K     = prefactor (g1'g2'/(g1-g2)^2 + h1'h2'/(h1-h2)^2)
///   kappa = prefactor (g1'g2'/(g1-g2)^2 - h1'h2'/(h1-h2)^2)
inline CurvaturePair curvatures_r42_jets(const Jet2& f1, const Jet2& g1, const Jet2& h1,
                                         const Jet2& f2, const Jet2& g2, const Jet2& h2) {
    double dg = g1.v - g2.v;
    double dh = h1.v - h2.v;
    if (dg == 0.0) throw DomainError("g1(t1) = g2(t2) at the evaluation point");
    if (dh == 0.0) throw DomainError("h1(t1) = h2(t2) at the evaluation point");
    if (f1.v == 0.0 || f2.v == 0.0) throw DomainError("f vanishes at the evaluation point");
    double pref = 2.0 / (f1.v * f2.v * dg * dh);
    double gterm = g1.d1 * g2.d1 / (dg * dg);
    double hterm = h1.d1 * h2.d1 / (dh * dh);
    return {pref * (gterm + hterm), pref * (gterm - hterm)};
}

struct GeneralSurfaceDataR42 {
    Expression f1, g1, h1;  // functions of t1
    Expression f2, g2, h2;  // functions of t2
    Rect domain;
};

struct GeneralSurfaceDataR31 {
    Expression f1, g1;
    Expression f2, g2;
    Rect domain;
};

struct CanonicalSurfaceDataR42 {
    Expression g1, h1;
    Expression g2, h2;
    int omega1 = 1, omega2 = 1;
    Rect domain;
};

struct CanonicalSurfaceDataR31 {
    Expression g1, g2;
    int omega1 = 1, omega2 = 1;
    Rect domain;
};

inline CurvaturePair curvatures_r42(const GeneralSurfaceDataR42& d, double t1, double t2) {
    return curvatures_r42_jets(d.f1.eval_jet2(t1), d.g1.eval_jet2(t1), d.h1.eval_jet2(t1),
                               d.f2.eval_jet2(t2), d.g2.eval_jet2(t2), d.h2.eval_jet2(t2));
}

/// F in canonical data: F = -omega1 omega2 (g1-g2)(h1-h2) / (8 sqrt|g1'h1'g2'h2'|).
inline double first_form_F_canonical_r42(const CanonicalSurfaceDataR42& d, double t1, double t2) {
    Jet2 g1 = d.g1.eval_jet2(t1), h1 = d.h1.eval_jet2(t1);
    Jet2 g2 = d.g2.eval_jet2(t2), h2 = d.h2.eval_jet2(t2);
    double prod = std::fabs(g1.d1 * h1.d1 * g2.d1 * h2.d1);
    if (prod == 0.0) throw DomainError("g'h' vanishes at the evaluation point");
    return -d.omega1 * d.omega2 * (g1.v - g2.v) * (h1.v - h2.v) / (8.0 * std::sqrt(prod));
}

/// Canonical-coordinate curvature formulas; valid under the F < 0
/// convention, which is enforced as a precondition.
inline CurvaturePair curvatures_r42_canonical(const CanonicalSurfaceDataR42& d, double t1,
                                              double t2) {
    if (first_form_F_canonical_r42(d, t1, t2) >= 0.0)
        throw std::invalid_argument(
            "canonical curvature formulas require F < 0; flip the sign of one coordinate");
    Jet2 g1 = d.g1.eval_jet2(t1), h1 = d.h1.eval_jet2(t1);
    Jet2 g2 = d.g2.eval_jet2(t2), h2 = d.h2.eval_jet2(t2);
    double dg = g1.v - g2.v;
    double dh = h1.v - h2.v;
    if (dg == 0.0 || dh == 0.0) throw DomainError("coincident g or h values at the point");
    double pref = 8.0 * std::sqrt(std::fabs(g1.d1 * h1.d1 * g2.d1 * h2.d1)) /
                  std::fabs(dg * dh);
    double gterm = g1.d1 * g2.d1 / (dg * dg);
    double hterm = h1.d1 * h2.d1 / (dh * dh);
    return {pref * (gterm + hterm), pref * (gterm - hterm)};
}

/// R31 curvature from general data: K = 4 g1'g2' / (f1 f2 (g1-g2)^4),
/// kappa = 0 identically.
inline CurvaturePair curvature_r31(const GeneralSurfaceDataR31& d, double t1, double t2) {
    Jet2 f1 = d.f1.eval_jet2(t1), g1 = d.g1.eval_jet2(t1);
    Jet2 f2 = d.f2.eval_jet2(t2), g2 = d.g2.eval_jet2(t2);
    double dg = g1.v - g2.v;
    if (dg == 0.0) throw DomainError("g1(t1) = g2(t2) at the evaluation point");
    if (f1.v == 0.0 || f2.v == 0.0) throw DomainError("f vanishes at the evaluation point");
    return {4.0 * g1.d1 * g2.d1 / (f1.v * f2.v * dg * dg * dg * dg), 0.0};
}

/// Canonical R31 curvature: K = 16 omega1 omega2 |g1'g2'| g1'g2' / (g1-g2)^4.
inline CurvaturePair curvature_r31_canonical(const CanonicalSurfaceDataR31& d, double t1,
                                             double t2) {
    Jet2 g1 = d.g1.eval_jet2(t1), g2 = d.g2.eval_jet2(t2);
    double dg = g1.v - g2.v;
    if (dg == 0.0) throw DomainError("g1(t1) = g2(t2) at the evaluation point");
    double prod = g1.d1 * g2.d1;
    return {16.0 * d.omega1 * d.omega2 * std::fabs(prod) * prod / (dg * dg * dg * dg), 0.0};
}

// ---------------------------------------------------------------------------
// Type classification
// ---------------------------------------------------------------------------

/// First if g1'h1' > 0 and g2'h2' > 0 (both alpha'' spacelike), Second if
/// both < 0, Third if mixed.  Third type must come ordered so that
/// g1'h1' > 0 and g2'h2' < 0.
inline SurfaceType classify_type(const CanonicalSurfaceDataR42& d) {
    auto factor_sign = [](const Expression& g, const Expression& h, const Interval& iv,
                          const char* which) {
        double sign = 0.0;
        for (double t : iv.grid(kValidationGridSize)) {
            double p = g.eval_jet2(t).d1 * h.eval_jet2(t).d1;
            if (std::fabs(p) <= kDegenerateTol)
                throw ValidationError(std::string(which) + ": g'h' vanishes (not general type)", t);
            double s = p > 0.0 ? 1.0 : -1.0;
            if (sign == 0.0) sign = s;
            else if (s != sign)
                throw ValidationError(std::string(which) + ": g'h' changes sign (not general type)",
                                      t);
        }
        return sign;
    };
    double s1 = factor_sign(d.g1, d.h1, d.domain.t1, "factor 1");
    double s2 = factor_sign(d.g2, d.h2, d.domain.t2, "factor 2");
    if (s1 > 0.0 && s2 > 0.0) return SurfaceType::First;
    if (s1 < 0.0 && s2 < 0.0) return SurfaceType::Second;
    if (s1 < 0.0)
        throw std::invalid_argument(
            "third-type data must be ordered with g1'h1' > 0 and g2'h2' < 0; renumber the factors");
    return SurfaceType::Third;
}

// ---------------------------------------------------------------------------
// Finite-difference curvature oracle
// ---------------------------------------------------------------------------

/// Gauss curvature of the metric 2F dt1 dt2 computed independently of the
/// closed-form expressions: K = -(1/F) d^2(ln|F|)/dt1 dt2, by central
/// differences with one level of Richardson extrapolation.
inline double gauss_curvature_oracle(const MinimalSurface& s, double t1, double t2,
                                     double step = 1e-4) {
    double F0 = first_form_F(s, t1, t2);
    auto logF = [&](double u, double v) {
        double F = first_form_F(s, u, v);
        if ((F > 0.0) != (F0 > 0.0) || F == 0.0)
            throw DomainError("F changes sign within the finite-difference stencil");
        return std::log(std::fabs(F));
    };
    auto mixed = [&](double h) {
        return (logF(t1 + h, t2 + h) - logF(t1 + h, t2 - h) - logF(t1 - h, t2 + h) +
                logF(t1 - h, t2 - h)) /
               (4.0 * h * h);
    };
    double d1 = mixed(step);
    double d2 = mixed(2.0 * step);
    double d = (4.0 * d1 - d2) / 3.0;
    return -d / F0;
}

}  // namespace lw
