#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lw/expr.hpp"
#include "lw/pseudo_euclidean.hpp"
#include "lw/quadrature.hpp"

namespace lw {

/// A stated "!= 0 on the interval" precondition failed; the message
/// carries a witness parameter value.
struct ValidationError : std::runtime_error {
    double witness;
    ValidationError(const std::string& msg, double t)
        : std::runtime_error(msg + " (witness t = " + std::to_string(t) + ")"), witness(t) {}
};

struct Interval {
    double a = 0.0, b = 1.0;

    bool contains(double t) const { return t >= a && t <= b; }
    double clamp_origin() const { return contains(0.0) ? 0.0 : a; }

    std::vector<double> grid(int n) const {
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / double(n - 1);
        return g;
    }
};

/// All open ">!= 0 everywhere" conditions are checked on this grid.
inline constexpr int kValidationGridSize = 512;
inline constexpr double kDegenerateTol = 1e-9;

struct WeierstrassR42 {
    Expression f, g, h;
};

struct WeierstrassR31 {
    Expression f, g;
};

/// Pointwise dot in the curve's ambient space; unused slots are zero.
inline double dot_n(Space space, const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double s = 0.0;
    for (int i = 0; i < dimension(space); ++i) s += metric_sign(space, i) * a[i] * b[i];
    return s;
}

/// A null curve given through jets of its derivative: jets(t)[i] holds
/// alpha'_i as value, alpha''_i as d1 and alpha'''_i as d2 (d2 may be NaN
/// for curves whose generating data is only known to second order).
/// Immutable; evaluation is pure.
struct NullCurve {
    Space space = Space::R42;
    std::function<std::array<Jet2, 4>(double)> jets;
    Interval interval;
    double t0 = 0.0;
    std::array<double, 4> base{};  // alpha(t0)

    int dim() const { return dimension(space); }

    std::array<double, 4> derivative(double t) const {
        auto j = jets(t);
        return {j[0].v, j[1].v, j[2].v, j[3].v};
    }

    std::array<double, 4> second(double t) const {
        auto j = jets(t);
        return {j[0].d1, j[1].d1, j[2].d1, j[3].d1};
    }
};

/// dot(alpha'', alpha''); equals 4 f^2 g'h' in R42 and 4 f^2 g'^2 in R31.
inline double accel_norm2(const NullCurve& c, double t) {
    auto a2 = c.second(t);
    return dot_n(c.space, a2, a2);
}

namespace detail {

inline std::array<Jet2, 4> weier_components_r42(const Jet2& f, const Jet2& g, const Jet2& h) {
    Jet2 gh = g * h;
    Jet2 one = Jet2::constant(1.0);
    return {f * (gh + one), f * (gh - one), f * (h - g), f * (h + g)};
}

inline std::array<Jet2, 4> weier_components_r31(const Jet2& f, const Jet2& g) {
    Jet2 gg = g * g;
    Jet2 one = Jet2::constant(1.0);
    return {f * (gg + one), f * (gg - one), 2.0 * (f * g), Jet2{}};
}

// f = omega / (2 sqrt|u|) for u = g'h' (or g'^2); first derivative from
// u' and the chain rule, second derivative untracked (NaN).
inline Jet2 natural_factor(double omega, double u, double du) {
    if (std::fabs(u) <= kDegenerateTol) throw DomainError("g'h' vanishes");
    double au = std::fabs(u);
    double su = u > 0.0 ? 1.0 : -1.0;
    Jet2 f;
    f.v = omega / (2.0 * std::sqrt(au));
    f.d1 = -omega * su * du / (4.0 * au * std::sqrt(au));
    f.d2 = std::numeric_limits<double>::quiet_NaN();
    return f;
}

inline void check_nonzero_on_grid(const std::function<double(double)>& fn, const Interval& iv,
                                  const std::string& what) {
    for (double t : iv.grid(kValidationGridSize))
        if (std::fabs(fn(t)) <= kDegenerateTol)
            throw ValidationError(what + " vanishes on the validation grid", t);
}

}  // namespace detail

/// Curve in R42 with alpha' = f (gh+1, gh-1, h-g, h+g).  Requires f != 0
/// on the interval.
inline NullCurve weier_r42(const WeierstrassR42& data, Interval interval,
                           std::optional<double> t0 = std::nullopt) {
    detail::check_nonzero_on_grid([&](double t) { return data.f.eval_value(t); }, interval, "f");
    NullCurve c;
    c.space = Space::R42;
    c.interval = interval;
    c.t0 = t0.value_or(interval.clamp_origin());
    c.jets = [data](double t) {
        return detail::weier_components_r42(data.f.eval_jet2(t), data.g.eval_jet2(t),
                                            data.h.eval_jet2(t));
    };
    return c;
}

/// Curve in R31 with alpha' = f (g^2+1, g^2-1, 2g).
inline NullCurve weier_r31(const WeierstrassR31& data, Interval interval,
                           std::optional<double> t0 = std::nullopt) {
    detail::check_nonzero_on_grid([&](double t) { return data.f.eval_value(t); }, interval, "f");
    NullCurve c;
    c.space = Space::R31;
    c.interval = interval;
    c.t0 = t0.value_or(interval.clamp_origin());
    c.jets = [data](double t) {
        return detail::weier_components_r31(data.f.eval_jet2(t), data.g.eval_jet2(t));
    };
    return c;
}

/// Naturally parametrized curve in R42 generated by (g, h, omega):
/// alpha' = omega / (2 sqrt|g'h'|) (gh+1, gh-1, h-g, h+g).
inline NullCurve canonical_r42(const Expression& g, const Expression& h, int omega,
                               Interval interval, std::optional<double> t0 = std::nullopt) {
    detail::check_nonzero_on_grid(
        [&](double t) { return g.eval_jet2(t).d1 * h.eval_jet2(t).d1; }, interval, "g'h'");
    NullCurve c;
    c.space = Space::R42;
    c.interval = interval;
    c.t0 = t0.value_or(interval.clamp_origin());
    c.jets = [g, h, om = double(omega)](double t) {
        Jet2 gj = g.eval_jet2(t), hj = h.eval_jet2(t);
        Jet2 f = detail::natural_factor(om, gj.d1 * hj.d1, gj.d2 * hj.d1 + gj.d1 * hj.d2);
        return detail::weier_components_r42(f, gj, hj);
    };
    return c;
}

/// Naturally parametrized curve in R31 generated by (g, omega):
/// alpha' = omega / (2 |g'|) (g^2+1, g^2-1, 2g).
inline NullCurve canonical_r31(const Expression& g, int omega, Interval interval,
                               std::optional<double> t0 = std::nullopt) {
    detail::check_nonzero_on_grid([&](double t) { return g.eval_jet2(t).d1; }, interval, "g'");
    NullCurve c;
    c.space = Space::R31;
    c.interval = interval;
    c.t0 = t0.value_or(interval.clamp_origin());
    c.jets = [g, om = double(omega)](double t) {
        Jet2 gj = g.eval_jet2(t);
        Jet2 f = detail::natural_factor(om, gj.d1 * gj.d1, 2.0 * gj.d1 * gj.d2);
        return detail::weier_components_r31(f, gj);
    };
    return c;
}

/// Sampled Weierstrass data extracted back from a curve; each component is
/// a jet-valued function of the original parameter.
struct WeierstrassSamplesR42 {
    std::function<Jet2(double)> f, g, h;
};

struct WeierstrassSamplesR31 {
    std::function<Jet2(double)> f, g;
};

/// Inverts the R42 representation: f = (xi1-xi2)/2, g = (xi4-xi3)/(xi1-xi2),
/// h = (xi4+xi3)/(xi1-xi2).  Requires xi1 - xi2 != 0 on the grid.
inline WeierstrassSamplesR42 weier_data_r42(const NullCurve& c) {
    if (c.space != Space::R42) throw std::invalid_argument("weier_data_r42 needs an R42 curve");
    detail::check_nonzero_on_grid(
        [&](double t) { auto d = c.derivative(t); return d[0] - d[1]; }, c.interval, "xi1 - xi2");
    auto jets = c.jets;
    WeierstrassSamplesR42 out;
    out.f = [jets](double t) { auto j = jets(t); return 0.5 * (j[0] - j[1]); };
    out.g = [jets](double t) { auto j = jets(t); return (j[3] - j[2]) / (j[0] - j[1]); };
    out.h = [jets](double t) { auto j = jets(t); return (j[3] + j[2]) / (j[0] - j[1]); };
    return out;
}

inline WeierstrassSamplesR31 weier_data_r31(const NullCurve& c) {
    if (c.space != Space::R31) throw std::invalid_argument("weier_data_r31 needs an R31 curve");
    detail::check_nonzero_on_grid(
        [&](double t) { auto d = c.derivative(t); return d[0] - d[1]; }, c.interval, "xi1 - xi2");
    auto jets = c.jets;
    WeierstrassSamplesR31 out;
    out.f = [jets](double t) { auto j = jets(t); return 0.5 * (j[0] - j[1]); };
    out.g = [jets](double t) { auto j = jets(t); return j[2] / (j[0] - j[1]); };
    return out;
}

struct NondegeneracyReport {
    bool nondegenerate = true;
    double witness = 0.0;  // a t with |alpha''^2| below tolerance, when degenerate
};

inline NondegeneracyReport is_nondegenerate(const NullCurve& c,
                                            double tol = kDegenerateTol) {
    for (double t : c.interval.grid(kValidationGridSize))
        if (std::fabs(accel_norm2(c, t)) <= tol) return {false, t};
    return {true, 0.0};
}

/// Monotone map t -> s onto the pseudo arc-length parameter, with inverse.
/// sign records whether alpha''^2 is positive (+1) or negative (-1) on the
/// curve; after reparametrization alpha''^2 = sign.
struct NaturalParamMap {
    std::function<double(double)> forward;
    std::function<double(double)> inverse;
    double sign = 1.0;
    Interval s_range;
};

/// s(t) = integral from t0 of |alpha''^2|^(1/4).
inline NaturalParamMap natural_param(const NullCurve& c, double t0) {
    auto report = is_nondegenerate(c);
    if (!report.nondegenerate)
        throw ValidationError("natural_param requires a nondegenerate curve", report.witness);
    auto speed = [c](double t) { return std::pow(std::fabs(accel_norm2(c, t)), 0.25); };
    auto forward = [c, speed, t0](double t) { return integrate(speed, t0, t); };
    double s_lo = forward(c.interval.a);
    double s_hi = forward(c.interval.b);
    Interval s_range{s_lo, s_hi};
    Interval t_range = c.interval;
    auto inverse = [forward, speed, t_range, s_range](double s) {
        if (s < s_range.a - 1e-9 || s > s_range.b + 1e-9)
            throw std::domain_error("natural parameter out of range");
        auto f = [&](double t) { return forward(t) - s; };
        if (f(t_range.a) >= 0.0) return t_range.a;
        if (f(t_range.b) <= 0.0) return t_range.b;
        return newton_bracketed(f, speed, t_range.a, t_range.b, 1e-12);
    };
    return {forward, inverse, accel_norm2(c, t0) > 0.0 ? 1.0 : -1.0, s_range};
}

/// alpha(t) by adaptive quadrature of alpha' from t0, anchored at the base
/// point.
inline std::array<double, 4> integrate_curve(const NullCurve& c, double t,
                                             double abs_tol = 1e-10) {
    std::array<double, 4> p = c.base;
    for (int i = 0; i < c.dim(); ++i)
        p[i] += integrate([&c, i](double u) { return c.derivative(u)[i]; }, c.t0, t, abs_tol);
    return p;
}

/// The curve re-expressed in its natural parameter, s = 0 at t0.  Third
/// derivatives of the source data are consumed by the chain rule, so the
/// resulting jets carry NaN in d2.
inline NullCurve reparametrize_natural(const NullCurve& c, double t0) {
    NaturalParamMap map = natural_param(c, t0);
    NullCurve r;
    r.space = c.space;
    r.interval = map.s_range;
    r.t0 = 0.0;
    auto src = c;
    r.jets = [src, map](double s) {
        double t = map.inverse(s);
        auto j = src.jets(t);
        int n = dimension(src.space);
        // q = |alpha''^2|^(1/4), dt/ds = 1/q, d2t/ds2 = -q'/q^3
        double a2 = 0.0, a2p = 0.0;
        for (int i = 0; i < n; ++i) {
            a2 += metric_sign(src.space, i) * j[i].d1 * j[i].d1;
            a2p += 2.0 * metric_sign(src.space, i) * j[i].d1 * j[i].d2;
        }
        double q = std::pow(std::fabs(a2), 0.25);
        double qp = 0.25 * std::pow(std::fabs(a2), -0.75) * (a2 > 0.0 ? a2p : -a2p);
        double tp = 1.0 / q;
        double tpp = -qp / (q * q * q);
        std::array<Jet2, 4> out{};
        for (int i = 0; i < n; ++i) {
            out[i].v = j[i].v * tp;
            out[i].d1 = j[i].d1 * tp * tp + j[i].v * tpp;
            out[i].d2 = std::numeric_limits<double>::quiet_NaN();
        }
        return out;
    };
    r.base = integrate_curve(c, t0);  // alpha(t0) becomes the new base point
    return r;
}

/// hat alpha(t) = A alpha(t) + b; derivatives transform linearly.
inline NullCurve apply_motion_to_curve(const NullCurve& c, const MotionR31& m) {
    if (c.space != Space::R31)
        throw std::invalid_argument("motion space mismatch: R31 motion on a non-R31 curve");
    NullCurve r = c;
    auto src = c.jets;
    Mat3 A = m.A;
    r.jets = [src, A](double t) {
        auto j = src(t);
        std::array<Jet2, 4> out{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) out[i] = out[i] + A(i, k) * j[k];
        return out;
    };
    Vec3L base = m.apply(Vec3L{{c.base[0], c.base[1], c.base[2]}});
    r.base = {base[0], base[1], base[2], 0.0};
    return r;
}

inline NullCurve apply_motion_to_curve(const NullCurve& c, const MotionR42& m) {
    if (c.space != Space::R42)
        throw std::invalid_argument("motion space mismatch: R42 motion on a non-R42 curve");
    NullCurve r = c;
    auto src = c.jets;
    Mat4 A = m.A;
    r.jets = [src, A](double t) {
        auto j = src(t);
        std::array<Jet2, 4> out{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) out[i] = out[i] + A(i, k) * j[k];
        return out;
    };
    Vec4L base = m.apply(Vec4L{{c.base[0], c.base[1], c.base[2], c.base[3]}});
    r.base = {base[0], base[1], base[2], base[3]};
    return r;
}

/// Embeds an R31 curve into R42 as (x1, x2, 0, x3).
inline NullCurve embed_curve_r42(const NullCurve& c) {
    if (c.space != Space::R31) throw std::invalid_argument("embed_curve_r42 needs an R31 curve");
    NullCurve r;
    r.space = Space::R42;
    r.interval = c.interval;
    r.t0 = c.t0;
    r.base = {c.base[0], c.base[1], 0.0, c.base[2]};
    auto src = c.jets;
    r.jets = [src](double t) {
        auto j = src(t);
        return std::array<Jet2, 4>{j[0], j[1], Jet2{}, j[2]};
    };
    return r;
}

/// t -> -alpha(t); used for conjugate surfaces.
inline NullCurve negate_curve(const NullCurve& c) {
    NullCurve r = c;
    auto src = c.jets;
    r.jets = [src](double t) {
        auto j = src(t);
        return std::array<Jet2, 4>{-j[0], -j[1], -j[2], -j[3]};
    };
    for (int i = 0; i < 4; ++i) r.base[i] = -c.base[i];
    return r;
}

}  // namespace lw
