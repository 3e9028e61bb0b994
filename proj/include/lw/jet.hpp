#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lw {

/// Raised when an expression is evaluated outside its real domain
/// (pole, sqrt of a negative, ln of a non-positive, |x| at x = 0, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated second-order Taylor jet: value, first and second derivative
/// of a scalar function of one variable at a point.  Arithmetic follows
/// the product, quotient and chain rules, so evaluating an expression on
/// jets yields its exact derivatives (up to round-off).
struct Jet2 {
    double v  = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    static Jet2 constant(double c) { return {c, 0.0, 0.0}; }
    static Jet2 variable(double t) { return {t, 1.0, 0.0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

inline Jet2 operator*(double c, const Jet2& a) { return {c * a.v, c * a.d1, c * a.d2}; }
inline Jet2 operator*(const Jet2& a, double c) { return c * a; }

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw DomainError("division by zero");
    double q  = a.v / b.v;
    double q1 = (a.d1 - q * b.d1) / b.v;
    double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
    return {q, q1, q2};
}

/// Lift a scalar function with known first/second derivative through a jet:
/// (f(u), f'(u) u', f''(u) u'^2 + f'(u) u'').
inline Jet2 lift(const Jet2& u, double f, double df, double ddf) {
    return {f, df * u.d1, ddf * u.d1 * u.d1 + df * u.d2};
}

inline Jet2 sin(const Jet2& u)  { return lift(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v)); }
inline Jet2 cos(const Jet2& u)  { return lift(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v)); }
inline Jet2 exp(const Jet2& u)  { double e = std::exp(u.v); return lift(u, e, e, e); }
inline Jet2 sinh(const Jet2& u) { return lift(u, std::sinh(u.v), std::cosh(u.v), std::sinh(u.v)); }
inline Jet2 cosh(const Jet2& u) { return lift(u, std::cosh(u.v), std::sinh(u.v), std::cosh(u.v)); }

inline Jet2 tan(const Jet2& u) {
    double c = std::cos(u.v);
    if (c == 0.0) throw DomainError("tan at a pole");
    double t = std::tan(u.v);
    double s2 = 1.0 + t * t;              // sec^2
    return lift(u, t, s2, 2.0 * t * s2);
}

inline Jet2 tanh(const Jet2& u) {
    double t = std::tanh(u.v);
    double s2 = 1.0 - t * t;
    return lift(u, t, s2, -2.0 * t * s2);
}

inline Jet2 ln(const Jet2& u) {
    if (u.v <= 0.0) throw DomainError("ln of a non-positive value");
    return lift(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}

inline Jet2 sqrt(const Jet2& u) {
    if (u.v < 0.0) throw DomainError("sqrt of a negative value");
    if (u.v == 0.0) throw DomainError("sqrt at zero (derivative undefined)");
    double s = std::sqrt(u.v);
    return lift(u, s, 0.5 / s, -0.25 / (s * u.v));
}

inline Jet2 abs(const Jet2& u) {
    if (u.v == 0.0) throw DomainError("abs at zero (derivative undefined)");
    double s = u.v > 0.0 ? 1.0 : -1.0;
    return {s * u.v, s * u.d1, s * u.d2};
}

/// Integer power by repeated multiplication; valid for any base sign.
inline Jet2 powi(const Jet2& a, long n) {
    if (n == 0) return Jet2::constant(1.0);
    if (n < 0) return Jet2::constant(1.0) / powi(a, -n);
    Jet2 r = a;
    for (long i = 1; i < n; ++i) r = r * a;
    return r;
}

/// General power a^b = exp(b ln a); requires a > 0 unless the exponent is
/// a constant integer (those are dispatched to powi by the evaluator).
inline Jet2 pow(const Jet2& a, const Jet2& b) {
    if (b.d1 == 0.0 && b.d2 == 0.0) {
        double n = std::round(b.v);
        if (n == b.v && std::fabs(n) <= 64.0) return powi(a, static_cast<long>(n));
    }
    if (a.v <= 0.0) throw DomainError("power with non-positive base and non-integer exponent");
    return exp(b * ln(a));
}

}  // namespace lw
