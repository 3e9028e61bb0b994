#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "lw/expr.hpp"

namespace lw {

enum class Space { R31, R42 };

inline int dimension(Space s) { return s == Space::R31 ? 3 : 4; }

/// Metric signature: R31 is (-,+,+), R42 is (-,+,-,+).
inline double metric_sign(Space s, int i) {
    if (s == Space::R31) return i == 0 ? -1.0 : 1.0;
    return (i % 2 == 0) ? -1.0 : 1.0;
}

struct Vec3L {
    std::array<double, 3> c{};
    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }
};

struct Vec4L {
    std::array<double, 4> c{};
    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }
};

inline double dot3(const Vec3L& a, const Vec3L& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double dot4(const Vec4L& a, const Vec4L& b) {
    return -a[0] * b[0] + a[1] * b[1] - a[2] * b[2] + a[3] * b[3];
}

/// R31 sits inside R42 as the hyperplane x3 = 0; the embedding preserves
/// the scalar product.
inline Vec4L embed_r31(const Vec3L& v) { return Vec4L{{v[0], v[1], 0.0, v[2]}}; }

template <int N>
struct MatL {
    std::array<std::array<double, N>, N> m{};

    static MatL identity() {
        MatL r;
        for (int i = 0; i < N; ++i) r.m[i][i] = 1.0;
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    friend MatL operator*(const MatL& a, const MatL& b) {
        MatL r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double s = 0.0;
                for (int k = 0; k < N; ++k) s += a.m[i][k] * b.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    std::array<double, N> apply(const std::array<double, N>& v) const {
        std::array<double, N> r{};
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) r[i] += m[i][k] * v[k];
        return r;
    }

    friend MatL operator-(const MatL& a) {
        MatL r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.m[i][j] = -a.m[i][j];
        return r;
    }

    double det() const {
        // Gaussian elimination with partial pivoting; N is 3 or 4.
        auto a = m;
        double d = 1.0;
        for (int col = 0; col < N; ++col) {
            int piv = col;
            for (int r = col + 1; r < N; ++r)
                if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
            if (a[piv][col] == 0.0) return 0.0;
            if (piv != col) { std::swap(a[piv], a[col]); d = -d; }
            d *= a[col][col];
            for (int r = col + 1; r < N; ++r) {
                double f = a[r][col] / a[col][col];
                for (int j = col; j < N; ++j) a[r][j] -= f * a[col][j];
            }
        }
        return d;
    }
};

using Mat3 = MatL<3>;
using Mat4 = MatL<4>;

inline constexpr double kIsometryTol = 1e-10;

namespace detail {

// max |A^T eta A - sign*eta| entrywise
template <int N>
double isometry_defect(const MatL<N>& A, Space space, double sign) {
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            for (int k = 0; k < N; ++k)
                s += A.m[k][i] * metric_sign(space, k) * A.m[k][j];
            double want = (i == j) ? sign * metric_sign(space, i) : 0.0;
            worst = std::max(worst, std::fabs(s - want));
        }
    return worst;
}

}  // namespace detail

/// Rigid motion x -> Ax + b of R31.  A must satisfy A^T eta A = eta with
/// eta = diag(-1,1,1); the flags are derived from A.
struct MotionR31 {
    Mat3 A;
    Vec3L b;
    bool proper = true;        // det A = +1
    bool orthochronous = true; // A(0,0) >= 1, time orientation preserved

    static MotionR31 make(const Mat3& A, const Vec3L& b = {}) {
        if (detail::isometry_defect(A, Space::R31, 1.0) > kIsometryTol)
            throw std::invalid_argument("matrix is not an isometry of R31");
        MotionR31 m;
        m.A = A;
        m.b = b;
        m.proper = A.det() > 0.0;
        m.orthochronous = A(0, 0) >= 1.0 - kIsometryTol;
        return m;
    }

    Vec3L apply(const Vec3L& v) const {
        auto w = A.apply(v.c);
        return Vec3L{{w[0] + b[0], w[1] + b[1], w[2] + b[2]}};
    }
};

/// Rigid motion (or orientation-preserving anti-isometry) x -> Ax + b of
/// R42.  Isometries satisfy A^T eta A = eta, anti-isometries
/// A^T eta A = -eta, with eta = diag(-1,1,-1,1).
struct MotionR42 {
    Mat4 A;
    Vec4L b;
    bool proper = true;
    bool anti_isometry = false;

    static MotionR42 make(const Mat4& A, const Vec4L& b = {}) {
        bool anti;
        if (detail::isometry_defect(A, Space::R42, 1.0) <= kIsometryTol) anti = false;
        else if (detail::isometry_defect(A, Space::R42, -1.0) <= kIsometryTol) anti = true;
        else throw std::invalid_argument("matrix is neither an isometry nor an anti-isometry of R42");
        MotionR42 m;
        m.A = A;
        m.b = b;
        m.anti_isometry = anti;
        m.proper = A.det() > 0.0;
        if (anti && !m.proper)
            throw std::invalid_argument("anti-isometry must be orientation-preserving (det > 0)");
        return m;
    }

    Vec4L apply(const Vec4L& v) const {
        auto w = A.apply(v.c);
        return Vec4L{{w[0] + b[0], w[1] + b[1], w[2] + b[2], w[3] + b[3]}};
    }
};

/// 2x2 real matrix acting on Weierstrass data; the spinor map requires
/// det = +-1.
struct SpinMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }

    friend SpinMatrix operator*(const SpinMatrix& x, const SpinMatrix& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

/// Two-to-one homomorphism SL(2,R) -> SO+(2,1) by conjugation under the
/// correspondence x <-> S = [[-x3, x2+x1], [x2-x1, x3]].  Matrices with
/// det = -1 are also accepted; their image lies in the proper
/// non-orthochronous component.
inline MotionR31 spinor_to_so21(const SpinMatrix& B) {
    double det = B.det();
    if (std::fabs(std::fabs(det) - 1.0) > 1e-9)
        throw std::invalid_argument("spinor map requires det = +-1, got det = " + std::to_string(det));
    // B^{-1}
    double ia = B.d / det, ib = -B.b / det, ic = -B.c / det, id = B.a / det;
    Mat3 A;
    for (int j = 0; j < 3; ++j) {
        Vec3L e{};
        e[j] = 1.0;
        // S(e)
        double s11 = -e[2], s12 = e[1] + e[0];
        double s21 = e[1] - e[0], s22 = e[2];
        // B S B^{-1}
        double t11 = B.a * s11 + B.b * s21, t12 = B.a * s12 + B.b * s22;
        double t21 = B.c * s11 + B.d * s21, t22 = B.c * s12 + B.d * s22;
        double u11 = t11 * ia + t12 * ic, u12 = t11 * ib + t12 * id;
        double u21 = t21 * ia + t22 * ic, u22 = t21 * ib + t22 * id;
        // invert the correspondence
        A(0, j) = (u12 - u21) / 2.0;
        A(1, j) = (u12 + u21) / 2.0;
        A(2, j) = (u22 - u11) / 2.0;
    }
    return MotionR31::make(A);
}

enum class MotionKind {
    ProperOrthochronous,
    ProperNonOrthochronous,
    NonProperOrthochronous,
    NonProperNonOrthochronous,
};

inline double required_det(MotionKind k) {
    switch (k) {
    case MotionKind::ProperOrthochronous:      return 1.0;
    case MotionKind::ProperNonOrthochronous:   return -1.0;
    case MotionKind::NonProperOrthochronous:   return -1.0;
    case MotionKind::NonProperNonOrthochronous: return 1.0;
    }
    return 0.0;
}

/// Transformation law of (f, g) Weierstrass data under a motion of R31,
/// built syntactically: g -> (a g + b)/(c g + d), f -> +-f (c g + d)^2
/// with the sign set by the motion kind.
inline std::pair<Expression, Expression> mobius_on_weierstrass(const Expression& f,
                                                               const Expression& g,
                                                               const SpinMatrix& B,
                                                               MotionKind kind) {
    double want = required_det(kind);
    if (std::fabs(B.det() - want) > 1e-9)
        throw std::invalid_argument("determinant/kind mismatch: kind requires det = " +
                                    std::to_string(want) + ", got " + std::to_string(B.det()));
    const std::string& var = g.variable();
    auto konst = [&](double v) { return Expression::constant(v, var); };
    Expression denom = konst(B.c) * g + konst(B.d);
    Expression g_hat = (konst(B.a) * g + konst(B.b)) / denom;
    Expression f_hat = f * denom.squared();
    bool negate = kind == MotionKind::ProperNonOrthochronous ||
                  kind == MotionKind::NonProperNonOrthochronous;
    if (negate) f_hat = f_hat.negated();
    return {f_hat, g_hat};
}

/// The linear motion of R31 realizing a given (B, kind) pair, i.e. the A
/// with curve(mobius data)' = A curve(data)'.  Conjugation by B covers the
/// proper kinds; the non-proper kinds differ from them by -I.
inline MotionR31 motion_for_mobius(const SpinMatrix& B, MotionKind kind) {
    MotionR31 m = spinor_to_so21(B);
    if (kind == MotionKind::NonProperOrthochronous ||
        kind == MotionKind::NonProperNonOrthochronous)
        return MotionR31::make(-m.A);
    return m;
}

/// Pseudo-rotation by angle phi in the coordinate plane (i, j).  When the
/// two axes carry opposite metric signs this is a boost.
inline Mat4 plane_rotation_r42(int i, int j, double phi) {
    Mat4 A = Mat4::identity();
    if (metric_sign(Space::R42, i) != metric_sign(Space::R42, j)) {
        A(i, i) = std::cosh(phi);
        A(j, j) = std::cosh(phi);
        A(i, j) = std::sinh(phi);
        A(j, i) = std::sinh(phi);
    } else {
        A(i, i) = std::cos(phi);
        A(j, j) = std::cos(phi);
        A(i, j) = -std::sin(phi);
        A(j, i) = std::sin(phi);
    }
    return A;
}

/// Seeded product of pseudo-rotations in the (1,2), (3,4), (1,4), (2,3)
/// coordinate planes plus a random translation.  Always det = +1.
inline MotionR42 random_proper_motion_r42(uint64_t seed, double amplitude = 0.5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-amplitude, amplitude);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    Mat4 A = plane_rotation_r42(0, 1, angle(rng));
    A = A * plane_rotation_r42(2, 3, angle(rng));
    A = A * plane_rotation_r42(0, 3, angle(rng));
    A = A * plane_rotation_r42(1, 2, angle(rng));
    Vec4L b{{shift(rng), shift(rng), shift(rng), shift(rng)}};
    return MotionR42::make(A, b);
}

/// The standard orientation-preserving anti-isometry of R42:
/// (x1,x2,x3,x4) -> (x2,x1,x4,x3).  It satisfies A^T eta A = -eta and
/// det A = +1; composing with proper motions yields further ones.
inline MotionR42 standard_anti_isometry_r42() {
    Mat4 A;
    A(0, 1) = 1.0;
    A(1, 0) = 1.0;
    A(2, 3) = 1.0;
    A(3, 2) = 1.0;
    return MotionR42::make(A);
}

}  // namespace lw
