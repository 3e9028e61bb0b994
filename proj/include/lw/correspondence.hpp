#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "lw/null_curve.hpp"
#include "lw/surface.hpp"

namespace lw {

/// The ordered pair of R31 surfaces corresponding to an R42 surface in
/// canonical coordinates: m_g carries the g-data, m_h the h-data, over a
/// shared parameter rectangle.
struct SurfacePair {
    CanonicalSurfaceDataR31 m_g;
    CanonicalSurfaceDataR31 m_h;
};

/// Splits a naturally parametrized R42 null curve given by (g, h) into the
/// pair of R31 curves generated by g and by h.  Both representatives are
/// emitted with omega = +1; the +- ambiguity is a non-proper motion.
inline std::pair<NullCurve, NullCurve> split_curve(const Expression& g, const Expression& h,
                                                   int /*omega*/, Interval interval) {
    return {canonical_r31(g, 1, interval), canonical_r31(h, 1, interval)};
}

/// (M, p) -> ((M_g, p_g), (M_h, p_h)) at the data level.
inline SurfacePair split_surface(const CanonicalSurfaceDataR42& data) {
    SurfacePair pair;
    pair.m_g = CanonicalSurfaceDataR31{data.g1, data.g2, 1, 1, data.domain};
    pair.m_h = CanonicalSurfaceDataR31{data.h1, data.h2, 1, 1, data.domain};
    return pair;
}

/// Inverse of split_surface; validates the cross conditions
/// g1(t1) != g2(t2) and h1(t1) != h2(t2) on the product grid.
inline CanonicalSurfaceDataR42 merge_surfaces(const SurfacePair& pair, int omega1, int omega2) {
    const Rect& dom = pair.m_g.domain;
    auto check_cross = [&](const Expression& a, const Expression& b, const char* what) {
        auto grid1 = dom.t1.grid(kValidationGridSize);
        auto grid2 = dom.t2.grid(kValidationGridSize);
        std::vector<double> bv(grid2.size());
        for (size_t j = 0; j < grid2.size(); ++j) bv[j] = b.eval_value(grid2[j]);
        for (double u : grid1) {
            double av = a.eval_value(u);
            for (size_t j = 0; j < grid2.size(); ++j) {
                double v = grid2[j];
                if (std::fabs(av - bv[j]) <= kDegenerateTol)
                    throw ValidationError(std::string(what) + "1(t1) = " + what +
                                              "2(t2) on the product grid at t2 = " +
                                              std::to_string(v),
                                          u);
            }
        }
    };
    check_cross(pair.m_g.g1, pair.m_g.g2, "g");
    check_cross(pair.m_h.g1, pair.m_h.g2, "h");
    return CanonicalSurfaceDataR42{pair.m_g.g1, pair.m_h.g1, pair.m_g.g2, pair.m_h.g2,
                                   omega1, omega2, dom};
}

/// (K, kappa) of the R42 surface from the Gauss curvatures of its factor
/// pair:
///   first/second type:  K     = eta (|Kg Kh|)^(1/4) (sqrt|Kg| + sqrt|Kh|)/2
///                       kappa = eta (|Kg Kh|)^(1/4) (sqrt|Kg| - sqrt|Kh|)/2
///   third type swaps the two combinations; eta is read off the target
///   surface (sign of K for types 1/2, sign of kappa for type 3).
inline CurvaturePair curvature_relation(double K_g, double K_h, SurfaceType type, int eta) {
    if (K_g == 0.0 || K_h == 0.0)
        throw std::invalid_argument("curvature_relation requires nonzero factor curvatures");
    double root4 = std::pow(std::fabs(K_g * K_h), 0.25);
    double sum = (std::sqrt(std::fabs(K_g)) + std::sqrt(std::fabs(K_h))) / 2.0;
    double diff = (std::sqrt(std::fabs(K_g)) - std::sqrt(std::fabs(K_h))) / 2.0;
    if (type == SurfaceType::Third) return {eta * root4 * diff, eta * root4 * sum};
    return {eta * root4 * sum, eta * root4 * diff};
}

/// Image of the split under an orientation-preserving anti-isometry of
/// R42: the h-factors change sign, the g-factors are untouched.  The
/// resulting M_{-h} differs from M_h only by a motion of R31, so its Gauss
/// curvature field is unchanged.
inline SurfacePair anti_isometry_split(const CanonicalSurfaceDataR42& data) {
    SurfacePair pair = split_surface(data);
    pair.m_h.g1 = pair.m_h.g1.negated();
    pair.m_h.g2 = pair.m_h.g2.negated();
    return pair;
}

/// sqrt|K_g| = 4 |g1'g2'| / (g1-g2)^2, the link between the R31 canonical
/// curvature and the curvature relation.
inline double sqrt_abs_K_r31(const CanonicalSurfaceDataR31& d, double t1, double t2) {
    Jet2 g1 = d.g1.eval_jet2(t1), g2 = d.g2.eval_jet2(t2);
    double dg = g1.v - g2.v;
    if (dg == 0.0) throw DomainError("g1(t1) = g2(t2) at the evaluation point");
    return 4.0 * std::fabs(g1.d1 * g2.d1) / (dg * dg);
}

/// |F_g| for an R31 factor: (g1-g2)^2 / (8 |g1'g2'|).
inline double abs_F_r31(const CanonicalSurfaceDataR31& d, double t1, double t2) {
    Jet2 g1 = d.g1.eval_jet2(t1), g2 = d.g2.eval_jet2(t2);
    double prod = std::fabs(g1.d1 * g2.d1);
    if (prod == 0.0) throw DomainError("g' vanishes at the evaluation point");
    double dg = g1.v - g2.v;
    return dg * dg / (8.0 * prod);
}

}  // namespace lw
