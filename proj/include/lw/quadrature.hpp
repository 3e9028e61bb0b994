#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lw {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// 15-point Kronrod nodes (positive half) with weights, and the embedded
// 7-point Gauss weights on the shared nodes.
inline constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01,
};

inline constexpr double kKronrodWeights[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02,
};

// Gauss weights for nodes 0, 2, 4, 6 of the Kronrod set.
inline constexpr double kGaussWeights[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01,
};

struct PanelEstimate {
    double integral;
    double error;
};

template <typename F>
PanelEstimate gauss_kronrod_15(F&& f, double a, double b) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double fc = f(mid);
    double kron = kKronrodWeights[0] * fc;
    double gauss = kGaussWeights[0] * fc;
    for (int i = 1; i < 8; ++i) {
        double lo = f(mid - half * kKronrodNodes[i]);
        double hi = f(mid + half * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * (lo + hi);
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * (lo + hi);
    }
    kron *= half;
    gauss *= half;
    double diff = std::fabs(kron - gauss);
    // standard QUADPACK-style error sharpening
    double err = diff > 0.0 ? std::pow(200.0 * diff, 1.5) : 0.0;
    if (err > diff) err = diff;
    return {kron, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to the given
/// absolute tolerance.  Throws QuadratureError past the subdivision cap.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                 size_t max_subdivisions = 100000) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }

    struct Panel { double a, b; detail::PanelEstimate est; };
    std::vector<Panel> panels;
    panels.push_back({a, b, detail::gauss_kronrod_15(f, a, b)});
    size_t splits = 0;
    for (;;) {
        double total_err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].est.error;
            if (panels[i].est.error > panels[worst].est.error) worst = i;
        }
        if (total_err <= abs_tol) break;
        if (++splits > max_subdivisions)
            throw QuadratureError("quadrature failed to converge (subdivision cap reached)");
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            throw QuadratureError("quadrature panel collapsed (non-integrable singularity?)");
        panels[worst] = {p.a, mid, detail::gauss_kronrod_15(f, p.a, mid)};
        panels.push_back({mid, p.b, detail::gauss_kronrod_15(f, mid, p.b)});
    }
    double total = 0.0;
    for (const auto& p : panels) total += p.est.integral;
    return sign * total;
}

struct RootFindError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solve f(x) = 0 on a bracket [lo, hi] with f(lo), f(hi) of opposite sign
/// (or zero).  Newton steps using df, with bisection whenever the step
/// leaves the bracket.
template <typename F, typename DF>
double newton_bracketed(F&& f, DF&& df, double lo, double hi, double tol = 1e-12,
                        int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw RootFindError("root is not bracketed");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) { lo = x; flo = fx; }
        else { hi = x; fhi = fx; }
        double d = df(x);
        double step = d != 0.0 ? fx / d : 0.0;
        double next = x - step;
        if (d == 0.0 || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= tol) return next;
        x = next;
    }
    throw RootFindError("root finder did not converge");
}

}  // namespace lw
