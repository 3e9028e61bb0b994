#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "lw/scene.hpp"

namespace lw {

/// Deterministic shortest-round-trip float formatting shared by all
/// writers, so identical inputs give byte-identical files.
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Worker count: LW_THREADS if set (minimum 1), else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("LW_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n) on the worker pool; any exception is
/// rethrown on the caller's thread.  Output order is the caller's concern
/// (workers write disjoint slots).
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

enum class Projection { Drop1, Drop2, Drop3, Drop4 };

inline Projection parse_projection(const std::string& s) {
    if (s == "drop1") return Projection::Drop1;
    if (s == "drop2") return Projection::Drop2;
    if (s == "drop3") return Projection::Drop3;
    if (s == "drop4") return Projection::Drop4;
    throw std::invalid_argument("projection must be one of drop1..drop4");
}

inline std::array<double, 3> project(const std::array<double, 4>& x, Projection p) {
    switch (p) {
    case Projection::Drop1: return {x[1], x[2], x[3]};
    case Projection::Drop2: return {x[0], x[2], x[3]};
    case Projection::Drop3: return {x[0], x[1], x[3]};
    case Projection::Drop4: return {x[0], x[1], x[2]};
    }
    return {};
}

/// Samples the surface on an n1 x n2 grid (rows evaluated in parallel,
/// assembled in order).
inline std::vector<std::array<double, 4>> sample_surface(const MinimalSurface& s, int n1, int n2) {
    auto g1 = s.domain.t1.grid(n1);
    auto g2 = s.domain.t2.grid(n2);
    std::vector<std::array<double, 4>> pts(size_t(n1) * n2);
    parallel_for(g1.size(), [&](size_t i) {
        for (int j = 0; j < n2; ++j) pts[i * n2 + j] = s.evaluate(g1[i], g2[j]);
    });
    return pts;
}

/// Wavefront OBJ: n1*n2 vertices, (n1-1)(n2-1)*2 triangular faces.
inline std::string surface_to_obj(const MinimalSurface& s, int n1, int n2, Projection proj) {
    auto pts = sample_surface(s, n1, n2);
    std::string out;
    out += "# minimal Lorentz surface mesh, " + std::to_string(n1) + "x" + std::to_string(n2) +
           " grid\n";
    for (const auto& x : pts) {
        auto p = project(x, proj);
        out += "v " + fmt(p[0]) + " " + fmt(p[1]) + " " + fmt(p[2]) + "\n";
    }
    for (int i = 0; i + 1 < n1; ++i)
        for (int j = 0; j + 1 < n2; ++j) {
            int a = i * n2 + j + 1;  // OBJ indices are 1-based
            int b = a + n2;
            out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
                   std::to_string(a + 1) + "\n";
            out += "f " + std::to_string(b) + " " + std::to_string(b + 1) + " " +
                   std::to_string(a + 1) + "\n";
        }
    return out;
}

/// CSV table t1, t2, x1..x4, F, K, kappa, type.  The type column repeats
/// the surface-level classification (or "-" when not classified).
inline std::string surface_to_csv(const SurfaceModel& model, int n1, int n2) {
    const MinimalSurface& s = model.surface;
    auto g1 = s.domain.t1.grid(n1);
    auto g2 = s.domain.t2.grid(n2);
    std::string type_txt = model.type ? to_string(*model.type) : "-";
    std::vector<std::string> rows(size_t(n1) * n2);
    parallel_for(g1.size(), [&](size_t i) {
        for (int j = 0; j < n2; ++j) {
            auto x = s.evaluate(g1[i], g2[j]);
            double F = first_form_F(s, g1[i], g2[j]);
            CurvaturePair c = model.curvatures(g1[i], g2[j]);
            std::string& row = rows[i * n2 + j];
            row = fmt(g1[i]) + "," + fmt(g2[j]);
            for (int k = 0; k < 4; ++k) row += "," + fmt(x[k]);
            row += "," + fmt(F) + "," + fmt(c.K) + "," + fmt(c.kappa) + "," + type_txt + "\n";
        }
    });
    std::string out = "t1,t2,x1,x2,x3,x4,F,K,kappa,type\n";
    for (const auto& r : rows) out += r;
    return out;
}

/// CSV table t, alpha, alpha', alpha''^2, s for a single null curve.  The
/// s column is the natural parameter anchored at the curve's t0; it is NaN
/// when the curve degenerates somewhere on the interval.
inline std::string curve_to_csv(const NullCurve& c, int n) {
    auto grid = c.interval.grid(n);
    std::function<double(double)> s_of;
    try {
        auto map = natural_param(c, c.t0);
        s_of = map.forward;
    } catch (const ValidationError&) {
        s_of = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    }
    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        double t = grid[i];
        auto a = integrate_curve(c, t);
        auto d = c.derivative(t);
        std::string& row = rows[i];
        row = fmt(t);
        for (int k = 0; k < 4; ++k) row += "," + fmt(a[k]);
        for (int k = 0; k < 4; ++k) row += "," + fmt(d[k]);
        row += "," + fmt(accel_norm2(c, t)) + "," + fmt(s_of(t)) + "\n";
    });
    std::string out = "t,x1,x2,x3,x4,dx1,dx2,dx3,dx4,accel_norm2,s\n";
    for (const auto& r : rows) out += r;
    return out;
}

/// JSON variant of the surface table; same values as the CSV.
inline json surface_to_json(const SurfaceModel& model, int n1, int n2) {
    const MinimalSurface& s = model.surface;
    auto g1 = s.domain.t1.grid(n1);
    auto g2 = s.domain.t2.grid(n2);
    json rows = json::array();
    for (double u : g1)
        for (double v : g2) {
            auto x = s.evaluate(u, v);
            CurvaturePair c = model.curvatures(u, v);
            rows.push_back({{"t1", u},
                            {"t2", v},
                            {"x", {x[0], x[1], x[2], x[3]}},
                            {"F", first_form_F(s, u, v)},
                            {"K", c.K},
                            {"kappa", c.kappa}});
        }
    json out;
    out["grid"] = {n1, n2};
    if (model.type) out["type"] = to_string(*model.type);
    out["points"] = std::move(rows);
    return out;
}

}  // namespace lw
