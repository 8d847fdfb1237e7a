#pragma once

#include <absnorm/boundary.hpp>
#include <absnorm/norm.hpp>

#include <algorithm>
#include <cmath>

namespace absnorm {

inline constexpr int kDualGrid = 1024;

// ||g||_{E*} = max over the unit sphere of |A x + B y|.
//
// On the sphere y = +-f(x), so the maximum is that of |A| x + |B| f(x) over
// x in [0, 1] (f is even). The objective is concave, hence a dense grid
// followed by golden-section refinement around the best grid point finds the
// global maximum.
inline double dual_norm(const BoundaryCurve& curve, Functional g, int grid = kDualGrid) {
    if (grid < 2) throw DomainError("dual_norm: grid must be at least 2");
    if (!std::isfinite(g.A) || !std::isfinite(g.B)) throw DomainError("dual_norm: non-finite functional");
    const double a = std::abs(g.A), b = std::abs(g.B);
    if (a == 0.0 && b == 0.0) return 0.0;
    if (b == 0.0) return a;

    auto grid_obj = [&](int i) {
        const double x = i == grid ? 1.0 : static_cast<double>(i) / grid;
        return a * x + b * curve(x);
    };
    int best = 0;
    double best_val = grid_obj(0);
    for (int i = 1; i <= grid; ++i) {
        const double v = grid_obj(i);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    auto obj = [&](double x) { return a * x + b * curve.uncached(x); };
    double lo = static_cast<double>(std::max(best - 1, 0)) / grid;
    double hi = std::min(static_cast<double>(best + 1) / grid, 1.0);
    constexpr double kInvPhi = 0.6180339887498948482;
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = obj(x1), f2 = obj(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = obj(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = obj(x1);
        }
    }
    return std::max({best_val, f1, f2});
}

inline double dual_norm(const NormSpec& spec, Functional g, int grid = kDualGrid) {
    return dual_norm(BoundaryCurve(spec), g, grid);
}

} // namespace absnorm
