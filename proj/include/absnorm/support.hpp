#pragma once

// Support functionals S_E(x) at points (x, f_E(x)) of the unit sphere.
//
// Interior points: S_E(x0) is exactly the family
//     g_a(x, y) = (a x - y) / (a x0 - f(x0)),   a in [f'_+(x0), f'_-(x0)],
// so the norm is Gateaux differentiable at (x0, f(x0)) iff f is
// differentiable at x0, with derivative g_{f'(x0)}.
//
// Endpoints: with a = inf_{[0,1)} f'_- and f1 = f(1), S_E(1) falls into one of
//   ii   f1 = 1 (a = 0, the l^inf norm):  { (A,B) : A,B >= 0, A + B = 1 }
//   iii  a = -inf:                       { (1,0) }
//   iv   f1 > 0, -inf < a < 0:           { (c/(c-f1), -1/(c-f1)) : c <= a } u { (1,0) }
//   v    f1 = 0, -inf < a < 0:           { (1, +-1/c) : c <= a } u { (1,0) }
// and the left endpoint follows by the reflection (A,B) -> (-A,B).
// Case i covers the smooth points (1, b), |b| < f1, of a vertical edge.

#include <absnorm/boundary.hpp>
#include <absnorm/error.hpp>
#include <absnorm/norm.hpp>
#include <absnorm/tolerances.hpp>
#include <absnorm/tri.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace absnorm {

enum class Smoothness { smooth, corner, undecided };

constexpr std::string_view to_string(Smoothness s) noexcept {
    switch (s) {
    case Smoothness::smooth: return "smooth";
    case Smoothness::corner: return "corner";
    case Smoothness::undecided: return "undecided";
    }
    return "undecided";
}

constexpr Smoothness to_smoothness(Tri differentiable) noexcept {
    return differentiable == Tri::yes  ? Smoothness::smooth
           : differentiable == Tri::no ? Smoothness::corner
                                       : Smoothness::undecided;
}

constexpr Tri to_tri(Smoothness s) noexcept {
    return s == Smoothness::smooth ? Tri::yes : s == Smoothness::corner ? Tri::no : Tri::undecided;
}

enum class EndpointCase { i, ii, iii, iv, v };

constexpr std::string_view to_string(EndpointCase c) noexcept {
    switch (c) {
    case EndpointCase::i: return "i";
    case EndpointCase::ii: return "ii";
    case EndpointCase::iii: return "iii";
    case EndpointCase::iv: return "iv";
    case EndpointCase::v: return "v";
    }
    return "?";
}

inline constexpr int kSupportSamples = 33;
inline constexpr double kSideConditionSlack = 1e-10;

struct SupportLocation {
    bool interior = true;
    double x0 = 0.0;             // interior
    Side side = Side::right;     // endpoint
};

struct SupportSet {
    SupportLocation location;
    Point point;                        // the sphere point the set belongs to
    double a_lo = 0.0, a_hi = 0.0;      // slope interval (interior)
    DerivativeBracket certified;        // certified slope bracket (interior)
    std::optional<EndpointCase> endpoint_case;
    double a = 0.0;                     // endpoint parameter inf f'_- (or -inf)
    bool a_infinite = false;
    double f1 = 0.0;                    // f(1) (endpoint)
    bool side_condition_ok = true;      // f(x0) >= a x0 + 1 on sampled a (interior)
    std::vector<Functional> functionals;
};

// g_a at (x0, f0); throws when a x0 - f0 vanishes.
inline Functional interior_functional(double x0, double f0, double a) {
    const double den = a * x0 - f0;
    if (std::abs(den) < 1e-14)
        throw DegenerateError("support functional denominator vanishes at x0 = " + detail::shortest(x0));
    return {a / den, -1.0 / den};
}

inline SupportSet support_set_interior(const BoundaryCurve& curve, double x0, int samples = kSupportSamples) {
    if (!(std::abs(x0) < 1.0)) throw DomainError("support_set_interior: x0 must lie in (-1, 1)");
    if (samples < 2) throw DomainError("support_set_interior: need at least two samples");
    const SlopeEstimate s = estimate_slopes(curve, x0);
    const double f0 = curve(x0);

    SupportSet out;
    out.location = {true, x0, Side::right};
    out.point = {x0, f0};
    out.certified = s.certified;
    if (s.differentiable == Tri::yes && !s.analytic)
        out.a_lo = out.a_hi = s.midpoint();
    else {
        out.a_lo = s.right;
        out.a_hi = s.left;
    }
    out.f1 = curve(1.0);

    const int n = out.a_lo == out.a_hi ? 1 : samples;
    for (int j = 0; j < n; ++j) {
        const double a = n == 1 ? out.a_lo : out.a_lo + (out.a_hi - out.a_lo) * j / (n - 1);
        out.functionals.push_back(interior_functional(x0, f0, a));
        if (f0 < a * x0 + 1.0 - kSideConditionSlack) out.side_condition_ok = false;
    }
    return out;
}

inline SupportSet support_set_interior(const NormSpec& spec, double x0, int samples = kSupportSamples) {
    return support_set_interior(BoundaryCurve(spec), x0, samples);
}

struct GateauxVerdict {
    Point point;
    Smoothness verdict = Smoothness::undecided;
    std::optional<Functional> derivative;  // present iff smooth
    SlopeEstimate slopes;
};

inline GateauxVerdict gateaux_at(const BoundaryCurve& curve, double x0) {
    if (!(std::abs(x0) < 1.0)) throw DomainError("gateaux_at: x0 must lie in (-1, 1)");
    GateauxVerdict out;
    out.slopes = estimate_slopes(curve, x0);
    const double f0 = curve(x0);
    out.point = {x0, f0};
    out.verdict = to_smoothness(out.slopes.differentiable);
    if (out.verdict == Smoothness::smooth) out.derivative = interior_functional(x0, f0, out.slopes.midpoint());
    return out;
}

inline GateauxVerdict gateaux_at(const NormSpec& spec, double x0) { return gateaux_at(BoundaryCurve(spec), x0); }

// Points (1, b) on a vertical edge of the sphere. Smooth with derivative
// (1, 0) strictly inside the edge, undecided within tolerance of its ends.
inline GateauxVerdict gateaux_at_edge(const BoundaryCurve& curve, double b) {
    const Tolerances& tol = curve.tolerances();
    const double f1 = curve(1.0);
    if (f1 <= tol.endpoint) throw DomainError("gateaux_at_edge: the unit sphere has no vertical edge");
    if (!(std::abs(b) <= f1)) throw DomainError("gateaux_at_edge: (1, b) is not on the unit sphere");
    GateauxVerdict out;
    out.point = {1.0, b};
    if (std::abs(b) < f1 - tol.endpoint) {
        out.verdict = Smoothness::smooth;
        out.derivative = Functional{1.0, 0.0};
    }
    return out;
}

namespace detail {

struct EndpointSlope {
    double estimate_k20 = 0.0;
    double estimate_k30 = 0.0;
    double value = 0.0;  // running minimum of bracket midpoints, capped by estimate_k30
    bool diverging = false;
    bool converged = false;
};

// Running minimum of the certified upper slope bounds at x = 1 - 2^-k,
// k = 2..30, with step 2^-(k+1). The midpoints drop the 2*root/h slack, which
// would otherwise leave the reported slope short of a linear end segment.
inline EndpointSlope estimate_endpoint_slope(const BoundaryCurve& curve) {
    EndpointSlope out;
    double running = infinity, running_mid = infinity;
    for (int k = 2; k <= 30; ++k) {
        const double x = 1.0 - std::ldexp(1.0, -k);
        const DerivativeBracket br = derivative_bracket(curve, x, std::ldexp(1.0, -(k + 1)));
        running = std::min(running, br.hi);
        running_mid = std::min(running_mid, 0.5 * (br.lo + br.hi));
        if (k == 20) out.estimate_k20 = running;
        if (k == 30) out.estimate_k30 = running;
    }
    const double tol_inf = curve.tolerances().infinite_slope;
    out.diverging = out.estimate_k30 <= tol_inf ||
                    (out.estimate_k20 < 0.0 && out.estimate_k30 <= 2.0 * out.estimate_k20);
    out.converged = std::abs(out.estimate_k30 - out.estimate_k20) <= 1e-3 * std::max(1.0, std::abs(out.estimate_k30));
    out.value = std::min(running_mid, out.estimate_k30);
    return out;
}

} // namespace detail

inline SupportSet support_set_endpoint(const BoundaryCurve& curve, Side side, int samples = kSupportSamples) {
    if (samples < 3) throw DomainError("support_set_endpoint: need at least three samples");
    const Tolerances& tol = curve.tolerances();
    SupportSet out;
    out.location = {false, 0.0, side};
    out.f1 = curve(1.0);
    out.point = {1.0, out.f1};
    const double f1 = out.f1;
    const int m = samples - 1;

    if (std::abs(f1 - 1.0) <= tol.endpoint) {
        out.endpoint_case = EndpointCase::ii;
        out.a = 0.0;
        for (int j = 0; j <= m; ++j) {
            const double A = static_cast<double>(j) / m;
            out.functionals.push_back({A, 1.0 - A});
        }
    } else {
        const detail::EndpointSlope slope = detail::estimate_endpoint_slope(curve);
        const char* finite_case = f1 > tol.root ? "iv" : "v";
        if (slope.diverging) {
            out.endpoint_case = EndpointCase::iii;
            out.a = -infinity;
            out.a_infinite = true;
            out.functionals.push_back({1.0, 0.0});
        } else if (!slope.converged) {
            throw UndecidedCaseError("endpoint slope neither converged nor diverged: " +
                                         detail::shortest(slope.estimate_k20) + " (k=20), " +
                                         detail::shortest(slope.estimate_k30) + " (k=30)",
                                     {"iii", finite_case});
        } else {
            const double a = slope.value;
            out.a = a;
            if (a >= -tol.endpoint)
                throw UndecidedCaseError("endpoint slope ~ 0 but f(1) = " + detail::shortest(f1) + " != 1",
                                         {"ii", finite_case});
            if (f1 <= tol.root) {
                out.endpoint_case = EndpointCase::v;
                const int half = m / 2;
                for (int j = 1; j <= half; ++j) {
                    const double B = (static_cast<double>(j) / half) / std::abs(a);  // 1/|c|, c = a*half/j
                    out.functionals.push_back({1.0, B});
                    out.functionals.push_back({1.0, -B});
                }
            } else if (f1 >= tol.endpoint) {
                out.endpoint_case = EndpointCase::iv;
                for (int j = 0; j < m; ++j) {
                    const double c = a / (1.0 - static_cast<double>(j) / m);
                    out.functionals.push_back({c / (c - f1), -1.0 / (c - f1)});
                }
            } else {
                throw UndecidedCaseError("f(1) = " + detail::shortest(f1) + " is neither 0 nor positive within tolerance",
                                         {"iv", "v"});
            }
            out.functionals.push_back({1.0, 0.0});
        }
    }

    if (side == Side::left) {
        out.point.x = -1.0;
        for (Functional& g : out.functionals) g = g.reflected();
    }
    return out;
}

inline SupportSet support_set_endpoint(const NormSpec& spec, Side side, int samples = kSupportSamples) {
    return support_set_endpoint(BoundaryCurve(spec), side, samples);
}

// (||point + h*direction||_E - 1) / h for a point on the unit sphere.
inline double directional_derivative_probe(const NormSpec& spec, Point point, Point direction, double h) {
    if (!(h > 0.0 && h <= 1e-3)) throw DomainError("directional_derivative_probe: need 0 < h <= 1e-3");
    if (std::abs(eval_norm(spec, point) - 1.0) > 1e-10)
        throw DomainError("directional_derivative_probe: point is not on the unit sphere");
    return (eval_norm(spec, {point.x + h * direction.x, point.y + h * direction.y}) - 1.0) / h;
}

} // namespace absnorm
