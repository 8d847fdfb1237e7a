#pragma once

// Upper boundary curve f_E of the unit ball: for |x| < 1 the unique t in
// (0, 1] with ||(x, t)||_E = 1, extended continuously to [-1, 1].
//
// f_E is computed as sup{ t in [0,1] : ||(x,t)||_E <= 1 } by bisection on the
// membership predicate. This agrees with the root of ||(x,t)||_E = 1 and stays
// well defined on flat pieces of the sphere (the l^inf plateau). At |x| = 1 the
// same supremum is the continuous extension, because the ball is closed and
// convex.

#include <absnorm/bisect.hpp>
#include <absnorm/error.hpp>
#include <absnorm/norm.hpp>
#include <absnorm/tolerances.hpp>
#include <absnorm/tri.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace absnorm {

enum class Side { left, right };

constexpr std::string_view to_string(Side s) noexcept { return s == Side::left ? "left" : "right"; }

namespace detail {

inline constexpr int kBoundaryMaxSteps = 1100;

inline Enclosure boundary_enclosure_uncached(const NormSpec& spec, double x) {
    if (!std::isfinite(x) || std::abs(x) > 1.0)
        throw DomainError("boundary_value: x must lie in [-1, 1], got " + shortest(x));
    if (spec.has_analytic_boundary()) {
        const double v = spec.analytic_boundary()(x).value;
        return {v, v};
    }
    auto inside = [&](double t) { return inside_unit_ball(spec, {x, t}); };
    if (inside(1.0)) return {1.0, 1.0};
    return bisect_predicate(inside, 0.0, 1.0, kBoundaryMaxSteps);
}

} // namespace detail

// f_E(x) for x in [-1, 1]; the largest t known to lie in the unit ball.
inline double boundary_value(const NormSpec& spec, double x) { return detail::boundary_enclosure_uncached(spec, x).lo; }

// f_E with a memo keyed by the exact bits of x. Concurrent readers may
// compute the same value twice; the first insert wins and later readers
// always see a complete entry.
class BoundaryCurve {
public:
    explicit BoundaryCurve(NormSpec spec, Tolerances tol = {}) : spec_(std::move(spec)), tol_(tol) {}

    BoundaryCurve(const BoundaryCurve& other) : spec_(other.spec_), tol_(other.tol_) {}
    BoundaryCurve& operator=(const BoundaryCurve&) = delete;

    const NormSpec& spec() const noexcept { return spec_; }
    const Tolerances& tolerances() const noexcept { return tol_; }

    Enclosure enclosure(double x) const {
        const auto key = std::bit_cast<std::uint64_t>(x);
        {
            std::shared_lock lock(mu_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        const Enclosure e = detail::boundary_enclosure_uncached(spec_, x);
        std::unique_lock lock(mu_);
        return cache_.emplace(key, e).first->second;
    }

    double operator()(double x) const { return enclosure(x).lo; }
    double uncached(double x) const { return detail::boundary_enclosure_uncached(spec_, x).lo; }

    // (f_E(-1), f_E(1))
    std::pair<double, double> endpoint_values() const { return {(*this)(-1.0), (*this)(1.0)}; }

    std::size_t cache_size() const {
        std::shared_lock lock(mu_);
        return cache_.size();
    }

private:
    NormSpec spec_;
    Tolerances tol_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<std::uint64_t, Enclosure> cache_;
};

// Limit of f_E at an endpoint. `value` is the closed-ball supremum; `dyadic`
// is the last term of f_E(+-(1 - 2^-k)), k <= 40, stopped once successive terms
// differ by less than 1e-11. Since f_E decreases towards the endpoints,
// dyadic >= value up to rounding.
struct EndpointLimit {
    double value = 0.0;
    double dyadic = 0.0;
    int k_stop = 0;
    bool stagnated = false;
};

inline EndpointLimit endpoint_limit(const BoundaryCurve& curve, Side side) {
    const double s = side == Side::right ? 1.0 : -1.0;
    EndpointLimit out;
    out.value = curve(s);
    double prev = curve(0.0);
    for (int k = 1; k <= 40; ++k) {
        const double v = curve(s * (1.0 - std::ldexp(1.0, -k)));
        out.dyadic = v;
        out.k_stop = k;
        if (std::abs(v - prev) < 1e-11) {
            out.stagnated = true;
            break;
        }
        prev = v;
    }
    return out;
}

// Certified enclosure of the one-sided derivatives at x:
//   lo <= f'_+(x) <= f'_-(x) <= hi.
struct DerivativeBracket {
    double x = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double h_used = 0.0;
    double width() const noexcept { return hi - lo; }
    bool contains(double a) const noexcept { return lo <= a && a <= hi; }
};

// One-step difference-quotient bracket. By concavity the forward quotient is
// below f'_+(x) and the backward quotient above f'_-(x); each is widened by
// 2*root/h for the error of the boundary values.
inline DerivativeBracket derivative_bracket(const BoundaryCurve& curve, double x, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("derivative_bracket: h must be positive");
    const double xr = x + h, xl = x - h;
    if (!(xl > -1.0 && xr < 1.0))
        throw DomainError("derivative_bracket: x +- h must lie in (-1, 1)");
    const double fx = curve(x), fr = curve(xr), fl = curve(xl);
    const double hr = xr - x, hl = x - xl;
    const double root = curve.tolerances().root;
    DerivativeBracket b{x, (fr - fx) / hr - 2.0 * root / hr, (fx - fl) / hl + 2.0 * root / hl, h};
    if (b.lo > b.hi)
        throw ConcavityViolation("difference quotients cross at x = " + detail::shortest(x) + " (h = " +
                                 detail::shortest(h) + "): " + detail::shortest(b.lo) + " > " +
                                 detail::shortest(b.hi));
    return b;
}

inline DerivativeBracket derivative_bracket(const NormSpec& spec, double x, double h) {
    return derivative_bracket(BoundaryCurve(spec), x, h);
}

namespace detail {

// Limit of s0, s1, s2 assuming a geometric tail; falls back to s2 when the
// differences do not shrink monotonically.
inline double aitken_limit(double s0, double s1, double s2) noexcept {
    const double d1 = s1 - s0, d2 = s2 - s1;
    if (d1 == 0.0 || d2 == 0.0) return s2;
    const double ratio = d2 / d1;
    if (!(ratio > 0.0 && ratio < 0.9)) return s2;
    return s2 + d2 * ratio / (1.0 - ratio);
}

} // namespace detail

inline constexpr std::array<double, 6> kSlopeLadder = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};

// One-sided slopes of f_E at an interior point.
//
// `certified` intersects the difference-quotient brackets over the step
// ladder 1e-2 ... 1e-7 (scaled down near |x| = 1 so that x +- h stays inside).
// `right`/`left` extrapolate the forward/backward quotients to h -> 0 and are
// clamped to the certified bracket.
//
// Differentiability: the certified width below tol.smooth decides "yes"; so
// does an extrapolated width below tol.smooth when the raw bracket widths
// keep shrinking along the ladder (Hoelder-type smooth points such as l^1.5 at
// x = 0 converge like sqrt(h) and never get certified-narrow). An extrapolated
// width above tol.corner decides "no"; anything else is undecided. An analytic
// boundary overrides all of this.
struct SlopeEstimate {
    double x = 0.0;
    DerivativeBracket certified;
    double right = 0.0;  // ~ f'_+(x)
    double left = 0.0;   // ~ f'_-(x)
    Tri differentiable = Tri::undecided;
    bool analytic = false;

    double midpoint() const noexcept { return 0.5 * (right + left); }
};

inline SlopeEstimate estimate_slopes(const BoundaryCurve& curve, double x) {
    if (!(std::abs(x) < 1.0)) throw DomainError("estimate_slopes: x must lie in (-1, 1)");
    const Tolerances& tol = curve.tolerances();
    SlopeEstimate out;
    out.x = x;

    if (curve.spec().has_analytic_boundary()) {
        const BoundaryJet j = curve.spec().analytic_boundary()(x);
        out.certified = {x, j.right, j.left, 0.0};
        out.right = j.right;
        out.left = j.left;
        out.analytic = true;
        out.differentiable = std::abs(j.left - j.right) <= tol.smooth ? Tri::yes : Tri::no;
        return out;
    }

    const double start = std::min(kSlopeLadder.front(), 0.5 * (1.0 - std::abs(x)));
    std::array<double, kSlopeLadder.size()> fwd{}, bwd{};
    double lo = -infinity, hi = infinity, h_last = start;
    const double fx = curve(x);
    for (std::size_t j = 0; j < kSlopeLadder.size(); ++j) {
        const double h = start * (kSlopeLadder[j] / kSlopeLadder.front());
        const double xr = x + h, xl = x - h;
        fwd[j] = (curve(xr) - fx) / (xr - x);
        bwd[j] = (fx - curve(xl)) / (x - xl);
        lo = std::max(lo, fwd[j] - 2.0 * tol.root / (xr - x));
        hi = std::min(hi, bwd[j] + 2.0 * tol.root / (x - xl));
        h_last = h;
    }
    if (lo > hi)
        throw ConcavityViolation("slope brackets cross at x = " + detail::shortest(x) + ": " +
                                 detail::shortest(lo) + " > " + detail::shortest(hi));
    out.certified = {x, lo, hi, h_last};

    constexpr std::size_t n = kSlopeLadder.size();
    out.right = std::clamp(detail::aitken_limit(fwd[n - 3], fwd[n - 2], fwd[n - 1]), lo, hi);
    out.left = std::clamp(detail::aitken_limit(bwd[n - 3], bwd[n - 2], bwd[n - 1]), lo, hi);
    if (out.right > out.left) out.right = out.left = 0.5 * (out.right + out.left);
    if (out.certified.width() < tol.smooth) out.right = out.left = 0.5 * (lo + hi);

    const double w3 = bwd[n - 3] - fwd[n - 3], w4 = bwd[n - 2] - fwd[n - 2], w5 = bwd[n - 1] - fwd[n - 1];
    const bool shrinking = (w5 <= 0.9 * w4 && w4 <= 0.9 * w3) || w5 < tol.smooth;
    const double w_ext = out.left - out.right;
    if (out.certified.width() < tol.smooth)
        out.differentiable = Tri::yes;
    else if (w_ext < tol.smooth && shrinking)
        out.differentiable = Tri::yes;
    else if (w_ext > tol.corner)
        out.differentiable = Tri::no;
    else
        out.differentiable = Tri::undecided;
    return out;
}

// Number of disjoint clusters on (0, 1] where t -> ||(x,t)||_E - 1 crosses or
// touches zero; values within 1e-10 of zero form one cluster.
inline int uniqueness_probe(const NormSpec& spec, double x, int grid) {
    if (grid < 100) throw DomainError("uniqueness_probe: grid must be at least 100");
    if (!(std::abs(x) < 1.0)) throw DomainError("uniqueness_probe: x must lie in (-1, 1)");
    constexpr double kZero = 1e-10;
    int clusters = 0;
    int last_sign = 0;      // sign of the last nonzero sample
    bool prev_zero = false;
    for (int j = 1; j <= grid; ++j) {
        const double t = static_cast<double>(j) / grid;
        const double g = eval_norm(spec, {x, t}) - 1.0;
        const int s = std::abs(g) <= kZero ? 0 : (g > 0 ? 1 : -1);
        if (s == 0) {
            if (!prev_zero) ++clusters;
            prev_zero = true;
            continue;
        }
        if (!prev_zero && last_sign != 0 && s != last_sign) ++clusters;
        prev_zero = false;
        last_sign = s;
    }
    return clusters;
}

struct MvtCertificate {
    bool certified = false;
    double quotient = 0.0;
    double range_lo = 0.0;  // min bracket lo - tol
    double range_hi = 0.0;  // max bracket hi + tol
    explicit operator bool() const noexcept { return certified; }
};

// Checks that (f(b) - f(a)) / (b - a) lies in the hull of the derivative
// brackets at `grid` equispaced interior points of (a, b). Each bracket uses
// the grid spacing as step, so the cell chords that average to the quotient
// all enter the hull.
inline MvtCertificate mvt_check(const BoundaryCurve& curve, double a, double b, int grid) {
    if (!(-1.0 < a && a < b && b < 1.0)) throw DomainError("mvt_check: need -1 < a < b < 1");
    if (grid < 1) throw DomainError("mvt_check: grid must be positive");
    const double step = (b - a) / (grid + 1);
    double lo = infinity, hi = -infinity;
    for (int k = 1; k <= grid; ++k) {
        const DerivativeBracket br = derivative_bracket(curve, a + k * step, step);
        lo = std::min(lo, br.lo);
        hi = std::max(hi, br.hi);
    }
    const double tol = curve.tolerances().mvt;
    MvtCertificate c;
    c.quotient = (curve(b) - curve(a)) / (b - a);
    c.range_lo = lo - tol;
    c.range_hi = hi + tol;
    c.certified = c.range_lo <= c.quotient && c.quotient <= c.range_hi;
    return c;
}

inline MvtCertificate mvt_check(const NormSpec& spec, double a, double b, int grid) {
    return mvt_check(BoundaryCurve(spec), a, b, grid);
}

// psi(t) = ||(1 - t, t)||_E
inline double psi_curve(const NormSpec& spec, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("psi_curve: t must lie in [0, 1]");
    return eval_norm(spec, {1.0 - t, t});
}

struct ConvexityClass {
    Tri strictly_convex = Tri::undecided;
    Tri strictly_monotone = Tri::undecided;
    double min_excess = 0.0;  // smallest midpoint excess over the cells of (-1, 1)
    double min_drop = 0.0;    // smallest decrease over the cells of [0, 1]
    double f1 = 0.0;
};

// Strict convexity of E  <=>  f strictly concave on (-1,1) and f(1) = 0.
// Strict monotonicity  <=>  f strictly decreasing on [0,1) and f(1) = 0.
// Cells of the sampling grid with midpoint excess (drop) above tol.strict
// count as strict, at most tol.collinear as flat; f(1) > tol.endpoint rules
// out both properties.
inline ConvexityClass classify_convexity(const BoundaryCurve& curve, int grid = 200) {
    if (grid < 3) throw DomainError("classify_convexity: grid must be at least 3");
    const Tolerances& tol = curve.tolerances();
    ConvexityClass out;
    out.f1 = curve(1.0);
    const bool f1_zero = out.f1 <= tol.endpoint;

    auto grade = [&](double smallest) {
        if (smallest > tol.strict) return Tri::yes;
        if (smallest <= tol.collinear) return Tri::no;
        return Tri::undecided;
    };

    out.min_excess = infinity;
    for (int i = 1; i + 1 < grid; ++i) {
        const double x0 = -1.0 + 2.0 * i / grid;
        const double x1 = -1.0 + 2.0 * (i + 1) / grid;
        const double excess = curve(0.5 * (x0 + x1)) - 0.5 * (curve(x0) + curve(x1));
        out.min_excess = std::min(out.min_excess, excess);
    }
    const int cells = std::max(2, grid / 2);
    out.min_drop = infinity;
    for (int j = 0; j < cells; ++j) {
        const double drop = curve(static_cast<double>(j) / cells) - curve(static_cast<double>(j + 1) / cells);
        out.min_drop = std::min(out.min_drop, drop);
    }

    out.strictly_convex = f1_zero ? grade(out.min_excess) : Tri::no;
    out.strictly_monotone = f1_zero ? grade(out.min_drop) : Tri::no;
    return out;
}

inline ConvexityClass classify_convexity(const NormSpec& spec, int grid = 200) {
    return classify_convexity(BoundaryCurve(spec), grid);
}

// Row of the curve tabulation: f and the bisection enclosure [flo, fhi].
struct CurveRow {
    double x;
    double f;
    double flo;
    double fhi;
};

inline std::vector<CurveRow> tabulate(const BoundaryCurve& curve, int n) {
    if (n < 2) throw DomainError("tabulate: need at least two points");
    std::vector<CurveRow> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = i == n - 1 ? 1.0 : -1.0 + 2.0 * i / (n - 1);
        const Enclosure e = curve.enclosure(x);
        rows.push_back({x, e.lo, e.lo, e.hi});
    }
    return rows;
}

} // namespace absnorm
