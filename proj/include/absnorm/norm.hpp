#pragma once

// Absolute, normalised norms on the plane.
//
// A NormSpec is one of
//   * an l^p norm, 1 <= p <= inf (p = inf is a tag, never a large exponent),
//   * a convex combination  lambda*|.|_L + (1-lambda)*|.|_R  of two specs,
//   * the Minkowski gauge of the region under a concave, nonincreasing
//     piecewise-linear profile on [0,1] starting at (0,1), reflected into all
//     four quadrants.
// Specs are immutable values; copies share their (const) payload.

#include <absnorm/bisect.hpp>
#include <absnorm/error.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace absnorm {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

// g(x, y) = A x + B y
struct Functional {
    double A = 0.0;
    double B = 0.0;

    double operator()(Point p) const noexcept { return A * p.x + B * p.y; }
    Functional reflected() const noexcept { return {-A, B}; }
    friend bool operator==(const Functional&, const Functional&) = default;
};

// Value and one-sided derivatives of the upper boundary curve at a point.
struct BoundaryJet {
    double value = 0.0;
    double right = 0.0;  // f'_+
    double left = 0.0;   // f'_-
};

using AnalyticBoundary = std::function<BoundaryJet(double)>;

class NormSpec;

struct PNorm {
    double p;
};

struct Mixture {
    double lambda;
    std::shared_ptr<const NormSpec> left;
    std::shared_ptr<const NormSpec> right;
};

struct CurveGauge {
    std::vector<Point> vertices;  // x strictly increasing from 0 to 1

    // Piecewise-linear interpolant at u in [0, 1].
    double profile(double u) const noexcept {
        const auto it = std::upper_bound(vertices.begin(), vertices.end(), u,
                                         [](double v, const Point& q) { return v < q.x; });
        if (it == vertices.begin()) return vertices.front().y;
        if (it == vertices.end()) return vertices.back().y;
        const Point& a = *(it - 1);
        const Point& b = *it;
        return a.y + (u - a.x) * ((b.y - a.y) / (b.x - a.x));
    }
};

namespace detail {

inline std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// 1 - m^p for m in [0, 1] without cancellation near m = 1.
inline double one_minus_pow(double m, double p) noexcept {
    if (m <= 0.0) return 1.0;
    return -std::expm1(p * std::log(m));
}

} // namespace detail

class NormSpec {
public:
    using Kind = std::variant<PNorm, Mixture, CurveGauge>;

    static NormSpec p_norm(double p) {
        if (std::isnan(p) || p < 1.0)
            throw SpecError("p-norm exponent must lie in [1, inf], got " + detail::shortest(p));
        return NormSpec(PNorm{p}, "p:" + detail::shortest(p));
    }

    static NormSpec mixture(double lambda, const NormSpec& left, const NormSpec& right) {
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw SpecError("mixture weight must lie in [0, 1], got " + detail::shortest(lambda));
        std::string label = "mix:" + detail::shortest(lambda) + ":" + left.label() + ":" + right.label();
        return NormSpec(Mixture{lambda, std::make_shared<const NormSpec>(left),
                                std::make_shared<const NormSpec>(right)},
                        std::move(label));
    }

    // Validates and normalises the profile vertices; see gauge_from_curve.
    static NormSpec curve(std::vector<Point> points);

    const Kind& kind() const noexcept { return *kind_; }
    const std::string& label() const noexcept { return label_; }

    bool has_analytic_boundary() const noexcept { return static_cast<bool>(analytic_); }
    const AnalyticBoundary& analytic_boundary() const { return *analytic_; }

    // The evaluator must return f_E and its one-sided derivatives on [-1, 1];
    // it overrides the numerical boundary machinery wherever that consults it.
    NormSpec with_analytic_boundary(AnalyticBoundary f) const {
        NormSpec copy = *this;
        copy.analytic_ = std::make_shared<const AnalyticBoundary>(std::move(f));
        return copy;
    }

    NormSpec with_label(std::string label) const {
        NormSpec copy = *this;
        copy.label_ = std::move(label);
        return copy;
    }

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(kind_.get());
    }

private:
    NormSpec(Kind kind, std::string label)
        : kind_(std::make_shared<const Kind>(std::move(kind))), label_(std::move(label)) {}

    std::shared_ptr<const Kind> kind_;
    std::shared_ptr<const AnalyticBoundary> analytic_;
    std::string label_;
};

inline constexpr double kVertexDedupTol = 1e-14;

// Builds the curve gauge for a concave, nonincreasing profile through the
// given vertices. Vertices are sorted by x and deduplicated (1e-14); the first
// must be (0, 1) and the last must have x = 1.
inline NormSpec gauge_from_curve(std::vector<Point> points) { return NormSpec::curve(std::move(points)); }

inline NormSpec NormSpec::curve(std::vector<Point> points) {
    if (points.size() < 2) throw SpecError("curve needs at least two vertices");
    for (const Point& q : points) {
        if (!std::isfinite(q.x) || !std::isfinite(q.y))
            throw SpecError("curve vertex is not finite");
        if (q.x < -kVertexDedupTol || q.x > 1.0 + kVertexDedupTol || q.y < -kVertexDedupTol ||
            q.y > 1.0 + kVertexDedupTol)
            throw SpecError("curve vertex (" + detail::shortest(q.x) + "," + detail::shortest(q.y) +
                            ") outside [0,1]^2");
    }
    std::stable_sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.x < b.x;
    });

    std::vector<Point> v;
    v.reserve(points.size());
    for (const Point& q : points) {
        if (!v.empty() && std::abs(q.x - v.back().x) <= kVertexDedupTol) {
            if (std::abs(q.y - v.back().y) <= kVertexDedupTol) continue;
            throw SpecError("curve has two vertices with x = " + detail::shortest(q.x) +
                            " (vertical segment)");
        }
        v.push_back(q);
    }
    auto snap = [](double& c, double target) {
        if (std::abs(c - target) <= kVertexDedupTol) c = target;
    };
    snap(v.front().x, 0.0);
    snap(v.front().y, 1.0);
    snap(v.back().x, 1.0);
    for (Point& q : v) {
        snap(q.y, 0.0);
        snap(q.y, 1.0);
    }
    if (v.front().x != 0.0 || v.front().y != 1.0)
        throw SpecError("curve must start at (0,1)");
    if (v.back().x != 1.0) throw SpecError("curve must end at x = 1");
    if (v.size() < 2) throw SpecError("curve needs at least two distinct vertices");

    auto pt = [](const Point& q) { return "(" + detail::shortest(q.x) + "," + detail::shortest(q.y) + ")"; };
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1].y > v[i].y + kVertexDedupTol)
            throw SpecError("curve is increasing between " + pt(v[i]) + " and " + pt(v[i + 1]));
    }
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
        const double dx1 = v[i + 1].x - v[i].x, dy1 = v[i + 1].y - v[i].y;
        const double dx2 = v[i + 2].x - v[i + 1].x, dy2 = v[i + 2].y - v[i + 1].y;
        // concave <=> the path turns clockwise
        if (dx1 * dy2 - dy1 * dx2 > kVertexDedupTol)
            throw SpecError("curve is not concave at " + pt(v[i]) + " " + pt(v[i + 1]) + " " + pt(v[i + 2]));
    }

    std::string label = "curve:";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) label += ';';
        label += detail::shortest(v[i].x) + "," + detail::shortest(v[i].y);
    }
    return NormSpec(CurveGauge{std::move(v)}, std::move(label));
}

double eval_norm(const NormSpec& spec, Point v);

// Membership of v in the closed unit ball. For l^p norms this compares
// |b|^p with 1 - |a|^p computed without cancellation, so the boundary is
// resolved to full relative precision even where the norm is flat.
inline bool inside_unit_ball(const NormSpec& spec, Point v) {
    const double a = std::abs(v.x), b = std::abs(v.y);
    if (const auto* pn = spec.as<PNorm>()) {
        const double m = std::max(a, b), n = std::min(a, b);
        if (!(m <= 1.0)) return false;
        if (pn->p == 1.0) return n <= 1.0 - m;
        if (std::isinf(pn->p) || n == 0.0) return true;
        const double rhs = detail::one_minus_pow(m, pn->p);
        if (!(rhs > 0.0)) return false;
        const double lhs = std::pow(n, pn->p);
        if (lhs == 0.0) return pn->p * std::log(n) <= std::log(rhs);  // underflow
        return lhs <= rhs;
    }
    if (const auto* cg = spec.as<CurveGauge>()) {
        if (!(a <= 1.0)) return false;
        return b <= cg->profile(a);
    }
    return eval_norm(spec, v) <= 1.0;
}

inline constexpr int kGaugeBisectionSteps = 60;

// ||v||_E. Exact closed forms for p-norms and mixtures; curve gauges are
// resolved by bisection on the scaling factor inside [|v|_inf, |v|_1].
inline double eval_norm(const NormSpec& spec, Point v) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw DomainError("eval_norm: non-finite argument");
    const double a = std::abs(v.x), b = std::abs(v.y);
    const double m = std::max(a, b), n = std::min(a, b);
    if (m == 0.0) return 0.0;

    if (const auto* pn = spec.as<PNorm>()) {
        if (pn->p == 1.0) return a + b;
        if (std::isinf(pn->p)) return m;
        if (pn->p == 2.0) return std::hypot(a, b);
        return m * std::pow(1.0 + std::pow(n / m, pn->p), 1.0 / pn->p);
    }
    if (const auto* mx = spec.as<Mixture>()) {
        return mx->lambda * eval_norm(*mx->left, {a, b}) + (1.0 - mx->lambda) * eval_norm(*mx->right, {a, b});
    }
    const auto& cg = std::get<CurveGauge>(spec.kind());
    auto inside_at = [&](double lambda) { return b / lambda <= cg.profile(std::min(1.0, a / lambda)) && a / lambda <= 1.0; };
    const double lo = m, hi = a + b;
    if (inside_at(lo)) return lo;
    const Enclosure e = bisect_predicate([&](double lambda) { return !inside_at(lambda); }, lo, hi,
                                         kGaugeBisectionSteps);
    return e.hi;
}

// ||(x, y)||_F := ||(y, x)||_E as a spec of the same kind.
inline NormSpec swapped(const NormSpec& spec) {
    if (const auto* pn = spec.as<PNorm>()) return NormSpec::p_norm(pn->p);
    if (const auto* mx = spec.as<Mixture>())
        return NormSpec::mixture(mx->lambda, swapped(*mx->left), swapped(*mx->right));

    // Walk the first-quadrant boundary from (1,0) up the vertical edge and back
    // along the profile to (0,1); reflecting in the diagonal gives the new
    // profile from (0,1) to the first point with x = 1.
    const auto& v = std::get<CurveGauge>(spec.kind()).vertices;
    std::vector<Point> path;
    path.push_back({1.0, 0.0});
    for (auto it = v.rbegin(); it != v.rend(); ++it) path.push_back(*it);
    std::vector<Point> out;
    for (const Point& p : path) {
        const Point q{p.y, p.x};
        if (!out.empty() && out.back() == q) continue;
        out.push_back(q);
    }
    // out runs (0,1) -> ... ; it may revisit x = 1 on a vertical drop.
    std::vector<Point> profile;
    for (const Point& q : out) {
        profile.push_back(q);
        if (q.x == 1.0) break;
    }
    return NormSpec::curve(std::move(profile));
}

// Closed-form boundary jets of the l^p family, for callers that want the
// analytic override.
inline AnalyticBoundary analytic_p_boundary(double p) {
    return [p](double x) -> BoundaryJet {
        const double ax = std::abs(x);
        const double sgn = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        if (std::isinf(p)) return {1.0, 0.0, 0.0};
        if (p == 1.0) {
            const double right = x >= 0 ? -1.0 : 1.0;
            const double left = x > 0 ? -1.0 : 1.0;
            return {1.0 - ax, right, left};
        }
        if (ax >= 1.0) return {0.0, -sgn * infinity, -sgn * infinity};
        const double rest = detail::one_minus_pow(ax, p);
        const double f = std::pow(rest, 1.0 / p);
        const double d = -sgn * std::pow(ax, p - 1.0) * std::pow(rest, 1.0 / p - 1.0);
        return {f, d, d};
    };
}

} // namespace absnorm
