#pragma once

#include <absnorm/norm.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace absnorm {

struct Violation {
    std::string property;
    std::vector<Point> witnesses;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;  // first kMaxRecorded only
    std::size_t violation_count = 0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
};

namespace detail {

class Validator {
public:
    static constexpr std::size_t kMaxRecorded = 64;
    static constexpr double kSlack = 1e-12;
    static constexpr double kStrictMargin = 0.01;

    Validator(const NormSpec& spec, ValidationReport& report) : spec_(spec), report_(report) {}

    double norm(Point p) const { return eval_norm(spec_, p); }

    void flag(const char* property, std::vector<Point> w, double magnitude) {
        ++report_.violation_count;
        if (report_.violations.size() < kMaxRecorded)
            report_.violations.push_back({property, std::move(w), magnitude});
    }

    void check_point(Point v) {
        const double n = norm(v);
        const double scale = std::max(1.0, n);
        for (Point r : {Point{-v.x, v.y}, Point{v.x, -v.y}, Point{-v.x, -v.y}}) {
            const double d = std::abs(norm(r) - n);
            if (d > kSlack * scale) flag("absoluteness", {v, r}, d);
        }
        const double lo = std::max(std::abs(v.x), std::abs(v.y));
        const double hi = std::abs(v.x) + std::abs(v.y);
        if (n < lo - kSlack * scale) flag("sandwich", {v}, lo - n);
        if (n > hi + kSlack * scale) flag("sandwich", {v}, n - hi);
    }

    void check_triangle(Point v, Point w) {
        const double lhs = norm({v.x + w.x, v.y + w.y});
        const double rhs = norm(v) + norm(w);
        if (lhs > rhs + kSlack * std::max(1.0, rhs)) flag("triangle", {v, w}, lhs - rhs);
    }

    void check_homogeneity(Point v, double lambda) {
        const double lhs = norm({lambda * v.x, lambda * v.y});
        const double rhs = std::abs(lambda) * norm(v);
        const double d = std::abs(lhs - rhs);
        if (d > kSlack * std::max(rhs, std::numeric_limits<double>::min()))
            flag("homogeneity", {v, {lambda, lambda}}, d);
    }

    // (c, d) dominated by (a, b) coordinatewise in absolute value.
    void check_monotone(Point big, Point small) {
        const double d = norm(small) - norm(big);
        if (d > kSlack * std::max(1.0, norm(big))) flag("monotonicity", {small, big}, d);
    }

    void check_strict(Point big, Point small) {
        const double gap = norm(big) - norm(small);
        if (!(gap > 0.0)) flag("strict_monotonicity", {small, big}, -gap);
    }

    void check_normalisation() {
        for (Point e : {Point{1, 0}, Point{0, 1}, Point{-1, 0}, Point{0, -1}}) {
            const double d = std::abs(norm(e) - 1.0);
            if (d > kSlack) flag("normalisation", {e}, d);
        }
    }

private:
    const NormSpec& spec_;
    ValidationReport& report_;
};

} // namespace detail

// Samples the defining properties of an absolute normalised norm: sign
// symmetry, normalisation, triangle inequality, homogeneity, the sandwich
// |.|_inf <= |.|_E <= |.|_1, monotonicity and strict monotonicity under
// strict double domination. Deterministic for a given seed.
inline ValidationReport validate_norm(const NormSpec& spec, std::size_t sample_count, std::uint64_t seed) {
    if (sample_count == 0) throw DomainError("validate_norm: sample_count must be positive");
    ValidationReport report;
    report.sample_count = sample_count;
    report.seed = seed;
    detail::Validator v(spec, report);

    v.check_normalisation();
    const std::vector<Point> corners = {{1, 0},      {0, 1},       {1, 1},        {-1, 1},    {0.5, 0.5},
                                        {1e-12, 3e-13}, {3e-300, 1e-300}, {1e-8, 1.0}, {1.0, 1e-8}, {2, -3}};
    for (const Point& c : corners) {
        v.check_point(c);
        v.check_homogeneity(c, 7.25);
        for (const Point& d : corners) v.check_triangle(c, d);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> mag(detail::Validator::kStrictMargin, 2.0);
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    std::bernoulli_distribution sign(0.5);
    auto sgn = [&] { return sign(rng) ? 1.0 : -1.0; };

    for (std::size_t i = 0; i < sample_count; ++i) {
        const Point p{coord(rng), coord(rng)};
        const Point q{coord(rng), coord(rng)};
        v.check_point(p);
        v.check_triangle(p, q);
        v.check_homogeneity(p, sgn() * std::pow(10.0, expo(rng)));

        const Point small{p.x * unit(rng), p.y * unit(rng)};
        v.check_monotone(p, small);

        const double a = mag(rng), b = mag(rng);
        const Point big{sgn() * a, sgn() * b};
        const Point strict_small{sgn() * (a - detail::Validator::kStrictMargin) * unit(rng),
                                 sgn() * (b - detail::Validator::kStrictMargin) * unit(rng)};
        v.check_strict(big, strict_small);
    }
    report.passed = report.violation_count == 0;
    return report;
}

} // namespace absnorm
