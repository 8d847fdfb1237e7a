#pragma once

// Finite-dimensional normed spaces used as components of E-sums:
// l^p on R^n, the plane under a NormSpec, and nested sums X (+)_E Y with
// ||(x, y)|| = ||(||x||_X, ||y||_Y)||_E.

#include <absnorm/error.hpp>
#include <absnorm/norm.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace absnorm {

inline constexpr int kMaxSumDepth = 4;

class FiniteSpace {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    static FiniteSpace lp(double p, int n) {
        if (n < 1) throw DomainError("lp: dimension must be positive");
        if (std::isnan(p) || p < 1.0) throw SpecError("lp: exponent must lie in [1, inf]");
        auto eval = [p](std::span<const double> v) {
            double m = 0.0;
            for (double c : v) m = std::max(m, std::abs(c));
            if (m == 0.0 || std::isinf(p)) return m;
            double acc = 0.0;
            if (p == 1.0) {
                for (double c : v) acc += std::abs(c);
                return acc;
            }
            for (double c : v) acc += std::pow(std::abs(c) / m, p);
            return m * std::pow(acc, 1.0 / p);
        };
        return FiniteSpace(n, std::move(eval), "l" + detail::shortest(p) + "(" + std::to_string(n) + ")", 0);
    }

    static FiniteSpace plane(const NormSpec& spec) {
        auto eval = [spec](std::span<const double> v) { return eval_norm(spec, {v[0], v[1]}); };
        return FiniteSpace(2, std::move(eval), spec.label(), 0);
    }

    static FiniteSpace direct_sum(const NormSpec& E, const FiniteSpace& X, const FiniteSpace& Y) {
        const int depth = std::max(X.depth_, Y.depth_) + 1;
        if (depth > kMaxSumDepth)
            throw DomainError("direct_sum: nesting depth exceeds " + std::to_string(kMaxSumDepth));
        const int nx = X.dim_;
        auto eval = [E, X, Y, nx](std::span<const double> v) {
            return eval_norm(E, {X.norm(v.first(static_cast<std::size_t>(nx))),
                                 Y.norm(v.subspan(static_cast<std::size_t>(nx)))});
        };
        return FiniteSpace(X.dim_ + Y.dim_, std::move(eval), "(" + X.label_ + " + " + Y.label_ + ")_" + E.label(),
                           depth);
    }

    int dim() const noexcept { return dim_; }
    int depth() const noexcept { return depth_; }
    const std::string& label() const noexcept { return label_; }

    double norm(std::span<const double> v) const {
        if (v.size() != static_cast<std::size_t>(dim_))
            throw DomainError("norm: expected a vector of dimension " + std::to_string(dim_) + ", got " +
                              std::to_string(v.size()));
        for (double c : v)
            if (!std::isfinite(c)) throw DomainError("norm: non-finite coordinate");
        return (*eval_)(v);
    }

private:
    FiniteSpace(int dim, Evaluator eval, std::string label, int depth)
        : dim_(dim), eval_(std::make_shared<const Evaluator>(std::move(eval))), label_(std::move(label)),
          depth_(depth) {}

    int dim_;
    std::shared_ptr<const Evaluator> eval_;
    std::string label_;
    int depth_;
};

// ||(||x||_X, ||y||_Y)||_E
inline double sum_norm(const NormSpec& E, const FiniteSpace& X, const FiniteSpace& Y, std::span<const double> x,
                       std::span<const double> y) {
    if (x.size() != static_cast<std::size_t>(X.dim()) || y.size() != static_cast<std::size_t>(Y.dim()))
        throw DomainError("sum_norm: dimension mismatch");
    return eval_norm(E, {X.norm(x), Y.norm(y)});
}

struct SpaceCheck {
    std::size_t samples = 0;
    std::size_t triangle_failures = 0;
    std::size_t homogeneity_failures = 0;
    bool passed() const noexcept { return triangle_failures == 0 && homogeneity_failures == 0; }
};

// Sampled triangle inequality and positive homogeneity, 1e-12 relative slack.
inline SpaceCheck check_space(const FiniteSpace& X, std::size_t samples, std::uint64_t seed) {
    SpaceCheck out;
    out.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), expo(-3.0, 3.0);
    const auto n = static_cast<std::size_t>(X.dim());
    std::vector<double> u(n), v(n), w(n);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            u[k] = coord(rng);
            v[k] = coord(rng);
            w[k] = u[k] + v[k];
        }
        const double nu = X.norm(u), nv = X.norm(v);
        if (X.norm(w) > (nu + nv) * (1.0 + 1e-12)) ++out.triangle_failures;
        const double lambda = std::pow(10.0, expo(rng));
        for (std::size_t k = 0; k < n; ++k) w[k] = lambda * u[k];
        if (std::abs(X.norm(w) - lambda * nu) > 1e-12 * lambda * nu) ++out.homogeneity_failures;
    }
    return out;
}

} // namespace absnorm
