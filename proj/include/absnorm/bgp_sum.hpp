#pragma once

// Ball conditions for E-sums.
//
//   first:   for every eps > 0 there is s0 > eps with ||(1, s - eps)||_E < s for all s >= s0
//   second:  the same with ||(s - eps, 1)||_E
//
// The first holds iff the norm is Gateaux differentiable at (0,1), the second
// iff it is at (1,0); when both hold, X (+)_E Y inherits the ball generated property from
// X and Y. The checkers here sample eps and s, the smoothness side comes from
// the boundary curve, and the cross-check compares the two routes.

#include <absnorm/boundary.hpp>
#include <absnorm/error.hpp>
#include <absnorm/finite_space.hpp>
#include <absnorm/norm.hpp>
#include <absnorm/support.hpp>
#include <absnorm/tolerances.hpp>
#include <absnorm/tri.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace absnorm {

enum class Coordinate { first, second };

constexpr std::string_view to_string(Coordinate c) noexcept { return c == Coordinate::first ? "first" : "second"; }

inline const std::vector<double>& default_epsilons() {
    static const std::vector<double> eps = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0, 2.0, 8.0};
    return eps;
}

inline constexpr int kConditionGrid = 512;
inline double default_s_max(double eps) { return 64.0 * (1.0 + eps); }
inline double s_max_cap(double eps) { return std::ldexp(1.0 + eps, 30); }

struct ConditionWitness {
    double epsilon = 0.0;
    double s0 = std::numeric_limits<double>::quiet_NaN();  // NaN unless holds = yes
    double s_max = 0.0;                                     // upper end of the final grid
    std::vector<double> s_samples;
    std::vector<double> margins;
    Tri holds = Tri::undecided;
};

// s - ||(1, s - eps)||_E, or s - ||(s - eps, 1)||_E for the second coordinate.
inline double condition_margin(const NormSpec& spec, Coordinate c, double eps, double s) {
    const Point q = c == Coordinate::first ? Point{1.0, s - eps} : Point{s - eps, 1.0};
    return s - eval_norm(spec, q);
}

// One eps. Margins are sampled on a geometric grid over [eps + 2^-10, s_max];
// s0 is the first grid point from which all margins are positive and
// nondecreasing. While no such tail exists but the margins are still
// climbing at s_max, the grid is stretched by 16 (up to 2^30 (1 + eps)).
inline ConditionWitness check_condition_at(const NormSpec& spec, Coordinate c, double eps, double s_max = 0.0,
                                           int grid = kConditionGrid) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("check_condition: epsilon must be positive");
    if (grid < 3) throw DomainError("check_condition: grid must be at least 3");
    if (s_max == 0.0) s_max = default_s_max(eps);
    if (!(s_max > eps + 1.0)) throw DomainError("check_condition: s_max must exceed epsilon + 1");

    ConditionWitness w;
    w.epsilon = eps;
    const double lo = eps + std::ldexp(1.0, -10);
    const double cap = std::max(s_max, s_max_cap(eps));
    const auto n = static_cast<std::size_t>(grid);
    std::vector<double> s(n), m(n);
    std::size_t start = n;
    bool climbing = false;
    for (;;) {
        const double ratio = std::log(s_max / lo);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = i + 1 == n ? s_max : lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
            m[i] = condition_margin(spec, c, eps, s[i]);
        }
        start = n;
        if (m[n - 1] > 0.0) {
            start = n - 1;
            while (start > 0 && m[start - 1] > 0.0 && m[start] >= m[start - 1] - 1e-12 * s[start - 1]) --start;
        }
        climbing = m[n - 1] > m[n - 2] + 1e-12 * s[n - 1];
        if (start + 1 < n || !climbing || s_max * 16.0 > cap) break;
        s_max *= 16.0;
    }
    w.s_max = s_max;

    if (start + 1 < n) {
        w.holds = Tri::yes;
        w.s0 = s[start];
        w.s_samples.assign(s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
        w.margins.assign(m.begin() + static_cast<std::ptrdiff_t>(start), m.end());
        return w;
    }
    w.s_samples = s;
    w.margins = m;
    const double best = *std::max_element(m.begin(), m.end());
    w.holds = best <= -1e-9 && !climbing ? Tri::no : Tri::undecided;
    return w;
}

inline std::vector<ConditionWitness> check_condition(const NormSpec& spec, Coordinate c,
                                                     const std::vector<double>& epsilons = default_epsilons(),
                                                     double s_max = 0.0, int grid = kConditionGrid) {
    std::vector<ConditionWitness> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) out.push_back(check_condition_at(spec, c, eps, s_max, grid));
    return out;
}

// Any eps failing refutes the condition; every eps holding corroborates it.
inline Tri aggregate(const std::vector<ConditionWitness>& ws) {
    bool all_yes = !ws.empty();
    for (const auto& w : ws) {
        if (w.holds == Tri::no) return Tri::no;
        if (w.holds != Tri::yes) all_yes = false;
    }
    return all_yes ? Tri::yes : Tri::undecided;
}

// Smoothness at (0,1) and at (1,0); the latter is smoothness of the swapped
// norm at (0,1).
inline std::pair<Tri, Tri> smooth_at_basis(const NormSpec& spec, const Tolerances& tol = {}) {
    const Tri at01 = to_tri(gateaux_at(BoundaryCurve(spec, tol), 0.0).verdict);
    const Tri at10 = to_tri(gateaux_at(BoundaryCurve(swapped(spec), tol), 0.0).verdict);
    return {at01, at10};
}

struct CoordinateCheck {
    Tri smooth = Tri::undecided;
    Tri condition = Tri::undecided;
    Tri consistent = Tri::undecided;
    std::vector<ConditionWitness> witnesses;
};

struct CrossCheck {
    Tri consistent = Tri::undecided;
    CoordinateCheck at01;  // (0,1) vs first condition
    CoordinateCheck at10;  // (1,0) vs second condition
};

inline CrossCheck equivalence_crosscheck(const NormSpec& spec,
                                         const std::vector<double>& epsilons = default_epsilons(),
                                         double s_max = 0.0, const Tolerances& tol = {}) {
    CrossCheck out;
    const auto [s01, s10] = smooth_at_basis(spec, tol);
    auto fill = [&](CoordinateCheck& cc, Tri smooth, Coordinate c) {
        cc.smooth = smooth;
        cc.witnesses = check_condition(spec, c, epsilons, s_max);
        cc.condition = aggregate(cc.witnesses);
        if (cc.smooth == Tri::undecided || cc.condition == Tri::undecided)
            cc.consistent = Tri::undecided;
        else
            cc.consistent = cc.smooth == cc.condition ? Tri::yes : Tri::no;
    };
    fill(out.at01, s01, Coordinate::first);
    fill(out.at10, s10, Coordinate::second);
    if (out.at01.consistent == Tri::no || out.at10.consistent == Tri::no)
        out.consistent = Tri::no;
    else
        out.consistent = tri_and(out.at01.consistent, out.at10.consistent);
    return out;
}

struct InclusionViolation {
    std::uint64_t index = 0;
    char inclusion = 'a';           // 'a': B_r(y) in B_{s-eps}(c),  'b': B_X x B_{s-eps}(c) in B_t((0,c))
    std::vector<double> point;      // w for 'a', (u, v) for 'b'
    double excess = 0.0;
};

struct InclusionReport {
    std::vector<double> y_center;
    double r = 0.0;
    double epsilon = 0.0;
    double s0 = 0.0;
    double s = 0.0;
    double t = 0.0;
    double zero_norm = 0.0;  // ||(0, c)||_Z with c = s y / ||y||
    bool zero_excluded = false;
    std::uint64_t samples_checked = 0;
    std::uint64_t seed = 0;
    std::vector<InclusionViolation> violations;  // first kMaxRecorded by sample index
    std::uint64_t violation_count = 0;

    static constexpr std::size_t kMaxRecorded = 64;
    bool clean() const noexcept { return violation_count == 0 && zero_excluded && t < s; }
};

inline constexpr std::uint64_t kInclusionChunk = 4096;
inline constexpr double kInclusionSlack = 1e-12;

namespace detail {

// Uniform point of {v : ||v - center|| <= radius} by rejection from the
// enclosing sup-norm cube (every absolute normalised norm dominates |.|_inf).
template <class Rng>
void sample_ball(const FiniteSpace& X, std::span<const double> center, double radius, Rng& rng,
                 std::vector<double>& out, std::vector<double>& scratch) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t n = center.size();
    out.resize(n);
    scratch.resize(n);
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        for (std::size_t k = 0; k < n; ++k) scratch[k] = radius * unit(rng);
        if (X.norm(scratch) <= radius) {
            for (std::size_t k = 0; k < n; ++k) out[k] = center[k] + scratch[k];
            return;
        }
    }
    throw DomainError("sample_ball: rejection sampling did not terminate");
}

struct ChunkResult {
    std::vector<InclusionViolation> violations;
    std::uint64_t count = 0;
};

} // namespace detail

// Samples the metric inclusions behind the lemma for Z = X (+)_E Y:
//   (a) B_r(y) in B_{s-eps}(c),  (b) B_X x B_{s-eps}(c) in B_t((0, c)),
//   (c) ||(0, c)||_Z = s > t,
// with eps = ||y|| - r, c = s y / ||y||, t = ||(1, s - eps)||_E and
// s > max(eps, ||y||) taken from the first-condition witness. Sample i belongs to chunk
// i / 4096, whose generator is seeded with (seed, chunk), so the report does
// not depend on the thread count.
inline InclusionReport lemma_inclusion_verify(const NormSpec& E, const FiniteSpace& X, const FiniteSpace& Y,
                                              std::span<const double> y_center, double r, std::uint64_t sample_count,
                                              std::uint64_t seed, unsigned threads = 0) {
    const double ny = Y.norm(y_center);
    if (!(r > 0.0)) throw DomainError("lemma_inclusion_verify: r must be positive");
    if (!(ny > r)) throw DomainError("lemma_inclusion_verify: need ||y|| > r");

    InclusionReport rep;
    rep.y_center.assign(y_center.begin(), y_center.end());
    rep.r = r;
    rep.seed = seed;
    rep.epsilon = ny - r;
    const ConditionWitness w = check_condition_at(E, Coordinate::first, rep.epsilon);
    if (w.holds != Tri::yes)
        throw PreconditionError("ball condition ||(1, s - eps)||_E < s does not hold at epsilon = " + detail::shortest(rep.epsilon) +
                                    " (verdict: " + std::string(to_string(w.holds)) + ")",
                                rep.epsilon);
    rep.s0 = w.s0;
    rep.s = std::max(std::max(rep.epsilon, ny) + 1.0, w.s0);
    rep.t = eval_norm(E, {1.0, rep.s - rep.epsilon});
    if (!(rep.t < rep.s)) {
        rep.s = w.s0;
        rep.t = eval_norm(E, {1.0, rep.s - rep.epsilon});
    }

    const std::size_t ny_dim = y_center.size();
    std::vector<double> c(ny_dim), zero_x(static_cast<std::size_t>(X.dim()), 0.0);
    for (std::size_t k = 0; k < ny_dim; ++k) c[k] = rep.s * y_center[k] / ny;
    rep.zero_norm = sum_norm(E, X, Y, zero_x, c);
    rep.zero_excluded = rep.zero_norm > rep.t;

    const double big_r = rep.s - rep.epsilon;
    const std::uint64_t chunks = (sample_count + kInclusionChunk - 1) / kInclusionChunk;
    std::vector<detail::ChunkResult> results(chunks);

    auto run_chunk = [&](std::uint64_t chunk) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
        std::mt19937_64 rng(sq);
        detail::ChunkResult& res = results[chunk];
        std::vector<double> wpt, u, v, d(ny_dim), scratch;
        const std::uint64_t end = std::min(sample_count, (chunk + 1) * kInclusionChunk);
        for (std::uint64_t i = chunk * kInclusionChunk; i < end; ++i) {
            detail::sample_ball(Y, y_center, r, rng, wpt, scratch);
            for (std::size_t k = 0; k < ny_dim; ++k) d[k] = wpt[k] - c[k];
            const double da = Y.norm(d) - big_r;
            if (da > kInclusionSlack * std::max(1.0, big_r)) {
                ++res.count;
                if (res.violations.size() < InclusionReport::kMaxRecorded) res.violations.push_back({i, 'a', wpt, da});
            }

            detail::sample_ball(X, zero_x, 1.0, rng, u, scratch);
            detail::sample_ball(Y, c, big_r, rng, v, scratch);
            for (std::size_t k = 0; k < ny_dim; ++k) d[k] = v[k] - c[k];
            const double db = sum_norm(E, X, Y, u, d) - rep.t;
            if (db > kInclusionSlack * std::max(1.0, rep.t)) {
                ++res.count;
                if (res.violations.size() < InclusionReport::kMaxRecorded) {
                    std::vector<double> pt = u;
                    pt.insert(pt.end(), v.begin(), v.end());
                    res.violations.push_back({i, 'b', std::move(pt), db});
                }
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
    if (threads <= 1) {
        for (std::uint64_t k = 0; k < chunks; ++k) run_chunk(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t k = t; k < chunks; k += threads) run_chunk(k);
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& res : results) {
        rep.violation_count += res.count;
        for (const auto& viol : res.violations)
            if (rep.violations.size() < InclusionReport::kMaxRecorded) rep.violations.push_back(viol);
    }
    rep.samples_checked = sample_count;
    return rep;
}

enum class BgpOutcome { preserved, unknown };

constexpr std::string_view to_string(BgpOutcome b) noexcept {
    return b == BgpOutcome::preserved ? "preserved" : "unknown";
}

struct BgpVerdict {
    Tri smooth_at_01 = Tri::undecided;
    Tri smooth_at_10 = Tri::undecided;
    Tri condition_31 = Tri::undecided;
    Tri condition_32 = Tri::undecided;
    BgpOutcome verdict = BgpOutcome::unknown;
    std::string notes;
};

// |psi(t) - 1| <= 1e-9 at 65 equispaced t: E is the l^1 norm.
inline bool is_l1(const NormSpec& spec) {
    for (int i = 0; i <= 64; ++i)
        if (std::abs(psi_curve(spec, i / 64.0) - 1.0) > 1e-9) return false;
    return true;
}

inline BgpVerdict bgp_sum_verdict(const NormSpec& E, const Tolerances& tol = {}) {
    BgpVerdict v;
    std::tie(v.smooth_at_01, v.smooth_at_10) = smooth_at_basis(E, tol);
    v.condition_31 = aggregate(check_condition(E, Coordinate::first));
    v.condition_32 = aggregate(check_condition(E, Coordinate::second));
    v.verdict = v.smooth_at_01 == Tri::yes && v.smooth_at_10 == Tri::yes ? BgpOutcome::preserved : BgpOutcome::unknown;
    if (is_l1(E))
        v.notes = "E is the l1 norm: whether X (+)_1 Y inherits the BGP from X and Y is an open problem";
    else if (v.verdict == BgpOutcome::unknown)
        v.notes = "E is not known to be Gateaux differentiable at both (0,1) and (1,0); the sufficient condition does not apply";
    else
        v.notes = "E is Gateaux differentiable at (0,1) and (1,0)";
    return v;
}

} // namespace absnorm
