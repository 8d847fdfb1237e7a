#include <absnorm/absnorm.hpp>

#include <catch_amalgamated.hpp>

#include "zoo.hpp"

#include <cmath>
#include <random>

using namespace absnorm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

// smallest s with ||(1, s - eps)||_p < s, by bisection on the closed form
double oracle_s0(double p, double eps) {
    auto margin = [&](long double s) {
        return s - std::pow(1.0L + std::pow(s - eps, static_cast<long double>(p)), 1.0L / p);
    };
    long double lo = eps, hi = eps + 1;
    while (margin(hi) <= 0) hi *= 2;
    for (int i = 0; i < 200; ++i) {
        const long double mid = (lo + hi) / 2;
        (margin(mid) > 0 ? hi : lo) = mid;
    }
    return static_cast<double>(hi);
}

} // namespace

TEST_CASE("condition examples") {
    const ConditionWitness l1 = check_condition_at(NormSpec::p_norm(1), Coordinate::first, 0.5);
    CHECK(l1.holds == Tri::no);
    for (double m : l1.margins) CHECK_THAT(m, WithinAbs(-0.5, 1e-12));

    const ConditionWitness e2 = check_condition_at(NormSpec::p_norm(2), Coordinate::first, 0.5);
    CHECK(e2.holds == Tri::yes);
    CHECK(e2.s0 >= 1.25);
    CHECK(e2.s0 <= 1.25 * 1.02);

    const ConditionWitness inf = check_condition_at(NormSpec::p_norm(infinity), Coordinate::first, 0.5);
    CHECK(inf.holds == Tri::yes);
    CHECK(inf.s0 > 1.0);
    CHECK(inf.s0 < 1.05);

    CHECK_THROWS_AS(check_condition_at(NormSpec::p_norm(2), Coordinate::first, 0.5, 1.4), DomainError);
    CHECK_THROWS_AS(check_condition_at(NormSpec::p_norm(2), Coordinate::first, 0.0), DomainError);
}

TEST_CASE("grid s0 tracks the exact threshold") {
    for (double p : {1.5, 2.0, 3.0, 4.0})
        for (double eps : default_epsilons()) {
            const ConditionWitness w = check_condition_at(NormSpec::p_norm(p), Coordinate::first, eps);
            INFO("p=" << p << " eps=" << eps);
            REQUIRE(w.holds == Tri::yes);
            const double exact = oracle_s0(p, eps);
            CHECK(w.s0 >= exact * (1 - 1e-12));
            // one geometric grid step above the threshold at most
            const double step = std::pow(w.s_max / (eps + std::ldexp(1.0, -10)), 1.0 / (kConditionGrid - 1));
            CHECK(w.s0 <= std::max(exact, eps + std::ldexp(1.0, -10)) * step * (1 + 1e-12));
        }
}

TEST_CASE("p = 1.5 needs a stretched s grid at small epsilon") {
    const ConditionWitness w = check_condition_at(NormSpec::p_norm(1.5), Coordinate::first, 1.0 / 64);
    REQUIRE(w.holds == Tri::yes);
    CHECK(w.s_max > default_s_max(1.0 / 64));
    CHECK(w.s0 >= oracle_s0(1.5, 1.0 / 64) * (1 - 1e-12));
}

TEST_CASE("witness validity on the zoo") {
    for (const auto& z : zoo::all()) {
        const NormSpec s = parse_norm_spec(z);
        for (Coordinate c : {Coordinate::first, Coordinate::second})
            for (const ConditionWitness& w : check_condition(s, c)) {
                if (w.holds != Tri::yes) continue;
                INFO(z << " eps=" << w.epsilon);
                CHECK(w.s0 > w.epsilon);
                for (double m : w.margins) REQUIRE(m > 0.0);
                for (double s_val : w.s_samples) REQUIRE(s_val >= w.s0);
                for (int k = 0; k <= 64; ++k) {
                    const double s_val = w.s_max * (1.0 + k / 64.0);
                    REQUIRE(condition_margin(s, c, w.epsilon, s_val) > 0.0);
                }
            }
    }
}

TEST_CASE("smoothness at the basis vectors") {
    CHECK(smooth_at_basis(NormSpec::p_norm(2)) == std::pair{Tri::yes, Tri::yes});
    CHECK(smooth_at_basis(NormSpec::p_norm(1)) == std::pair{Tri::no, Tri::no});
    CHECK(smooth_at_basis(NormSpec::p_norm(infinity)) == std::pair{Tri::yes, Tri::yes});
    CHECK(smooth_at_basis(parse_norm_spec("curve:0,1;0.5,0.9;1,0")).first == Tri::no);
    CHECK(smooth_at_basis(parse_norm_spec("curve:0,1;0.5,1;1,0")) == std::pair{Tri::yes, Tri::no});
}

TEST_CASE("equivalence cross-check") {
    const CrossCheck e2 = equivalence_crosscheck(NormSpec::p_norm(2));
    CHECK(e2.consistent == Tri::yes);
    CHECK(e2.at01.condition == Tri::yes);
    const CrossCheck l1 = equivalence_crosscheck(NormSpec::p_norm(1));
    CHECK(l1.consistent == Tri::yes);
    CHECK(l1.at01.smooth == Tri::no);
    CHECK(l1.at01.condition == Tri::no);
    const CrossCheck mix = equivalence_crosscheck(parse_norm_spec("mix:0.5:p:1:p:inf"), {0.25});
    CHECK(mix.consistent == Tri::yes);
    CHECK(mix.at01.smooth == Tri::no);
    CHECK(mix.at01.condition == Tri::no);

    for (const auto& z : zoo::all()) {
        const CrossCheck cc = equivalence_crosscheck(parse_norm_spec(z));
        INFO(z);
        CHECK(cc.consistent != Tri::no);
        CHECK(cc.at01.consistent != Tri::no);
        CHECK(cc.at10.consistent != Tri::no);
    }
}

TEST_CASE("finite spaces") {
    const FiniteSpace l1 = FiniteSpace::lp(1, 3), l2 = FiniteSpace::lp(2, 2), linf = FiniteSpace::lp(infinity, 2);
    CHECK(l1.norm(std::vector<double>{1, -2, 3}) == 6.0);
    CHECK_THAT(l2.norm(std::vector<double>{3, 4}), WithinAbs(5.0, 1e-15));
    CHECK(linf.norm(std::vector<double>{-7, 4}) == 7.0);
    CHECK_THAT(FiniteSpace::lp(3, 2).norm(std::vector<double>{1, 2}), WithinAbs(std::cbrt(9.0), 1e-15));
    CHECK_THROWS_AS(l2.norm(std::vector<double>{1, 2, 3}), DomainError);
    CHECK_THROWS_AS(FiniteSpace::lp(2, 0), DomainError);

    const FiniteSpace plane = FiniteSpace::plane(parse_norm_spec("curve:0,1;0.5,0.9;1,0"));
    CHECK_THAT(plane.norm(std::vector<double>{0.5, 0.9}), WithinAbs(1.0, 1e-10));

    FiniteSpace z = FiniteSpace::lp(2, 1);
    for (int d = 1; d <= kMaxSumDepth; ++d) {
        z = FiniteSpace::direct_sum(NormSpec::p_norm(2), z, FiniteSpace::lp(2, 1));
        CHECK(z.depth() == d);
    }
    CHECK(z.dim() == kMaxSumDepth + 1);
    // nested Euclidean sums of lines are Euclidean
    std::vector<double> v{1, 2, 3, 4, 5};
    CHECK_THAT(z.norm(v), WithinAbs(std::sqrt(55.0), 1e-13));
    CHECK_THROWS_AS(FiniteSpace::direct_sum(NormSpec::p_norm(2), z, FiniteSpace::lp(2, 1)), DomainError);

    for (const FiniteSpace& s : {l1, l2, linf, plane, z}) CHECK(check_space(s, 2000, 3).passed());
}

TEST_CASE("sum_norm") {
    const FiniteSpace l1 = FiniteSpace::lp(1, 2), linf = FiniteSpace::lp(infinity, 2), r = FiniteSpace::lp(2, 1);
    CHECK_THAT(sum_norm(NormSpec::p_norm(2), l1, linf, std::vector<double>{0.3, 0.3}, std::vector<double>{0.8, 0.1}),
               WithinAbs(1.0, 1e-15));
    CHECK(sum_norm(NormSpec::p_norm(3), l1, linf, std::vector<double>{0, 0}, std::vector<double>{0, 0}) == 0.0);
    CHECK(sum_norm(NormSpec::p_norm(1), r, r, std::vector<double>{0.25}, std::vector<double>{0.5}) == 0.75);
    CHECK_THROWS_AS(sum_norm(NormSpec::p_norm(1), r, r, std::vector<double>{0.25, 1}, std::vector<double>{0.5}),
                    DomainError);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-2, 2);
    for (const auto& spec : zoo::all()) {
        const NormSpec E = parse_norm_spec(spec), F = swapped(E);
        for (int i = 0; i < 200; ++i) {
            const std::vector<double> x{u(rng), u(rng)}, y{u(rng), u(rng)};
            REQUIRE_THAT(sum_norm(E, l1, linf, x, y), WithinAbs(sum_norm(F, linf, l1, y, x), 1e-12));
        }
    }
}

TEST_CASE("lemma inclusions: hand-checked Euclidean instance") {
    const FiniteSpace R = FiniteSpace::lp(2, 1);
    const InclusionReport rep = lemma_inclusion_verify(NormSpec::p_norm(2), R, R, std::vector<double>{2.0}, 1.0, 100000, 7);
    CHECK(rep.epsilon == 1.0);
    CHECK(rep.s == 3.0);
    CHECK_THAT(rep.t, WithinAbs(std::sqrt(5.0), 1e-15));
    CHECK(rep.violation_count == 0);
    CHECK(rep.zero_excluded);
    CHECK(rep.zero_norm == 3.0);
    CHECK(rep.samples_checked == 100000);
    CHECK(rep.clean());
}

TEST_CASE("lemma inclusions: sup-sum of Euclidean planes") {
    const FiniteSpace l2 = FiniteSpace::lp(2, 2);
    const InclusionReport rep =
        lemma_inclusion_verify(NormSpec::p_norm(infinity), l2, l2, std::vector<double>{0, 2}, 1.0, 10000, 11);
    CHECK(rep.epsilon == 1.0);
    CHECK(rep.s > 2.0);
    CHECK(rep.t == rep.s - 1.0);
    CHECK(rep.violation_count == 0);
    CHECK(rep.zero_excluded);
}

TEST_CASE("lemma precondition and domain errors") {
    const FiniteSpace R = FiniteSpace::lp(2, 1);
    try {
        lemma_inclusion_verify(NormSpec::p_norm(1), R, R, std::vector<double>{2.0}, 1.0, 100, 1);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(e.epsilon() == 1.0);
        CHECK_THAT(e.what(), ContainsSubstring("epsilon = 1"));
    }
    CHECK_THROWS_AS(lemma_inclusion_verify(NormSpec::p_norm(2), R, R, std::vector<double>{0.5}, 1.0, 100, 1),
                    DomainError);
    CHECK_THROWS_AS(lemma_inclusion_verify(NormSpec::p_norm(2), R, R, std::vector<double>{2.0}, 0.0, 100, 1),
                    DomainError);
}

TEST_CASE("lemma reports do not depend on the thread count") {
    const FiniteSpace X = FiniteSpace::lp(3, 2), Y = FiniteSpace::lp(1.5, 3);
    const std::vector<double> y{0.5, -1.5, 2.0};
    const NormSpec E = parse_norm_spec("p:3");
    const InclusionReport a = lemma_inclusion_verify(E, X, Y, y, 0.75, 20000, 99, 1);
    const InclusionReport b = lemma_inclusion_verify(E, X, Y, y, 0.75, 20000, 99, 4);
    CHECK(a.violation_count == b.violation_count);
    CHECK(a.violations.size() == b.violations.size());
    CHECK(a.s == b.s);
    CHECK(a.t == b.t);
    CHECK(a.clean());
    CHECK(a.t < a.s);
    CHECK(a.s > std::max(a.epsilon, Y.norm(y)));
}

TEST_CASE("BGP verdicts") {
    const BgpVerdict e2 = bgp_sum_verdict(NormSpec::p_norm(2));
    CHECK(e2.verdict == BgpOutcome::preserved);
    CHECK(e2.condition_31 == Tri::yes);
    CHECK(e2.condition_32 == Tri::yes);
    CHECK(bgp_sum_verdict(NormSpec::p_norm(infinity)).verdict == BgpOutcome::preserved);
    const BgpVerdict l1 = bgp_sum_verdict(NormSpec::p_norm(1));
    CHECK(l1.verdict == BgpOutcome::unknown);
    CHECK_THAT(l1.notes, ContainsSubstring("open problem"));
    CHECK_THAT(bgp_sum_verdict(parse_norm_spec("curve:0,1;1,0")).notes, ContainsSubstring("open problem"));
    const BgpVerdict mix = bgp_sum_verdict(parse_norm_spec("mix:0.5:p:1:p:inf"));
    CHECK(mix.verdict == BgpOutcome::unknown);
    CHECK_THAT(mix.notes, !ContainsSubstring("open problem"));
    for (const auto& z : zoo::all()) {
        const BgpVerdict v = bgp_sum_verdict(parse_norm_spec(z));
        CHECK((v.verdict == BgpOutcome::preserved) == (v.smooth_at_01 == Tri::yes && v.smooth_at_10 == Tri::yes));
    }
}
