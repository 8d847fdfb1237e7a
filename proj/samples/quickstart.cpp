// Walk through the main operations on a few norms.

#include <absnorm/absnorm.hpp>

#include <cstdio>
#include <vector>

using namespace absnorm;

int main() {
    const NormSpec e2 = parse_norm_spec("p:2");
    const NormSpec hex = gauge_from_curve({{0, 1}, {0.5, 0.9}, {1, 0}});
    const NormSpec mix = NormSpec::mixture(0.5, NormSpec::p_norm(1), NormSpec::p_norm(infinity));

    std::printf("||(0.6,0.8)||_2 = %.17g\n", eval_norm(e2, {0.6, 0.8}));
    std::printf("||(0.5,0.9)||_hex = %.17g\n", eval_norm(hex, {0.5, 0.9}));

    const BoundaryCurve curve(e2);
    std::printf("f(0.6) = %.17g\n", curve(0.6));

    const SupportSet s = support_set_interior(curve, 0.6);
    std::printf("S(0.6) = {(%.6f, %.6f)}\n", s.functionals[0].A, s.functionals[0].B);

    const SupportSet end = support_set_endpoint(BoundaryCurve(hex), Side::right);
    std::printf("hex endpoint: case %s, a = %.6f, %zu representatives\n",
                std::string(to_string(*end.endpoint_case)).c_str(), end.a, end.functionals.size());

    for (const NormSpec* n : {&e2, &mix}) {
        const BgpVerdict v = bgp_sum_verdict(*n);
        std::printf("%s: smooth (0,1) %s, smooth (1,0) %s -> %s\n", n->label().c_str(),
                    std::string(to_string(v.smooth_at_01)).c_str(), std::string(to_string(v.smooth_at_10)).c_str(),
                    std::string(to_string(v.verdict)).c_str());
    }

    const std::vector<double> y{2.0};
    const InclusionReport rep =
        lemma_inclusion_verify(e2, FiniteSpace::lp(2, 1), FiniteSpace::lp(2, 1), y, 1.0, 10000, 7);
    std::printf("eps = %g, s = %g, t = %.17g, violations = %llu\n", rep.epsilon, rep.s, rep.t,
                static_cast<unsigned long long>(rep.violation_count));
}
