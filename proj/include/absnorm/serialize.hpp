#pragma once

// JSON (nlohmann) and CSV renderings of the reports. CSV numbers use 17
// significant digits; JSON numbers use the shortest round-trip form, and
// non-finite values become the strings "inf" / "-inf" (or null for NaN).

#include <absnorm/bgp_sum.hpp>
#include <absnorm/boundary.hpp>
#include <absnorm/norm.hpp>
#include <absnorm/support.hpp>
#include <absnorm/validate.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace absnorm {

using json = nlohmann::ordered_json;

inline std::string format17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline json to_json(Point p) { return json::array({number(p.x), number(p.y)}); }
inline json to_json(Functional g) { return {{"A", number(g.A)}, {"B", number(g.B)}}; }

inline json to_json(const ValidationReport& r) {
    json v = json::array();
    for (const auto& viol : r.violations) {
        json w = json::array();
        for (Point p : viol.witnesses) w.push_back(to_json(p));
        v.push_back({{"property", viol.property}, {"witnesses", w}, {"magnitude", number(viol.magnitude)}});
    }
    return {{"passed", r.passed},        {"sample_count", r.sample_count}, {"seed", r.seed},
            {"violation_count", r.violation_count}, {"violations", v}};
}

inline json to_json(const SupportSet& s) {
    json j;
    if (s.location.interior)
        j["location"] = {{"kind", "interior"}, {"x0", number(s.location.x0)}};
    else
        j["location"] = {{"kind", "endpoint"}, {"side", std::string(to_string(s.location.side))}};
    j["point"] = to_json(s.point);
    j["case"] = s.endpoint_case ? json(std::string(to_string(*s.endpoint_case))) : json(nullptr);
    if (s.location.interior) {
        j["slope_interval"] = json::array({number(s.a_lo), number(s.a_hi)});
        j["certified_bracket"] = json::array({number(s.certified.lo), number(s.certified.hi)});
        j["side_condition"] = s.side_condition_ok;
    } else {
        j["slope_interval"] = nullptr;
    }
    j["parameters"] = {{"a", number(s.a)}, {"f1", number(s.f1)}};
    json reps = json::array();
    for (const Functional& g : s.functionals) reps.push_back(to_json(g));
    j["representatives"] = reps;
    return j;
}

inline json to_json(const GateauxVerdict& g) {
    return {{"point", to_json(g.point)},
            {"verdict", std::string(to_string(g.verdict))},
            {"derivative", g.derivative ? to_json(*g.derivative) : json(nullptr)},
            {"slopes", json::array({number(g.slopes.right), number(g.slopes.left)})}};
}

inline json to_json(const std::vector<CurveRow>& rows) {
    json j = json::array();
    for (const auto& r : rows)
        j.push_back({{"x", number(r.x)}, {"f", number(r.f)}, {"flo", number(r.flo)}, {"fhi", number(r.fhi)}});
    return j;
}

inline std::string to_csv(const std::vector<CurveRow>& rows) {
    std::string out = "x,f,flo,fhi\n";
    for (const auto& r : rows)
        out += format17(r.x) + "," + format17(r.f) + "," + format17(r.flo) + "," + format17(r.fhi) + "\n";
    return out;
}

inline json to_json(const ConvexityClass& c) {
    return {{"strictly_convex", std::string(to_string(c.strictly_convex))},
            {"strictly_monotone", std::string(to_string(c.strictly_monotone))},
            {"min_excess", number(c.min_excess)},
            {"min_drop", number(c.min_drop)},
            {"f1", number(c.f1)}};
}

inline json to_json(const ConditionWitness& w) {
    json s = json::array(), m = json::array();
    for (double v : w.s_samples) s.push_back(number(v));
    for (double v : w.margins) m.push_back(number(v));
    return {{"epsilon", number(w.epsilon)}, {"s0", number(w.s0)}, {"s_max", number(w.s_max)},
            {"holds", std::string(to_string(w.holds))}, {"s_samples", s}, {"margins", m}};
}

// epsilon,s,margin
inline std::string margins_csv(const std::vector<ConditionWitness>& ws) {
    std::string out = "epsilon,s,margin\n";
    for (const auto& w : ws)
        for (std::size_t i = 0; i < w.s_samples.size(); ++i)
            out += format17(w.epsilon) + "," + format17(w.s_samples[i]) + "," + format17(w.margins[i]) + "\n";
    return out;
}

inline json to_json(const CoordinateCheck& c) {
    json w = json::array();
    for (const auto& x : c.witnesses) w.push_back(to_json(x));
    return {{"smooth", std::string(to_string(c.smooth))},
            {"condition", std::string(to_string(c.condition))},
            {"consistent", std::string(to_string(c.consistent))},
            {"witnesses", w}};
}

inline json to_json(const CrossCheck& c) {
    return {{"consistent", std::string(to_string(c.consistent))},
            {"at_01", to_json(c.at01)},
            {"at_10", to_json(c.at10)}};
}

inline json to_json(const InclusionReport& r) {
    json y = json::array();
    for (double v : r.y_center) y.push_back(number(v));
    json viol = json::array();
    for (const auto& v : r.violations) {
        json pt = json::array();
        for (double c : v.point) pt.push_back(number(c));
        viol.push_back({{"index", v.index}, {"inclusion", std::string(1, v.inclusion)}, {"point", pt},
                        {"excess", number(v.excess)}});
    }
    return {{"y_center", y},
            {"r", number(r.r)},
            {"epsilon", number(r.epsilon)},
            {"s0", number(r.s0)},
            {"s", number(r.s)},
            {"t", number(r.t)},
            {"zero_norm", number(r.zero_norm)},
            {"zero_excluded", r.zero_excluded},
            {"samples_checked", r.samples_checked},
            {"seed", r.seed},
            {"violation_count", r.violation_count},
            {"violations", viol}};
}

inline json to_json(const BgpVerdict& v) {
    return {{"smooth_at_01", std::string(to_string(v.smooth_at_01))},
            {"smooth_at_10", std::string(to_string(v.smooth_at_10))},
            {"condition_31", std::string(to_string(v.condition_31))},
            {"condition_32", std::string(to_string(v.condition_32))},
            {"verdict", std::string(to_string(v.verdict))},
            {"notes", v.notes}};
}

} // namespace absnorm
