#pragma once

#include <optional>
#include <string_view>

namespace absnorm {

// Numerical thresholds shared by the decision procedures.
struct Tolerances {
    double root = 1e-12;            // error allowance of a boundary-curve value
    double smooth = 1e-6;           // slope-bracket width below which f is differentiable
    double corner = 1e-4;           // slope-bracket width above which f has a corner
    double strict = 1e-9;           // midpoint excess / drop counted as strict
    double collinear = 1e-12;       // excess / drop counted as exactly flat
    double endpoint = 1e-9;         // f(1) = 1 and f(1) > 0 decisions
    double mvt = 1e-6;              // slack of the mean-value certification
    double infinite_slope = -1e6;   // endpoint slope treated as -infinity below this
};

// Returns a pointer to the field called `name`, or nullptr.
inline double* tolerance_field(Tolerances& t, std::string_view name) {
    if (name == "root") return &t.root;
    if (name == "smooth") return &t.smooth;
    if (name == "corner") return &t.corner;
    if (name == "strict") return &t.strict;
    if (name == "collinear") return &t.collinear;
    if (name == "endpoint") return &t.endpoint;
    if (name == "mvt") return &t.mvt;
    if (name == "infinite_slope") return &t.infinite_slope;
    return nullptr;
}

} // namespace absnorm
