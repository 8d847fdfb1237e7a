#pragma once

#include <cmath>
#include <concepts>

namespace absnorm {

struct Enclosure {
    double lo;
    double hi;
    double width() const noexcept { return hi - lo; }
};

// Bisection on a monotone predicate that holds at `lo` and fails at `hi`.
// Stops when the width drops to `width_tol`, when the midpoint coincides with
// an endpoint (adjacent doubles), or after `max_iter` halvings. The returned
// enclosure keeps the invariant pred(lo) && !pred(hi).
template <std::predicate<double> Pred>
Enclosure bisect_predicate(Pred&& holds, double lo, double hi, int max_iter,
                           double width_tol = 0.0) {
    for (int i = 0; i < max_iter && hi - lo > width_tol; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (holds(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

} // namespace absnorm
