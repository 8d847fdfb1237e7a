#pragma once

#include <string_view>

namespace absnorm {

// Three-valued verdict for numerically semi-decidable properties.
enum class Tri { yes, no, undecided };

constexpr std::string_view to_string(Tri t) noexcept {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::undecided: return "undecided";
    }
    return "undecided";
}

constexpr Tri tri_and(Tri a, Tri b) noexcept {
    if (a == Tri::no || b == Tri::no) return Tri::no;
    if (a == Tri::yes && b == Tri::yes) return Tri::yes;
    return Tri::undecided;
}

} // namespace absnorm
