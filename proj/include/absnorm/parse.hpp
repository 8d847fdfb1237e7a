#pragma once

// Norm-spec mini-language:
//
//   spec  := "p:" number | "p:inf"
//          | "mix:" number ":" spec ":" spec
//          | "curve:" x "," y { ";" x "," y }
//
// Whitespace-free, decimal floats. A spec nested in a mixture ends at the
// next ':' that is not consumed by its own grammar.

#include <absnorm/error.hpp>
#include <absnorm/norm.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace absnorm {

namespace detail {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    NormSpec parse_all() {
        NormSpec spec = parse_spec();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return spec;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        if (first == last || !(std::isdigit(static_cast<unsigned char>(*first)) || *first == '-' ||
                               *first == '+' || *first == '.'))
            fail("expected a decimal number");
        if (*first == '+') ++first;
        double value = 0.0;
        const auto res = std::from_chars(first, last, value, std::chars_format::general);
        if (res.ec != std::errc() || !std::isfinite(value)) fail("expected a decimal number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    NormSpec parse_spec() {
        const std::size_t start = pos_;
        try {
            if (consume("p:")) {
                if (consume("inf")) return NormSpec::p_norm(infinity);
                return NormSpec::p_norm(number());
            }
            if (consume("mix:")) {
                const double lambda = number();
                expect(':');
                NormSpec left = parse_spec();
                expect(':');
                NormSpec right = parse_spec();
                return NormSpec::mixture(lambda, left, right);
            }
            if (consume("curve:")) {
                std::vector<Point> pts;
                do {
                    const double x = number();
                    expect(',');
                    const double y = number();
                    pts.push_back({x, y});
                } while (consume(";"));
                return NormSpec::curve(std::move(pts));
            }
        } catch (const SpecError& e) {
            throw ParseError(std::string("invalid norm: ") + e.what(), start);
        }
        const std::size_t colon = text_.find(':', pos_);
        const std::string_view tag = text_.substr(pos_, colon == std::string_view::npos ? colon : colon - pos_);
        fail("unknown norm kind '" + std::string(tag) + "' (expected p, mix or curve)");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline NormSpec parse_norm_spec(std::string_view text) { return detail::SpecParser(text).parse_all(); }

// Inverse of parse_norm_spec up to float formatting (shortest round-trip).
inline std::string to_text(const NormSpec& spec) {
    if (const auto* pn = spec.as<PNorm>()) return "p:" + detail::shortest(pn->p);
    if (const auto* mx = spec.as<Mixture>())
        return "mix:" + detail::shortest(mx->lambda) + ":" + to_text(*mx->left) + ":" + to_text(*mx->right);
    const auto& v = std::get<CurveGauge>(spec.kind()).vertices;
    std::string out = "curve:";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += detail::shortest(v[i].x) + "," + detail::shortest(v[i].y);
    }
    return out;
}

} // namespace absnorm
