#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tiltlab {

// Exact arithmetic only. Every quantity in the library is an arbitrary
// precision integer or rational; there is no floating point and no
// tolerance parameter anywhere.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& x) { return x.sign(); }

inline Int numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Int denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return denominator_of(x) == 1; }

/// Renders a rational as "p/q" in lowest terms; integers render without
/// the "/1" suffix. This is the wire format used by every report.
inline std::string to_fraction_string(const Rational& x) {
    const Int num = numerator_of(x);
    const Int den = denominator_of(x);
    std::string s = num.str();
    if (den != 1) {
        s += '/';
        s += den.str();
    }
    return s;
}

inline std::string to_fraction_string(const Int& x) { return x.str(); }

/// Parses "p", "-p" or "p/q". Decimal notation is rejected so that inputs
/// stay exact end to end.
inline Rational parse_rational(std::string_view text) {
    const auto fail = [&](const char* why) {
        throw std::invalid_argument("bad rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) fail("empty");
    if (text.find('.') != std::string_view::npos) fail("decimal notation is not accepted, use p/q");
    const auto slash = text.find('/');
    // validates and drops an explicit leading '+' (the big-integer string
    // constructor only understands '-')
    const auto checked_int = [&](std::string_view part) {
        if (part.empty()) fail("missing digits");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) fail("missing digits");
        for (std::size_t k = i; k < part.size(); ++k)
            if (part[k] < '0' || part[k] > '9') fail("unexpected character");
        if (part[0] == '+') part.remove_prefix(1);
        return Int(std::string(part));
    };
    if (slash == std::string_view::npos) return Rational(checked_int(text));
    Int num = checked_int(text.substr(0, slash));
    Int den = checked_int(text.substr(slash + 1));
    if (den == 0) fail("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

/// Parses a comma separated rational vector, e.g. "1,-3/4,0".
inline std::vector<Rational> parse_rational_vector(std::string_view text) {
    std::vector<Rational> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline Int binomial(const Int& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    Int num = 1;
    Int den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    if (num == 0) return 0;
    return num / den;
}

}  // namespace tiltlab
