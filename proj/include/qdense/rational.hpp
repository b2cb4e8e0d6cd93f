#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdense {

// Every quantity in this library is an exact integer or exact rational.
// Floating point is never used: density verdicts hinge on exact congruences.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

/// True iff x is the square of a rational.
inline bool is_rational_square(const Rational& x) {
    if (sgn(x) < 0) return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Int& x) { return x.get_str(); }

/// Parses "n" or "n/d" in base 10 with an optional sign. Rejects anything
/// else (whitespace, empty fields, zero denominators).
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    auto is_int_literal = [](std::string_view s) {
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_int_literal(num) || !is_int_literal(den)) return std::nullopt;
    Int n(std::string(num), 10);
    Int d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    return make_rational(n, d);
}

inline Rational parse_rational(std::string_view text) {
    auto q = try_parse_rational(text);
    if (!q) throw std::invalid_argument("parse_rational: bad rational literal '" + std::string(text) + "'");
    return *q;
}

} // namespace qdense
