#pragma once

#include <stdexcept>

#include "qdense/prime.hpp"
#include "qdense/rational.hpp"

namespace qdense {

/// nu_p extended with +infinity, which arises exactly for the input 0.
struct ExtendedValuation {
    bool infinite = false;
    long value = 0;

    static ExtendedValuation infinity() { return {true, 0}; }
    static ExtendedValuation finite(long v) { return {false, v}; }

    friend bool operator==(const ExtendedValuation&, const ExtendedValuation&) = default;
};

/// nu_p(x) for nonzero x: the t with x = (a/b) * p^t and a, b coprime to p.
/// Computed by exact division of numerator and denominator separately, so
/// it never factors the whole number.
inline long valuation(const Rational& x, const Prime& p) {
    if (is_zero(x))
        throw std::invalid_argument("valuation: x must be nonzero (use valuation_or_infinity)");
    const Int pz = p.as_int();
    Int scratch;
    const auto vnum = mpz_remove(scratch.get_mpz_t(), x.get_num_mpz_t(), pz.get_mpz_t());
    const auto vden = mpz_remove(scratch.get_mpz_t(), x.get_den_mpz_t(), pz.get_mpz_t());
    return static_cast<long>(vnum) - static_cast<long>(vden);
}

inline ExtendedValuation valuation_or_infinity(const Rational& x, const Prime& p) {
    if (is_zero(x)) return ExtendedValuation::infinity();
    return ExtendedValuation::finite(valuation(x, p));
}

/// ||x||_p = p^(-nu_p(x)), with ||0||_p = 0. Exact rational result.
inline Rational padic_norm(const Rational& x, const Prime& p) {
    if (is_zero(x)) return Rational(0);
    const long v = valuation(x, p);
    Int power;
    mpz_ui_pow_ui(power.get_mpz_t(), p.value(), static_cast<unsigned long>(v < 0 ? -v : v));
    if (v >= 0) return make_rational(Int(1), power);
    return Rational(power);
}

inline Rational padic_distance(const Rational& x, const Rational& y, const Prime& p) {
    return padic_norm(x - y, p);
}

/// The unit u with x = u * p^nu_p(x); nu_p(u) = 0.
inline Rational unit_part(const Rational& x, const Prime& p) {
    if (is_zero(x)) throw std::invalid_argument("unit_part: x must be nonzero");
    const long v = valuation(x, p);
    Int power;
    mpz_ui_pow_ui(power.get_mpz_t(), p.value(), static_cast<unsigned long>(v < 0 ? -v : v));
    Rational u = v >= 0 ? Rational(x / Rational(power)) : Rational(x * Rational(power));
    u.canonicalize();
    return u;
}

/// unit_part(x) reduced modulo p^k, in [0, p^k); the denominator of the
/// unit part is invertible mod p^k by construction.
inline Int unit_residue(const Rational& x, const Prime& p, unsigned k) {
    if (k == 0) throw std::invalid_argument("unit_residue: k must be positive");
    if (is_zero(x)) throw std::invalid_argument("unit_residue: x must be nonzero");
    const Rational u = unit_part(x, p);
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
    Int num, den_inv;
    mpz_fdiv_r(num.get_mpz_t(), u.get_num_mpz_t(), pk.get_mpz_t());
    if (!mpz_invert(den_inv.get_mpz_t(), u.get_den_mpz_t(), pk.get_mpz_t()))
        throw std::logic_error("unit_residue: denominator not invertible (impossible for a unit)");
    Int r = num * den_inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
    return r;
}

} // namespace qdense
