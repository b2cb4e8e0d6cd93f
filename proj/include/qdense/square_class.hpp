#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qdense/padic.hpp"

namespace qdense {

/// Legendre symbol (a/p) for odd p: 0 iff p | a, 1 for nonzero squares mod p.
inline int legendre_symbol(const Int& a, const Prime& p) {
    if (p.is_two()) throw std::invalid_argument("legendre_symbol: p must be odd");
    const Int pz = p.as_int();
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

inline int legendre_symbol(long a, const Prime& p) { return legendre_symbol(Int(a), p); }

/// True iff x is a square in Q_p (0 counts as 0^2). A rational unit is a
/// p-adic square iff it is a quadratic residue mod p (odd p) resp. is
/// congruent to 1 mod 8 (p = 2); higher precision is never needed, by
/// Hensel lifting.
inline bool is_square(const Rational& x, const Prime& p) {
    if (is_zero(x)) return true;
    if (valuation(x, p) % 2 != 0) return false;
    if (p.is_two()) return unit_residue(x, p, 3) == 1;
    return legendre_symbol(unit_residue(x, p, 1), p) == 1;
}

/// An element of Q_p^*/(Q_p^*)^2 encoded as an F_2 bit vector.
///
/// Bit 0 is the parity of the valuation. For odd p, bit 1 flags a
/// non-residue unit part (2 bits total, 4 classes). For p = 2 the unit's
/// residue m mod 8 is stored as m = 3^b1 * 5^b2 in bits 1..2 (3 bits
/// total, 8 classes). The identity class is the all-zero vector, and
/// class multiplication is componentwise F_2 addition.
class SquareClass {
public:
    SquareClass(const Prime& p, unsigned valuation_bit, unsigned unit_bits)
        : prime_(p),
          val_bit_(static_cast<std::uint8_t>(valuation_bit)),
          unit_bits_(static_cast<std::uint8_t>(unit_bits)) {
        if (valuation_bit > 1 || unit_bits >= (p.is_two() ? 4u : 2u))
            throw std::invalid_argument("SquareClass: bit encoding out of range");
    }

    const Prime& prime() const { return prime_; }
    unsigned valuation_parity() const { return val_bit_; }
    unsigned unit_bits() const { return unit_bits_; }
    bool is_identity() const { return val_bit_ == 0 && unit_bits_ == 0; }

    /// The raw bit vector: length 2 for odd p, length 3 for p = 2.
    std::vector<unsigned> bits() const {
        if (prime_.is_two()) return {val_bit_, unit_bits_ & 1u, (unit_bits_ >> 1) & 1u};
        return {val_bit_, unit_bits_};
    }

    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        return a.prime_ == b.prime_ && a.val_bit_ == b.val_bit_ && a.unit_bits_ == b.unit_bits_;
    }
    friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }
    friend bool operator<(const SquareClass& a, const SquareClass& b) {
        if (a.prime_ != b.prime_) return a.prime_ < b.prime_;
        if (a.val_bit_ != b.val_bit_) return a.val_bit_ < b.val_bit_;
        return a.unit_bits_ < b.unit_bits_;
    }

private:
    Prime prime_;
    std::uint8_t val_bit_;
    std::uint8_t unit_bits_;
};

inline SquareClass square_class(const Rational& x, const Prime& p) {
    if (is_zero(x)) throw std::invalid_argument("square_class: x must be nonzero");
    const long v = valuation(x, p);
    const unsigned val_bit = static_cast<unsigned>(((v % 2) + 2) % 2);
    if (p.is_two()) {
        const unsigned m = static_cast<unsigned>(unit_residue(x, p, 3).get_ui());
        return SquareClass(p, val_bit, ((m >> 1) & 1u) | (((m >> 2) & 1u) << 1));
    }
    const bool nonresidue = legendre_symbol(unit_residue(x, p, 1), p) == -1;
    return SquareClass(p, val_bit, nonresidue ? 1u : 0u);
}

inline SquareClass class_mul(const SquareClass& a, const SquareClass& b) {
    if (a.prime() != b.prime()) throw std::invalid_argument("class_mul: mismatched primes");
    return SquareClass(a.prime(), a.valuation_parity() ^ b.valuation_parity(),
                       a.unit_bits() ^ b.unit_bits());
}

/// Smallest positive quadratic non-residue mod an odd prime.
inline Int smallest_nonresidue(const Prime& p) {
    if (p.is_two()) throw std::invalid_argument("smallest_nonresidue: p must be odd");
    for (Int u = 2;; ++u)
        if (legendre_symbol(u, p) == -1) return u;
}

/// Canonical coset representative: {1, u, p, u*p} for odd p with u the
/// smallest positive non-residue; {1, 3, 5, 7, 2, 6, 10, 14} for p = 2.
inline Int class_representative(const SquareClass& c) {
    const Prime& p = c.prime();
    if (p.is_two()) {
        const unsigned m = ((c.unit_bits() & 1u) ? 3u : 1u) * ((c.unit_bits() & 2u) ? 5u : 1u) % 8u;
        return Int(static_cast<unsigned long>(c.valuation_parity() ? 2u * m : m));
    }
    Int rep = 1;
    if (c.unit_bits() & 1u) rep *= smallest_nonresidue(p);
    if (c.valuation_parity()) rep *= p.as_int();
    return rep;
}

/// All distinct classes, identity first, in (valuation parity, unit bits)
/// order; for p = 2 the representatives come out as 1,3,5,7,2,6,10,14.
inline std::vector<SquareClass> all_classes(const Prime& p) {
    const unsigned unit_count = p.is_two() ? 4u : 2u;
    std::vector<SquareClass> out;
    out.reserve(2 * unit_count);
    for (unsigned v = 0; v < 2; ++v)
        for (unsigned u = 0; u < unit_count; ++u) out.emplace_back(p, v, u);
    return out;
}

inline std::size_t class_group_order(const Prime& p) { return p.is_two() ? 8 : 4; }

} // namespace qdense
