#pragma once

#include <optional>
#include <stdexcept>

#include "qdense/square_class.hpp"

namespace qdense {

/// A place of Q: a finite prime or the archimedean (real) place.
class Place {
public:
    Place(const Prime& p) : prime_(p) {}  // NOLINT: implicit by design
    static Place real() { return Place(); }

    bool is_real() const { return !prime_.has_value(); }
    const Prime& prime() const {
        if (!prime_) throw std::logic_error("Place: the real place has no prime");
        return *prime_;
    }

private:
    Place() = default;
    std::optional<Prime> prime_;
};

/// Hilbert symbol (a,b)_v: 1 iff z^2 = a*x^2 + b*y^2 has a nontrivial
/// solution over the completion at v. Finite places use the classical
/// valuation/residue formulas; the real place is sign inspection.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (is_zero(a) || is_zero(b))
        throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;

    const Prime& p = v.prime();
    const long alpha = valuation(a, p);
    const long beta = valuation(b, p);

    if (p.is_two()) {
        // a = 2^alpha * u, b = 2^beta * w; (a,b)_2 = (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u))
        // with eps(m) = (m-1)/2 and omega(m) = (m^2-1)/8 mod 2, read off m mod 8.
        const unsigned mu = static_cast<unsigned>(unit_residue(a, p, 3).get_ui());
        const unsigned mw = static_cast<unsigned>(unit_residue(b, p, 3).get_ui());
        auto eps = [](unsigned m) { return (m >> 1) & 1u; };
        auto omega = [](unsigned m) { return ((m >> 1) & 1u) ^ ((m >> 2) & 1u); };
        const unsigned e = eps(mu) * eps(mw) + static_cast<unsigned>(alpha & 1L) * omega(mw) +
                           static_cast<unsigned>(beta & 1L) * omega(mu);
        return (e & 1u) ? -1 : 1;
    }

    // (a,b)_p = (-1)^(alpha*beta*(p-1)/2) * (u/p)^beta * (w/p)^alpha
    int s = 1;
    if ((alpha & 1L) && (beta & 1L) && p.value() % 4 == 3) s = -s;
    if (beta & 1L) s *= legendre_symbol(unit_residue(a, p, 1), p);
    if (alpha & 1L) s *= legendre_symbol(unit_residue(b, p, 1), p);
    return s;
}

} // namespace qdense
