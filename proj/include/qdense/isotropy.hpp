#pragma once

#include <set>
#include <vector>

#include "qdense/diagonalize.hpp"
#include "qdense/hilbert.hpp"

namespace qdense {
namespace detail {

inline int hasse_invariant_diagonal(const std::vector<Rational>& d, const Prime& p) {
    int s = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) s *= hilbert_symbol(d[i], d[j], p);
    return s;
}

/// Local isotropy of a nondegenerate diagonal form <d_1,...,d_r> over Q_p,
/// by the classical rank criteria: rank 1 never, rank 2 iff -d1*d2 is a
/// square, ranks 3 and 4 via the Hasse invariant, rank >= 5 always.
inline bool is_isotropic_diagonal(const std::vector<Rational>& d, const Prime& p) {
    const std::size_t r = d.size();
    if (r <= 1) return false;
    if (r == 2) return is_square(Rational(-d[0] * d[1]), p);
    if (r >= 5) return true;

    Rational det(1);
    for (const auto& di : d) det *= di;
    det.canonicalize();
    const int eps = hasse_invariant_diagonal(d, p);
    if (r == 3) return eps == hilbert_symbol(Rational(-1), Rational(-det), p);
    // r == 4
    return !is_square(det, p) || eps == hilbert_symbol(Rational(-1), Rational(-1), p);
}

} // namespace detail

/// Product of Hilbert symbols over pairs of diagonal coefficients; an
/// invariant of the form, independent of the diagonalization produced.
inline int hasse_invariant(const QuadraticForm& q, const Prime& p,
                           PivotStrategy strategy = PivotStrategy::FirstDiagonal) {
    if (!q.is_nonsingular())
        throw SingularFormError("hasse_invariant: form is singular (determinant 0)");
    return detail::hasse_invariant_diagonal(diagonalize(q, strategy).entries, p);
}

/// Whether Q has a nonzero zero over Q_p. Binary forms use the
/// discriminant-is-a-square criterion; higher ranks dispatch on the
/// diagonal model.
inline bool is_isotropic(const QuadraticForm& q, const Prime& p) {
    if (!q.is_nonsingular())
        throw SingularFormError("is_isotropic: form is singular (determinant 0)");
    const std::size_t n = q.dimension();
    if (n == 1) return false;
    if (n == 2) return is_square(q.binary_discriminant(), p);
    return detail::is_isotropic_diagonal(diagonalize(q).entries, p);
}

/// Whether some element of the class c is a value of Q over Q_p. Isotropic
/// forms represent every element of the field; otherwise Q represents r
/// exactly when Q + (-r) X^2 is isotropic.
inline bool represents_class(const QuadraticForm& q, const SquareClass& c, const Prime& p) {
    if (c.prime() != p) throw std::invalid_argument("represents_class: class prime mismatch");
    if (is_isotropic(q, p)) return true;
    std::vector<Rational> d = diagonalize(q).entries;
    d.push_back(Rational(-class_representative(c)));
    return detail::is_isotropic_diagonal(d, p);
}

inline std::set<SquareClass> represented_classes(const QuadraticForm& q, const Prime& p) {
    std::set<SquareClass> out;
    if (is_isotropic(q, p)) {
        for (const auto& c : all_classes(p)) out.insert(c);
        return out;
    }
    const std::vector<Rational> base = diagonalize(q).entries;
    for (const auto& c : all_classes(p)) {
        std::vector<Rational> d = base;
        d.push_back(Rational(-class_representative(c)));
        if (detail::is_isotropic_diagonal(d, p)) out.insert(c);
    }
    return out;
}

/// The square classes present in the nonzero part of the quotient set
/// R(Q(Q_p^n)): all products of pairs of represented classes.
inline std::set<SquareClass> quotient_class_set(const QuadraticForm& q, const Prime& p) {
    const std::set<SquareClass> rep = represented_classes(q, p);
    std::set<SquareClass> out;
    for (const auto& a : rep)
        for (const auto& b : rep) out.insert(class_mul(a, b));
    return out;
}

} // namespace qdense
