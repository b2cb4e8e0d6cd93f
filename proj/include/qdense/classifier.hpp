#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdense/isotropy.hpp"

namespace qdense {

/// Which rule produced a density verdict. Rank1 forces "not dense" and
/// RankAtLeast3 forces "dense"; IsotropicShortcut marks a verdict justified
/// purely by isotropy (an isotropic form's quotient set is all of Q_p).
enum class DensityBranch { RankAtLeast3, BinaryDiscSquare, BinaryDiscNonSquare, Rank1, IsotropicShortcut };

inline const char* to_string(DensityBranch b) {
    switch (b) {
        case DensityBranch::RankAtLeast3: return "RankAtLeast3";
        case DensityBranch::BinaryDiscSquare: return "BinaryDiscSquare";
        case DensityBranch::BinaryDiscNonSquare: return "BinaryDiscNonSquare";
        case DensityBranch::Rank1: return "Rank1";
        case DensityBranch::IsotropicShortcut: return "IsotropicShortcut";
    }
    return "?";
}

struct DensityVerdict {
    bool dense = false;
    DensityBranch branch = DensityBranch::Rank1;
    std::optional<Rational> discriminant;    // binary branches only
    std::optional<Int> disc_unit_residue;    // mod p for odd p, mod 8 for p = 2
};

/// Is the quotient set of values of Q at integer arguments dense in Q_p?
/// Dense iff n >= 3, or n = 2 and the discriminant b^2 - 4ac is a nonzero
/// square in Q_p; never dense for n = 1. Rational coefficients are allowed
/// (clearing denominators leaves quotients unchanged).
inline DensityVerdict is_dense(const QuadraticForm& q, const Prime& p) {
    if (!q.is_nonsingular())
        throw SingularFormError("is_dense: form is singular (determinant 0)");
    const std::size_t n = q.dimension();
    if (n >= 3) return {true, DensityBranch::RankAtLeast3, std::nullopt, std::nullopt};
    if (n == 1) return {false, DensityBranch::Rank1, std::nullopt, std::nullopt};
    const Rational disc = q.binary_discriminant();
    const Int residue = unit_residue(disc, p, p.is_two() ? 3 : 1);
    const bool dense = is_square(disc, p);
    return {dense, dense ? DensityBranch::BinaryDiscSquare : DensityBranch::BinaryDiscNonSquare,
            disc, residue};
}

/// Cross-check route: dense iff the quotient class set is the whole of
/// Q_p^*/(Q_p^*)^2 (quadratic classes are open, so density is equivalent
/// to meeting every class). Must agree with is_dense on every input.
inline bool is_dense_via_classes(const QuadraticForm& q, const Prime& p) {
    return quotient_class_set(q, p).size() == class_group_order(p);
}

enum class Tristate { Yes, No, Unknown };

inline const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::Yes: return "yes";
        case Tristate::No: return "no";
        case Tristate::Unknown: return "unknown";
    }
    return "?";
}

struct PositivityStatus {
    Tristate value = Tristate::Unknown;
    std::optional<std::vector<long>> witness;  // integer point with Q(witness) > 0
};

namespace detail {

/// Exact positive-semidefiniteness of a symmetric rational matrix.
/// A zero diagonal entry forces a zero row; otherwise pivot on a positive
/// diagonal entry and take the Schur complement.
inline bool is_positive_semidefinite(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    while (n > 0) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(m[i][i]) < 0) return false;
            if (sgn(m[i][i]) == 0) {
                for (std::size_t j = 0; j < n; ++j)
                    if (!is_zero(m[i][j])) return false;
            } else if (pivot == n) {
                pivot = i;
            }
        }
        if (pivot == n) return true;  // remaining block is entirely zero
        std::vector<std::vector<Rational>> next;
        next.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pivot) continue;
            std::vector<Rational> row;
            row.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == pivot) continue;
                Rational v = m[i][j] - m[i][pivot] * m[pivot][j] / m[pivot][pivot];
                v.canonicalize();
                row.push_back(std::move(v));
            }
            next.push_back(std::move(row));
        }
        m = std::move(next);
        n = m.size();
    }
    return true;
}

inline bool is_negative_semidefinite(const QuadraticForm& q) {
    const std::size_t n = q.dimension();
    std::vector<std::vector<Rational>> neg(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = -q.gram(i, j);
            v.canonicalize();
            neg[i][j] = v;
        }
    return is_positive_semidefinite(std::move(neg));
}

/// First integer point with Q > 0 in the box [-radius, radius]^n:
/// unit vectors first, then the box in descending lexicographic order.
inline std::optional<std::vector<long>> find_positive_point_box(const QuadraticForm& q, long radius) {
    const std::size_t n = q.dimension();
    std::vector<long> x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        x.assign(n, 0);
        x[i] = 1;
        if (sgn(q.evaluate_at(x)) > 0) return x;
    }
    x.assign(n, radius);
    while (true) {
        if (sgn(q.evaluate_at(x)) > 0) return x;
        std::size_t i = n;
        while (i-- > 0) {
            if (x[i] > -radius) {
                --x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = radius;
                break;
            }
            if (i == 0) return std::nullopt;
        }
    }
}

/// First point with Q > 0 in {0..radius}^n: unit vectors, then ascending
/// lexicographic order.
inline std::optional<std::vector<long>> find_positive_point_orthant(const QuadraticForm& q, long radius) {
    const std::size_t n = q.dimension();
    std::vector<long> x(n, 0);
    if (radius >= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            x.assign(n, 0);
            x[i] = 1;
            if (sgn(q.evaluate_at(x)) > 0) return x;
        }
    }
    x.assign(n, 0);
    while (true) {
        if (sgn(q.evaluate_at(x)) > 0) return x;
        std::size_t i = n;
        while (i-- > 0) {
            if (x[i] < radius) {
                ++x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = 0;
                break;
            }
            if (i == 0) return std::nullopt;
        }
    }
}

} // namespace detail

/// Does Q attain a positive value at an integer point? Exactly decidable:
/// the answer is No iff -Q is positive semidefinite, and otherwise a real
/// point with positive value exists, so by homogeneity an integer witness
/// shows up under a growing box search.
inline PositivityStatus represents_positive_over_Z(const QuadraticForm& q) {
    if (detail::is_negative_semidefinite(q)) return {Tristate::No, std::nullopt};
    for (long radius = 1;; radius *= 2) {
        if (auto w = detail::find_positive_point_box(q, radius)) return {Tristate::Yes, *w};
    }
}

/// Does Q attain a positive value on {0..searchRadius}^n? Semi-decided:
/// Yes with a witness from the bounded search; No under either exact
/// certificate (-Q positive semidefinite, or every Gram entry <= 0, which
/// bounds Q by 0 on the closed nonnegative orthant); Unknown otherwise.
inline PositivityStatus represents_positive_over_N(const QuadraticForm& q, long search_radius) {
    if (search_radius < 0) throw std::invalid_argument("represents_positive_over_N: negative radius");
    if (auto w = detail::find_positive_point_orthant(q, search_radius)) return {Tristate::Yes, *w};
    if (detail::is_negative_semidefinite(q)) return {Tristate::No, std::nullopt};
    bool all_nonpositive = true;
    for (std::size_t i = 0; i < q.dimension() && all_nonpositive; ++i)
        for (std::size_t j = 0; j < q.dimension(); ++j)
            if (sgn(q.gram(i, j)) > 0) {
                all_nonpositive = false;
                break;
            }
    if (all_nonpositive) return {Tristate::No, std::nullopt};
    return {Tristate::Unknown, std::nullopt};
}

enum class ValueDomain { Integers, Naturals };

/// Verdict for the nonnegative-value restriction: the quotients of the
/// nonnegative values of Q are dense in Q_p iff the unrestricted quotient
/// set is dense AND Q attains a positive value on the chosen domain.
struct RestrictedVerdict {
    DensityVerdict density;
    PositivityStatus positivity;
    Tristate dense = Tristate::Unknown;
};

inline RestrictedVerdict is_dense_nonnegative_restricted(const QuadraticForm& q, const Prime& p,
                                                         ValueDomain domain, long search_radius) {
    RestrictedVerdict out;
    out.density = is_dense(q, p);
    out.positivity = domain == ValueDomain::Integers ? represents_positive_over_Z(q)
                                                     : represents_positive_over_N(q, search_radius);
    if (!out.density.dense)
        out.dense = Tristate::No;
    else
        out.dense = out.positivity.value;
    return out;
}

} // namespace qdense
