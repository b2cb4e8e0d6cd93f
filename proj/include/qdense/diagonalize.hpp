#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qdense/quadratic_form.hpp"

namespace qdense {

/// Diagonal coefficients of a form congruent to the input over Q.
struct DiagonalForm {
    std::vector<Rational> entries;
};

/// Diagonal model plus the change of variables that produced it:
/// with x = T y, Q(T y) = sum d_i y_i^2 (T is invertible over Q).
struct Diagonalization {
    DiagonalForm form;
    std::vector<std::vector<Rational>> transform;
};

/// Pivot choice for the congruence diagonalization. The default scans for
/// the first usable diagonal pivot; the alternative prefers the last one.
/// Invariants (Hasse symbol products) must not depend on the choice.
enum class PivotStrategy { FirstDiagonal, LastDiagonal };

/// Symmetric Gaussian elimination by congruence transformations. A step
/// with no nonzero diagonal entry left pulls one in via x_i <- x_i + x_j
/// using a nonzero off-diagonal entry; nonsingular input guarantees a
/// pivot always exists.
inline Diagonalization diagonalize_with_transform(const QuadraticForm& q,
                                                  PivotStrategy strategy = PivotStrategy::FirstDiagonal) {
    if (!q.is_nonsingular())
        throw SingularFormError("diagonalize: form is singular (determinant 0)");

    const std::size_t n = q.dimension();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = q.gram(i, j);

    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;

    auto swap_variables = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][a], m[r][b]);
        std::swap(m[a], m[b]);
        for (std::size_t r = 0; r < n; ++r) std::swap(t[r][a], t[r][b]);
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        if (strategy == PivotStrategy::FirstDiagonal) {
            for (std::size_t j = k; j < n && pivot == n; ++j)
                if (!is_zero(m[j][j])) pivot = j;
        } else {
            for (std::size_t j = n; j-- > k;)
                if (!is_zero(m[j][j])) {
                    pivot = j;
                    break;
                }
        }

        if (pivot == n) {
            // All remaining diagonal entries vanish; merge in an off-diagonal
            // one: adding variable j onto variable i makes m[i][i] = 2*m[i][j].
            std::size_t oi = n, oj = n;
            for (std::size_t i = k; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!is_zero(m[i][j])) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi == n) throw SingularFormError("diagonalize: zero block in nonsingular form");
            for (std::size_t r = 0; r < n; ++r) m[r][oi] += m[r][oj];
            for (std::size_t c = 0; c < n; ++c) m[oi][c] += m[oj][c];
            for (std::size_t r = 0; r < n; ++r) t[r][oi] += t[r][oj];
            pivot = oi;
        }
        swap_variables(k, pivot);

        const Rational d = m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            if (is_zero(m[r][k])) continue;
            Rational f = m[r][k] / d;
            f.canonicalize();
            for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[k][c];
            for (std::size_t c = 0; c < n; ++c) m[c][r] -= f * m[c][k];
            for (std::size_t c = 0; c < n; ++c) t[c][r] -= f * t[c][k];
        }
    }

    DiagonalForm diag;
    diag.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational d = m[i][i];
        d.canonicalize();
        diag.entries.push_back(std::move(d));
    }
    return {std::move(diag), std::move(t)};
}

inline DiagonalForm diagonalize(const QuadraticForm& q,
                                PivotStrategy strategy = PivotStrategy::FirstDiagonal) {
    return diagonalize_with_transform(q, strategy).form;
}

} // namespace qdense
