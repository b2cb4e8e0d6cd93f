#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdense/errors.hpp"
#include "qdense/rational.hpp"

namespace qdense {
namespace detail {

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination. Destroys its argument.
inline Int integer_determinant(std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev_pivot = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev_pivot = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

/// Exact determinant of a rational matrix: clear denominators, run the
/// fraction-free elimination, divide back out.
inline Rational rational_determinant(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return Rational(1);
    Int common = 1;
    for (const auto& row : a)
        for (const auto& x : row) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = a[i][j] * Rational(common);
            scaled.canonicalize();
            m[i][j] = scaled.get_num();
        }
    Int scale_pow;
    mpz_pow_ui(scale_pow.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(n));
    return make_rational(integer_determinant(m), scale_pow);
}

} // namespace detail

/// A quadratic form Q(x) = x^T G x with a symmetric rational Gram matrix.
/// An input cross coefficient c for the monomial X_i X_j (i < j) is stored
/// as G[i][j] = G[j][i] = c/2, so integer-coefficient forms may carry
/// half-integer Gram entries.
class QuadraticForm {
public:
    /// Builds from monomial coefficients in row-major (i <= j) order:
    /// for n = 2 the list is (a, b, c) for a*X1^2 + b*X1*X2 + c*X2^2.
    static QuadraticForm from_coefficients(std::size_t n, const std::vector<Rational>& coeffs) {
        if (n == 0) throw std::invalid_argument("QuadraticForm: dimension must be positive");
        if (coeffs.size() != n * (n + 1) / 2)
            throw std::invalid_argument("QuadraticForm: expected " + std::to_string(n * (n + 1) / 2) +
                                        " coefficients, got " + std::to_string(coeffs.size()));
        std::vector<Rational> gram(n * n, Rational(0));
        const Rational half = make_rational(1, 2);
        std::size_t idx = 0;
        bool any_nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j, ++idx) {
                if (!is_zero(coeffs[idx])) any_nonzero = true;
                if (i == j) {
                    gram[i * n + i] = coeffs[idx];
                } else {
                    Rational h = coeffs[idx] * half;
                    h.canonicalize();
                    gram[i * n + j] = h;
                    gram[j * n + i] = h;
                }
            }
        }
        if (!any_nonzero) throw std::invalid_argument("QuadraticForm: all coefficients are zero");
        return QuadraticForm(n, std::move(gram));
    }

    /// Builds directly from a symmetric Gram matrix (row-major).
    static QuadraticForm from_gram(std::size_t n, std::vector<Rational> gram) {
        if (n == 0 || gram.size() != n * n)
            throw std::invalid_argument("QuadraticForm: bad Gram matrix size");
        bool any_nonzero = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (gram[i * n + j] != gram[j * n + i])
                    throw std::invalid_argument("QuadraticForm: Gram matrix is not symmetric");
                if (!is_zero(gram[i * n + j])) any_nonzero = true;
            }
        if (!any_nonzero) throw std::invalid_argument("QuadraticForm: zero form");
        return QuadraticForm(n, std::move(gram));
    }

    std::size_t dimension() const { return n_; }

    const Rational& gram(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }

    /// Monomial coefficients in row-major (i <= j) order, the inverse of
    /// from_coefficients.
    std::vector<Rational> coefficients() const {
        std::vector<Rational> out;
        out.reserve(n_ * (n_ + 1) / 2);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                Rational c = i == j ? gram(i, j) : Rational(gram(i, j) * 2);
                c.canonicalize();
                out.push_back(c);
            }
        return out;
    }

    Rational evaluate(const std::vector<Rational>& x) const {
        require_dimension(x.size());
        Rational acc(0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            Rational row(0);
            for (std::size_t j = 0; j < n_; ++j) row += gram(i, j) * x[j];
            acc += x[i] * row;
        }
        acc.canonicalize();
        return acc;
    }

    Rational evaluate_at(const std::vector<long>& x) const {
        std::vector<Rational> xs;
        xs.reserve(x.size());
        for (long v : x) xs.emplace_back(v);
        return evaluate(xs);
    }

    /// B(x, y) = x^T G y; satisfies Q(x+y) = Q(x) + 2 B(x,y) + Q(y).
    Rational bilinear(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
        require_dimension(x.size());
        require_dimension(y.size());
        Rational acc(0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            Rational row(0);
            for (std::size_t j = 0; j < n_; ++j) row += gram(i, j) * y[j];
            acc += x[i] * row;
        }
        acc.canonicalize();
        return acc;
    }

    Rational determinant() const {
        std::vector<std::vector<Rational>> m(n_, std::vector<Rational>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m[i][j] = gram(i, j);
        return detail::rational_determinant(m);
    }

    bool is_nonsingular() const { return !is_zero(determinant()); }

    /// b^2 - 4ac for a binary form; equals -4 * det(G).
    Rational binary_discriminant() const {
        if (n_ != 2) throw std::invalid_argument("binary_discriminant: form must be binary");
        Rational b = gram(0, 1) * 2;
        Rational d = b * b - gram(0, 0) * gram(1, 1) * 4;
        d.canonicalize();
        return d;
    }

    QuadraticForm scaled(const Rational& lambda) const {
        if (is_zero(lambda)) throw std::invalid_argument("scaled: lambda must be nonzero");
        std::vector<Rational> gram(gram_);
        for (auto& g : gram) {
            g *= lambda;
            g.canonicalize();
        }
        return QuadraticForm(n_, std::move(gram));
    }

    /// The orthogonal sum Q + d * X_{n+1}^2.
    QuadraticForm with_appended_diagonal(const Rational& d) const {
        const std::size_t m = n_ + 1;
        std::vector<Rational> gram(m * m, Rational(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) gram[i * m + j] = this->gram(i, j);
        gram[m * m - 1] = d;
        return QuadraticForm(m, std::move(gram));
    }

    /// The form after the substitution x = T y, i.e. Gram matrix T^T G T.
    QuadraticForm change_of_variables(const std::vector<std::vector<Rational>>& t) const {
        if (t.size() != n_) throw std::invalid_argument("change_of_variables: matrix dimension mismatch");
        for (const auto& row : t)
            if (row.size() != n_)
                throw std::invalid_argument("change_of_variables: matrix dimension mismatch");
        std::vector<Rational> gt(n_ * n_, Rational(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) gt[i * n_ + j] += gram(i, k) * t[k][j];
        std::vector<Rational> out(n_ * n_, Rational(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                Rational acc(0);
                for (std::size_t k = 0; k < n_; ++k) acc += t[k][i] * gt[k * n_ + j];
                acc.canonicalize();
                out[i * n_ + j] = acc;
            }
        return QuadraticForm(n_, std::move(out));
    }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.n_ == b.n_ && a.gram_ == b.gram_;
    }

private:
    QuadraticForm(std::size_t n, std::vector<Rational> gram) : n_(n), gram_(std::move(gram)) {}

    void require_dimension(std::size_t len) const {
        if (len != n_)
            throw std::invalid_argument("QuadraticForm: vector length " + std::to_string(len) +
                                        " does not match dimension " + std::to_string(n_));
    }

    std::size_t n_;
    std::vector<Rational> gram_;
};

} // namespace qdense
