#include <qdense/classifier.hpp>
#include <qdense/render.hpp>

#include <gtest/gtest.h>

#include <functional>

#include "support/test_rng.hpp"

using namespace qdense;
using qdense::testing::binary_form;
using qdense::testing::form_sum_squares;
using qdense::testing::form_sum_two_squares;
using qdense::testing::form_x1x2;
using qdense::testing::Rng;

TEST(IsDense, RankBranches) {
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 13ull}) {
        const auto v = is_dense(form_sum_squares(3), Prime(pv));
        EXPECT_TRUE(v.dense);
        EXPECT_EQ(v.branch, DensityBranch::RankAtLeast3);
        EXPECT_FALSE(v.discriminant.has_value());
    }
    for (std::uint64_t pv : {3ull, 5ull}) {
        const auto v = is_dense(QuadraticForm::from_coefficients(1, {Rational(5)}), Prime(pv));
        EXPECT_FALSE(v.dense);
        EXPECT_EQ(v.branch, DensityBranch::Rank1);
    }
}

TEST(IsDense, BinaryBranches) {
    const auto dense5 = is_dense(form_sum_two_squares(), Prime(5));
    EXPECT_TRUE(dense5.dense);
    EXPECT_EQ(dense5.branch, DensityBranch::BinaryDiscSquare);
    EXPECT_EQ(*dense5.discriminant, Rational(-4));
    EXPECT_EQ(*dense5.disc_unit_residue, Int(1));  // -4 = 1 mod 5

    const auto not2 = is_dense(form_sum_two_squares(), Prime(2));
    EXPECT_FALSE(not2.dense);
    EXPECT_EQ(not2.branch, DensityBranch::BinaryDiscNonSquare);
    EXPECT_EQ(*not2.disc_unit_residue, Int(7));  // unit part -1 = 7 mod 8

    EXPECT_THROW(is_dense(binary_form(1, 2, 1), Prime(3)), SingularFormError);
}

TEST(IsDense, BranchTagInvariants) {
    // Rank1 forces "not dense"; RankAtLeast3 forces "dense" (checked over
    // produced verdicts); IsotropicShortcut marks isotropy-justified
    // verdicts and must carry dense = true by construction.
    Rng rng(401);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const QuadraticForm q = rng.nonsingular_form(n, 9);
        const auto v = is_dense(q, Prime(i % 2 ? 3 : 2));
        switch (v.branch) {
            case DensityBranch::Rank1: EXPECT_FALSE(v.dense); break;
            case DensityBranch::RankAtLeast3: EXPECT_TRUE(v.dense); break;
            case DensityBranch::BinaryDiscSquare: EXPECT_TRUE(v.dense); break;
            case DensityBranch::BinaryDiscNonSquare: EXPECT_FALSE(v.dense); break;
            case DensityBranch::IsotropicShortcut: EXPECT_TRUE(v.dense); break;
        }
    }
    const DensityVerdict shortcut{true, DensityBranch::IsotropicShortcut, std::nullopt, std::nullopt};
    EXPECT_TRUE(shortcut.dense);
}

TEST(IsDenseViaClasses, KnownValuesAndAgreement) {
    for (std::uint64_t pv : {2ull, 3ull, 7ull}) {
        EXPECT_TRUE(is_dense_via_classes(form_x1x2(), Prime(pv)));
        EXPECT_FALSE(is_dense_via_classes(QuadraticForm::from_coefficients(1, {Rational(1)}), Prime(pv)));
    }
    EXPECT_FALSE(is_dense_via_classes(form_sum_two_squares(), Prime(3)));

    Rng rng(402);
    for (int i = 0; i < 250; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const QuadraticForm q = rng.nonsingular_form(n, 9);
        for (std::uint64_t pv : {2ull, 3ull, 5ull, 13ull})
            EXPECT_EQ(is_dense(q, Prime(pv)).dense, is_dense_via_classes(q, Prime(pv)))
                << format_form(q) << " p=" << pv;
    }
}

TEST(IsDense, BinaryVerdictEqualsIsotropy) {
    Rng rng(403);
    for (int i = 0; i < 300; ++i) {
        const QuadraticForm q = rng.nonsingular_form(2, 9);
        for (std::uint64_t pv : {2ull, 3ull, 7ull, 11ull})
            EXPECT_EQ(is_dense(q, Prime(pv)).dense, is_isotropic(q, Prime(pv)));
    }
}

TEST(IsDense, RationalCoefficientsAndScaling) {
    Rng rng(404);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        const QuadraticForm q = rng.nonsingular_rational_form(n, 9, 6);
        const Rational lambda = rng.nonzero_rational(9, 5);
        for (std::uint64_t pv : {2ull, 3ull, 5ull})
            EXPECT_EQ(is_dense(q.scaled(lambda), Prime(pv)).dense, is_dense(q, Prime(pv)).dense);
    }
}

namespace {

Rational minor_determinant(const QuadraticForm& q, const std::vector<std::size_t>& idx) {
    const std::size_t m = idx.size();
    std::vector<std::vector<Rational>> sub(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) sub[i][j] = q.gram(idx[i], idx[j]);
    // cofactor expansion, independent of the pivoting-based routine
    std::function<Rational(std::vector<std::vector<Rational>>)> det =
        [&](std::vector<std::vector<Rational>> a) -> Rational {
        if (a.size() == 1) return a[0][0];
        Rational acc(0);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (is_zero(a[0][j])) continue;
            std::vector<std::vector<Rational>> rest;
            for (std::size_t i = 1; i < a.size(); ++i) {
                std::vector<Rational> row;
                for (std::size_t k = 0; k < a.size(); ++k)
                    if (k != j) row.push_back(a[i][k]);
                rest.push_back(std::move(row));
            }
            const Rational term = a[0][j] * det(rest);
            acc += (j % 2 == 0) ? term : Rational(-term);
        }
        return acc;
    };
    return det(sub);
}

/// PSD of -gram by the principal-minor characterization: every principal
/// minor (all index subsets) must be nonnegative.
bool negative_semidefinite_by_minors(const QuadraticForm& q) {
    const std::size_t n = q.dimension();
    const QuadraticForm neg = q.scaled(Rational(-1));
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        if (sgn(minor_determinant(neg, idx)) < 0) return false;
    }
    return true;
}

} // namespace

TEST(PositivityOverZ, SemidefiniteCheckMatchesPrincipalMinors) {
    Rng rng(406);
    for (int i = 0; i < 400; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const QuadraticForm q = rng.form(n, 5);
        EXPECT_EQ(represents_positive_over_Z(q).value == Tristate::No,
                  negative_semidefinite_by_minors(q))
            << format_form(q);
    }
    // a few guaranteed-semidefinite instances: -(L1^2 + L2^2) for random
    // integer linear forms L1, L2
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
        std::vector<long> u = rng.integer_vector(n, 4);
        std::vector<long> v = rng.integer_vector(n, 4);
        std::vector<Rational> gram(n * n, Rational(0));
        bool nonzero = false;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                gram[r * n + c] = Rational(-(u[r] * u[c] + v[r] * v[c]));
                if (!is_zero(gram[r * n + c])) nonzero = true;
            }
        if (!nonzero) continue;
        const QuadraticForm q = QuadraticForm::from_gram(n, gram);
        EXPECT_EQ(represents_positive_over_Z(q).value, Tristate::No) << format_form(q);
    }
}

TEST(PositivityOverZ, KnownValues) {
    const auto yes = represents_positive_over_Z(form_sum_two_squares());
    EXPECT_EQ(yes.value, Tristate::Yes);
    EXPECT_EQ(*yes.witness, (std::vector<long>{1, 0}));

    EXPECT_EQ(represents_positive_over_Z(binary_form(-1, 0, -1)).value, Tristate::No);

    const auto cross = represents_positive_over_Z(binary_form(0, -1, 0));  // -x1*x2
    EXPECT_EQ(cross.value, Tristate::Yes);
    EXPECT_EQ(*cross.witness, (std::vector<long>{1, -1}));

    // semidefinite edge cases
    EXPECT_EQ(represents_positive_over_Z(binary_form(1, -2, 1)).value, Tristate::Yes);   // (x1-x2)^2
    EXPECT_EQ(represents_positive_over_Z(binary_form(-1, 2, -1)).value, Tristate::No);   // -(x1-x2)^2
}

TEST(PositivityOverZ, WitnessValidAndNoIsSound) {
    Rng rng(405);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
        const QuadraticForm q = rng.form(n, 9);
        const auto st = represents_positive_over_Z(q);
        if (st.value == Tristate::Yes) {
            ASSERT_TRUE(st.witness.has_value());
            EXPECT_GT(sgn(q.evaluate_at(*st.witness)), 0);
        } else {
            ASSERT_EQ(st.value, Tristate::No);
            for (int s = 0; s < 50; ++s)
                EXPECT_LE(sgn(q.evaluate_at(rng.integer_vector(n, 7))), 0);
        }
    }
}

TEST(PositivityOverN, KnownValuesAndUnknown) {
    EXPECT_EQ(represents_positive_over_N(binary_form(0, -1, 0), 10).value, Tristate::No);

    const auto one_var = represents_positive_over_N(QuadraticForm::from_coefficients(1, {Rational(1)}), 5);
    EXPECT_EQ(one_var.value, Tristate::Yes);
    EXPECT_EQ(*one_var.witness, (std::vector<long>{1}));

    const auto unit = represents_positive_over_N(binary_form(1, -3, 1), 4);
    EXPECT_EQ(unit.value, Tristate::Yes);
    EXPECT_EQ(*unit.witness, (std::vector<long>{1, 0}));

    // -(x1 - 10*x2)^2 + x2^2 is positive on N^2 only near x1 = 10*x2, so a
    // radius-4 search misses it and neither No-certificate applies.
    const QuadraticForm needle = binary_form(-1, 20, -99);
    EXPECT_EQ(represents_positive_over_N(needle, 4).value, Tristate::Unknown);
    const auto found = represents_positive_over_N(needle, 11);
    EXPECT_EQ(found.value, Tristate::Yes);
    EXPECT_GT(sgn(needle.evaluate_at(*found.witness)), 0);
}

TEST(RestrictedVerdict, MinusCrossProduct) {
    const QuadraticForm q = binary_form(0, -1, 0);  // -x1*x2
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull}) {
        const auto z = is_dense_nonnegative_restricted(q, Prime(pv), ValueDomain::Integers, 10);
        EXPECT_EQ(z.dense, Tristate::Yes);
        EXPECT_TRUE(z.density.dense);
        EXPECT_EQ(z.positivity.value, Tristate::Yes);

        const auto nat = is_dense_nonnegative_restricted(q, Prime(pv), ValueDomain::Naturals, 10);
        EXPECT_EQ(nat.dense, Tristate::No);
        EXPECT_TRUE(nat.density.dense);
        EXPECT_EQ(nat.positivity.value, Tristate::No);
    }
}

TEST(RestrictedVerdict, NegativeDefiniteTernary) {
    const QuadraticForm q = QuadraticForm::from_coefficients(
        3, {Rational(-1), Rational(0), Rational(0), Rational(-1), Rational(0), Rational(-1)});
    for (std::uint64_t pv : {2ull, 5ull}) {
        EXPECT_TRUE(is_dense(q, Prime(pv)).dense);  // unrestricted: rank 3
        const auto r = is_dense_nonnegative_restricted(q, Prime(pv), ValueDomain::Integers, 10);
        EXPECT_EQ(r.dense, Tristate::No);
        EXPECT_EQ(r.positivity.value, Tristate::No);
    }
}

TEST(RestrictedVerdict, UnknownPropagates) {
    const QuadraticForm needle = binary_form(-1, 20, -99);  // disc = 4, dense everywhere
    const auto r = is_dense_nonnegative_restricted(needle, Prime(3), ValueDomain::Naturals, 4);
    EXPECT_TRUE(r.density.dense);
    EXPECT_EQ(r.positivity.value, Tristate::Unknown);
    EXPECT_EQ(r.dense, Tristate::Unknown);

    // not dense beats unknown positivity
    const QuadraticForm aniso = binary_form(-1, 20, -101);  // disc = -4, not a square mod 3
    ASSERT_FALSE(is_dense(aniso, Prime(3)).dense);
    EXPECT_EQ(is_dense_nonnegative_restricted(aniso, Prime(3), ValueDomain::Naturals, 4).dense,
              Tristate::No);
}
