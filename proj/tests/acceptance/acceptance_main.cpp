// Acceptance suite: end-to-end checks of the classifier against the
// enumeration oracle and the algebraic invariants, at fixed parameters.
// Prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.

#include <qdense/qdense.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support/brute.hpp"
#include "support/test_rng.hpp"

using namespace qdense;
using qdense::testing::Rng;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int index, std::string name) : index_(index), name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void fail(const std::string& detail) {
        ++failures_;
        if (failures_ <= 5) details_ += "\n      " + detail;
    }

    void expect(bool ok, const std::string& detail) {
        ++checks_;
        if (!ok) fail(detail);
    }

    void finish() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        char line[256];
        std::snprintf(line, sizeof(line), "[%d/9] %s %-38s (%zu checks, %.1fs)", index_,
                      failures_ == 0 ? "PASS" : "FAIL", name_.c_str(), checks_, secs);
        std::cout << line;
        if (failures_ > 0) {
            std::cout << "  " << failures_ << " failure(s)" << details_;
            if (failures_ > 5) std::cout << "\n      ...";
            ++g_failures;
        }
        std::cout << std::endl;
    }

private:
    int index_;
    std::string name_;
    std::size_t checks_ = 0;
    int failures_ = 0;
    std::string details_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<QuadraticForm> binary_corpus(long bound) {
    std::vector<QuadraticForm> out;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c) {
                if (b * b == 4 * a * c) continue;
                out.push_back(qdense::testing::binary_form(a, b, c));
            }
    return out;
}

std::string describe(const QuadraticForm& q, std::uint64_t p) {
    return format_form(q) + " @ p=" + std::to_string(p);
}

// 1. Classifier verdict equals oracle full-coverage over the whole binary
//    corpus with |a|,|b|,|c| <= 4 and p in {2,3,5,7,11,13}.
void criterion1() {
    Criterion c(1, "classifier vs oracle, binary corpus");
    const auto corpus = binary_corpus(4);
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        const Prime p(pv);
        const unsigned k = default_unit_precision(p);
        for (const auto& q : corpus) {
            const bool dense = is_dense(q, p).dense;
            const OracleReport rep = density_report(q, p, 50, k, 2);
            c.expect(rep.full_coverage == dense, describe(q, pv));
        }
    }
    c.finish();
}

// 2. 200 random nonsingular forms of dimension 3 and 4: always dense, and
//    the observed quotient classes at box 25 are the whole class group.
void criterion2() {
    Criterion c(2, "rank >= 3 always dense");
    Rng rng(20240002);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = i % 2 == 0 ? 3 : 4;
        const QuadraticForm q = rng.nonsingular_form(n, 9);
        for (std::uint64_t pv : {2ull, 3ull, 5ull}) {
            const Prime p(pv);
            const DensityVerdict v = is_dense(q, p);
            c.expect(v.dense && v.branch == DensityBranch::RankAtLeast3,
                     "verdict " + describe(q, pv));
            const auto observed = observed_quotient_classes(q, p, 25);
            c.expect(observed.size() == class_group_order(p), "classes " + describe(q, pv));
        }
    }
    c.finish();
}

// 3. x1^2 + x2^2: dense exactly for odd p = 1 (mod 4), p <= 97; the oracle
//    confirms at p in {2,3,5,13}.
void criterion3() {
    Criterion c(3, "sum of two squares");
    const QuadraticForm q = qdense::testing::form_sum_two_squares();
    for (std::uint64_t pv = 2; pv <= 97; ++pv) {
        if (!detail::is_prime_u64(pv)) continue;
        const Prime p(pv);
        const bool expected = pv % 4 == 1;
        c.expect(is_dense(q, p).dense == expected, "p=" + std::to_string(pv));
    }
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 13ull}) {
        const Prime p(pv);
        const OracleReport rep = density_report(q, p, 50, default_unit_precision(p), 2);
        c.expect(rep.full_coverage == (pv % 4 == 1), "oracle p=" + std::to_string(pv));
    }
    c.finish();
}

// 4. Anisotropic binary forms at odd p: exactly 2 represented classes and a
//    2-element quotient class set; enumeration at box 50 reproduces the
//    symbolic represented set exactly.
void criterion4() {
    Criterion c(4, "anisotropic binary class counts");
    const auto corpus = binary_corpus(4);
    for (std::uint64_t pv : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        const Prime p(pv);
        for (const auto& q : corpus) {
            if (is_isotropic(q, p)) continue;
            const auto rep = represented_classes(q, p);
            const auto quo = quotient_class_set(q, p);
            c.expect(rep.size() == 2, "represented count " + describe(q, pv));
            c.expect(quo.size() == 2, "quotient count " + describe(q, pv));
            c.expect(represented_classes_bruteforce(q, p, 50) == rep,
                     "bruteforce mismatch " + describe(q, pv));
        }
    }
    c.finish();
}

// 5. Hilbert product formula over the real place and the primes dividing
//    2ab, for all nonzero |a|,|b| <= 30.
void criterion5() {
    Criterion c(5, "Hilbert product formula");
    for (long a = -30; a <= 30; ++a) {
        if (a == 0) continue;
        for (long b = -30; b <= 30; ++b) {
            if (b == 0) continue;
            int prod = hilbert_symbol(Rational(a), Rational(b), Place::real());
            for (std::uint64_t pv : qdense::testing::relevant_primes(a, b))
                prod *= hilbert_symbol(Rational(a), Rational(b), Prime(pv));
            c.expect(prod == 1, "a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
    }
    c.finish();
}

// 6. is_square agrees with the mod-p^k enumeration oracle for all units
//    1 <= u < p^4 and valuations in [-3,3], p in {2,3,5,7}, at both the
//    Hensel-threshold precision and k = 4.
void criterion6() {
    Criterion c(6, "square test oracle equivalence");
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull}) {
        const Prime p(pv);
        const std::uint64_t p4 = qdense::testing::pow_u64(pv, 4);
        for (std::uint64_t u = 1; u < p4; ++u) {
            if (u % pv == 0) continue;
            for (long t = -3; t <= 3; ++t) {
                Int pw;
                mpz_ui_pow_ui(pw.get_mpz_t(), pv, static_cast<unsigned long>(t < 0 ? -t : t));
                const Rational x = t >= 0 ? Rational(Int(static_cast<unsigned long>(u)) * pw)
                                          : make_rational(Int(static_cast<unsigned long>(u)), pw);
                const bool symbolic = is_square(x, p);
                const bool ok = symbolic == is_square_bruteforce(x, p, default_unit_precision(p)) &&
                                symbolic == is_square_bruteforce(x, p, 4);
                c.expect(ok, "u=" + std::to_string(u) + " t=" + std::to_string(t) +
                                 " p=" + std::to_string(pv));
            }
        }
    }
    c.finish();
}

// 7. Nonnegative-value restriction: -x1*x2 is dense from Z but not from N;
//    -x1^2-x2^2-x3^2 is dense unrestricted but not restricted.
void criterion7() {
    Criterion c(7, "nonnegative-value restriction");
    const QuadraticForm cross = qdense::testing::binary_form(0, -1, 0);
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull}) {
        const Prime p(pv);
        c.expect(is_dense_nonnegative_restricted(cross, p, ValueDomain::Integers, 10).dense ==
                     Tristate::Yes,
                 "-x1*x2 over Z, p=" + std::to_string(pv));
        c.expect(is_dense_nonnegative_restricted(cross, p, ValueDomain::Naturals, 10).dense ==
                     Tristate::No,
                 "-x1*x2 over N, p=" + std::to_string(pv));
    }
    const QuadraticForm negdef = QuadraticForm::from_coefficients(
        3, {Rational(-1), Rational(0), Rational(0), Rational(-1), Rational(0), Rational(-1)});
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull}) {
        const Prime p(pv);
        c.expect(is_dense(negdef, p).dense, "-sum of squares unrestricted, p=" + std::to_string(pv));
        c.expect(is_dense_nonnegative_restricted(negdef, p, ValueDomain::Integers, 10).dense ==
                     Tristate::No,
                 "-sum of squares restricted, p=" + std::to_string(pv));
    }
    c.finish();
}

// 8. Invariance suite, 1000 exact cases each: form scaling, the quotient
//    scaling identity, polarization, Hasse pivot-independence, unimodular
//    changes of variables.
void criterion8() {
    Criterion c(8, "invariance suite");
    const std::uint64_t primes[] = {2, 3, 5, 7};

    {
        Rng rng(20240081);
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
            const QuadraticForm q = rng.nonsingular_form(n, 9);
            const Rational lambda = rng.nonzero_rational(20, 9);
            const Prime p(primes[i % 4]);
            c.expect(is_dense(q.scaled(lambda), p).dense == is_dense(q, p).dense,
                     "scaling " + describe(q, p.value()));
        }
    }
    {
        Rng rng(20240082);
        int done = 0;
        while (done < 1000) {
            const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
            const QuadraticForm q = rng.nonsingular_form(n, 9);
            const Prime p(primes[done % 4]);
            const unsigned k = static_cast<unsigned>(rng.integer(1, 5));
            const auto xi = rng.integer_vector(n, 9);
            const auto yi = rng.integer_vector(n, 9);
            const Rational qx = q.evaluate_at(xi);
            const Rational qy = q.evaluate_at(yi);
            if (is_zero(qx) || is_zero(qy)) continue;
            ++done;
            Int pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
            std::vector<Rational> xs, ys;
            for (long v : xi) xs.push_back(Rational(Int(v) * pk));
            for (long v : yi) ys.push_back(Rational(Int(v) * pk));
            c.expect(Rational(q.evaluate(xs) / q.evaluate(ys)) == Rational(qx / qy),
                     "quotient scaling " + describe(q, p.value()));
        }
    }
    {
        Rng rng(20240083);
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
            const QuadraticForm q = rng.form(n, 9);
            const auto x = rng.rational_vector(n);
            const auto y = rng.rational_vector(n);
            std::vector<Rational> sum;
            for (std::size_t j = 0; j < n; ++j) sum.push_back(Rational(x[j] + y[j]));
            c.expect(q.evaluate(sum) ==
                         Rational(q.evaluate(x) + q.bilinear(x, y) * 2 + q.evaluate(y)),
                     "polarization " + format_form(q));
        }
    }
    {
        Rng rng(20240084);
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
            const QuadraticForm q = rng.nonsingular_rational_form(n, 9, 4);
            const Prime p(primes[i % 4]);
            c.expect(hasse_invariant(q, p, PivotStrategy::FirstDiagonal) ==
                         hasse_invariant(q, p, PivotStrategy::LastDiagonal),
                     "hasse pivots " + describe(q, p.value()));
        }
    }
    {
        Rng rng(20240085);
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = static_cast<std::size_t>(rng.integer(1, 4));
            const QuadraticForm q = rng.nonsingular_form(n, 9);
            const QuadraticForm moved = q.change_of_variables(rng.unimodular_matrix(n));
            const Prime p(primes[i % 4]);
            c.expect(is_dense(moved, p).dense == is_dense(q, p).dense,
                     "change of variables " + describe(q, p.value()));
        }
    }
    c.finish();
}

// 9. Atlas determinism: byte-identical output across 1, 2 and 8 workers
//    over the criterion-1 corpus.
void criterion9() {
    Criterion c(9, "atlas determinism");
    AtlasOptions opts;
    opts.bound = 4;
    opts.primes = {2, 3, 5, 7, 11, 13};
    opts.jobs = 1;
    const std::string one = atlas_to_csv(build_atlas(opts), opts);
    opts.jobs = 2;
    const std::string two = atlas_to_csv(build_atlas(opts), opts);
    opts.jobs = 8;
    const std::string eight = atlas_to_csv(build_atlas(opts), opts);
    c.expect(one == two, "jobs 1 vs 2 differ");
    c.expect(one == eight, "jobs 1 vs 8 differ");
    // 729 coefficient triples, 33 of them singular, 6 primes, one header line
    c.expect(std::count(one.begin(), one.end(), '\n') == (729 - 33) * 6 + 1,
             "unexpected atlas size");
    c.finish();
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %s (%.1fs total)\n", g_failures == 0 ? "all criteria PASS" : "FAILURES",
                secs);
    return g_failures == 0 ? 0 : 1;
}
