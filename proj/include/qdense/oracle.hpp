#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdense/errors.hpp"
#include "qdense/quadratic_form.hpp"
#include "qdense/square_class.hpp"

namespace qdense {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// The Hensel thresholds: unit square classes are decided mod p for odd p
/// and mod 8 for p = 2.
inline unsigned default_unit_precision(const Prime& p) { return p.is_two() ? 3u : 1u; }

namespace detail {

/// Monomial view of a form with denominators cleared: Q(x) = P(x)/denom
/// with P over the integers. Zero monomials are dropped.
struct ClearedForm {
    std::size_t n = 0;
    std::vector<std::pair<unsigned, unsigned>> monomials;  // (i, j), i <= j
    std::vector<Int> coeffs;
    Int denom = 1;
};

inline ClearedForm clear_denominators(const QuadraticForm& q) {
    ClearedForm cf;
    cf.n = q.dimension();
    const std::vector<Rational> cs = q.coefficients();
    for (const auto& c : cs) mpz_lcm(cf.denom.get_mpz_t(), cf.denom.get_mpz_t(), c.get_den_mpz_t());
    std::size_t idx = 0;
    for (unsigned i = 0; i < cf.n; ++i)
        for (unsigned j = i; j < cf.n; ++j, ++idx) {
            if (is_zero(cs[idx])) continue;
            Rational scaled = cs[idx] * Rational(cf.denom);
            scaled.canonicalize();
            cf.monomials.emplace_back(i, j);
            cf.coeffs.push_back(scaled.get_num());
        }
    return cf;
}

/// Machine-integer evaluation of the cleared polynomial, valid only when
/// the worst-case |P(x)| over the box provably fits in 62 bits.
struct Int64Evaluator {
    std::vector<long> coeffs;
    std::vector<std::pair<unsigned, unsigned>> monomials;

    long eval(const std::vector<long>& x) const {
        long acc = 0;
        for (std::size_t m = 0; m < coeffs.size(); ++m)
            acc += coeffs[m] * x[monomials[m].first] * x[monomials[m].second];
        return acc;
    }
};

inline std::optional<Int64Evaluator> try_int64_evaluator(const ClearedForm& cf, long box) {
    Int bound = 0;
    for (const auto& c : cf.coeffs) bound += abs(c);
    bound *= Int(box) * Int(box);
    Int limit = 1;
    limit <<= 62;
    if (bound > limit) return std::nullopt;
    Int64Evaluator ev;
    ev.monomials = cf.monomials;
    ev.coeffs.reserve(cf.coeffs.size());
    for (const auto& c : cf.coeffs) ev.coeffs.push_back(c.get_si());
    return ev;
}

/// Walks the symmetry-reduced argument box: the origin plus every point
/// whose first nonzero coordinate is positive (Q(-x) = Q(x), so the value
/// multiset over [-B,B]^n is unchanged). Callbacks receive the scaled
/// numerator (value = raw / cf.denom) and return false to stop early.
template <class RawCb, class ExactCb>
std::uint64_t walk_box(const ClearedForm& cf, long box, std::uint64_t budget, RawCb&& on_raw,
                       ExactCb&& on_exact) {
    if (box < 1) throw std::invalid_argument("walk_box: box radius must be >= 1");
    Int nominal;
    mpz_ui_pow_ui(nominal.get_mpz_t(), 2 * static_cast<unsigned long>(box) + 1,
                  static_cast<unsigned long>(cf.n));
    if (nominal > Int(static_cast<unsigned long>(budget)))
        throw BudgetExceededError("enumeration box of " + nominal.get_str() +
                                  " points exceeds the budget of " + std::to_string(budget));

    const std::size_t n = cf.n;
    const auto fast = try_int64_evaluator(cf, box);
    std::vector<long> x(n, 0);
    std::uint64_t visited = 0;

    auto emit = [&](const std::vector<long>& pt) -> bool {
        ++visited;
        if (fast) return on_raw(fast->eval(pt), pt);
        Int acc = 0;
        for (std::size_t m = 0; m < cf.coeffs.size(); ++m)
            acc += cf.coeffs[m] * Int(pt[cf.monomials[m].first]) * Int(pt[cf.monomials[m].second]);
        return on_exact(acc, pt);
    };

    if (!emit(x)) return visited;
    for (std::size_t f = 0; f < n; ++f) {
        std::fill(x.begin(), x.end(), 0);
        x[f] = 1;
        for (std::size_t j = f + 1; j < n; ++j) x[j] = -box;
        bool exhausted = false;
        while (!exhausted) {
            if (!emit(x)) return visited;
            std::size_t i = n - 1;
            while (true) {
                if (x[i] < box) {
                    ++x[i];
                    break;
                }
                if (i == f) {
                    exhausted = true;
                    break;
                }
                x[i] = -box;
                --i;
            }
        }
    }
    return visited;
}

struct DistinctValueStats {
    std::uint64_t points = 0;
    std::size_t distinct = 0;
    std::size_t nonzero = 0;
};

/// Calls fn once per distinct value of Q over the box (zero included).
/// fn returning false stops the walk early.
template <class Fn>
DistinctValueStats for_each_distinct_value(const QuadraticForm& q, long box, std::uint64_t budget,
                                           Fn&& fn) {
    const ClearedForm cf = clear_denominators(q);
    DistinctValueStats st;
    std::unordered_set<long> seen_small;
    std::set<Int> seen_big;
    auto on_raw = [&](long raw, const std::vector<long>&) {
        if (!seen_small.insert(raw).second) return true;
        ++st.distinct;
        if (raw != 0) ++st.nonzero;
        return fn(make_rational(Int(raw), cf.denom));
    };
    auto on_exact = [&](const Int& raw, const std::vector<long>&) {
        if (!seen_big.insert(raw).second) return true;
        ++st.distinct;
        if (raw != 0) ++st.nonzero;
        return fn(make_rational(raw, cf.denom));
    };
    st.points = walk_box(cf, box, budget, on_raw, on_exact);
    return st;
}

} // namespace detail

/// Distinct values of Q over [-B, B]^n, each with one witness argument.
struct BoxValues {
    std::map<Rational, std::vector<long>> values;
    std::uint64_t points_evaluated = 0;
};

inline BoxValues enumerate_values(const QuadraticForm& q, long box,
                                  std::uint64_t budget = kDefaultEnumerationBudget) {
    const detail::ClearedForm cf = detail::clear_denominators(q);
    BoxValues out;
    std::unordered_set<long> seen_small;
    auto on_raw = [&](long raw, const std::vector<long>& pt) {
        if (seen_small.insert(raw).second) out.values.emplace(make_rational(Int(raw), cf.denom), pt);
        return true;
    };
    auto on_exact = [&](const Int& raw, const std::vector<long>& pt) {
        out.values.emplace(make_rational(raw, cf.denom), pt);
        return true;
    };
    out.points_evaluated = detail::walk_box(cf, box, budget, on_raw, on_exact);
    return out;
}

/// Square classes of the nonzero values found in the box.
inline std::set<SquareClass> represented_classes_bruteforce(
    const QuadraticForm& q, const Prime& p, long box,
    std::uint64_t budget = kDefaultEnumerationBudget) {
    std::set<SquareClass> classes;
    const std::size_t full = class_group_order(p);
    detail::for_each_distinct_value(q, box, budget, [&](const Rational& v) {
        if (is_zero(v)) return true;
        classes.insert(square_class(v, p));
        return classes.size() < full;
    });
    if (classes.empty())
        throw EmptyQuotientSetError("represented_classes_bruteforce: no nonzero value in the box");
    return classes;
}

/// Square classes of quotients of nonzero values found in the box; since
/// classes of quotients are products of classes of values, the pair count
/// stays linear in the number of distinct value classes.
inline std::set<SquareClass> observed_quotient_classes(
    const QuadraticForm& q, const Prime& p, long box,
    std::uint64_t budget = kDefaultEnumerationBudget) {
    std::set<SquareClass> value_classes;
    std::set<SquareClass> products;
    const std::size_t full = class_group_order(p);
    detail::for_each_distinct_value(q, box, budget, [&](const Rational& v) {
        if (is_zero(v)) return true;
        const SquareClass c = square_class(v, p);
        if (value_classes.insert(c).second)
            for (const auto& other : value_classes) products.insert(class_mul(c, other));
        return products.size() < full;
    });
    if (value_classes.empty())
        throw EmptyQuotientSetError("observed_quotient_classes: no nonzero value in the box");
    return products;
}

/// Finite-precision rendering of "dense in Q_p": which balls
/// (valuation v in [-V, V], unit residue mod p^k) the quotient set hits.
struct OracleReport {
    std::uint64_t prime = 0;
    long box = 0;
    unsigned unit_precision = 1;  // k
    long valuation_window = 1;    // V
    std::set<SquareClass> observed_classes;
    std::map<std::pair<long, Int>, bool> coverage;
    bool full_coverage = false;
    std::uint64_t points_evaluated = 0;
    std::size_t distinct_values = 0;
    std::size_t nonzero_values = 0;
};

inline OracleReport density_report(const QuadraticForm& q, const Prime& p, long box, unsigned k,
                                   long window, std::uint64_t budget = kDefaultEnumerationBudget) {
    if (k < 1) throw std::invalid_argument("density_report: unit precision k must be >= 1");
    if (window < 1) throw std::invalid_argument("density_report: valuation window must be >= 1");

    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
    const Int phi = pk - pk / p.as_int();
    if (Int(2 * window + 1) * phi > Int(static_cast<unsigned long>(budget)))
        throw BudgetExceededError("density_report: residue grid exceeds the budget");

    // Signature of a distinct nonzero value: valuation, unit residue mod
    // p^k, and the unit bits of its square class (the class's valuation
    // parity is the valuation's parity, so it need not be stored).
    std::set<std::tuple<long, Int, unsigned>> sigs;
    const auto stats = detail::for_each_distinct_value(q, box, budget, [&](const Rational& v) {
        if (!is_zero(v))
            sigs.emplace(valuation(v, p), unit_residue(v, p, k), square_class(v, p).unit_bits());
        return true;
    });
    if (sigs.empty()) throw EmptyQuotientSetError("density_report: no nonzero value in the box");

    OracleReport rep;
    rep.prime = p.value();
    rep.box = box;
    rep.unit_precision = k;
    rep.valuation_window = window;
    rep.points_evaluated = stats.points;
    rep.distinct_values = stats.distinct;
    rep.nonzero_values = stats.nonzero;

    for (long v = -window; v <= window; ++v)
        for (Int r = 1; r < pk; ++r)
            if (r % p.as_int() != 0) rep.coverage[{v, r}] = false;

    struct Entry {
        long val;
        Int unit;
        Int unit_inv;
        unsigned class_bits;
    };
    std::vector<Entry> entries;
    entries.reserve(sigs.size());
    for (const auto& [val, unit, bits] : sigs) {
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), pk.get_mpz_t()))
            throw std::logic_error("density_report: unit residue not invertible");
        entries.push_back({val, unit, inv, bits});
    }

    for (const auto& a : entries) {
        for (const auto& b : entries) {
            const long dv = a.val - b.val;
            if (dv < -window || dv > window) continue;
            Int u = a.unit * b.unit_inv;
            mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
            rep.coverage[{dv, u}] = true;
            rep.observed_classes.insert(
                SquareClass(p, static_cast<unsigned>(((dv % 2) + 2) % 2), a.class_bits ^ b.class_bits));
        }
    }

    rep.full_coverage = std::all_of(rep.coverage.begin(), rep.coverage.end(),
                                    [](const auto& cell) { return cell.second; });
    return rep;
}

/// Enumeration oracle for is_square: the valuation must be even and the
/// unit residue must be a square mod p^k.
inline bool is_square_bruteforce(const Rational& x, const Prime& p, unsigned k) {
    if (k < 1) throw std::invalid_argument("is_square_bruteforce: k must be >= 1");
    if (p.is_two() && k < 3)
        throw std::invalid_argument("is_square_bruteforce: p = 2 requires k >= 3");
    if (is_zero(x)) throw std::invalid_argument("is_square_bruteforce: x must be nonzero");
    if (valuation(x, p) % 2 != 0) return false;
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p.value(), k);
    if (pk > Int(100'000'000ul))
        throw BudgetExceededError("is_square_bruteforce: modulus p^k too large to scan");
    const std::uint64_t m = pk.get_ui();
    const std::uint64_t target = unit_residue(x, p, k).get_ui();
    for (std::uint64_t y = 0; y < m; ++y)
        if (detail::mulmod_u64(y, y, m) == target) return true;
    return false;
}

} // namespace qdense
