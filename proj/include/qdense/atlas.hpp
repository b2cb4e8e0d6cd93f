#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qdense/render.hpp"

namespace qdense {

struct AtlasOptions {
    long bound = 2;                    // coefficients range over [-bound, bound]
    unsigned dim = 2;                  // dimension of the enumerated forms
    std::vector<std::uint64_t> primes; // deduplicated and sorted before use
    bool verify = false;               // add an oracle agreement flag per row
    bool include_classes = false;      // add class representative columns to CSV
    unsigned jobs = 1;
    long box = 50;     // oracle box radius when verifying
    long window = 2;   // oracle valuation window when verifying
    std::uint64_t budget = kDefaultEnumerationBudget;
};

struct AtlasRow {
    std::vector<long> coeffs;
    std::uint64_t p = 0;
    DensityVerdict verdict;
    std::vector<Int> represented_reps;
    std::vector<Int> quotient_reps;
    std::optional<bool> agreement;
};

struct AtlasResult {
    std::vector<AtlasRow> rows;
    std::uint64_t forms_total = 0;
    std::uint64_t singular_skipped = 0;
};

namespace detail {

inline bool next_coeff_tuple(std::vector<long>& c, long bound) {
    std::size_t i = c.size();
    while (i-- > 0) {
        if (c[i] < bound) {
            ++c[i];
            std::fill(c.begin() + static_cast<long>(i) + 1, c.end(), -bound);
            return true;
        }
        if (i == 0) return false;
    }
    return false;
}

} // namespace detail

/// One row per (nonsingular form, prime), in lexicographic order of
/// (coefficients, prime). The row computation is pure, so any number of
/// workers produces the identical row vector.
inline AtlasResult build_atlas(const AtlasOptions& opts) {
    if (opts.primes.empty()) throw std::invalid_argument("atlas: prime list must not be empty");
    if (opts.bound < 0) throw std::invalid_argument("atlas: bound must be nonnegative");
    if (opts.dim < 1) throw std::invalid_argument("atlas: dimension must be positive");
    std::vector<std::uint64_t> primes = opts.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::uint64_t p : primes) (void)Prime(p);  // validate up front

    const std::size_t m = static_cast<std::size_t>(opts.dim) * (opts.dim + 1) / 2;
    // keep the form enumeration itself inside the evaluation budget
    {
        Int count = 1;
        for (std::size_t i = 0; i < m; ++i) count *= Int(2 * opts.bound + 1);
        if (count > Int(static_cast<unsigned long>(opts.budget)))
            throw BudgetExceededError("atlas: coefficient range enumerates " + count.get_str() +
                                      " forms, over the budget of " + std::to_string(opts.budget));
    }

    AtlasResult result;
    std::vector<std::pair<QuadraticForm, std::vector<long>>> forms;
    std::vector<long> tuple(m, -opts.bound);
    bool more = true;
    while (more) {
        ++result.forms_total;
        std::vector<Rational> coeffs;
        coeffs.reserve(m);
        for (long c : tuple) coeffs.emplace_back(c);
        bool all_zero = std::all_of(tuple.begin(), tuple.end(), [](long c) { return c == 0; });
        if (all_zero) {
            ++result.singular_skipped;
        } else {
            QuadraticForm q = QuadraticForm::from_coefficients(opts.dim, coeffs);
            if (q.is_nonsingular())
                forms.emplace_back(std::move(q), tuple);
            else
                ++result.singular_skipped;
        }
        more = detail::next_coeff_tuple(tuple, opts.bound);
    }

    result.rows.resize(forms.size() * primes.size());
    auto compute_row = [&](std::size_t task) {
        const auto& [form, coeffs] = forms[task / primes.size()];
        const Prime p(primes[task % primes.size()]);
        AtlasRow row;
        row.coeffs = coeffs;
        row.p = p.value();
        row.verdict = is_dense(form, p);
        for (const auto& c : represented_classes(form, p))
            row.represented_reps.push_back(class_representative(c));
        for (const auto& c : quotient_class_set(form, p))
            row.quotient_reps.push_back(class_representative(c));
        if (opts.verify) {
            const OracleReport rep =
                density_report(form, p, opts.box, default_unit_precision(p), opts.window, opts.budget);
            row.agreement = rep.full_coverage == row.verdict.dense;
        }
        result.rows[task] = std::move(row);
    };

    const std::size_t tasks = result.rows.size();
    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1 || tasks < 2) {
        for (std::size_t t = 0; t < tasks; ++t) compute_row(t);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w]() {
                for (std::size_t t = w; t < tasks; t += jobs) compute_row(t);
            });
        }
        for (auto& th : workers) th.join();
    }
    return result;
}

inline std::string atlas_csv_header(const AtlasOptions& opts) {
    std::string header;
    if (opts.dim == 2) {
        header = "a,b,c";
    } else {
        for (unsigned i = 1; i <= opts.dim; ++i)
            for (unsigned j = i; j <= opts.dim; ++j)
                header += (header.empty() ? "" : ",") + ("c" + std::to_string(i) + std::to_string(j));
    }
    header += ",p,dense,branch";
    if (opts.dim == 2) header += ",disc";
    if (opts.include_classes) header += ",represented,quotient";
    if (opts.verify) header += ",agreement";
    return header;
}

inline std::string atlas_to_csv(const AtlasResult& result, const AtlasOptions& opts) {
    std::string out = atlas_csv_header(opts) + "\n";
    auto reps_field = [](const std::vector<Int>& reps) {
        std::string s;
        for (std::size_t i = 0; i < reps.size(); ++i) s += (i ? " " : "") + reps[i].get_str();
        return s;
    };
    for (const auto& row : result.rows) {
        std::string line;
        for (long c : row.coeffs) line += std::to_string(c) + ",";
        line += std::to_string(row.p);
        line += row.verdict.dense ? ",true" : ",false";
        line += ",";
        line += to_string(row.verdict.branch);
        if (opts.dim == 2)
            line += "," + csv_field(row.verdict.discriminant ? to_string(*row.verdict.discriminant) : "");
        if (opts.include_classes) {
            line += "," + csv_field(reps_field(row.represented_reps));
            line += "," + csv_field(reps_field(row.quotient_reps));
        }
        if (opts.verify) line += row.agreement && *row.agreement ? ",true" : ",false";
        out += line + "\n";
    }
    return out;
}

inline std::string atlas_to_json(const AtlasResult& result, const AtlasOptions&) {
    Json rows = Json::array();
    for (const auto& row : result.rows) {
        Json r{{"coeffs", row.coeffs},
               {"p", row.p},
               {"dense", row.verdict.dense},
               {"branch", to_string(row.verdict.branch)}};
        if (row.verdict.discriminant) r["disc"] = to_string(*row.verdict.discriminant);
        if (row.verdict.disc_unit_residue) r["discUnitResidue"] = json_int(*row.verdict.disc_unit_residue);
        Json rep = Json::array();
        for (const auto& x : row.represented_reps) rep.push_back(json_int(x));
        Json quo = Json::array();
        for (const auto& x : row.quotient_reps) quo.push_back(json_int(x));
        r["classes"] = Json{{"represented", rep}, {"quotient", quo}};
        if (row.agreement) r["agreement"] = *row.agreement;
        rows.push_back(std::move(r));
    }
    Json doc{{"schema", 1},
             {"rows", rows},
             {"summary", Json{{"rows", result.rows.size()},
                              {"formsEnumerated", result.forms_total},
                              {"singularSkipped", result.singular_skipped}}}};
    return doc.dump(2) + "\n";
}

} // namespace qdense
