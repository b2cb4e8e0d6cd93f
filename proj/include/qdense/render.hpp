#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "qdense/classifier.hpp"
#include "qdense/oracle.hpp"

namespace qdense {

using Json = nlohmann::json;

/// Integers render as JSON numbers while they are exactly representable,
/// and as strings beyond that.
inline Json json_int(const Int& x) {
    if (x.fits_slong_p()) {
        const long v = x.get_si();
        if (v <= (1L << 53) && v >= -(1L << 53)) return Json(v);
    }
    return Json(x.get_str());
}

inline Json form_to_json(const QuadraticForm& q) {
    Json coeffs = Json::array();
    for (const auto& c : q.coefficients()) coeffs.push_back(to_string(c));
    return Json{{"n", q.dimension()}, {"coeffs", coeffs}};
}

inline Json positivity_to_json(const PositivityStatus& s) {
    Json j{{"status", to_string(s.value)}};
    if (s.witness) j["witness"] = *s.witness;
    return j;
}

inline Json classes_to_json(const std::set<SquareClass>& represented,
                            const std::set<SquareClass>& quotient) {
    Json rep = Json::array();
    for (const auto& c : represented) rep.push_back(json_int(class_representative(c)));
    Json quo = Json::array();
    for (const auto& c : quotient) quo.push_back(json_int(class_representative(c)));
    return Json{{"represented", rep}, {"quotient", quo}};
}

inline Json verdict_to_json(const QuadraticForm& q, const Prime& p, const DensityVerdict& v) {
    Json j{{"schema", 1},
           {"form", form_to_json(q)},
           {"p", p.value()},
           {"dense", v.dense},
           {"branch", to_string(v.branch)}};
    if (v.discriminant) j["disc"] = to_string(*v.discriminant);
    if (v.disc_unit_residue) j["discUnitResidue"] = json_int(*v.disc_unit_residue);
    return j;
}

inline Json restricted_verdict_to_json(const QuadraticForm& q, const Prime& p,
                                       const RestrictedVerdict& rv) {
    Json j = verdict_to_json(q, p, rv.density);
    // the conjunction verdict: true/false, or null while positivity is open
    if (rv.dense == Tristate::Unknown)
        j["dense"] = nullptr;
    else
        j["dense"] = rv.dense == Tristate::Yes;
    j["positivity"] = positivity_to_json(rv.positivity);
    return j;
}

/// Monomial rendering, e.g. "x1^2 - 3*x1*x2 + 1/2*x2^2".
inline std::string format_form(const QuadraticForm& q) {
    const auto coeffs = q.coefficients();
    std::ostringstream out;
    std::size_t idx = 0;
    bool first = true;
    for (std::size_t i = 0; i < q.dimension(); ++i) {
        for (std::size_t j = i; j < q.dimension(); ++j, ++idx) {
            const Rational& c = coeffs[idx];
            if (is_zero(c)) continue;
            Rational mag = abs(c);
            if (first) {
                if (sgn(c) < 0) out << "-";
                first = false;
            } else {
                out << (sgn(c) < 0 ? " - " : " + ");
            }
            std::string monomial =
                i == j ? "x" + std::to_string(i + 1) + "^2"
                       : "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
            if (mag == 1)
                out << monomial;
            else
                out << to_string(mag) << "*" << monomial;
        }
    }
    return out.str();
}

inline std::string render_verdict_text(const QuadraticForm& q, const Prime& p,
                                       const DensityVerdict& v) {
    std::ostringstream out;
    out << "form:    " << format_form(q) << "  (n = " << q.dimension() << ")\n";
    out << "p:       " << p.value() << "\n";
    out << "verdict: " << (v.dense ? "dense" : "not dense") << "\n";
    out << "branch:  " << to_string(v.branch) << "\n";
    if (v.discriminant) {
        out << "disc:    " << to_string(*v.discriminant);
        if (v.disc_unit_residue)
            out << "  (unit residue " << v.disc_unit_residue->get_str() << " mod "
                << (p.is_two() ? "8" : p.as_int().get_str()) << ")";
        out << "\n";
    }
    return out.str();
}

inline std::string render_positivity_text(const PositivityStatus& s, ValueDomain domain) {
    std::ostringstream out;
    out << "positive value on " << (domain == ValueDomain::Integers ? "Z^n" : "N^n") << ": "
        << to_string(s.value);
    if (s.witness) {
        out << "  at (";
        for (std::size_t i = 0; i < s.witness->size(); ++i)
            out << (i ? "," : "") << (*s.witness)[i];
        out << ")";
    }
    out << "\n";
    return out.str();
}

inline std::string render_class_list(const std::set<SquareClass>& classes) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& c : classes) {
        out << (first ? "" : ", ") << class_representative(c).get_str();
        first = false;
    }
    out << "}";
    return out.str();
}

inline Json report_to_json(const QuadraticForm& q, const OracleReport& rep) {
    Json coverage = Json::array();
    long current_v = 0;
    Json covered = Json::array();
    Json missing = Json::array();
    bool have_row = false;
    auto flush = [&]() {
        if (have_row)
            coverage.push_back(Json{{"v", current_v}, {"covered", covered}, {"missing", missing}});
        covered = Json::array();
        missing = Json::array();
    };
    for (const auto& [cell, hit] : rep.coverage) {
        if (!have_row || cell.first != current_v) {
            flush();
            current_v = cell.first;
            have_row = true;
        }
        (hit ? covered : missing).push_back(json_int(cell.second));
    }
    flush();

    Json observed = Json::array();
    for (const auto& c : rep.observed_classes) observed.push_back(json_int(class_representative(c)));

    return Json{{"schema", 1},
                {"form", form_to_json(q)},
                {"p", rep.prime},
                {"box", rep.box},
                {"prec", rep.unit_precision},
                {"window", rep.valuation_window},
                {"observedClasses", observed},
                {"coverage", coverage},
                {"fullCoverage", rep.full_coverage},
                {"counts",
                 Json{{"points", rep.points_evaluated},
                      {"distinctValues", rep.distinct_values},
                      {"nonzeroValues", rep.nonzero_values}}}};
}

/// Coverage grid, one row per valuation; falls back to counts when the
/// residue axis is too wide to print.
inline std::string render_report_text(const OracleReport& rep) {
    std::ostringstream out;
    out << "p = " << rep.prime << ", box = " << rep.box << ", unit precision k = "
        << rep.unit_precision << ", valuation window V = " << rep.valuation_window << "\n";
    out << "points evaluated: " << rep.points_evaluated
        << ", distinct values: " << rep.distinct_values
        << " (nonzero: " << rep.nonzero_values << ")\n";
    out << "observed quotient classes: " << render_class_list(rep.observed_classes) << "\n";

    std::size_t residues = 0;
    for (const auto& [cell, hit] : rep.coverage) {
        (void)hit;
        if (cell.first == rep.coverage.begin()->first.first) ++residues;
    }
    if (residues <= 64) {
        out << "coverage grid ('#' hit, '.' missed), rows are valuations:\n";
        long row_v = 0;
        bool have_row = false;
        std::string line;
        for (const auto& [cell, hit] : rep.coverage) {
            if (!have_row || cell.first != row_v) {
                if (have_row) out << "  v=" << (row_v >= 0 ? "+" : "") << row_v << "  " << line << "\n";
                row_v = cell.first;
                have_row = true;
                line.clear();
            }
            line += hit ? '#' : '.';
        }
        if (have_row) out << "  v=" << (row_v >= 0 ? "+" : "") << row_v << "  " << line << "\n";
    } else {
        std::size_t hit_count = 0;
        for (const auto& [cell, hit] : rep.coverage) {
            (void)cell;
            if (hit) ++hit_count;
        }
        out << "coverage: " << hit_count << "/" << rep.coverage.size() << " cells hit\n";
    }
    out << "coverage complete: " << (rep.full_coverage ? "yes" : "no") << "\n";
    return out.str();
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace qdense
