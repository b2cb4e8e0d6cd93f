// qdense: decide whether the quotient set of values of a quadratic form at
// integer arguments is dense in Q_p, and cross-check the verdict against a
// brute-force enumeration oracle.

#include <CLI11.hpp>

#include <qdense/qdense.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qdense;

constexpr int kExitDense = 0;
constexpr int kExitNotDense = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInternal = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInvalidForm = 65;
constexpr int kExitBudget = 66;
constexpr int kExitDisagree = 70;
constexpr int kExitIo = 74;

/// Command-line or form-specification misuse (exit 64).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally invalid form: zero or singular (exit 65).
struct InvalidFormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Defaults {
    long box = 50;
    unsigned prec = 0;  // 0: per-prime default (1 for odd p, 3 for p = 2)
    long window = 2;
    std::uint64_t budget = kDefaultEnumerationBudget;
    long radius = 16;
    unsigned jobs = 1;
};

/// Optional key=value config; QDENSE_CONFIG overrides the default path
/// ./qdense.conf. Flags override config values.
Defaults load_defaults() {
    Defaults d;
    const char* env = std::getenv("QDENSE_CONFIG");
    const std::string path = env ? env : "qdense.conf";
    std::ifstream in(path);
    if (!in) {
        if (env) throw UsageError("config file not found: " + path);
        return d;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "box")
                d.box = std::stol(value);
            else if (key == "prec")
                d.prec = static_cast<unsigned>(std::stoul(value));
            else if (key == "window")
                d.window = std::stol(value);
            else if (key == "budget")
                d.budget = std::stoull(value);
            else if (key == "radius")
                d.radius = std::stol(value);
            else if (key == "jobs")
                d.jobs = static_cast<unsigned>(std::stoul(value));
            else
                throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return d;
}

/// Coefficients arrive as a comma-separated list over the monomials
/// X_i X_j in row-major (i <= j) order; for n = 2 that is "a,b,c".
QuadraticForm parse_form(long n, const std::string& coeff_list) {
    if (n < 1) throw UsageError("dimension must be >= 1");
    std::vector<Rational> coeffs;
    std::stringstream ss(coeff_list);
    std::string token;
    std::size_t position = 0;
    while (std::getline(ss, token, ',')) {
        ++position;
        const auto b = token.find_first_not_of(" \t");
        const auto e = token.find_last_not_of(" \t");
        const std::string text = b == std::string::npos ? "" : token.substr(b, e - b + 1);
        const auto q = try_parse_rational(text);
        if (!q)
            throw UsageError("coefficient " + std::to_string(position) + ": '" + text +
                             "' is not an integer or num/den rational");
        coeffs.push_back(*q);
    }
    const std::size_t expected = static_cast<std::size_t>(n) * (n + 1) / 2;
    if (coeffs.size() != expected)
        throw UsageError("dimension " + std::to_string(n) + " needs " + std::to_string(expected) +
                         " coefficients, got " + std::to_string(coeffs.size()));
    bool any = false;
    for (const auto& c : coeffs)
        if (!is_zero(c)) any = true;
    if (!any) throw InvalidFormError("invalid form: all coefficients are zero");
    return QuadraticForm::from_coefficients(static_cast<std::size_t>(n), coeffs);
}

Prime parse_prime(std::uint64_t value) {
    try {
        return Prime(value);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct FormOptions {
    long n = 0;
    std::string coeffs;
    std::uint64_t p = 0;

    void attach(CLI::App* cmd, bool with_prime = true) {
        cmd->add_option("-n,--dim", n, "dimension of the form")->required();
        cmd->add_option("-c,--coeffs", coeffs,
                        "monomial coefficients, row-major i<=j (n=2: \"a,b,c\")")
            ->required();
        if (with_prime) cmd->add_option("-p,--prime", p, "prime p")->required();
    }
};

int run_classify(const FormOptions& fo, const std::string& domain, long radius, bool json) {
    const QuadraticForm q = parse_form(fo.n, fo.coeffs);
    const Prime p = parse_prime(fo.p);
    if (domain.empty()) {
        const DensityVerdict v = is_dense(q, p);
        if (json)
            emit(verdict_to_json(q, p, v));
        else
            std::cout << render_verdict_text(q, p, v);
        return v.dense ? kExitDense : kExitNotDense;
    }
    const ValueDomain dom = domain == "z" ? ValueDomain::Integers : ValueDomain::Naturals;
    const RestrictedVerdict rv = is_dense_nonnegative_restricted(q, p, dom, radius);
    if (json) {
        emit(restricted_verdict_to_json(q, p, rv));
    } else {
        std::cout << render_verdict_text(q, p, rv.density);
        std::cout << render_positivity_text(rv.positivity, dom);
        std::cout << "restricted verdict (quotients of nonnegative values): "
                  << to_string(rv.dense) << "\n";
    }
    switch (rv.dense) {
        case Tristate::Yes: return kExitDense;
        case Tristate::No: return kExitNotDense;
        case Tristate::Unknown: return kExitUnknown;
    }
    return kExitInternal;
}

int run_isotropy(const FormOptions& fo, bool json) {
    const QuadraticForm q = parse_form(fo.n, fo.coeffs);
    const Prime p = parse_prime(fo.p);
    const bool iso = is_isotropic(q, p);
    if (json)
        emit(Json{{"schema", 1}, {"form", form_to_json(q)}, {"p", p.value()}, {"isotropic", iso}});
    else
        std::cout << format_form(q) << " is " << (iso ? "isotropic" : "anisotropic") << " over Q_"
                  << p.value() << "\n";
    return 0;
}

int run_classes(const FormOptions& fo, bool json) {
    const QuadraticForm q = parse_form(fo.n, fo.coeffs);
    const Prime p = parse_prime(fo.p);
    const auto rep = represented_classes(q, p);
    const auto quo = quotient_class_set(q, p);
    if (json) {
        Json j = verdict_to_json(q, p, is_dense(q, p));
        j["classes"] = classes_to_json(rep, quo);
        emit(j);
    } else {
        std::cout << "square classes of Q_" << p.value() << " (by canonical representative)\n";
        std::cout << "represented by " << format_form(q) << ": " << render_class_list(rep) << "\n";
        std::cout << "present in the quotient set:  " << render_class_list(quo) << "\n";
        std::cout << "class group order: " << class_group_order(p) << "\n";
    }
    return 0;
}

int run_hilbert(const std::string& a_text, const std::string& b_text, const std::string& place_text,
                bool json) {
    const auto a = try_parse_rational(a_text);
    const auto b = try_parse_rational(b_text);
    if (!a || !b) throw UsageError("hilbert: -a and -b must be rationals");
    if (is_zero(*a) || is_zero(*b)) throw UsageError("hilbert: arguments must be nonzero");
    Place place = Place::real();
    if (place_text != "real" && place_text != "oo") {
        std::uint64_t pv = 0;
        try {
            pv = std::stoull(place_text);
        } catch (const std::logic_error&) {
            throw UsageError("hilbert: place must be a prime or 'real'");
        }
        place = Place(parse_prime(pv));
    }
    const int s = hilbert_symbol(*a, *b, place);
    if (json)
        emit(Json{{"schema", 1},
                  {"a", a_text},
                  {"b", b_text},
                  {"place", place.is_real() ? Json("real") : Json(place.prime().value())},
                  {"symbol", s}});
    else
        std::cout << s << "\n";
    return 0;
}

int run_oracle(const FormOptions& fo, long box, unsigned prec, long window, std::uint64_t budget,
               bool json) {
    const QuadraticForm q = parse_form(fo.n, fo.coeffs);
    const Prime p = parse_prime(fo.p);
    const unsigned k = prec == 0 ? default_unit_precision(p) : prec;
    if (k < default_unit_precision(p))
        throw UsageError("--prec " + std::to_string(k) + " is below the Hensel threshold for p = " +
                         std::to_string(p.value()) + "; coverage there cannot separate square classes");
    const DensityVerdict verdict = is_dense(q, p);
    const OracleReport rep = density_report(q, p, box, k, window, budget);
    const bool agree = rep.full_coverage == verdict.dense;
    if (json) {
        Json j = report_to_json(q, rep);
        j["verdict"] = Json{{"dense", verdict.dense}, {"branch", to_string(verdict.branch)}};
        j["agree"] = agree;
        emit(j);
    } else {
        std::cout << render_verdict_text(q, p, verdict);
        std::cout << render_report_text(rep);
        std::cout << "oracle vs classifier: " << (agree ? "AGREE" : "DISAGREE") << "\n";
    }
    return agree ? 0 : kExitDisagree;
}

int run_atlas(const AtlasOptions& opts, const std::string& out_path, const std::string& format) {
    const AtlasResult result = build_atlas(opts);
    const std::string payload =
        format == "json" ? atlas_to_json(result, opts) : atlas_to_csv(result, opts);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("atlas: cannot open '" + out_path + "' for writing");
        out << payload;
        out.flush();
        if (!out) {
            out.close();
            std::remove(out_path.c_str());
            throw IoError("atlas: failed while writing '" + out_path + "' (partial file removed)");
        }
    }
    std::cerr << "atlas: " << result.rows.size() << " rows over "
              << (result.forms_total - result.singular_skipped) << " nonsingular forms ("
              << result.singular_skipped << " singular skipped)\n";
    if (opts.verify)
        for (const auto& row : result.rows)
            if (row.agreement && !*row.agreement) return kExitDisagree;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Defaults defaults;
    try {
        defaults = load_defaults();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"density of quotient sets of quadratic form values in Q_p"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 dense/ok, 1 not dense, 2 unknown, 64 usage, 65 invalid form,\n"
               "            66 budget exceeded, 70 oracle disagreement, 74 I/O error");

    FormOptions classify_fo, isotropy_fo, classes_fo, oracle_fo;
    std::string domain;
    long radius = defaults.radius;
    bool classify_json = false;

    CLI::App* classify = app.add_subcommand(
        "classify", "density verdict for R(Q(Z^n)) in Q_p, optionally restricted to nonnegative values");
    classify_fo.attach(classify);
    classify->add_option("--domain", domain, "restrict to nonnegative values of Q over z|n")
        ->check(CLI::IsMember({"z", "n"}));
    classify->add_option("--radius", radius, "orthant search radius for --domain n")
        ->capture_default_str();
    classify->add_flag("--json", classify_json, "machine-readable output");

    bool isotropy_json = false;
    CLI::App* isotropy = app.add_subcommand("isotropy", "is the form isotropic over Q_p?");
    isotropy_fo.attach(isotropy);
    isotropy->add_flag("--json", isotropy_json, "machine-readable output");

    bool classes_json = false;
    CLI::App* classes = app.add_subcommand("classes", "represented and quotient square classes");
    classes_fo.attach(classes);
    classes->add_flag("--json", classes_json, "machine-readable output");

    std::string hilbert_a, hilbert_b, hilbert_place;
    bool hilbert_json = false;
    CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a,b) at a place of Q");
    hilbert->add_option("-a", hilbert_a, "first argument (rational)")->required();
    hilbert->add_option("-b", hilbert_b, "second argument (rational)")->required();
    hilbert->add_option("-v,--place", hilbert_place, "prime, or 'real'")->required();
    hilbert->add_flag("--json", hilbert_json, "machine-readable output");

    long oracle_box = defaults.box;
    unsigned oracle_prec = defaults.prec;
    long oracle_window = defaults.window;
    std::uint64_t oracle_budget = defaults.budget;
    bool oracle_json = false;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force density report and classifier check");
    oracle_fo.attach(oracle);
    oracle->add_option("--box", oracle_box, "argument box radius B")->capture_default_str();
    oracle->add_option("--prec", oracle_prec, "unit residue precision k (0: per-prime default)")
        ->capture_default_str();
    oracle->add_option("--window", oracle_window, "valuation window V")->capture_default_str();
    oracle->add_option("--budget", oracle_budget, "evaluation budget")->capture_default_str();
    oracle->add_flag("--json", oracle_json, "machine-readable output");

    AtlasOptions atlas_opts;
    atlas_opts.jobs = defaults.jobs;
    atlas_opts.box = defaults.box;
    atlas_opts.window = defaults.window;
    atlas_opts.budget = defaults.budget;
    std::vector<std::uint64_t> atlas_primes;
    std::string atlas_out, atlas_format = "csv";
    unsigned atlas_dim = 2;
    CLI::App* atlas = app.add_subcommand("atlas", "classify a whole coefficient range into a file");
    atlas->add_option("--bound", atlas_opts.bound, "coefficients range over [-bound, bound]")
        ->required();
    atlas->add_option("--dim", atlas_dim, "dimension of the enumerated forms")->capture_default_str();
    atlas->add_option("--primes", atlas_primes, "primes, comma separated")->delimiter(',')->required();
    atlas->add_option("--out", atlas_out, "output path (default: stdout)");
    atlas->add_option("--format", atlas_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    atlas->add_flag("--verify", atlas_opts.verify, "add per-row oracle agreement");
    atlas->add_flag("--classes", atlas_opts.include_classes, "add class representative columns");
    atlas->add_option("--jobs", atlas_opts.jobs, "worker threads")->capture_default_str();
    atlas->add_option("--box", atlas_opts.box, "oracle box radius for --verify")->capture_default_str();
    atlas->add_option("--budget", atlas_opts.budget, "evaluation budget")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify->parsed()) return run_classify(classify_fo, domain, radius, classify_json);
        if (isotropy->parsed()) return run_isotropy(isotropy_fo, isotropy_json);
        if (classes->parsed()) return run_classes(classes_fo, classes_json);
        if (hilbert->parsed()) return run_hilbert(hilbert_a, hilbert_b, hilbert_place, hilbert_json);
        if (oracle->parsed())
            return run_oracle(oracle_fo, oracle_box, oracle_prec, oracle_window, oracle_budget,
                              oracle_json);
        if (atlas->parsed()) {
            atlas_opts.dim = atlas_dim;
            atlas_opts.primes = atlas_primes;
            return run_atlas(atlas_opts, atlas_out, atlas_format);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidFormError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidForm;
    } catch (const SingularFormError& e) {
        std::cerr << "error: invalid form: " << e.what() << "\n";
        return kExitInvalidForm;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const EmptyQuotientSetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidForm;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
