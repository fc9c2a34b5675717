#pragma once

/*
 * Command-line front end.
 *
 *   polarmix <analyze|verify|isolated|strata|zeta> [--poly EXPR | --family KIND --a LIST [--b LIST] [--perm CYCLES]]
 *            [--json] [--samples N] [--seed S] [--tol T]
 *
 * Exit codes: 0 success, 1 usage or parse error, 2 not polar weighted,
 * 3 verification failure.
 */

#include <cstdint>
#include <utility>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarmix/errors.hpp"
#include "polarmix/families.hpp"
#include "polarmix/invariants.hpp"
#include "polarmix/numerics.hpp"
#include "polarmix/parse.hpp"
#include "polarmix/report.hpp"
#include "polarmix/strata.hpp"
#include "polarmix/weights.hpp"

namespace polarmix {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_not_polar = 2, exit_verification = 3 };

struct CliOptions {
    std::string command;
    bool json = false;
    std::optional<std::string> poly;
    std::optional<std::string> family;
    std::vector<int> a, b;
    std::optional<std::string> perm;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool inject_fault = false;  // hidden: corrupts q_1 before verification
};

namespace detail {

inline FamilySpec family_spec(const CliOptions& o) {
    FamilySpec spec;
    spec.kind = family_kind_from_string(*o.family);
    spec.a = o.a;
    spec.b = o.b;
    if (spec.kind == FamilyKind::sigma_twisted) {
        if (!o.perm) throw invalid_family("--family sigma needs --perm");
        spec.sigma = parse_permutation(*o.perm, spec.a.size());
    } else if (o.perm) {
        throw invalid_family("--perm only applies to --family sigma");
    }
    return spec;
}

inline InputEcho read_input(const CliOptions& o) {
    if (o.poly.has_value() == o.family.has_value()) throw error("give exactly one of --poly or --family");
    InputEcho in;
    if (o.poly) {
        in.source = "poly";
        in.polynomial = parse(*o.poly);
    } else {
        in.source = "family";
        in.family = family_spec(o);
        in.polynomial = build(*in.family);
    }
    return in;
}

inline void emit(const AnalysisReport& r, const CliOptions& o, std::ostream& out) {
    const json j = to_json(r);
    if (o.json)
        out << j.dump(2) << "\n";
    else
        out << render_text(j);
}

inline int run_command(const CliOptions& o, std::ostream& out) {
    if (o.command == "isolated") {
        if (!o.family) throw error("isolated needs --family g1|g2|sigma");
        const FamilySpec spec = family_spec(o);
        IsolatednessVerdict v;
        switch (spec.kind) {
            case FamilyKind::g1: v = isolated_g1(spec.a); break;
            case FamilyKind::g2: v = isolated_g2(spec.a); break;
            case FamilyKind::sigma_twisted: v = isolated_sigma_twisted(spec.sigma, spec.a); break;
            default: throw invalid_family("isolated supports g1, g2 and sigma");
        }
        if (o.json) {
            json j = to_json(v);
            j["family"] = to_json(spec);
            out << j.dump(2) << "\n";
        } else {
            out << (v.isolated ? "isolated" : "non-isolated") << "\n";
            if (!v.isolated) {
                out << "locus: " << v.locus << "\n";
                if (!v.witness.empty()) {
                    out << "witness: (";
                    for (std::size_t k = 0; k < v.witness.size(); ++k) out << (k ? ", " : "") << v.witness[k];
                    out << ")\n";
                }
            }
            for (const auto& note : v.notes) out << "note: " << note << "\n";
        }
        return exit_ok;
    }

    AnalysisReport r;
    r.input = read_input(o);
    r.weights = compute_weights(r.input.polynomial);
    r.diagnostics = diagnostics(r.input.polynomial, r.weights);

    if (o.command == "verify") {
        SampleConfig cfg;
        cfg.count = o.samples;
        cfg.seed = o.seed;
        cfg.tol = o.tol;
        WeightSystem w = r.weights;
        if (o.inject_fault) w.q[0] += 1;
        r.verification = run_verification_suite(r.input.polynomial, w, cfg);
        emit(r, o, out);
        for (const auto& c : *r.verification)
            if (!c.pass) return exit_verification;
        return exit_ok;
    }

    const StratificationReport strata = stratify(r.input.polynomial, r.weights);
    if (o.command == "strata" || o.command == "analyze") r.strata = strata;
    if (o.command == "zeta" || o.command == "analyze") {
        try {
            r.invariants = compute_invariants(strata, r.weights);
        } catch (const not_simplicial& e) {
            if (o.command == "zeta") throw;
            r.invariants_note = e.what();
        } catch (const non_integral_exponent& e) {
            if (o.command == "zeta") throw;
            r.invariants_note = e.what();
        }
    }
    emit(r, o, out);
    return exit_ok;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polar weighted homogeneous mixed polynomials: weights, strata, invariants, checks", "polarmix"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions o;
    app.add_flag("--json", o.json, "Emit JSON");
    app.add_option("--poly", o.poly, "Mixed polynomial, e.g. \"z1^2*zbar2 + z2^3\"");
    app.add_option("--family", o.family, "g1 | g2 | cyclic | chain | brieskorn | sigma");
    app.add_option("--a", o.a, "Comma-separated exponents")->delimiter(',')->check(CLI::PositiveNumber);
    app.add_option("--b", o.b, "Comma-separated conjugate exponents")->delimiter(',')->check(CLI::PositiveNumber);
    app.add_option("--perm", o.perm, "Permutation in cycle notation, e.g. \"(1 2)(3 4)\"");
    app.add_option("--samples", o.samples, "Samples per check")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--tol", o.tol, "Relative tolerance in (0, 1e-2]");
    app.add_flag("--inject-fault", o.inject_fault)->group("");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"analyze", "Weights, strata and invariants"},
        {"verify", "Sampled floating-point checks of the polar action identities"},
        {"isolated", "Isolatedness criterion for g1, g2 and sigma-twisted families"},
        {"strata", "Stratification table"},
        {"zeta", "Euler characteristic, zeta function and divisor"}};
    for (const auto& [name, description] : commands) app.add_subcommand(name, description);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    for (const auto* sub : app.get_subcommands()) o.command = sub->get_name();

    try {
        return detail::run_command(o, out);
    } catch (const not_polar_weighted& e) {
        err << "error: not polar weighted: the " << e.system() << " weight system is inconsistent\n  " << e.detail()
            << "\n";
        return exit_not_polar;
    } catch (const parse_error& e) {
        err << "error: parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace polarmix
