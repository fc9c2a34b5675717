#pragma once

/*
 * Analysis report and its JSON / text forms.
 *
 * Integers are JSON numbers when |x| <= 2^53 and decimal strings otherwise.
 * Rationals are strings ("2/3"). Variable indices are 1-based. The text form is
 * rendered from the JSON form only.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/families.hpp"
#include "polarmix/index_set.hpp"
#include "polarmix/invariants.hpp"
#include "polarmix/mixed_poly.hpp"
#include "polarmix/numerics.hpp"
#include "polarmix/parse.hpp"
#include "polarmix/strata.hpp"
#include "polarmix/weights.hpp"

namespace polarmix {

using json = nlohmann::json;

struct InputEcho {
    std::string source;  // "poly" or "family"
    std::optional<FamilySpec> family;
    MixedPolynomial polynomial;

    friend bool operator==(const InputEcho&, const InputEcho&) = default;
};

struct AnalysisReport {
    InputEcho input;
    WeightSystem weights;
    WeightDiagnostics diagnostics;
    std::optional<StratificationReport> strata;
    std::optional<InvariantReport> invariants;
    std::optional<std::string> invariants_note;  // why invariants are absent
    std::optional<std::vector<CheckReport>> verification;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

namespace detail {

inline const BigInt& json_safe_limit() {
    static const BigInt limit = BigInt(1) << 53;
    return limit;
}

inline json big_to_json(const BigInt& x) {
    if (abs(x) <= json_safe_limit()) return json(x.get_si());
    return json(x.get_str());
}

inline BigInt big_from_json(const json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long>());
    throw parse_error("expected an integer", 0);
}

inline Rational rational_from_string(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

inline json bigs_to_json(const std::vector<BigInt>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(big_to_json(x));
    return a;
}

inline std::vector<BigInt> bigs_from_json(const json& j) {
    std::vector<BigInt> out;
    for (const auto& x : j) out.push_back(big_from_json(x));
    return out;
}

inline json rationals_to_json(const RationalVector& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

inline RationalVector rationals_from_json(const json& j) {
    RationalVector out;
    for (const auto& x : j) out.push_back(rational_from_string(x.get<std::string>()));
    return out;
}

inline json subset_to_json(IndexSet s) {
    json a = json::array();
    for (auto i : s.indices()) a.push_back(i + 1);
    return a;
}

inline IndexSet subset_from_json(const json& j) {
    IndexSet s;
    for (const auto& i : j) s.insert(i.get<std::size_t>() - 1);
    return s;
}

inline json factors_to_json(const std::vector<std::pair<BigInt, BigInt>>& fs, const char* coeff) {
    json a = json::array();
    for (const auto& [m, e] : fs) a.push_back({{"m", big_to_json(m)}, {coeff, big_to_json(e)}});
    return a;
}

inline ZetaFactored zeta_from_json(const json& j) {
    ZetaFactored z;
    for (const auto& f : j) z.multiply(big_from_json(f.at("m")), big_from_json(f.at("e")));
    return z;
}

inline Divisor divisor_from_json(const json& j) {
    Divisor d;
    for (const auto& f : j) d.add(big_from_json(f.at("m")), big_from_json(f.at("c")));
    return d;
}

/// Non-finite doubles become the strings "inf", "-inf", "nan".
inline json double_to_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline double double_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    return j.get<double>();
}

}  // namespace detail

inline json to_json(const FamilySpec& f) {
    json j{{"kind", to_string(f.kind)}, {"a", f.a}, {"b", f.b}};
    if (f.kind == FamilyKind::sigma_twisted) j["perm"] = to_string(f.sigma);
    return j;
}

inline FamilySpec family_from_json(const json& j) {
    FamilySpec f;
    f.kind = family_kind_from_string(j.at("kind").get<std::string>());
    f.a = j.at("a").get<std::vector<int>>();
    f.b = j.at("b").get<std::vector<int>>();
    if (j.contains("perm")) f.sigma = parse_permutation(j.at("perm").get<std::string>(), f.a.size());
    return f;
}

inline json to_json(const WeightSystem& w) {
    return {{"q", detail::bigs_to_json(w.q)},  {"m_r", detail::big_to_json(w.m_r)},
            {"p", detail::bigs_to_json(w.p)},  {"m_p", detail::big_to_json(w.m_p)},
            {"u", detail::rationals_to_json(w.u)}, {"v", detail::rationals_to_json(w.v)}};
}

inline WeightSystem weights_from_json(const json& j) {
    return {detail::bigs_from_json(j.at("q")), detail::big_from_json(j.at("m_r")),
            detail::bigs_from_json(j.at("p")), detail::big_from_json(j.at("m_p")),
            detail::rationals_from_json(j.at("u")), detail::rationals_from_json(j.at("v"))};
}

inline json to_json(const CheckReport& c) {
    return {{"name", c.name},
            {"samples_run", c.samples_run},
            {"max_relative_residual", detail::double_to_json(c.max_relative_residual)},
            {"pass", c.pass},
            {"note", c.note}};
}

inline CheckReport check_from_json(const json& j) {
    return {j.at("name").get<std::string>(), j.at("samples_run").get<std::size_t>(),
            detail::double_from_json(j.at("max_relative_residual")), j.at("pass").get<bool>(), j.at("note").get<std::string>()};
}

inline json to_json(const IsolatednessVerdict& v) {
    return {{"isolated", v.isolated}, {"locus", v.locus}, {"witness", v.witness}, {"notes", v.notes}};
}

inline json to_json(const AnalysisReport& r) {
    json j;
    const std::size_t n = r.input.polynomial.variables();
    j["input"] = {{"source", r.input.source}, {"variables", n}, {"polynomial", render(r.input.polynomial)}};
    if (r.input.family) j["input"]["family"] = to_json(*r.input.family);

    j["weights"] = to_json(r.weights);
    j["diagnostics"] = {{"semipositive", r.diagnostics.semipositive},
                        {"strictly_positive", r.diagnostics.strictly_positive},
                        {"retract_subspace", detail::subset_to_json(r.diagnostics.retract_subspace)},
                        {"retract_consistent", r.diagnostics.retract_consistent}};

    if (r.strata) {
        json table = json::array();
        for (const auto& st : r.strata->strata) {
            table.push_back({{"subset", detail::subset_to_json(st.subset)},
                             {"restriction", render(st.restricted)},
                             {"full", st.full},
                             {"d", detail::big_to_json(st.d)},
                             {"r", detail::big_to_json(st.r)},
                             {"m_p", detail::big_to_json(st.m_p)},
                             {"chi", detail::big_to_json(st.chi)},
                             {"zeta_exponent", to_string(st.zeta_exponent)}});
        }
        j["strata"] = {{"simplicial", r.strata->simplicial}, {"convenience", r.strata->convenience}, {"table", table}};
    }

    if (r.invariants) {
        const auto& inv = *r.invariants;
        json i{{"chi", detail::big_to_json(inv.chi)},
               {"zeta", detail::factors_to_json(inv.zeta.ordered(), "e")},
               {"zeta_text", to_string(inv.zeta)},
               {"divisor", detail::factors_to_json(inv.divisor.ordered(), "c")},
               {"divisor_text", to_string(inv.divisor)},
               {"connectivity", inv.connectivity},
               {"middle_degree", n == 0 ? 0 : n - 1},
               {"middle_betti", inv.middle_betti ? detail::big_to_json(*inv.middle_betti) : json(nullptr)},
               {"monodromy_order", detail::big_to_json(inv.monodromy_order)}};
        if (inv.top_charpoly) {
            i["top_charpoly"] = detail::factors_to_json(inv.top_charpoly->ordered(), "e");
            i["top_charpoly_text"] = to_string(*inv.top_charpoly);
        } else {
            i["top_charpoly"] = nullptr;
            i["top_charpoly_text"] = nullptr;
        }
        j["invariants"] = i;
    }
    if (r.invariants_note) j["invariants_note"] = *r.invariants_note;

    if (r.verification) {
        json v = json::array();
        for (const auto& c : *r.verification) v.push_back(to_json(c));
        j["verification"] = v;
    }
    return j;
}

inline AnalysisReport report_from_json(const json& j) {
    AnalysisReport r;
    const auto& in = j.at("input");
    const std::size_t n = in.at("variables").get<std::size_t>();
    r.input.source = in.at("source").get<std::string>();
    r.input.polynomial = parse(in.at("polynomial").get<std::string>(), n);
    if (in.contains("family")) r.input.family = family_from_json(in.at("family"));

    r.weights = weights_from_json(j.at("weights"));
    const auto& d = j.at("diagnostics");
    r.diagnostics.semipositive = d.at("semipositive").get<bool>();
    r.diagnostics.strictly_positive = d.at("strictly_positive").get<bool>();
    r.diagnostics.retract_subspace = detail::subset_from_json(d.at("retract_subspace"));
    r.diagnostics.retract_consistent = d.at("retract_consistent").get<bool>();

    if (j.contains("strata")) {
        const auto& s = j.at("strata");
        StratificationReport sr;
        sr.variables = n;
        sr.simplicial = s.at("simplicial").get<bool>();
        sr.convenience = s.at("convenience").get<int>();
        for (const auto& row : s.at("table")) {
            StratumReport st;
            st.subset = detail::subset_from_json(row.at("subset"));
            st.restricted = parse(row.at("restriction").get<std::string>(), n);
            st.nonvanishing = true;
            st.full = row.at("full").get<bool>();
            st.d = detail::big_from_json(row.at("d"));
            st.r = detail::big_from_json(row.at("r"));
            st.m_p = detail::big_from_json(row.at("m_p"));
            st.chi = detail::big_from_json(row.at("chi"));
            st.zeta_exponent = detail::rational_from_string(row.at("zeta_exponent").get<std::string>());
            if (st.full) sr.full_subsets.push_back(st.subset);
            sr.strata.push_back(std::move(st));
        }
        r.strata = std::move(sr);
    }

    if (j.contains("invariants")) {
        const auto& i = j.at("invariants");
        InvariantReport inv;
        inv.chi = detail::big_from_json(i.at("chi"));
        inv.zeta = detail::zeta_from_json(i.at("zeta"));
        inv.divisor = detail::divisor_from_json(i.at("divisor"));
        inv.connectivity = i.at("connectivity").get<int>();
        if (!i.at("middle_betti").is_null()) inv.middle_betti = detail::big_from_json(i.at("middle_betti"));
        inv.monodromy_order = detail::big_from_json(i.at("monodromy_order"));
        if (!i.at("top_charpoly").is_null()) inv.top_charpoly = detail::zeta_from_json(i.at("top_charpoly"));
        r.invariants = std::move(inv);
    }
    if (j.contains("invariants_note")) r.invariants_note = j.at("invariants_note").get<std::string>();

    if (j.contains("verification")) {
        std::vector<CheckReport> v;
        for (const auto& c : j.at("verification")) v.push_back(check_from_json(c));
        r.verification = std::move(v);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

inline std::string scalar_text(const json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_null()) return "n/a";
    return x.dump();
}

inline std::string list_text(const json& a) {
    std::string s = "(";
    for (std::size_t k = 0; k < a.size(); ++k) s += (k ? ", " : "") + scalar_text(a[k]);
    return s + ")";
}

inline std::string subset_text(const json& a) {
    std::string s = "{";
    for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + scalar_text(a[k]);
    return s + "}";
}

inline std::string residual_text(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

}  // namespace detail

/// Human-readable report, computed from the JSON form.
inline std::string render_text(const json& j) {
    using detail::list_text;
    using detail::scalar_text;
    std::ostringstream os;
    const auto& in = j.at("input");
    os << "polynomial: " << in.at("polynomial").get<std::string>() << "\n";
    os << "variables:  " << in.at("variables").get<std::size_t>() << "\n";
    if (in.contains("family")) {
        const auto& f = in.at("family");
        os << "family:     " << f.at("kind").get<std::string>() << " a=" << list_text(f.at("a"));
        if (!f.at("b").empty()) os << " b=" << list_text(f.at("b"));
        if (f.contains("perm")) os << " sigma=" << f.at("perm").get<std::string>();
        os << "\n";
    }

    const auto& w = j.at("weights");
    os << "\nradial weights q = " << list_text(w.at("q")) << ", m_r = " << scalar_text(w.at("m_r")) << "\n";
    os << "polar weights  p = " << list_text(w.at("p")) << ", m_p = " << scalar_text(w.at("m_p")) << "\n";
    os << "normalized     u = " << list_text(w.at("u")) << "\n";
    os << "normalized     v = " << list_text(w.at("v")) << "\n";
    const auto& d = j.at("diagnostics");
    os << "radial weights " << (d.at("strictly_positive").get<bool>() ? "strictly positive"
                                : d.at("semipositive").get<bool>()    ? "semipositive"
                                                                      : "not semipositive");
    if (!d.at("retract_subspace").empty())
        os << "; zero-weight subspace " << detail::subset_text(d.at("retract_subspace"));
    os << "\n";

    if (j.contains("strata")) {
        const auto& s = j.at("strata");
        os << "\nsimplicial: " << (s.at("simplicial").get<bool>() ? "yes" : "no")
           << ", convenience k = " << scalar_text(s.at("convenience")) << "\n";
        os << "strata (I, full, d_I, m_p_I, chi, zeta exponent):\n";
        for (const auto& row : s.at("table")) {
            os << "  " << detail::subset_text(row.at("subset")) << "  ";
            if (row.at("full").get<bool>())
                os << "full  d=" << scalar_text(row.at("d")) << "  m=" << scalar_text(row.at("m_p"))
                   << "  chi=" << scalar_text(row.at("chi")) << "  e=" << scalar_text(row.at("zeta_exponent"));
            else
                os << "not full  chi=0";
            os << "\n";
        }
    }

    if (j.contains("invariants")) {
        const auto& i = j.at("invariants");
        os << "\nEuler characteristic: " << scalar_text(i.at("chi")) << "\n";
        os << "zeta function:        " << i.at("zeta_text").get<std::string>() << "\n";
        os << "divisor:              " << i.at("divisor_text").get<std::string>() << "\n";
        os << "monodromy order:      " << scalar_text(i.at("monodromy_order")) << "\n";
        os << "connectivity:         " << scalar_text(i.at("connectivity")) << "\n";
        os << "b_" << scalar_text(i.at("middle_degree")) << ":                  " << scalar_text(i.at("middle_betti"))
           << "\n";
        if (!i.at("top_charpoly_text").is_null())
            os << "P_" << scalar_text(i.at("middle_degree")) << "(t):               "
               << i.at("top_charpoly_text").get<std::string>() << "\n";
    }
    if (j.contains("invariants_note")) os << "\ninvariants: " << j.at("invariants_note").get<std::string>() << "\n";

    if (j.contains("verification")) {
        os << "\nverification:\n";
        for (const auto& c : j.at("verification")) {
            os << "  " << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "  " << c.at("name").get<std::string>();
            if (!c.at("note").get<std::string>().empty())
                os << "  (" << c.at("note").get<std::string>() << ")";
            else
                os << "  samples=" << c.at("samples_run").get<std::size_t>()
                   << "  max residual=" << detail::residual_text(detail::double_from_json(c.at("max_relative_residual")));
            os << "\n";
        }
    }
    return os.str();
}

inline std::string render_text(const AnalysisReport& r) { return render_text(to_json(r)); }

}  // namespace polarmix
