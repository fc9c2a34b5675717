#pragma once

/*
 * Named polynomial families and their closed-form results.
 *
 *   g1           z1^a1 zbar2 + ... + z(n-1)^a(n-1) zbarn + zn^an zbar1
 *   g2           z1^a1 zbar2 + ... + z(n-1)^a(n-1) zbarn + zn^an
 *   cyclic       z1^a1 zbar2^b1 + ... + zn^an zbar1^bn
 *   chain        z1^a1 zbar2^b1 + ... + z(n-1)^a(n-1) zbarn^b(n-1) + zn^an
 *   brieskorn    z1^a1 + ... + zn^an
 *   sigma        z1^a1 zbar_sigma(1) + ... + zn^an zbar_sigma(n)
 *
 * Indices in the formulas above are 1-based; vectors here are 0-based.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/mixed_poly.hpp"

namespace polarmix {

enum class FamilyKind { g1, g2, cyclic, chain, brieskorn, sigma_twisted };

inline std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::g1: return "g1";
        case FamilyKind::g2: return "g2";
        case FamilyKind::cyclic: return "cyclic";
        case FamilyKind::chain: return "chain";
        case FamilyKind::brieskorn: return "brieskorn";
        case FamilyKind::sigma_twisted: return "sigma";
    }
    return "?";
}

inline FamilyKind family_kind_from_string(std::string_view s) {
    if (s == "g1") return FamilyKind::g1;
    if (s == "g2") return FamilyKind::g2;
    if (s == "cyclic") return FamilyKind::cyclic;
    if (s == "chain") return FamilyKind::chain;
    if (s == "brieskorn") return FamilyKind::brieskorn;
    if (s == "sigma" || s == "sigma_twisted") return FamilyKind::sigma_twisted;
    throw invalid_family("unknown family '" + std::string(s) + "'");
}

/// Permutation of {0..n-1}; `image[i]` is sigma(i).
struct Permutation {
    std::vector<std::size_t> image;

    static Permutation identity(std::size_t n) {
        Permutation p;
        for (std::size_t i = 0; i < n; ++i) p.image.push_back(i);
        return p;
    }

    /// The n-cycle i -> i+1 (mod n).
    static Permutation rotation(std::size_t n) {
        Permutation p;
        for (std::size_t i = 0; i < n; ++i) p.image.push_back((i + 1) % n);
        return p;
    }

    std::size_t size() const noexcept { return image.size(); }

    bool valid() const {
        std::vector<bool> seen(image.size(), false);
        for (auto x : image) {
            if (x >= image.size() || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    }

    /// Disjoint cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    std::vector<std::vector<std::size_t>> cycles() const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> seen(image.size(), false);
        for (std::size_t i = 0; i < image.size(); ++i) {
            if (seen[i]) continue;
            std::vector<std::size_t> c;
            for (std::size_t j = i; !seen[j]; j = image[j]) {
                seen[j] = true;
                c.push_back(j);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Parses cycle notation "(1 2)(3 4)" (1-based, commas also accepted) on n points.
inline Permutation parse_permutation(std::string_view text, std::size_t n) {
    Permutation p = Permutation::identity(n);
    std::vector<bool> used(n, false);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw invalid_family("permutation: expected '(' at position " + std::to_string(i));
        ++i;
        std::vector<std::size_t> cycle;
        while (true) {
            skip();
            if (i >= text.size()) throw invalid_family("permutation: unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw invalid_family("permutation: unexpected character at position " + std::to_string(i));
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::size_t>(text[i] - '0');
                if (v > 1000000) throw invalid_family("permutation: index too large");
                ++i;
            }
            if (v == 0 || v > n) throw invalid_family("permutation: index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
            if (used[v - 1]) throw invalid_family("permutation: index " + std::to_string(v) + " repeated");
            used[v - 1] = true;
            cycle.push_back(v - 1);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) p.image[cycle[k]] = cycle[(k + 1) % cycle.size()];
        skip();
    }
    return p;
}

/// "(1 2)(3 4)"; fixed points are omitted, identity prints "()".
inline std::string to_string(const Permutation& p) {
    std::string out;
    for (const auto& c : p.cycles()) {
        if (c.size() < 2) continue;
        out += "(";
        for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + std::to_string(c[k] + 1);
        out += ")";
    }
    return out.empty() ? "()" : out;
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::brieskorn;
    std::vector<int> a;
    std::vector<int> b;  // cyclic: n entries; chain: n-1 entries (defaults to ones)
    Permutation sigma;   // sigma_twisted only

    std::size_t variables() const noexcept { return a.size(); }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline void validate(const FamilySpec& spec) {
    const auto& a = spec.a;
    const std::size_t n = a.size();
    if (n == 0) throw invalid_family("exponent vector a is empty");
    if (n > 64) throw invalid_family("more than 64 variables");
    auto all_at_least = [](const std::vector<int>& v, int lo) {
        return std::all_of(v.begin(), v.end(), [lo](int x) { return x >= lo; });
    };
    switch (spec.kind) {
        case FamilyKind::g1:
            if (!all_at_least(a, 1)) throw invalid_family("g1 needs all a_i >= 1");
            if (std::none_of(a.begin(), a.end(), [](int x) { return x >= 2; }))
                throw invalid_family("g1 needs some a_j >= 2");
            break;
        case FamilyKind::g2:
            if (!all_at_least(a, 1)) throw invalid_family("g2 needs all a_i >= 1");
            break;
        case FamilyKind::cyclic:
            if (spec.b.size() != n) throw invalid_family("cyclic needs |b| = |a|");
            if (!all_at_least(a, 1) || !all_at_least(spec.b, 1)) throw invalid_family("cyclic needs a_i, b_i >= 1");
            break;
        case FamilyKind::chain:
            if (!spec.b.empty() && spec.b.size() + 1 != n) throw invalid_family("chain needs |b| = |a| - 1");
            if (!all_at_least(a, 1) || !all_at_least(spec.b, 1)) throw invalid_family("chain needs a_i, b_i >= 1");
            break;
        case FamilyKind::brieskorn:
            if (!all_at_least(a, 2)) throw invalid_family("brieskorn needs all a_i >= 2");
            break;
        case FamilyKind::sigma_twisted:
            if (spec.sigma.size() != n || !spec.sigma.valid()) throw invalid_family("sigma is not a permutation of 1..n");
            if (!all_at_least(a, 1)) throw invalid_family("sigma-twisted needs all a_i >= 1");
            break;
    }
}

namespace detail {

/// c * z_i^ai * zbar_k^bk (0-based i, k).
inline MixedMonomial binomial_term(std::size_t n, std::size_t i, int ai, std::optional<std::size_t> k, int bk) {
    MixedMonomial m{GaussianRational(1), Exponent(n, 0), Exponent(n, 0)};
    m.nu[i] += ai;
    if (k) m.mu[*k] += bk;
    return m;
}

}  // namespace detail

inline MixedPolynomial build(const FamilySpec& spec) {
    validate(spec);
    const auto& a = spec.a;
    const std::size_t n = a.size();
    std::vector<MixedMonomial> terms;
    for (std::size_t i = 0; i < n; ++i) {
        switch (spec.kind) {
            case FamilyKind::g1:
                terms.push_back(detail::binomial_term(n, i, a[i], (i + 1) % n, 1));
                break;
            case FamilyKind::g2:
                terms.push_back(detail::binomial_term(n, i, a[i], i + 1 < n ? std::optional(i + 1) : std::nullopt, 1));
                break;
            case FamilyKind::cyclic:
                terms.push_back(detail::binomial_term(n, i, a[i], (i + 1) % n, spec.b[i]));
                break;
            case FamilyKind::chain: {
                const int bi = (i + 1 < n && !spec.b.empty()) ? spec.b[i] : 1;
                terms.push_back(detail::binomial_term(n, i, a[i], i + 1 < n ? std::optional(i + 1) : std::nullopt, bi));
                break;
            }
            case FamilyKind::brieskorn:
                terms.push_back(detail::binomial_term(n, i, a[i], std::nullopt, 0));
                break;
            case FamilyKind::sigma_twisted:
                terms.push_back(detail::binomial_term(n, i, a[i], spec.sigma.image[i], 1));
                break;
        }
    }
    return {n, std::move(terms)};
}

/// f(z_1..z_s) + g(z_{s+1}..z_{s+t}).
inline MixedPolynomial join(const MixedPolynomial& f, const MixedPolynomial& g) {
    const std::size_t s = f.variables(), t = g.variables();
    std::vector<MixedMonomial> terms;
    for (const auto& m : f.monomials()) {
        MixedMonomial x{m.coeff, m.nu, m.mu};
        x.nu.resize(s + t, 0);
        x.mu.resize(s + t, 0);
        terms.push_back(std::move(x));
    }
    for (const auto& m : g.monomials()) {
        MixedMonomial x{m.coeff, Exponent(s, 0), Exponent(s, 0)};
        x.nu.insert(x.nu.end(), m.nu.begin(), m.nu.end());
        x.mu.insert(x.mu.end(), m.mu.begin(), m.mu.end());
        terms.push_back(std::move(x));
    }
    return {s + t, std::move(terms)};
}

// ---------------------------------------------------------------------------
// Closed-form weights

/// Normalized radial weights of g1. Cyclic index convention a_{i+n} = a_i.
inline RationalVector g1_weights_closed_form(const std::vector<int>& a) {
    validate({FamilyKind::g1, a, {}, {}});
    const std::size_t n = a.size(), m = n / 2;
    BigInt prod = 1;
    for (int x : a) prod *= x;
    const BigInt denom = n % 2 == 0 ? BigInt(prod - 1) : BigInt(prod + 1);
    if (denom == 0) throw domain_error("a_1 ... a_n = 1");

    auto at = [&](std::size_t k) { return a[(k - 1) % n]; };  // 1-based cyclic
    RationalVector u;
    for (std::size_t j = 1; j <= n; ++j) {
        BigInt num = n % 2 == 0 ? 0 : 1;
        for (std::size_t i = 0; i < m; ++i) {
            BigInt t = at(j + 2 * i + 1) - 1;
            for (std::size_t k = j + 2 * i + 2; k <= j + n - 1; ++k) t *= at(k);
            num += t;
        }
        u.push_back(make_rational(num, denom));
    }
    return u;
}

/// Normalized radial weights of g2: u_j = 1/a_j - 1/(a_j a_{j+1}) + ... +- 1/(a_j ... a_n).
inline RationalVector g2_weights_closed_form(const std::vector<int>& a) {
    validate({FamilyKind::g2, a, {}, {}});
    const std::size_t n = a.size();
    RationalVector u;
    for (std::size_t j = 0; j < n; ++j) {
        Rational sum = 0;
        BigInt prod = 1;
        for (std::size_t k = j; k < n; ++k) {
            prod *= a[k];
            const Rational term = make_rational(1, prod);
            sum += ((k - j) % 2 == 0) ? term : Rational(-term);
        }
        u.push_back(sum);
    }
    return u;
}

/// Normalized polar weights of g2: v_j = 1/a_j + 1/(a_j a_{j+1}) + ... + 1/(a_j ... a_n).
inline RationalVector g2_polar_weights_closed_form(const std::vector<int>& a) {
    validate({FamilyKind::g2, a, {}, {}});
    const std::size_t n = a.size();
    RationalVector v;
    for (std::size_t j = 0; j < n; ++j) {
        Rational sum = 0;
        BigInt prod = 1;
        for (std::size_t k = j; k < n; ++k) {
            prod *= a[k];
            sum += make_rational(1, prod);
        }
        v.push_back(sum);
    }
    return v;
}

/// Cyclic family is simplicial iff a_1...a_n != b_1...b_n.
inline bool cyclic_simplicial(const std::vector<int>& a, const std::vector<int>& b) {
    validate({FamilyKind::cyclic, a, b, {}});
    BigInt pa = 1, pb = 1;
    for (int x : a) pa *= x;
    for (int x : b) pb *= x;
    return pa != pb;
}

// ---------------------------------------------------------------------------
// Isolatedness

struct IsolatednessVerdict {
    bool isolated = false;
    /// Human-readable description of the non-isolated locus (empty when isolated).
    std::string locus;
    /// A singular point of V \ {0} on that locus, entries 0 or 1 (empty when isolated).
    std::vector<int> witness;
    /// Conventions applied that the criterion itself does not cover.
    std::vector<std::string> notes;

    friend bool operator==(const IsolatednessVerdict&, const IsolatednessVerdict&) = default;
};

namespace detail {

inline std::string coordinate_description(const std::vector<int>& witness) {
    std::string zeros, ones;
    for (std::size_t j = 0; j < witness.size(); ++j) {
        auto& target = witness[j] ? ones : zeros;
        target += (target.empty() ? "" : ",") + std::to_string(j + 1);
    }
    std::string s = "singular points along a real curve in the coordinate subspace z_j = 0 for j in {" + zeros +
                    "}; e.g. z_j = 1 for j in {" + ones + "}";
    return s;
}

}  // namespace detail

/// g1 has an isolated singularity iff n is odd, or n is even and there are i < j
/// with a_i, a_j >= 2 and j - i odd.
inline IsolatednessVerdict isolated_g1(const std::vector<int>& a) {
    validate({FamilyKind::g1, a, {}, {}});
    const std::size_t n = a.size();
    IsolatednessVerdict v;
    if (n % 2 == 1) {
        v.isolated = true;
        return v;
    }
    bool big_even = false, big_odd = false;  // parity of 0-based index
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] < 2) continue;
        (j % 2 == 0 ? big_even : big_odd) = true;
    }
    v.isolated = big_even && big_odd;
    if (!v.isolated) {
        // All exponents >= 2 share one parity class; the other class is zero on the locus.
        const std::size_t keep = big_even ? 0 : 1;
        v.witness.assign(n, 0);
        for (std::size_t j = keep; j < n; j += 2) v.witness[j] = 1;
        v.locus = detail::coordinate_description(v.witness);
    }
    return v;
}

/// g2 has an isolated singularity iff a_n >= 2, or a_n = 1, n odd and every
/// odd-indexed (1-based) a equals 1.
inline IsolatednessVerdict isolated_g2(const std::vector<int>& a) {
    validate({FamilyKind::g2, a, {}, {}});
    const std::size_t n = a.size();
    IsolatednessVerdict v;
    if (a[n - 1] >= 2) {
        v.isolated = true;
        return v;
    }
    if (n % 2 == 1) {
        bool odd_all_one = true;
        for (std::size_t j = 0; j < n; j += 2) odd_all_one = odd_all_one && a[j] == 1;
        v.isolated = odd_all_one;
    }
    if (v.isolated) return v;

    v.witness.assign(n, 0);
    if (n % 2 == 0) {
        // s = largest j with a_{2j} >= 2 (1-based); z_{2j-1} = 1 for j > s.
        std::size_t s = 0;
        for (std::size_t j = 1; 2 * j <= n; ++j)
            if (a[2 * j - 1] >= 2) s = j;
        for (std::size_t j = s + 1; 2 * j - 1 <= n; ++j) v.witness[2 * j - 2] = 1;
    } else {
        // s = largest j with a_{2j+1} >= 2 (1-based); z_{2j} = 1 for j > s.
        std::size_t s = 0;
        for (std::size_t j = 0; 2 * j + 1 <= n; ++j)
            if (a[2 * j] >= 2) s = j;
        for (std::size_t j = s + 1; 2 * j <= n; ++j) v.witness[2 * j - 1] = 1;
    }
    v.locus = detail::coordinate_description(v.witness);
    return v;
}

/// Join decomposition along the cycles of sigma: isolated iff every factor is.
/// A nontrivial cycle is tested as g1 on its exponents read from its smallest element;
/// a fixed point j (monomial z_j^a_j zbar_j) counts as isolated iff a_j >= 2.
inline IsolatednessVerdict isolated_sigma_twisted(const Permutation& sigma, const std::vector<int>& a) {
    validate({FamilyKind::sigma_twisted, a, {}, sigma});
    IsolatednessVerdict v;
    v.isolated = true;
    bool fixed_point_rule = false;
    for (const auto& cycle : sigma.cycles()) {
        if (cycle.size() == 1) {
            fixed_point_rule = true;
            if (a[cycle[0]] < 2) v.isolated = false;
            continue;
        }
        std::vector<int> sub;
        for (auto j : cycle) sub.push_back(a[j]);
        if (std::none_of(sub.begin(), sub.end(), [](int x) { return x >= 2; }))
            throw invalid_family("a cycle of sigma has all exponents 1: that factor has no polar action");
        if (!isolated_g1(sub).isolated) v.isolated = false;
    }
    if (fixed_point_rule)
        v.notes.push_back("fixed points of sigma (z_j^a_j zbar_j) are counted as isolated factors iff a_j >= 2");
    if (!v.isolated) v.locus = "a join factor has a non-isolated singularity";
    return v;
}

}  // namespace polarmix
