#pragma once

/*
 * Canonical stratification of the fiber F = f^{-1}(1) by the coordinate tori
 * C^{*I} = {z_i != 0 iff i in I}.
 *
 * For each nonempty I with f^I not identically zero:
 *   full     f^I is simplicial with |I| monomials
 *   d_I      |det| of the |I| x |I| matrix of (nu - mu) restricted to I
 *   r_I      gcd of the global polar weights p_i, i in I
 *   m_p_I    m_p / r_I, the period of the monodromy on the stratum
 *   chi      (-1)^{|I|-1} d_I when full, 0 otherwise
 *   zeta     exponent (-1)^{|I|} d_I / m_p_I of (1 - t^{m_p_I}) when full
 *
 * k-convenience is read as: f^I is not identically zero whenever |I| >= n - k.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/index_set.hpp"
#include "polarmix/mixed_poly.hpp"
#include "polarmix/weights.hpp"

namespace polarmix {

struct StratumReport {
    IndexSet subset;
    MixedPolynomial restricted;
    bool nonvanishing = false;
    bool full = false;
    BigInt d = 0;      // meaningful when full
    BigInt r = 1;
    BigInt m_p = 1;    // m_p / r
    BigInt chi = 0;
    Rational zeta_exponent = 0;

    friend bool operator==(const StratumReport&, const StratumReport&) = default;
};

struct StratificationReport {
    std::size_t variables = 0;
    bool simplicial = false;
    std::vector<StratumReport> strata;  // sorted by (|I|, lexicographic)
    std::vector<IndexSet> full_subsets;  // S
    int convenience = 0;                 // k

    friend bool operator==(const StratificationReport&, const StratificationReport&) = default;
};

/// Largest subset size we are willing to enumerate 2^n subsets for.
inline constexpr std::size_t max_stratify_variables = 20;

namespace detail {

inline std::vector<std::uint64_t> support_masks(const MixedPolynomial& f) {
    std::vector<std::uint64_t> masks;
    for (const auto& m : f.monomials()) masks.push_back(m.support().bits());
    return masks;
}

inline bool restriction_nonzero(const std::vector<std::uint64_t>& masks, std::uint64_t subset) {
    return std::any_of(masks.begin(), masks.end(), [subset](std::uint64_t m) { return (m & ~subset) == 0; });
}

}  // namespace detail

/// Largest k in [0, n] with f^I nonzero for every I, |I| >= n - k.
inline int convenience_level(const MixedPolynomial& f) {
    if (f.is_zero()) throw domain_error("convenience of the zero polynomial");
    const std::size_t n = f.variables();
    if (n > max_stratify_variables) throw dimension_error("too many variables to enumerate subsets");
    const auto masks = detail::support_masks(f);
    // Vanishing restrictions are closed under taking subsets; find the largest.
    int largest_vanishing = -1;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if (!detail::restriction_nonzero(masks, s))
            largest_vanishing = std::max(largest_vanishing, static_cast<int>(IndexSet(s).size()));
    }
    return static_cast<int>(n) - largest_vanishing - 1;
}

inline StratificationReport stratify(const MixedPolynomial& f, const WeightSystem& w) {
    const std::size_t n = f.variables();
    if (n > max_stratify_variables) throw dimension_error("too many variables to enumerate subsets");
    if (!satisfies(f, w)) throw error("weight system is inconsistent with the polynomial");

    StratificationReport rep;
    rep.variables = n;
    rep.simplicial = is_simplicial(f);
    rep.convenience = convenience_level(f);

    const auto masks = detail::support_masks(f);
    const auto em = exponent_matrices(f);
    const IntMatrix diff = em.difference();

    std::vector<IndexSet> subsets;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s)
        if (detail::restriction_nonzero(masks, s)) subsets.emplace_back(s);
    std::sort(subsets.begin(), subsets.end());

    for (const IndexSet subset : subsets) {
        StratumReport st;
        st.subset = subset;
        st.restricted = restrict(f, subset);
        st.nonvanishing = true;
        st.full = is_full(st.restricted, subset);

        const auto cols = subset.indices();
        std::vector<BigInt> ps;
        for (auto i : cols) ps.push_back(w.p[i]);
        st.r = gcd_many(ps);
        if (st.r == 0 || w.m_p % st.r != 0) throw error("polar weights on a stratum do not divide the polar degree");
        st.m_p = w.m_p / st.r;

        if (st.full) {
            IntMatrix block(0, 0);
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (!f.monomials()[k].support().subset_of(subset)) continue;
                std::vector<BigInt> row;
                for (auto c : cols) row.push_back(diff(k, c));
                block.append_row(row);
            }
            st.d = abs(det(block));
            const bool odd = subset.size() % 2 == 1;
            st.chi = odd ? st.d : BigInt(-st.d);
            st.zeta_exponent = make_rational(odd ? BigInt(-st.d) : st.d, st.m_p);
            rep.full_subsets.push_back(subset);
        }
        rep.strata.push_back(std::move(st));
    }
    return rep;
}

}  // namespace polarmix
