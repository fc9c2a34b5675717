#pragma once

/*
 * Radial and polar weight systems.
 *
 * f is polar weighted homogeneous of radial type (q; m_r) and polar type
 * (p; m_p) when every monomial satisfies
 *     sum_j q_j (nu_j + mu_j) = m_r,     sum_j p_j (nu_j - mu_j) = m_p.
 * Equivalently the normalized weights u = q/m_r, v = p/m_p solve
 * (N + M) u = 1 and (N - M) v = 1. Integer weights are recovered by clearing
 * denominators with their lcm.
 *
 * When a system is underdetermined, extra equations x_j = 1 are added for the
 * smallest indices j that raise the rank, so the result is reproducible.
 */

#include <cstddef>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/index_set.hpp"
#include "polarmix/mixed_poly.hpp"

namespace polarmix {

struct WeightSystem {
    std::vector<BigInt> q;  // radial weights
    BigInt m_r;             // radial degree
    std::vector<BigInt> p;  // polar weights
    BigInt m_p;             // polar degree
    RationalVector u;       // q / m_r
    RationalVector v;       // p / m_p

    std::size_t variables() const noexcept { return q.size(); }

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

struct WeightDiagnostics {
    bool semipositive = false;       // all q_j >= 0
    bool strictly_positive = false;  // all q_j > 0
    IndexSet retract_subspace;       // I0 = {j : q_j = 0}
    /// Every monomial involves a variable outside I0 (holds whenever q >= 0).
    bool retract_consistent = false;

    friend bool operator==(const WeightDiagnostics&, const WeightDiagnostics&) = default;
};

namespace detail {

inline std::string render_rows(const IntMatrix& a) {
    std::ostringstream os;
    os << a << " x = 1";
    return os.str();
}

/// Normalized solution of A x = 1 with deterministic completion.
inline RationalVector normalized_weights(const IntMatrix& a, const char* which) {
    const auto sol = solve_affine_system(a);
    if (!sol.consistent) throw not_polar_weighted(which, render_rows(a));
    if (sol.unique()) return sol.particular;

    const std::size_t n = a.cols();
    IntMatrix aug = a;
    std::size_t r = sol.rank;
    for (std::size_t j = 0; j < n && r < n; ++j) {
        std::vector<BigInt> e(n, BigInt(0));
        e[j] = 1;
        IntMatrix trial = aug;
        trial.append_row(e);
        const std::size_t tr = rank(trial);
        if (tr > r) {
            aug = std::move(trial);
            r = tr;
        }
    }
    const auto completed = solve_affine_system(aug);
    if (!completed.unique()) throw error("weight completion failed to reach full rank");
    return completed.particular;
}

/// Clears denominators: returns (integer weights, degree = lcm of denominators).
inline std::pair<std::vector<BigInt>, BigInt> integer_weights(const RationalVector& x) {
    std::vector<BigInt> dens;
    for (const auto& xi : x) dens.push_back(xi.get_den());
    const BigInt m = lcm_many(dens);
    std::vector<BigInt> w;
    for (const auto& xi : x) {
        Rational s = xi * m;
        w.push_back(s.get_num());
    }
    return {std::move(w), m};
}

}  // namespace detail

/// Computes the weight system of a nonzero f; throws not_polar_weighted when either system is inconsistent.
inline WeightSystem compute_weights(const MixedPolynomial& f) {
    if (f.is_zero()) throw domain_error("zero polynomial has no weight system");
    const auto em = exponent_matrices(f);

    WeightSystem w;
    w.u = detail::normalized_weights(em.sum(), "radial");
    w.v = detail::normalized_weights(em.difference(), "polar");
    std::tie(w.q, w.m_r) = detail::integer_weights(w.u);
    std::tie(w.p, w.m_p) = detail::integer_weights(w.v);

    if (gcd_many(w.q) != 1 || gcd_many(w.p) != 1)
        throw error("integer weights are not primitive after clearing denominators");
    if (w.m_p == 0) throw not_polar_weighted("polar", "polar degree 0");
    return w;
}

/// True when every monomial satisfies both weight equations exactly.
inline bool satisfies(const MixedPolynomial& f, const WeightSystem& w) {
    if (w.q.size() != f.variables() || w.p.size() != f.variables()) return false;
    for (const auto& m : f.monomials()) {
        BigInt radial = 0, polar = 0;
        for (std::size_t j = 0; j < f.variables(); ++j) {
            radial += w.q[j] * (m.nu[j] + m.mu[j]);
            polar += w.p[j] * (m.nu[j] - m.mu[j]);
        }
        if (radial != w.m_r || polar != w.m_p) return false;
    }
    return true;
}

/// Simplicial on the given active columns: both {nu_k + mu_k} and {nu_k - mu_k} independent.
inline bool is_simplicial(const MixedPolynomial& f, IndexSet active) {
    const auto em = exponent_matrices(f);
    const auto cols = active.indices();
    const std::size_t s = f.size();
    return rank(em.sum().select_columns(cols)) == s && rank(em.difference().select_columns(cols)) == s;
}

inline bool is_simplicial(const MixedPolynomial& f) {
    return is_simplicial(f, IndexSet::full(f.variables()));
}

/// Simplicial with as many monomials as active variables.
inline bool is_full(const MixedPolynomial& f, IndexSet active) {
    if (f.is_zero() || f.size() != active.size()) return false;
    for (const auto& m : f.monomials())
        if (!m.support().subset_of(active)) return false;
    return is_simplicial(f, active);
}

inline bool is_full(const MixedPolynomial& f) { return is_full(f, IndexSet::full(f.variables())); }

inline WeightDiagnostics diagnostics(const MixedPolynomial& f, const WeightSystem& w) {
    WeightDiagnostics d;
    d.semipositive = true;
    d.strictly_positive = true;
    for (std::size_t j = 0; j < w.q.size(); ++j) {
        if (w.q[j] < 0) d.semipositive = false;
        if (w.q[j] <= 0) d.strictly_positive = false;
        if (w.q[j] == 0) d.retract_subspace.insert(j);
    }
    d.retract_consistent = true;
    for (const auto& m : f.monomials())
        if (m.support().subset_of(d.retract_subspace)) d.retract_consistent = false;
    return d;
}

}  // namespace polarmix
