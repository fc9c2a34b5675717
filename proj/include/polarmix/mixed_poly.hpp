#pragma once

/*
 * Mixed polynomials f(z, zbar) = sum c * z^nu * zbar^mu with Gaussian rational
 * coefficients, their Wirtinger derivatives, coordinate restrictions and the
 * associated Laurent polynomial sum c * w^(nu - mu).
 *
 * Variable indices are 0-based in this API; text forms use z1..zN.
 */

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/index_set.hpp"

namespace polarmix {

using Exponent = std::vector<int>;
using Point = std::vector<std::complex<double>>;

struct MixedMonomial {
    GaussianRational coeff;
    Exponent nu;  // powers of z
    Exponent mu;  // powers of zbar

    /// Indices with nu_j + mu_j > 0.
    IndexSet support() const {
        IndexSet s;
        for (std::size_t j = 0; j < nu.size(); ++j)
            if (nu[j] + mu[j] > 0) s.insert(j);
        return s;
    }

    friend bool operator==(const MixedMonomial&, const MixedMonomial&) = default;
};

/// Canonical mixed polynomial: like terms combined, no zero coefficients,
/// monomials sorted by (nu, mu) in decreasing lexicographic order.
class MixedPolynomial {
public:
    MixedPolynomial() = default;
    explicit MixedPolynomial(std::size_t n) : n_(n) {}

    MixedPolynomial(std::size_t n, std::vector<MixedMonomial> terms) : n_(n) {
        std::map<std::pair<Exponent, Exponent>, GaussianRational, std::greater<>> acc;
        for (auto& t : terms) {
            if (t.nu.size() != n || t.mu.size() != n)
                throw dimension_error("monomial exponent length differs from variable count");
            for (std::size_t j = 0; j < n; ++j)
                if (t.nu[j] < 0 || t.mu[j] < 0) throw dimension_error("negative exponent in mixed monomial");
            acc[{std::move(t.nu), std::move(t.mu)}] += t.coeff;
        }
        for (auto& [key, c] : acc)
            if (!c.is_zero()) terms_.push_back({c, key.first, key.second});
    }

    std::size_t variables() const noexcept { return n_; }
    /// Number of monomials (s).
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::vector<MixedMonomial>& monomials() const noexcept { return terms_; }

    friend bool operator==(const MixedPolynomial&, const MixedPolynomial&) = default;

private:
    std::size_t n_ = 0;
    std::vector<MixedMonomial> terms_;
};

struct LaurentTerm {
    GaussianRational coeff;
    Exponent exponent;  // may be negative

    friend bool operator==(const LaurentTerm&, const LaurentTerm&) = default;
};

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    LaurentPolynomial(std::size_t n, std::vector<LaurentTerm> terms) : n_(n) {
        std::map<Exponent, GaussianRational, std::greater<>> acc;
        for (auto& t : terms) {
            if (t.exponent.size() != n) throw dimension_error("Laurent exponent length mismatch");
            acc[std::move(t.exponent)] += t.coeff;
        }
        for (auto& [e, c] : acc)
            if (!c.is_zero()) terms_.push_back({c, e});
    }

    std::size_t variables() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::vector<LaurentTerm>& terms() const noexcept { return terms_; }

    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

private:
    std::size_t n_ = 0;
    std::vector<LaurentTerm> terms_;
};

/// Row k of `nu` / `mu` holds the exponents of monomial k.
struct ExponentMatrices {
    IntMatrix nu;
    IntMatrix mu;

    IntMatrix sum() const { return combine(+1); }         // N + M
    IntMatrix difference() const { return combine(-1); }  // N - M

private:
    IntMatrix combine(int sign) const {
        IntMatrix out(nu.rows(), nu.cols());
        for (std::size_t i = 0; i < nu.rows(); ++i)
            for (std::size_t j = 0; j < nu.cols(); ++j)
                out(i, j) = sign > 0 ? BigInt(nu(i, j) + mu(i, j)) : BigInt(nu(i, j) - mu(i, j));
        return out;
    }
};

inline ExponentMatrices exponent_matrices(const MixedPolynomial& f) {
    const std::size_t s = f.size(), n = f.variables();
    ExponentMatrices em{IntMatrix(s, n), IntMatrix(s, n)};
    for (std::size_t k = 0; k < s; ++k) {
        const auto& m = f.monomials()[k];
        for (std::size_t j = 0; j < n; ++j) {
            em.nu(k, j) = m.nu[j];
            em.mu(k, j) = m.mu[j];
        }
    }
    return em;
}

// ---------------------------------------------------------------------------
// Calculus

inline MixedPolynomial wirtinger_dz(const MixedPolynomial& f, std::size_t j) {
    if (j >= f.variables()) throw dimension_error("derivative index out of range");
    std::vector<MixedMonomial> out;
    for (const auto& m : f.monomials()) {
        if (m.nu[j] == 0) continue;
        MixedMonomial d = m;
        d.coeff *= GaussianRational(m.nu[j]);
        d.nu[j] -= 1;
        out.push_back(std::move(d));
    }
    return {f.variables(), std::move(out)};
}

inline MixedPolynomial wirtinger_dzbar(const MixedPolynomial& f, std::size_t j) {
    if (j >= f.variables()) throw dimension_error("derivative index out of range");
    std::vector<MixedMonomial> out;
    for (const auto& m : f.monomials()) {
        if (m.mu[j] == 0) continue;
        MixedMonomial d = m;
        d.coeff *= GaussianRational(m.mu[j]);
        d.mu[j] -= 1;
        out.push_back(std::move(d));
    }
    return {f.variables(), std::move(out)};
}

/// f restricted to the coordinate subspace C^I: monomials with support inside I.
/// The ambient variable count is kept.
inline MixedPolynomial restrict(const MixedPolynomial& f, IndexSet active) {
    std::vector<MixedMonomial> out;
    for (const auto& m : f.monomials())
        if (m.support().subset_of(active)) out.push_back(m);
    return {f.variables(), std::move(out)};
}

inline LaurentPolynomial associated_laurent(const MixedPolynomial& f) {
    std::vector<LaurentTerm> terms;
    for (const auto& m : f.monomials()) {
        Exponent e(f.variables());
        for (std::size_t j = 0; j < e.size(); ++j) e[j] = m.nu[j] - m.mu[j];
        terms.push_back({m.coeff, std::move(e)});
    }
    return {f.variables(), std::move(terms)};
}

// ---------------------------------------------------------------------------
// Floating evaluation

namespace detail {

inline std::complex<double> ipow(std::complex<double> base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    std::complex<double> r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline std::complex<double> monomial_value(const MixedMonomial& m, std::span<const std::complex<double>> z) {
    std::complex<double> v = m.coeff.to_complex();
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (m.nu[j]) v *= ipow(z[j], m.nu[j]);
        if (m.mu[j]) v *= ipow(std::conj(z[j]), m.mu[j]);
    }
    return v;
}

}  // namespace detail

inline std::complex<double> evaluate(const MixedPolynomial& f, std::span<const std::complex<double>> z) {
    if (z.size() != f.variables()) throw dimension_error("point dimension mismatch");
    std::complex<double> sum = 0.0;
    for (const auto& m : f.monomials()) sum += detail::monomial_value(m, z);
    return sum;
}

/// Sum of |term| at z: the natural scale for relative residuals.
inline double term_magnitude(const MixedPolynomial& f, std::span<const std::complex<double>> z) {
    if (z.size() != f.variables()) throw dimension_error("point dimension mismatch");
    double sum = 0.0;
    for (const auto& m : f.monomials()) sum += std::abs(detail::monomial_value(m, z));
    return sum;
}

inline std::complex<double> evaluate_laurent(const LaurentPolynomial& f, std::span<const std::complex<double>> w) {
    if (w.size() != f.variables()) throw dimension_error("point dimension mismatch");
    std::complex<double> sum = 0.0;
    for (const auto& t : f.terms()) {
        std::complex<double> v = t.coeff.to_complex();
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (t.exponent[j] == 0) continue;
            if (t.exponent[j] < 0 && w[j] == 0.0)
                throw domain_error("zero coordinate under a negative exponent");
            v *= detail::ipow(w[j], t.exponent[j]);
        }
        sum += v;
    }
    return sum;
}

}  // namespace polarmix
