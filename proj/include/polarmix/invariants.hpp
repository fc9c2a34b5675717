#pragma once

/*
 * Global invariants of the fiber F = f^{-1}(1) of a simplicial polar weighted
 * homogeneous polynomial, assembled from the stratification:
 *
 *   chi(F)  = sum over full I of (-1)^{|I|-1} d_I
 *   zeta(t) = prod over full I of (1 - t^{m_p_I})^{(-1)^{|I|} d_I / m_p_I}
 *
 * Zeta convention: zeta = prod_j P_j(t)^{(-1)^{j+1}} with P_j = det(1 - t h_*)
 * on H_j(F; Q), so P_0 = 1 - t for connected F.
 *
 * Divisors use Lambda_m = div(t^m - 1) with Lambda_a Lambda_b = gcd(a,b) Lambda_lcm(a,b).
 * The constant 1 is Lambda_1.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/strata.hpp"

namespace polarmix {

/// prod_m (1 - t^m)^{e_m}, canonical: no zero exponents.
class ZetaFactored {
public:
    ZetaFactored() = default;

    static ZetaFactored factor(const BigInt& m, const BigInt& e) {
        ZetaFactored z;
        z.multiply(m, e);
        return z;
    }

    void multiply(const BigInt& m, const BigInt& e) {
        if (m <= 0) throw domain_error("zeta factor period must be positive");
        if (e == 0) return;
        auto& slot = factors_[m];
        slot += e;
        if (slot == 0) factors_.erase(m);
    }

    const std::map<BigInt, BigInt>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    BigInt exponent(const BigInt& m) const {
        auto it = factors_.find(m);
        return it == factors_.end() ? BigInt(0) : it->second;
    }

    /// sum_m m e_m: the degree of the rational function.
    BigInt degree() const {
        BigInt d = 0;
        for (const auto& [m, e] : factors_) d += m * e;
        return d;
    }

    ZetaFactored inverse() const {
        ZetaFactored z;
        for (const auto& [m, e] : factors_) z.multiply(m, -e);
        return z;
    }

    friend ZetaFactored operator*(ZetaFactored a, const ZetaFactored& b) {
        for (const auto& [m, e] : b.factors_) a.multiply(m, e);
        return a;
    }

    /// Factors ordered by exponent (descending), then period (ascending).
    std::vector<std::pair<BigInt, BigInt>> ordered() const {
        std::vector<std::pair<BigInt, BigInt>> out(factors_.begin(), factors_.end());
        std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
        return out;
    }

    friend bool operator==(const ZetaFactored&, const ZetaFactored&) = default;

private:
    std::map<BigInt, BigInt> factors_;
};

/// "(1-t^6)^1 (1-t^2)^-1 (1-t^3)^-1"; the empty product is "1".
inline std::string to_string(const ZetaFactored& z) {
    if (z.is_one()) return "1";
    std::string out;
    for (const auto& [m, e] : z.ordered()) {
        if (!out.empty()) out += " ";
        out += m == 1 ? std::string("(1-t)") : "(1-t^" + m.get_str() + ")";
        out += "^" + e.get_str();
    }
    return out;
}

/// Formal sum of Lambda_m with integer coefficients.
class Divisor {
public:
    Divisor() = default;

    static Divisor lambda(const BigInt& m, const BigInt& c = 1) {
        Divisor d;
        d.add(m, c);
        return d;
    }

    /// k * Lambda_1.
    static Divisor constant(const BigInt& k) { return lambda(1, k); }

    void add(const BigInt& m, const BigInt& c) {
        if (m <= 0) throw domain_error("divisor index must be positive");
        if (c == 0) return;
        auto& slot = coeffs_[m];
        slot += c;
        if (slot == 0) coeffs_.erase(m);
    }

    const std::map<BigInt, BigInt>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    BigInt coefficient(const BigInt& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    std::vector<std::pair<BigInt, BigInt>> ordered() const {
        std::vector<std::pair<BigInt, BigInt>> out(coeffs_.begin(), coeffs_.end());
        std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
        return out;
    }

    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (const auto& [m, c] : b.coeffs_) a.add(m, c);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (const auto& [m, c] : b.coeffs_) a.add(m, -c);
        return a;
    }
    friend Divisor operator*(const BigInt& k, const Divisor& d) {
        Divisor out;
        for (const auto& [m, c] : d.coeffs_) out.add(m, k * c);
        return out;
    }

    friend bool operator==(const Divisor&, const Divisor&) = default;

private:
    std::map<BigInt, BigInt> coeffs_;
};

/// "L6 - L2 - L3"; the zero divisor is "0".
inline std::string to_string(const Divisor& d) {
    if (d.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : d.ordered()) {
        const bool neg = c < 0;
        const BigInt mag = neg ? BigInt(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (mag != 1) out += mag.get_str();
        out += "L" + m.get_str();
    }
    return out;
}

/// Bilinear product with Lambda_a * Lambda_b = gcd(a,b) Lambda_lcm(a,b).
inline Divisor divisor_mul(const Divisor& x, const Divisor& y) {
    Divisor out;
    for (const auto& [a, ca] : x.coeffs())
        for (const auto& [b, cb] : y.coeffs()) out.add(lcm(a, b), gcd(a, b) * ca * cb);
    return out;
}

/// sum_m e_m Lambda_m.
inline Divisor to_divisor(const ZetaFactored& z) {
    Divisor d;
    for (const auto& [m, e] : z.factors()) d.add(m, e);
    return d;
}

/// (Lambda_{a_1} - 1) ... (Lambda_{a_n} - 1) - (-1)^n, with 1 read as Lambda_1.
inline Divisor brieskorn_divisor(const std::vector<int>& a) {
    if (a.empty()) throw dimension_error("empty exponent vector");
    for (int x : a)
        if (x < 2) throw domain_error("Brieskorn exponents must be >= 2");
    Divisor prod = Divisor::constant(1);
    for (int x : a) prod = divisor_mul(prod, Divisor::lambda(x) - Divisor::constant(1));
    return prod - Divisor::constant(a.size() % 2 == 0 ? 1 : -1);
}

// ---------------------------------------------------------------------------

namespace detail {

inline void require_simplicial(const StratificationReport& s) {
    if (!s.simplicial) throw not_simplicial("Euler characteristic and zeta function need a simplicial polynomial");
}

}  // namespace detail

inline BigInt euler_characteristic(const StratificationReport& strat) {
    detail::require_simplicial(strat);
    BigInt chi = 0;
    for (const auto& st : strat.strata)
        if (st.full) chi += st.chi;
    return chi;
}

inline ZetaFactored zeta_function(const StratificationReport& strat) {
    detail::require_simplicial(strat);
    ZetaFactored z;
    for (const auto& st : strat.strata) {
        if (!st.full) continue;
        if (!is_integer(st.zeta_exponent))
            throw non_integral_exponent("stratum " + to_string(st.subset) + ": d_I = " + st.d.get_str() +
                                        " is not divisible by m_p_I = " + st.m_p.get_str());
        z.multiply(st.m_p, st.zeta_exponent.get_num());
    }
    return z;
}

/// Coefficients of log zeta(t) at t^1..t^D from the Lefschetz numbers of h^k:
/// [t^k] = (1/k) sum over full I with m_p_I | k of (-1)^{|I|-1} d_I.
inline RationalVector zeta_log_series(const StratificationReport& strat, std::size_t degree) {
    detail::require_simplicial(strat);
    if (degree == 0) throw dimension_error("series degree must be >= 1");
    RationalVector out(degree, Rational(0));
    for (std::size_t k = 1; k <= degree; ++k) {
        BigInt lefschetz = 0;
        for (const auto& st : strat.strata)
            if (st.full && BigInt(k) % st.m_p == 0) lefschetz += st.chi;
        out[k - 1] = make_rational(lefschetz, BigInt(static_cast<unsigned long>(k)));
    }
    return out;
}

/// F is min(k, n-2)-connected. Negative values mean no connectivity is guaranteed.
inline int connectivity(const StratificationReport& strat) {
    return std::min(strat.convenience, static_cast<int>(strat.variables) - 2);
}

/// Rank of H_{n-1}(F) when only H_0 and H_{n-1} can be nonzero; for n = 1 the
/// fiber is a finite set and this is its number of points.
inline std::optional<BigInt> middle_betti(const BigInt& chi, std::size_t n, int conn) {
    if (n == 0) return std::nullopt;
    if (n == 1) return chi;
    if (conn < static_cast<int>(n) - 2) return std::nullopt;
    BigInt reduced = chi - 1;
    return (n - 1) % 2 == 0 ? reduced : BigInt(-reduced);
}

/// Multiplicity of each cyclotomic factor Phi_d in prod (1 - t^m)^{e_m}.
inline std::map<BigInt, BigInt> cyclotomic_multiplicities(const ZetaFactored& z) {
    std::map<BigInt, BigInt> mult;
    for (const auto& [m, e] : z.factors()) {
        // Each divisor d of m gets e.
        const BigInt mm = m;
        for (BigInt d = 1; d * d <= mm; ++d) {
            if (mm % d != 0) continue;
            mult[d] += e;
            const BigInt other = mm / d;
            if (other != d) mult[other] += e;
        }
    }
    for (auto it = mult.begin(); it != mult.end();)
        it = it->second == 0 ? mult.erase(it) : std::next(it);
    return mult;
}

/// Characteristic polynomial P_{n-1} of the monodromy on H_{n-1}(F) for n = 2, 3
/// when F is (n-2)-connected: zeta = P_0^{-1} P_{n-1}^{(-1)^n} with P_0 = 1 - t.
/// Returned in factored form; throws not_polynomial if it is not a polynomial.
inline std::optional<ZetaFactored> top_charpoly(const ZetaFactored& zeta, std::size_t n, int conn) {
    if (n < 2 || n > 3 || conn < static_cast<int>(n) - 2) return std::nullopt;
    ZetaFactored shifted = zeta * ZetaFactored::factor(1, 1);  // zeta * (1 - t)
    ZetaFactored p = n % 2 == 0 ? shifted : shifted.inverse();
    for (const auto& [d, mult] : cyclotomic_multiplicities(p))
        if (mult < 0)
            throw not_polynomial("top characteristic polynomial has cyclotomic factor Phi_" + d.get_str() +
                                 " with multiplicity " + mult.get_str());
    return p;
}

/// Zeta function of a permutation of a finite set: prod over cycles of (1 - t^len)^{-1}.
inline ZetaFactored permutation_zeta(const std::vector<std::size_t>& perm) {
    ZetaFactored z;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        unsigned long len = 0;
        for (std::size_t j = i; !seen[j]; j = perm.at(j)) {
            seen[j] = true;
            ++len;
        }
        z.multiply(BigInt(len), -1);
    }
    return z;
}

struct InvariantReport {
    BigInt chi;
    ZetaFactored zeta;
    Divisor divisor;
    int connectivity = 0;
    std::optional<BigInt> middle_betti;
    BigInt monodromy_order;  // m_p
    std::optional<ZetaFactored> top_charpoly;

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

inline InvariantReport compute_invariants(const StratificationReport& strat, const WeightSystem& w) {
    InvariantReport r;
    r.chi = euler_characteristic(strat);
    r.zeta = zeta_function(strat);
    r.divisor = to_divisor(r.zeta);
    r.connectivity = connectivity(strat);
    r.middle_betti = middle_betti(r.chi, strat.variables, r.connectivity);
    r.monodromy_order = w.m_p;
    r.top_charpoly = top_charpoly(r.zeta, strat.variables, r.connectivity);
    return r;
}

}  // namespace polarmix
