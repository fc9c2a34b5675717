#pragma once

// Seeded generators and independent oracles shared by the test suites.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "polarmix/exact.hpp"
#include "polarmix/families.hpp"
#include "polarmix/invariants.hpp"
#include "polarmix/mixed_poly.hpp"

namespace polarmix::oracles {

/// mt19937_64 with explicit integer/real mapping so draws do not depend on the standard library.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }
    double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double real(double lo, double hi) { return lo + (hi - lo) * real(); }
    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi) { return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (eng_() >> 63) != 0; }

    std::vector<int> ints(std::size_t n, int lo, int hi) {
        std::vector<int> v(n);
        for (auto& x : v) x = static_cast<int>(integer(lo, hi));
        return v;
    }

    std::complex<double> complex(double lo, double hi) {
        return std::polar(real(lo, hi), real(0.0, 6.283185307179586));
    }

private:
    std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Exact oracles

/// Laplace expansion along the first row.
inline BigInt cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    BigInt total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = a(i, j);
        const BigInt term = a(0, c) * cofactor_det(minor);
        total += (c % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

using Series = std::vector<Rational>;  // coefficients of t^0..t^D

inline Series series_mul(const Series& x, const Series& y) {
    Series out(x.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; i + j < x.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

/// 1 / x for x(0) != 0.
inline Series series_inverse(const Series& x) {
    Series out(x.size(), Rational(0));
    out[0] = 1 / x[0];
    for (std::size_t k = 1; k < x.size(); ++k) {
        Rational s = 0;
        for (std::size_t j = 1; j <= k; ++j) s += x[j] * out[k - j];
        out[k] = -s / x[0];
    }
    return out;
}

/// The product prod (1 - t^m)^e expanded to degree D from binomial series.
inline Series expand_zeta(const ZetaFactored& z, std::size_t degree) {
    std::vector<BigInt> acc(degree + 1, BigInt(0));
    acc[0] = 1;
    for (const auto& [m, e] : z.factors()) {
        const std::size_t step = m.get_ui();
        // [x^k] (1 - x)^e: c_0 = 1, c_{k+1} = c_k (k - e) / (k + 1).
        std::vector<std::pair<std::size_t, BigInt>> factor;
        BigInt c = 1;
        for (std::size_t k = 0; k * step <= degree; ++k) {
            factor.emplace_back(k * step, c);
            c = c * (BigInt(static_cast<unsigned long>(k)) - e) / BigInt(static_cast<unsigned long>(k + 1));
        }
        std::vector<BigInt> next(degree + 1, BigInt(0));
        for (std::size_t i = 0; i <= degree; ++i) {
            if (acc[i] == 0) continue;
            for (const auto& [pos, coeff] : factor) {
                if (i + pos > degree) break;
                next[i + pos] += acc[i] * coeff;
            }
        }
        acc = std::move(next);
    }
    return Series(acc.begin(), acc.end());
}

/// Coefficients of log P at t^1..t^D via log P = integral of P'/P.
inline RationalVector formal_log(const Series& p) {
    const std::size_t degree = p.size() - 1;
    Series deriv(p.size(), Rational(0));
    for (std::size_t k = 1; k <= degree; ++k) deriv[k - 1] = p[k] * static_cast<long>(k);
    const Series q = series_mul(deriv, series_inverse(p));
    RationalVector out(degree);
    for (std::size_t k = 1; k <= degree; ++k) out[k - 1] = q[k - 1] / static_cast<long>(k);
    return out;
}

// ---------------------------------------------------------------------------
// Numeric oracles

/// Central-difference Wirtinger derivatives of f at z in coordinate j: (d/dz_j, d/dzbar_j).
inline std::pair<std::complex<double>, std::complex<double>> fd_wirtinger(const MixedPolynomial& f,
                                                                           std::vector<std::complex<double>> z,
                                                                           std::size_t j, double h = 1e-6) {
    const auto z0 = z[j];
    z[j] = z0 + h;
    const auto fxp = evaluate(f, z);
    z[j] = z0 - h;
    const auto fxm = evaluate(f, z);
    z[j] = z0 + std::complex<double>(0, h);
    const auto fyp = evaluate(f, z);
    z[j] = z0 - std::complex<double>(0, h);
    const auto fym = evaluate(f, z);
    const auto dx = (fxp - fxm) / (2 * h);
    const auto dy = (fyp - fym) / (2 * h);
    const std::complex<double> i(0, 1);
    return {0.5 * (dx - i * dy), 0.5 * (dx + i * dy)};
}

/// f^I is nonzero iff f is nonzero at a generic point supported on I.
inline bool numerically_nonvanishing(const MixedPolynomial& f, IndexSet subset, Gen& g) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::complex<double>> z(f.variables(), 0.0);
        for (auto i : subset.indices()) z[i] = g.complex(0.5, 1.5);
        if (std::abs(evaluate(f, z)) > 1e-9) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Family generators

/// Random simplicial family polynomial with small exponents (n <= max_n).
inline FamilySpec random_family(Gen& g, std::size_t max_n = 3, int max_exp = 4) {
    for (;;) {
        FamilySpec s;
        const long pick = g.integer(0, 4);
        const std::size_t n = static_cast<std::size_t>(g.integer(1, static_cast<long>(max_n)));
        switch (pick) {
            case 0:
                s.kind = FamilyKind::brieskorn;
                s.a = g.ints(n, 2, max_exp);
                break;
            case 1:
                s.kind = FamilyKind::g1;
                s.a = g.ints(n, 1, max_exp);
                if (std::none_of(s.a.begin(), s.a.end(), [](int x) { return x >= 2; })) continue;
                break;
            case 2:
                s.kind = FamilyKind::g2;
                s.a = g.ints(n, 1, max_exp);
                if (n == 1 && s.a[0] == 1) continue;
                break;
            case 3: {
                s.kind = FamilyKind::cyclic;
                s.a = g.ints(n, 1, max_exp);
                s.b = g.ints(n, 1, max_exp);
                long pa = 1, pb = 1;
                for (std::size_t i = 0; i < n; ++i) {
                    pa *= s.a[i];
                    pb *= s.b[i];
                }
                if (pa <= pb) continue;
                break;
            }
            default:
                s.kind = FamilyKind::chain;
                s.a = g.ints(n, 1, max_exp);
                s.b = g.ints(n - 1, 1, max_exp);
                if (s.a[n - 1] == 1 && n == 1) continue;
                break;
        }
        return s;
    }
}

}  // namespace polarmix::oracles
