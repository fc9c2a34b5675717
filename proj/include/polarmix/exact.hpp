#pragma once

/*
 * Exact integer / rational arithmetic and the small amount of exact linear
 * algebra the rest of the library needs.
 *
 *   - BigInt and Rational are GMP's mpz_class / mpq_class. Rationals produced
 *     here are always canonical (reduced, positive denominator).
 *   - det() is fraction-free (Bareiss): every intermediate value is a minor
 *     of the input, so all divisions are exact.
 *   - solve_linear() and solve_affine_system() eliminate over Q.
 */

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polarmix/errors.hpp"

namespace polarmix {

using BigInt = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }

/// "2/3", "-1/2", or "5" for integers.
inline std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline BigInt abs(const BigInt& x) {
    BigInt r = x;
    if (r < 0) r = -r;
    return r;
}

/// Nonnegative gcd of a nonempty list.
inline BigInt gcd_many(std::span<const BigInt> xs) {
    if (xs.empty()) throw dimension_error("gcd of an empty list");
    BigInt g = 0;
    for (const auto& x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

/// Positive lcm of a nonempty list of nonzero integers.
inline BigInt lcm_many(std::span<const BigInt> xs) {
    if (xs.empty()) throw dimension_error("lcm of an empty list");
    BigInt l = 1;
    for (const auto& x : xs) {
        if (x == 0) throw domain_error("lcm of zero");
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
    }
    return l;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// ---------------------------------------------------------------------------
// GaussianRational

/// Exact complex number re + im*i with rational parts.
struct GaussianRational {
    Rational re = 0;
    Rational im = 0;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {Rational(a.re + b.re), Rational(a.im + b.im)};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {Rational(a.re - b.re), Rational(a.im - b.im)};
    }
    friend GaussianRational operator-(const GaussianRational& a) {
        return {Rational(-a.re), Rational(-a.im)};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline std::string to_string(const GaussianRational& c) {
    if (c.im == 0) return to_string(c.re);
    std::string s = "(" + to_string(c.re);
    s += (c.im < 0 ? "-" : "+");
    s += to_string(Rational(c.im < 0 ? Rational(-c.im) : c.im)) + "i)";
    return s;
}

// ---------------------------------------------------------------------------
// IntMatrix

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw dimension_error("ragged matrix initializer");
            for (long x : row) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<BigInt> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    void append_row(std::span<const BigInt> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw dimension_error("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    /// Submatrix keeping the given columns, in the given order.
    IntMatrix select_columns(std::span<const std::size_t> cols) const {
        IntMatrix out(rows_, cols.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

/// Exact determinant by Bareiss fraction-free elimination.
inline BigInt det(const IntMatrix& a) {
    if (!a.is_square()) throw dimension_error("det of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;

    IntMatrix m = a;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    BigInt d = m(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

namespace detail {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix to_rational(const IntMatrix& a) {
    RationalMatrix r(a.rows(), std::vector<Rational>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
    return r;
}

/// In-place reduced row echelon form over the first `ncols` columns.
/// Returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Rank over Q.
inline std::size_t rank(const IntMatrix& a) {
    auto m = detail::to_rational(a);
    return detail::rref(m, a.cols()).size();
}

/// Unique solution of A x = b, or nullopt when A is singular.
inline std::optional<RationalVector> solve_linear(const IntMatrix& a, std::span<const Rational> b) {
    if (!a.is_square()) throw dimension_error("solve_linear needs a square matrix");
    if (b.size() != a.rows()) throw dimension_error("right-hand side length mismatch");
    const std::size_t n = a.rows();
    auto m = detail::to_rational(a);
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
    if (detail::rref(m, n).size() < n) return std::nullopt;
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

struct AffineSolution {
    bool consistent = false;
    std::size_t rank = 0;
    /// Particular solution with every free variable set to zero.
    RationalVector particular;
    /// Basis of {x : A x = 0}, one vector per free variable.
    std::vector<RationalVector> kernel;

    bool unique() const { return consistent && kernel.empty(); }
};

/// General solution of A x = rhs (any shape).
inline AffineSolution solve_affine_system(const IntMatrix& a, std::span<const Rational> rhs) {
    if (a.rows() == 0) throw dimension_error("affine system without rows");
    if (rhs.size() != a.rows()) throw dimension_error("right-hand side length mismatch");
    const std::size_t n = a.cols();
    auto m = detail::to_rational(a);
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(rhs[i]);
    const auto pivots = detail::rref(m, n);

    AffineSolution sol;
    sol.rank = pivots.size();
    for (std::size_t i = pivots.size(); i < m.size(); ++i)
        if (m[i][n] != 0) return sol;
    sol.consistent = true;

    sol.particular.assign(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = m[r][n];

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector k(n, Rational(0));
        k[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -m[r][f];
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

/// A x = (1, ..., 1).
inline AffineSolution solve_affine_system(const IntMatrix& a) {
    const RationalVector ones(a.rows(), Rational(1));
    return solve_affine_system(a, ones);
}

}  // namespace polarmix
