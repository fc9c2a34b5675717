#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarmix {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched shapes (non-square matrix, wrong vector length, bad index).
class dimension_error : public error {
public:
    using error::error;
};

/// Malformed polynomial text. `position()` is a 0-based character offset.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " at position " + std::to_string(pos)), pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/// Evaluation outside the domain (zero coordinate with a negative exponent, f(z) = 0, ...).
class domain_error : public error {
public:
    using error::error;
};

/// The radial or polar weight system has no solution.
class not_polar_weighted : public error {
public:
    not_polar_weighted(const std::string& system, const std::string& detail)
        : error("not polar weighted: " + system + " system is inconsistent" +
                (detail.empty() ? std::string() : " (" + detail + ")")),
          system_(system), detail_(detail) {}

    /// "radial" or "polar".
    const std::string& system() const noexcept { return system_; }
    /// Rendered rows of the inconsistent system.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string system_;
    std::string detail_;
};

/// Topological formulas that need a simplicial polynomial were given something else.
class not_simplicial : public error {
public:
    using error::error;
};

/// A stratum zeta exponent d_I / m_{p,I} failed to be an integer.
class non_integral_exponent : public error {
public:
    using error::error;
};

/// A factored characteristic polynomial has a negative cyclotomic multiplicity.
class not_polynomial : public error {
public:
    using error::error;
};

/// A family specification violates its constraints.
class invalid_family : public error {
public:
    using error::error;
};

}  // namespace polarmix
