#pragma once

/*
 * Floating-point checks of the polar action identities.
 *
 * Sampling is reproducible bit-for-bit: std::mt19937_64 seeded with the
 * configured seed, and a uniform double in [0, 1) formed as (x >> 11) * 2^-53
 * from each 64-bit draw (the standard distributions are implementation-defined).
 * Every check constructs its own sampler from the seed and draws its samples
 * in order.
 *
 * Relative residuals divide by the sum of absolute values of the terms that
 * make up the identity, so cancellation does not inflate them.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "polarmix/errors.hpp"
#include "polarmix/exact.hpp"
#include "polarmix/index_set.hpp"
#include "polarmix/mixed_poly.hpp"
#include "polarmix/weights.hpp"

namespace polarmix {

using cplx = std::complex<double>;

struct SampleConfig {
    std::size_t count = 500;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    double radius_low = 0.25;
    double radius_high = 4.0;

    void validate() const {
        if (count == 0) throw domain_error("sample count must be positive");
        if (!(tol > 0.0 && tol <= 1e-2)) throw domain_error("tolerance must lie in (0, 1e-2]");
        if (!(radius_low > 0.0 && radius_low <= radius_high)) throw domain_error("radius range must satisfy 0 < low <= high");
    }
};

struct CheckReport {
    std::string name;
    std::size_t samples_run = 0;
    double max_relative_residual = 0.0;
    bool pass = false;
    std::string note;  // set when the check was not applicable

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    cplx unit() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

    /// Coordinates with modulus uniform in [lo, hi] and uniform argument.
    Point point(std::size_t n, double lo, double hi) {
        Point z(n);
        for (auto& zj : z) {
            const double rho = uniform(lo, hi);
            zj = std::polar(rho, uniform(0.0, 2.0 * std::numbers::pi));
        }
        return z;
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline double relative(double diff, double scale) {
    if (scale == 0.0) return diff;
    return diff / scale;
}

/// p_j / m_p reduced into [0, 1), computed exactly before rounding.
inline std::vector<double> polar_fractions(const WeightSystem& w) {
    if (w.m_p == 0) throw domain_error("polar degree is zero");
    std::vector<double> out;
    for (const auto& pj : w.p) {
        BigInt r = pj % w.m_p;
        if (r < 0) r += abs(w.m_p);
        Rational frac = make_rational(r, w.m_p);
        out.push_back(frac.get_d());
    }
    return out;
}

struct Gradients {
    std::vector<MixedPolynomial> dz, dzbar;

    explicit Gradients(const MixedPolynomial& f) {
        for (std::size_t j = 0; j < f.variables(); ++j) {
            dz.push_back(wirtinger_dz(f, j));
            dzbar.push_back(wirtinger_dzbar(f, j));
        }
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Actions

/// (r, eta) o z = (r^q_j eta^p_j z_j).
inline Point polar_action(const WeightSystem& w, double r, cplx eta, std::span<const cplx> z) {
    if (!(r > 0.0)) throw domain_error("radial parameter must be positive");
    if (std::abs(std::abs(eta) - 1.0) > 1e-12) throw domain_error("polar parameter must lie on the unit circle");
    if (z.size() != w.variables()) throw dimension_error("point and weight system differ in length");
    const double theta = std::arg(eta);
    Point out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double q = w.q[j].get_d(), p = w.p[j].get_d();
        out[j] = std::pow(r, q) * std::polar(1.0, p * theta) * z[j];
    }
    return out;
}

/// h(z) = exp(2 pi i / m_p) o z.
inline Point monodromy_map(const WeightSystem& w, std::span<const cplx> z) {
    if (z.size() != w.variables()) throw dimension_error("point and weight system differ in length");
    const auto frac = detail::polar_fractions(w);
    Point out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * std::polar(1.0, 2.0 * std::numbers::pi * frac[j]);
    return out;
}

/// Moves z along its polar orbit onto F = f^{-1}(1).
inline Point project_to_fiber(const MixedPolynomial& f, const WeightSystem& w, std::span<const cplx> z) {
    const cplx value = evaluate(f, z);
    if (value == cplx(0.0)) throw domain_error("cannot project a point of f^{-1}(0) onto the fiber");
    const double rho = std::abs(value), theta = std::arg(value);
    const double m_r = w.m_r.get_d(), m_p = w.m_p.get_d();
    Point out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double q = w.q[j].get_d(), p = w.p[j].get_d();
        out[j] = std::pow(rho, -q / m_r) * std::polar(1.0, -theta * p / m_p) * z[j];
    }
    return out;
}

/// z -> w with fhat(w) = f(z) on (C*)^n for a full f: w_j = xi_j e^{i theta_j},
/// log xi = lambda log rho, lambda = (N - M)^{-1} (N + M).
class TorusDiffeo {
public:
    explicit TorusDiffeo(const MixedPolynomial& f) : n_(f.variables()) {
        if (!is_full(f)) throw not_simplicial("torus diffeomorphism needs a full simplicial polynomial");
        const auto em = exponent_matrices(f);
        forward_ = log_linear(em.difference(), em.sum());
        backward_ = log_linear(em.sum(), em.difference());
    }

    Point operator()(std::span<const cplx> z) const { return apply(forward_, z); }
    Point inverse(std::span<const cplx> w) const { return apply(backward_, w); }

    const std::vector<RationalVector>& lambda() const noexcept { return exact_forward_; }

private:
    /// a^{-1} b as doubles, column by column.
    std::vector<std::vector<double>> log_linear(const IntMatrix& a, const IntMatrix& b) {
        const std::size_t n = a.rows();
        std::vector<std::vector<double>> out(n, std::vector<double>(n));
        std::vector<RationalVector> exact(n, RationalVector(n));
        for (std::size_t c = 0; c < n; ++c) {
            RationalVector col;
            for (std::size_t i = 0; i < n; ++i) col.emplace_back(b(i, c));
            const auto x = solve_linear(a, col);
            if (!x) throw not_simplicial("exponent matrix is singular");
            for (std::size_t i = 0; i < n; ++i) {
                exact[i][c] = (*x)[i];
                out[i][c] = (*x)[i].get_d();
            }
        }
        if (exact_forward_.empty()) exact_forward_ = exact;
        return out;
    }

    Point apply(const std::vector<std::vector<double>>& lam, std::span<const cplx> z) const {
        if (z.size() != n_) throw dimension_error("point has the wrong number of coordinates");
        std::vector<double> log_rho(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (z[i] == cplx(0.0)) throw domain_error("torus map needs all coordinates nonzero");
            log_rho[i] = std::log(std::abs(z[i]));
        }
        Point out(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += lam[j][i] * log_rho[i];
            out[j] = std::polar(std::exp(s), std::arg(z[j]));
        }
        return out;
    }

    std::size_t n_;
    std::vector<std::vector<double>> forward_, backward_;
    std::vector<RationalVector> exact_forward_;
};

inline Point torus_diffeo(const MixedPolynomial& f, std::span<const cplx> z) { return TorusDiffeo(f)(z); }

// ---------------------------------------------------------------------------
// Pointwise residuals

inline double functional_equation_residual(const MixedPolynomial& f, const WeightSystem& w, double r, cplx eta,
                                           std::span<const cplx> z) {
    const Point moved = polar_action(w, r, eta, z);
    const cplx lhs = evaluate(f, moved);
    const cplx factor = std::pow(r, w.m_r.get_d()) * std::polar(1.0, w.m_p.get_d() * std::arg(eta));
    const cplx rhs = factor * evaluate(f, z);
    const double scale = term_magnitude(f, moved) + std::abs(factor) * term_magnitude(f, z);
    return detail::relative(std::abs(lhs - rhs), scale);
}

/// Larger of the radial and polar Euler identity residuals at z.
inline double euler_residual(const MixedPolynomial& f, const WeightSystem& w, const detail::Gradients& g,
                             std::span<const cplx> z) {
    const cplx value = evaluate(f, z);
    const double mag = term_magnitude(f, z);
    cplx radial = 0.0, polar = 0.0;
    double radial_scale = std::abs(w.m_r.get_d()) * mag, polar_scale = std::abs(w.m_p.get_d()) * mag;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const cplx a = evaluate(g.dz[i], z) * z[i];
        const cplx b = evaluate(g.dzbar[i], z) * std::conj(z[i]);
        const double q = w.q[i].get_d(), p = w.p[i].get_d();
        radial += q * (a + b);
        polar += p * (a - b);
        const double part = term_magnitude(g.dz[i], z) * std::abs(z[i]) + term_magnitude(g.dzbar[i], z) * std::abs(z[i]);
        radial_scale += std::abs(q) * part;
        polar_scale += std::abs(p) * part;
    }
    const double r1 = detail::relative(std::abs(w.m_r.get_d() * value - radial), radial_scale);
    const double r2 = detail::relative(std::abs(w.m_p.get_d() * value - polar), polar_scale);
    return std::max(r1, r2);
}

inline double euler_residual(const MixedPolynomial& f, const WeightSystem& w, std::span<const cplx> z) {
    return euler_residual(f, w, detail::Gradients(f), z);
}

// ---------------------------------------------------------------------------
// Singular points

struct SingularityVerdict {
    bool singular = false;
    std::optional<cplx> alpha;  // proportionality factor when singular
    double parallel_residual = 0.0;
    double modulus_residual = 0.0;
};

/// Tests conj(df) = alpha * dbar f with |alpha| = 1. Both gradients are first
/// divided by the larger of their norms; if both vanish the point is singular with alpha = 1.
inline SingularityVerdict singularity_test(const detail::Gradients& g, std::span<const cplx> z, double tol) {
    const std::size_t n = z.size();
    std::vector<cplx> cdf(n), dbf(n);
    double ncdf = 0.0, ndbf = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cdf[j] = std::conj(evaluate(g.dz[j], z));
        dbf[j] = evaluate(g.dzbar[j], z);
        ncdf += std::norm(cdf[j]);
        ndbf += std::norm(dbf[j]);
    }
    ncdf = std::sqrt(ncdf);
    ndbf = std::sqrt(ndbf);
    SingularityVerdict v;
    const double scale = std::max(ncdf, ndbf);
    if (scale <= tol) {
        v.singular = true;
        v.alpha = cplx(1.0);
        return v;
    }
    for (std::size_t j = 0; j < n; ++j) {
        cdf[j] /= scale;
        dbf[j] /= scale;
    }
    const double nd = ndbf / scale;
    if (nd * nd <= std::numeric_limits<double>::min()) {
        v.parallel_residual = ncdf / scale;
        v.modulus_residual = 1.0;
        return v;
    }
    cplx dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += cdf[j] * std::conj(dbf[j]);
    const cplx alpha = dot / (nd * nd);
    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j) res += std::norm(cdf[j] - alpha * dbf[j]);
    v.parallel_residual = std::sqrt(res);
    v.modulus_residual = std::abs(std::abs(alpha) - 1.0);
    v.singular = v.parallel_residual < tol && v.modulus_residual < tol;
    if (v.singular) v.alpha = alpha;
    return v;
}

inline SingularityVerdict singularity_test(const MixedPolynomial& f, std::span<const cplx> z, double tol) {
    if (z.size() != f.variables()) throw dimension_error("point has the wrong number of coordinates");
    return singularity_test(detail::Gradients(f), z, tol);
}

struct SingularSearchConfig {
    std::size_t starts = 10000;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    bool stop_at_first = true;
};

struct SingularSearchResult {
    std::size_t starts_run = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    std::optional<Point> witness;  // a singular point of V \ {0} with |z| = 1
    std::optional<cplx> alpha;
};

namespace detail {

/// Residuals of the singular-point system on the coordinate subspace C^I:
/// f(z), conj(df) - e^{i phi} dbar f, |z|^2 - 1. Parameters: (Re z_i, Im z_i) for i in I, then phi.
struct SingularSystem : Eigen::DenseFunctor<double> {
    const MixedPolynomial* f;
    const Gradients* g;
    std::vector<std::size_t> support;

    SingularSystem(const MixedPolynomial& poly, const Gradients& grads, std::vector<std::size_t> idx)
        : Eigen::DenseFunctor<double>(static_cast<int>(2 * idx.size() + 1), static_cast<int>(2 * poly.variables() + 3)),
          f(&poly),
          g(&grads),
          support(std::move(idx)) {}

    Point point(const InputType& x) const {
        Point z(f->variables(), cplx(0.0));
        for (std::size_t k = 0; k < support.size(); ++k) z[support[k]] = cplx(x[2 * k], x[2 * k + 1]);
        return z;
    }

    int operator()(const InputType& x, ValueType& r) const {
        const Point z = point(x);
        const cplx alpha = std::polar(1.0, x[static_cast<Eigen::Index>(2 * support.size())]);
        const cplx value = evaluate(*f, z);
        r[0] = value.real();
        r[1] = value.imag();
        double norm2 = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            const cplx d = std::conj(evaluate(g->dz[j], z)) - alpha * evaluate(g->dzbar[j], z);
            r[static_cast<Eigen::Index>(2 + 2 * j)] = d.real();
            r[static_cast<Eigen::Index>(3 + 2 * j)] = d.imag();
            norm2 += std::norm(z[j]);
        }
        r[static_cast<Eigen::Index>(2 + 2 * z.size())] = norm2 - 1.0;
        return 0;
    }
};

}  // namespace detail

/// Multistart Levenberg-Marquardt search for singular points of V = f^{-1}(0)
/// on the unit sphere. Each start draws a random nonempty support I and a
/// random point of C^I. A start succeeds when the residual norm is below tol
/// and singularity_test confirms the point.
inline SingularSearchResult search_singular_points(const MixedPolynomial& f, const SingularSearchConfig& cfg) {
    const std::size_t n = f.variables();
    if (n == 0 || n > 20) throw dimension_error("singular point search needs 1..20 variables");
    const detail::Gradients g(f);
    Sampler rng(cfg.seed);
    SingularSearchResult out;
    const std::uint64_t subsets = (std::uint64_t{1} << n) - 1;

    for (std::size_t s = 0; s < cfg.starts; ++s) {
        const IndexSet support(1 + static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(subsets)));
        detail::SingularSystem sys(f, g, support.indices());
        Eigen::VectorXd x(sys.inputs());
        const Point start = rng.point(support.size(), 0.0, 1.0);
        double norm = 0.0;
        for (const auto& c : start) norm += std::norm(c);
        norm = std::sqrt(std::max(norm, 1e-300));
        for (std::size_t k = 0; k < start.size(); ++k) {
            x[static_cast<Eigen::Index>(2 * k)] = start[k].real() / norm;
            x[static_cast<Eigen::Index>(2 * k + 1)] = start[k].imag() / norm;
        }
        x[sys.inputs() - 1] = rng.uniform(0.0, 2.0 * std::numbers::pi);

        Eigen::NumericalDiff<detail::SingularSystem> diff(sys);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::SingularSystem>> lm(diff);
        lm.setMaxfev(400);
        lm.setXtol(1e-14);
        lm.setFtol(1e-14);
        lm.minimize(x);

        Eigen::VectorXd r(sys.values());
        sys(x, r);
        const double res = r.norm();
        ++out.starts_run;
        out.best_residual = std::min(out.best_residual, res);
        if (res < cfg.tol) {
            const Point z = sys.point(x);
            const auto verdict = singularity_test(g, z, std::sqrt(cfg.tol));
            if (verdict.singular && !out.witness) {
                out.witness = z;
                out.alpha = verdict.alpha;
                if (cfg.stop_at_first) break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-variable fibers

struct Dim1Fiber {
    std::vector<cplx> points;           // theta increasing from -arg(c)/(a-b)
    std::vector<std::size_t> monodromy;  // index of h(points[k])
};

/// Solutions of c z^a zbar^b = 1 and the permutation induced by z -> z e^{2 pi i/(a-b)}.
inline Dim1Fiber enumerate_fiber_dim1(cplx c, int a, int b) {
    if (a == b) throw not_polar_weighted("polar", "a = b: z^a zbar^a is real-valued");
    if (b < 0 || a < b) throw domain_error("need a > b >= 0");
    if (c == cplx(0.0)) throw domain_error("coefficient must be nonzero");
    const int d = a - b;
    const double rho = std::pow(std::abs(c), -1.0 / static_cast<double>(a + b));
    Dim1Fiber out;
    for (int k = 0; k < d; ++k)
        out.points.push_back(std::polar(rho, (-std::arg(c) + 2.0 * std::numbers::pi * k) / d));
    const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi / d);
    for (const auto& z : out.points) {
        const cplx image = z * rot;
        std::size_t best = 0;
        for (std::size_t k = 1; k < out.points.size(); ++k)
            if (std::abs(out.points[k] - image) < std::abs(out.points[best] - image)) best = k;
        out.monodromy.push_back(best);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampled checks

namespace detail {

inline CheckReport finish(std::string name, std::size_t runs, double worst, double tol) {
    return {std::move(name), runs, worst, worst <= tol, {}};
}

}  // namespace detail

inline CheckReport check_functional_equation(const MixedPolynomial& f, const WeightSystem& w, const SampleConfig& cfg) {
    cfg.validate();
    Sampler rng(cfg.seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const double r = rng.uniform(cfg.radius_low, cfg.radius_high);
        const cplx eta = rng.unit();
        const Point z = rng.point(f.variables(), cfg.radius_low, cfg.radius_high);
        worst = std::max(worst, functional_equation_residual(f, w, r, eta, z));
    }
    return detail::finish("functional_equation", cfg.count, worst, cfg.tol);
}

inline CheckReport check_euler_identities(const MixedPolynomial& f, const WeightSystem& w, const SampleConfig& cfg) {
    cfg.validate();
    Sampler rng(cfg.seed);
    const detail::Gradients g(f);
    double worst = 0.0;
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const Point z = rng.point(f.variables(), cfg.radius_low, cfg.radius_high);
        worst = std::max(worst, euler_residual(f, w, g, z));
    }
    return detail::finish("euler_identities", cfg.count, worst, cfg.tol);
}

/// fhat(phi(z)) = f(z); also checks that the inverse map recovers z.
inline CheckReport check_torus_diffeo(const MixedPolynomial& f, const SampleConfig& cfg) {
    cfg.validate();
    if (!is_full(f)) return {"torus_diffeo", 0, 0.0, true, "skipped: polynomial is not full"};
    const TorusDiffeo phi(f);
    const auto fhat = associated_laurent(f);
    Sampler rng(cfg.seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const Point z = rng.point(f.variables(), cfg.radius_low, cfg.radius_high);
        const Point w = phi(z);
        const double corr = detail::relative(std::abs(evaluate_laurent(fhat, w) - evaluate(f, z)), term_magnitude(f, z));
        const Point back = phi.inverse(w);
        double drift = 0.0, size = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            drift += std::norm(back[j] - z[j]);
            size += std::norm(z[j]);
        }
        worst = std::max({worst, corr, std::sqrt(drift / size)});
    }
    return detail::finish("torus_diffeo", cfg.count, worst, cfg.tol);
}

/// f(project(z)) = 1 for samples with |f(z)| in [1e-6, 1e6].
inline CheckReport check_projection(const MixedPolynomial& f, const WeightSystem& w, const SampleConfig& cfg) {
    cfg.validate();
    Sampler rng(cfg.seed);
    double worst = 0.0;
    std::size_t runs = 0, draws = 0;
    while (runs < cfg.count && draws < 20 * cfg.count) {
        ++draws;
        const Point z = rng.point(f.variables(), cfg.radius_low, cfg.radius_high);
        const double size = std::abs(evaluate(f, z));
        if (!(size >= 1e-6 && size <= 1e6)) continue;
        const Point p = project_to_fiber(f, w, z);
        worst = std::max(worst, detail::relative(std::abs(evaluate(f, p) - 1.0), term_magnitude(f, p)));
        ++runs;
    }
    auto report = detail::finish("projection", runs, worst, cfg.tol);
    if (runs < cfg.count) {
        report.pass = false;
        report.note = "only " + std::to_string(runs) + " samples had |f(z)| in [1e-6, 1e6]";
    }
    return report;
}

/// f(h(z)) = f(z); and h^{m_p} = id when m_p <= 10^4.
inline CheckReport check_monodromy(const MixedPolynomial& f, const WeightSystem& w, const SampleConfig& cfg) {
    cfg.validate();
    Sampler rng(cfg.seed);
    double worst = 0.0;
    const bool iterate = w.m_p > 0 && w.m_p <= 10000;
    const long period = iterate ? w.m_p.get_si() : 0;
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const Point z = rng.point(f.variables(), cfg.radius_low, cfg.radius_high);
        const Point hz = monodromy_map(w, z);
        worst = std::max(worst, detail::relative(std::abs(evaluate(f, hz) - evaluate(f, z)), term_magnitude(f, z)));
        if (iterate && s < 8) {
            Point y = z;
            for (long k = 0; k < period; ++k) y = monodromy_map(w, y);
            double drift = 0.0, size = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) {
                drift += std::norm(y[j] - z[j]);
                size += std::norm(z[j]);
            }
            worst = std::max(worst, std::sqrt(drift / size));
        }
    }
    return detail::finish("monodromy", cfg.count, worst, cfg.tol);
}

inline std::vector<CheckReport> run_verification_suite(const MixedPolynomial& f, const WeightSystem& w,
                                                       const SampleConfig& cfg) {
    return {check_functional_equation(f, w, cfg), check_euler_identities(f, w, cfg), check_torus_diffeo(f, cfg),
            check_projection(f, w, cfg), check_monodromy(f, w, cfg)};
}

}  // namespace polarmix
