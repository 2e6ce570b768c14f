#ifndef RIESZLAB_VERIFY_HPP
#define RIESZLAB_VERIFY_HPP

// Goodness-of-fit statistics, moment comparators and quadrature wrappers
// used as independent oracles by the tests and the CLI verify command.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/algebra.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/specfun.hpp"

namespace rieszlab {

struct GofReport {
    double statistic = 0.0;
    double critical_value = 0.0;
    std::size_t n = 0;
    bool passed = false;
};

inline GofReport make_report(double statistic, double critical, std::size_t n) {
    return {statistic, critical, n, statistic < critical};
}

// Asymptotic Kolmogorov distribution quantiles.
inline double ks_coefficient(double alpha) {
    if (alpha == 0.01) return 1.62762;
    if (alpha == 0.05) return 1.35810;
    throw DomainError("KS alpha must be 0.01 or 0.05");
}

// sup |F_n - F| given F at the sorted sample points.
inline double ks_statistic_sorted(std::span<const double> cdf_at_sorted) {
    const double n = static_cast<double>(cdf_at_sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
        const double f = cdf_at_sorted[i];
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

inline GofReport ks_from_cdf_values(std::span<const double> cdf_at_sorted, double alpha) {
    const std::size_t n = cdf_at_sorted.size();
    require(n >= 100, "KS test requires n >= 100");
    return make_report(ks_statistic_sorted(cdf_at_sorted), ks_coefficient(alpha) / std::sqrt(static_cast<double>(n)), n);
}

inline GofReport ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, double alpha) {
    require(samples.size() >= 100, "KS test requires n >= 100");
    std::sort(samples.begin(), samples.end());
    std::vector<double> f(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) f[i] = cdf(samples[i]);
    return ks_from_cdf_values(f, alpha);
}

inline GofReport ks_two_sample(std::vector<double> x, std::vector<double> y, double alpha) {
    require(x.size() >= 100 && y.size() >= 100, "two-sample KS test requires n >= 100 per sample");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(i / nx - j / ny));
    }
    const double crit = ks_coefficient(alpha) * std::sqrt((nx + ny) / (nx * ny));
    return make_report(d, crit, x.size() + y.size());
}

// Largest |F_n(t) - F(t)| over given bin edges; critical value as one-sample KS.
inline GofReport ks_binned(std::vector<double> samples, std::span<const double> edges,
                           std::span<const double> cdf_at_edges, double alpha) {
    require(edges.size() == cdf_at_edges.size(), "edges and CDF values differ in length");
    require(samples.size() >= 100, "KS test requires n >= 100");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const double count = static_cast<double>(std::upper_bound(samples.begin(), samples.end(), edges[k]) - samples.begin());
        d = std::max(d, std::abs(count / n - cdf_at_edges[k]));
    }
    return make_report(d, ks_coefficient(alpha) / std::sqrt(n), samples.size());
}

// |z| of the sample mean against the analytic mean; passes when |z| < 3.
inline GofReport moment_report(std::span<const double> samples, double mean, double var) {
    require(std::isfinite(var) && var >= 0.0, "moment report needs a finite analytic variance");
    require(!samples.empty(), "moment report needs samples");
    double s = 0.0;
    for (double x : samples) s += x;
    const double n = static_cast<double>(samples.size());
    const double se = std::sqrt(var / n);
    const double diff = std::abs(s / n - mean);
    const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
    return make_report(z, 3.0, samples.size());
}

// Sample mean and unbiased variance.
inline std::pair<double, double> sample_mean_var(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return {m, s / static_cast<double>(x.size() - 1)};
}

enum class QuadDomain { UnitInterval, HalfLine, OrderedSimplex2D, SpdCone2x2, SpdBounded2x2 };

struct QuadratureSpec {
    QuadDomain domain = QuadDomain::UnitInterval;
    double abs_tol = 1e-10;
    int max_subdivisions = 10;

    quad::Options options() const {
        require(abs_tol > 0.0, "quadrature abs_tol must be > 0");
        quad::Options o;
        o.abs_tol = abs_tol;
        o.rel_tol = 0.0;
        o.max_levels = max_subdivisions;
        return o;
    }
};

// One-dimensional domains: (0,1) or (0,inf).
inline double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    switch (spec.domain) {
        case QuadDomain::UnitInterval: return quad::unit_interval([&](quad::UnitPoint p) { return f(p.x); }, spec.options()).value;
        case QuadDomain::HalfLine: return quad::half_line(f, spec.options()).value;
        default: throw DomainError("integrate(real -> real) needs a one-dimensional domain");
    }
}

// Ordered chamber 1 > x > y > 0.
inline double integrate(const std::function<double(double, double)>& f, const QuadratureSpec& spec) {
    require(spec.domain == QuadDomain::OrderedSimplex2D, "integrate(real^2 -> real) needs the ordered simplex");
    quad::Options inner = spec.options();
    inner.abs_tol *= 0.1;
    return quad::ordered_simplex([&](const quad::SimplexPoint& p) { return f(p.x, p.y); }, spec.options(), inner).value;
}

// 2x2 real symmetric matrices, either the whole cone or 0 < S < I.
inline double integrate(const std::function<double(const quad::Spd2Point&)>& f, const QuadratureSpec& spec) {
    require(spec.domain == QuadDomain::SpdCone2x2 || spec.domain == QuadDomain::SpdBounded2x2,
            "integrate(2x2 matrix -> real) needs an SPD domain");
    quad::Options inner = spec.options();
    inner.abs_tol *= 0.1;
    return quad::spd2(f, spec.domain == QuadDomain::SpdBounded2x2, spec.options(), inner).value;
}

// CDF values at sorted points x_1 <= ... <= x_n of a density on (lo, ...),
// lo = 0. The first piece uses tanh-sinh (handles an integrable singularity
// at 0); later pieces use 10-point Gauss-Legendre between neighbours.
inline std::vector<double> cdf_at_sorted(const std::function<double(double)>& density, std::span<const double> xs) {
    static constexpr double nodes[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                        0.8650633666889845, 0.9739065285171717};
    static constexpr double weights[5] = {0.2955242247147529, 0.2692667397099731, 0.2190863625159820,
                                          0.1494513491505806, 0.0666713443086881};
    std::vector<double> out(xs.size());
    if (xs.empty()) return out;
    require(xs.front() > 0.0, "CDF points must be positive");
    quad::Options o;
    o.abs_tol = 1e-12;
    o.rel_tol = 1e-10;
    double acc = quad::interval(density, 0.0, xs.front(), o).value;
    out[0] = acc;
    for (std::size_t k = 1; k < xs.size(); ++k) {
        const double lo = xs[k - 1], hi = xs[k];
        if (hi > lo) {
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            double s = 0.0;
            for (int q = 0; q < 5; ++q) s += weights[q] * (density(c - h * nodes[q]) + density(c + h * nodes[q]));
            acc += h * s;
        }
        out[k] = acc;
    }
    return out;
}

inline GofReport ks_test_density(std::vector<double> samples, const std::function<double(double)>& density, double alpha) {
    std::sort(samples.begin(), samples.end());
    return ks_from_cdf_values(cdf_at_sorted(density, samples), alpha);
}

// Random test matrices. Entries have standard normal components.
inline DivisionMatrix random_matrix(AlgebraTag tag, std::size_t rows, std::size_t cols, Rng& rng) {
    DivisionMatrix a(tag, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (int c = 0; c < tag.beta(); ++c) a(i, j)[c] = rng.normal();
    return a;
}

// A*A / m + shift I, comfortably positive definite.
inline HermitianPD random_hpd(AlgebraTag tag, std::size_t m, Rng& rng, double shift = 0.5) {
    DivisionMatrix s = gram(random_matrix(tag, m, m, rng)) * (1.0 / static_cast<double>(m));
    s += DivisionMatrix::identity(tag, m) * shift;
    return HermitianPD(s);
}

// Upper triangular with diagonal in (0.5, 2) and normal off-diagonal entries.
inline UpperTriangularPosDiag random_upper(AlgebraTag tag, std::size_t m, Rng& rng) {
    DivisionMatrix b(tag, m, m);
    for (std::size_t i = 0; i < m; ++i) {
        b(i, i) = DivisionScalar(tag, 0.5 + 1.5 * rng.uniform());
        for (std::size_t j = i + 1; j < m; ++j)
            for (int c = 0; c < tag.beta(); ++c) b(i, j)[c] = rng.normal();
    }
    return UpperTriangularPosDiag(std::move(b));
}

// Sorted integer weight with entries in [0, max_part].
inline Weight random_integer_weight(std::size_t m, int max_part, Rng& rng) {
    std::vector<double> k(m);
    for (double& v : k) v = std::floor(rng.uniform() * (max_part + 1));
    std::sort(k.begin(), k.end(), std::greater<>());
    return Weight(std::move(k));
}

// Sorted real weight with entries in [0, max_part).
inline Weight random_real_weight(std::size_t m, double max_part, Rng& rng) {
    std::vector<double> k(m);
    for (double& v : k) v = rng.uniform() * max_part;
    std::sort(k.begin(), k.end(), std::greater<>());
    return Weight(std::move(k));
}

}  // namespace rieszlab

#endif
