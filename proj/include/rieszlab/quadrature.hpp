#ifndef RIESZLAB_QUADRATURE_HPP
#define RIESZLAB_QUADRATURE_HPP

// Double-exponential (tanh-sinh) quadrature on the domains the density
// checks need: (0,1), (0,inf), the real line, ordered 2-D chambers, and the
// 2x2 real symmetric positive definite cone.
//
// Nodes on (0,1) are x = 1/(1 + exp(-pi sinh t)); both x and 1 - x are
// computed directly so integrands with singular factors (1-x)^c keep full
// relative accuracy near x = 1. Refinement halves the step and reuses the
// previous nodes; a level counts as one subdivision.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>

#include "rieszlab/error.hpp"

namespace rieszlab::quad {

struct UnitPoint {
    double x;   // in (0, 1)
    double xc;  // 1 - x
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // |I_L - I_{L-1}| at the last level
    int levels = 0;
};

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_levels = 10;
    int min_levels = 3;
};

namespace detail {

inline constexpr double kTMax = 6.0;

// term(t) must return w(t) * f(x(t)) for the unit-interval weight
// w = pi cosh(t) x (1-x) already folded in by the caller's map.
template <class Term>
Result double_exponential(Term&& term, const Options& opt) {
    double h = 1.0;
    double sum = 0.0;
    for (int k = -static_cast<int>(kTMax); k <= static_cast<int>(kTMax); ++k) sum += term(static_cast<double>(k));
    double prev = h * sum;
    Result res{prev, INFINITY, 0};
    for (int level = 1; level <= opt.max_levels; ++level) {
        h *= 0.5;
        const long long count = static_cast<long long>(kTMax / h);
        for (long long k = -count + 1; k < count; k += 2) sum += term(static_cast<double>(k) * h);
        const double cur = h * sum;
        res = {cur, std::abs(cur - prev), level};
        if (level >= opt.min_levels && res.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(cur))) return res;
        prev = cur;
    }
    throw NumericalError("quadrature did not converge after " + std::to_string(opt.max_levels) +
                         " refinement levels (last change " + std::to_string(res.error) + ")");
}

struct Node {
    double x, xc, w;  // w = d x / d t
};

inline Node unit_node(double t) {
    const double s = std::numbers::pi * std::sinh(t);
    // x = 1/(1+e^{-s}), 1-x = 1/(1+e^{s}); written to avoid overflow.
    double x, xc;
    if (s >= 0) {
        const double e = std::exp(-s);
        x = 1.0 / (1.0 + e);
        xc = e / (1.0 + e);
    } else {
        const double e = std::exp(s);
        x = e / (1.0 + e);
        xc = 1.0 / (1.0 + e);
    }
    return {x, xc, std::numbers::pi * std::cosh(t) * x * xc};
}

inline double checked(double v, const char* where) {
    if (!std::isfinite(v)) throw NumericalError(std::string("non-finite integrand value on ") + where);
    return v;
}

}  // namespace detail

// f(UnitPoint) over (0, 1).
template <class F>
Result unit_interval(F&& f, const Options& opt = {}) {
    return detail::double_exponential(
        [&](double t) {
            const detail::Node n = detail::unit_node(t);
            if (n.w == 0.0 || n.x == 0.0 || n.xc == 0.0) return 0.0;
            return n.w * detail::checked(f(UnitPoint{n.x, n.xc}), "(0,1)");
        },
        opt);
}

// f(x) over (lo, hi) with x = lo + (hi - lo) t.
template <class F>
Result interval(F&& f, double lo, double hi, const Options& opt = {}) {
    const double len = hi - lo;
    Result r = unit_interval([&](UnitPoint p) { return f(lo + len * p.x); }, opt);
    r.value *= len;
    r.error *= len;
    return r;
}

// f(x) over (0, inf) with x = t / (1 - t).
template <class F>
Result half_line(F&& f, const Options& opt = {}) {
    return detail::double_exponential(
        [&](double t) {
            const detail::Node n = detail::unit_node(t);
            if (n.w == 0.0 || n.x == 0.0 || n.xc == 0.0) return 0.0;
            const double x = n.x / n.xc;
            const double v = detail::checked(f(x), "(0,inf)");
            if (v == 0.0) return 0.0;
            // w / xc^2 = pi cosh(t) x / xc
            return std::numbers::pi * std::cosh(t) * x * v;
        },
        opt);
}

// f(x) over the real line with x = log(t / (1 - t)).
template <class F>
Result real_line(F&& f, const Options& opt = {}) {
    return detail::double_exponential(
        [&](double t) {
            const detail::Node n = detail::unit_node(t);
            if (n.w == 0.0 || n.x == 0.0 || n.xc == 0.0) return 0.0;
            const double x = std::log(n.x) - std::log(n.xc);
            const double v = detail::checked(f(x), "(-inf,inf)");
            return v == 0.0 ? 0.0 : std::numbers::pi * std::cosh(t) * v;
        },
        opt);
}

// Points of the ordered chamber 1 > x > y > 0 with accurate complements.
struct SimplexPoint {
    double x, xc, y, yc;
};

// f(SimplexPoint) over 1 > x > y > 0; inner variable y = x u.
template <class F>
Result ordered_simplex(F&& f, const Options& outer, const Options& inner) {
    return unit_interval(
        [&](UnitPoint px) {
            const Result r = unit_interval(
                [&](UnitPoint pu) {
                    const double y = px.x * pu.x;
                    const double yc = px.xc + px.x * pu.xc;
                    if (y == 0.0 || y == px.x) return 0.0;
                    return f(SimplexPoint{px.x, px.xc, y, yc});
                },
                inner);
            return px.x * r.value;
        },
        outer);
}

// f(x, y) over x > y > 0; inner variable y = x u.
template <class F>
Result ordered_orthant(F&& f, const Options& outer, const Options& inner) {
    return half_line(
        [&](double x) {
            const Result r = unit_interval(
                [&](UnitPoint pu) {
                    const double y = x * pu.x;
                    return (y == 0.0 || y == x) ? 0.0 : f(x, y);
                },
                inner);
            return x * r.value;
        },
        outer);
}

// Entries of a 2x2 real symmetric matrix; c11 = 1 - s11 and c22 = 1 - s22
// are set for the bounded domain 0 < S < I.
struct Spd2Point {
    double s11, s12, s22;
    double c11, c22;
};

// f over the cone {S > 0} (bounded = false) or over {0 < S < I}
// (bounded = true), Lebesgue measure ds11 ds12 ds22.
template <class F>
Result spd2(F&& f, bool bounded, const Options& outer, const Options& inner) {
    // s12 = r (2u - 1), ds12 = 2 r du.
    auto over_s12 = [&](double s11, double c11, double s22, double c22, double r) {
        if (!std::isfinite(r) || r == 0.0) return 0.0;
        const Result ru = unit_interval(
            [&](UnitPoint pu) { return f(Spd2Point{s11, r * (pu.x - pu.xc), s22, c11, c22}); }, inner);
        return 2.0 * r * ru.value;
    };
    if (!bounded) {
        return half_line(
            [&](double s11) {
                return half_line(
                           [&](double s22) { return over_s12(s11, 1.0 - s11, s22, 1.0 - s22, std::sqrt(s11 * s22)); },
                           inner)
                    .value;
            },
            outer);
    }
    // Split s22 at 1 - s11 where the binding constraint on s12 switches
    // from |S| > 0 to |I - S| > 0.
    return unit_interval(
        [&](UnitPoint p11) {
            const double s11 = p11.x, c11 = p11.xc;
            const Result lower = unit_interval(
                [&](UnitPoint pv) {
                    const double s22 = c11 * pv.x;
                    const double c22 = s11 + c11 * pv.xc;
                    return over_s12(s11, c11, s22, c22, std::sqrt(s11 * s22));
                },
                inner);
            const Result upper = unit_interval(
                [&](UnitPoint pv) {
                    const double s22 = c11 + s11 * pv.x;
                    const double c22 = s11 * pv.xc;
                    return over_s12(s11, c11, s22, c22, std::sqrt(c11 * c22));
                },
                inner);
            return c11 * lower.value + s11 * upper.value;
        },
        outer);
}

}  // namespace rieszlab::quad

#endif
