#ifndef RIESZLAB_RIESZ_HPP
#define RIESZLAB_RIESZ_HPP

// Riesz distributions of type I and II, their inverses, Bartlett samplers
// and the law of the generalized variance |X|/|Sigma|.
//
// Density convention. The trace kernel is exp{-beta Re tr(Sigma^{-1} X)}:
//
//   type I : beta^{am + sum k} / (Gamma_m[a, k] |Sigma|^a q_k(Sigma))
//            * exp{-beta tr(Sigma^{-1} X)} |X|^{a - (m-1)beta/2 - 1} q_k(X)
//   type II: q_k(Sigma) beta^{am - sum k} / (Gamma_m[a, -k] |Sigma|^a)
//            * exp{-beta tr(Sigma^{-1} X)} |X|^{a - (m-1)beta/2 - 1} q_k(X^{-1})
//
// The beta^{...} normalizer only integrates to one with the beta in the
// kernel, and it is the kernel the Bartlett factors below are exact for.
//
// Bartlett construction (Sigma = U*U, U upper Cholesky): T upper with
//   t_ii^2 ~ G^beta(a +/- k_i - (i-1)beta/2, 1),  sqrt(2) t_ij ~ N^beta(0, 1),
// all independent, and X = (T U)* (T U).
//
// Caveat for type II with m >= 2 and non-constant kappa: the Bartlett
// shapes above generate the law proportional to q_k(X)^{-1}, while the
// density carries q_k(X^{-1}). The two agree for m = 1 and for constant
// kappa, where q_k is a power of the determinant.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rieszlab/algebra.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/specfun.hpp"

namespace rieszlab {

enum class Variant { TypeI, TypeII };

inline const char* to_string(Variant v) { return v == Variant::TypeI ? "I" : "II"; }

class RieszParams {
public:
    RieszParams(double a, Weight kappa, HermitianPD sigma, Variant variant)
        : a_(a), kappa_(std::move(kappa)), sigma_(std::move(sigma)), variant_(variant) {
        const int m = this->m();
        const double bound = (m - 1) * tag().half_beta();
        require(std::isfinite(a_), "shape parameter a must be finite");
        detail::check_weight(kappa_, m, "kappa");
        if (variant_ == Variant::TypeI) {
            require(a_ + kappa_.last() > bound,
                    "Riesz type I requires a + k_m > (m-1)beta/2 = " + detail::fmt(bound));
        } else {
            require(a_ - kappa_.first() > bound,
                    "Riesz type II requires a - k_1 > (m-1)beta/2 = " + detail::fmt(bound));
        }
    }

    // Sigma = I_m.
    static RieszParams standard(AlgebraTag tag, int m, double a, Weight kappa, Variant variant) {
        require_matrix_algebra(tag, "Riesz distribution");
        detail::check_dim(m);
        return RieszParams(a, std::move(kappa), HermitianPD::identity(tag, static_cast<std::size_t>(m)), variant);
    }

    AlgebraTag tag() const noexcept { return sigma_.tag(); }
    int beta() const noexcept { return tag().beta(); }
    int m() const noexcept { return static_cast<int>(sigma_.dim()); }
    double a() const noexcept { return a_; }
    const Weight& kappa() const noexcept { return kappa_; }
    const HermitianPD& sigma() const noexcept { return sigma_; }
    Variant variant() const noexcept { return variant_; }

    // Shape of t_ii^2 in the Bartlett factor, i = 0..m-1.
    double bartlett_shape(int i) const {
        const double k = kappa_[static_cast<std::size_t>(i)];
        return (variant_ == Variant::TypeI ? a_ + k : a_ - k) - i * tag().half_beta();
    }

private:
    double a_;
    Weight kappa_;
    HermitianPD sigma_;
    Variant variant_;
};

// G^beta(a, alpha): shape a, scale alpha / beta.
struct ScalarGammaParams {
    double a;
    double alpha;
    int beta;

    ScalarGammaParams(double a_, double alpha_, int beta_) : a(a_), alpha(alpha_), beta(beta_) {
        require(a > 0.0 && std::isfinite(a), "gamma shape a must be > 0");
        require(alpha > 0.0 && std::isfinite(alpha), "gamma parameter alpha must be > 0");
        AlgebraTag check(beta);
        (void)check;
    }

    double mean() const { return a * alpha / beta; }
    double variance() const { return a * (alpha / beta) * (alpha / beta); }
};

inline double log_density_scalar_gamma(const ScalarGammaParams& p, double x) {
    if (!(x > 0.0)) return -INFINITY;
    const double scale = p.alpha / p.beta;
    return -x / scale + (p.a - 1.0) * std::log(x) - p.a * std::log(scale) - std::lgamma(p.a);
}

inline double sample_scalar_gamma(const ScalarGammaParams& p, Rng& rng) {
    return rng.gamma(p.a) * (p.alpha / p.beta);
}

// beta real components, each N(0, 1/beta).
inline DivisionScalar sample_scalar_normal_beta(AlgebraTag tag, Rng& rng) {
    DivisionScalar z(tag);
    const double sd = 1.0 / std::sqrt(static_cast<double>(tag.beta()));
    for (int c = 0; c < tag.beta(); ++c) z[c] = sd * rng.normal();
    return z;
}

namespace detail {

inline void check_same_space(const RieszParams& p, const HermitianPD& x) {
    require(x.tag() == p.tag(), "matrix algebra does not match the distribution's beta");
    require(static_cast<int>(x.dim()) == p.m(), "matrix dimension does not match m");
}

}  // namespace detail

inline double log_density_riesz(const RieszParams& p, const HermitianPD& x) {
    detail::check_same_space(p, x);
    const int m = p.m();
    const double beta = p.beta();
    const double ld_sigma = logdet_hpd(p.sigma());
    const double lq_sigma = log_q_kappa(p.sigma(), p.kappa());
    const double trace = re_trace_product(inverse_hpd(p.sigma()).matrix(), x.matrix());
    const double exponent = p.a() - (m - 1) * 0.5 * beta - 1.0;
    double r = -beta * trace + exponent * logdet_hpd(x) - p.a() * ld_sigma;
    if (p.variant() == Variant::TypeI) {
        r += (p.a() * m + p.kappa().sum()) * std::log(beta);
        r -= ln_gamma_weight_pos(p.tag(), m, p.a(), p.kappa()).log_abs;
        r -= lq_sigma;
        r += log_q_kappa(x, p.kappa());
    } else {
        r += (p.a() * m - p.kappa().sum()) * std::log(beta);
        r -= ln_gamma_weight_neg(p.tag(), m, p.a(), p.kappa()).log_abs;
        r += lq_sigma;
        r += log_q_kappa(inverse_hpd(x), p.kappa());
    }
    return r;
}

// Density of Y = X^{-1}: f_X(Y^{-1}) |Y|^{-(beta(m-1)+2)}.
inline double log_density_inverse_riesz(const RieszParams& p, const HermitianPD& y) {
    detail::check_same_space(p, y);
    return log_density_riesz(p, inverse_hpd(y)) - (p.beta() * (p.m() - 1) + 2.0) * logdet_hpd(y);
}

// Bartlett factor T for Sigma = I. Draw order: row by row over the upper
// triangle, the diagonal gamma first.
inline UpperTriangularPosDiag sample_bartlett_factor(const RieszParams& p, Rng& rng) {
    const AlgebraTag tag = p.tag();
    require_matrix_algebra(tag, "Bartlett sampler");
    const std::size_t m = static_cast<std::size_t>(p.m());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    DivisionMatrix t(tag, m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const ScalarGammaParams g(p.bartlett_shape(static_cast<int>(i)), 1.0, tag.beta());
        const double t2 = sample_scalar_gamma(g, rng);
        if (!(t2 > 0.0)) throw NumericalError("Bartlett diagonal draw underflowed to zero");
        t(i, i) = DivisionScalar(tag, std::sqrt(t2));
        for (std::size_t j = i + 1; j < m; ++j) t(i, j) = sample_scalar_normal_beta(tag, rng) * inv_sqrt2;
    }
    return UpperTriangularPosDiag(std::move(t));
}

inline HermitianPD sample_riesz_bartlett(const RieszParams& p, Rng& rng) {
    const UpperTriangularPosDiag t = sample_bartlett_factor(p, rng);
    // X = U* (T*T) U = (T U)* (T U), and T U is again upper with positive diagonal.
    return HermitianPD::from_factor(UpperTriangularPosDiag(matmul(t.matrix(), p.sigma().cholesky().matrix())));
}

inline HermitianPD sample_inverse_riesz(const RieszParams& p, Rng& rng) {
    return inverse_hpd(sample_riesz_bartlett(p, rng));
}

// v = |X|/|Sigma| as a product of independent G^beta(shape_i, 1) draws.
inline double sample_generalized_variance(const RieszParams& p, Rng& rng) {
    double v = 1.0;
    for (int i = 0; i < p.m(); ++i) v *= sample_scalar_gamma(ScalarGammaParams(p.bartlett_shape(i), 1.0, p.beta()), rng);
    return v;
}

// Density of v by convolution in log coordinates; m <= 3 only.
inline double log_density_generalized_variance(const RieszParams& p, double v) {
    require(v > 0.0, "generalized variance density requires v > 0");
    const int m = p.m();
    require(m <= 3, "generalized variance density is sampler-only for m > 3");
    std::vector<ScalarGammaParams> g;
    for (int i = 0; i < m; ++i) g.emplace_back(p.bartlett_shape(i), 1.0, p.beta());
    if (m == 1) return log_density_scalar_gamma(g[0], v);
    const double lv = std::log(v);
    // log-density of log(gamma_i) at u: log f_i(e^u) + u
    auto lg = [&](int i, double u) {
        const ScalarGammaParams& q = g[static_cast<std::size_t>(i)];
        const double scale = q.alpha / q.beta;
        const double x = std::exp(u);
        if (!std::isfinite(x)) return -std::numeric_limits<double>::infinity();
        return -x / scale + q.a * u - q.a * std::log(scale) - std::lgamma(q.a);
    };
    quad::Options opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-10;
    opt.max_levels = 9;
    double value;
    if (m == 2) {
        // density of L = L1 + L2 at lv, then divide by v
        value = quad::real_line([&](double u) { return std::exp(lg(0, u) + lg(1, lv - u)); }, opt).value;
    } else {
        quad::Options inner = opt;
        inner.max_levels = 8;
        value = quad::real_line(
                    [&](double u) {
                        const double l0 = lg(0, u);
                        if (!std::isfinite(l0)) return 0.0;
                        return quad::real_line([&](double w) { return std::exp(l0 + lg(1, w) + lg(2, lv - u - w)); },
                                               inner)
                            .value;
                    },
                    opt)
                    .value;
    }
    return std::log(value) - lv;
}

}  // namespace rieszlab

#endif
