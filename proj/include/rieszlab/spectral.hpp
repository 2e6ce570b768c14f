#ifndef RIESZLAB_SPECTRAL_HPP
#define RIESZLAB_SPECTRAL_HPP

// Joint eigenvalue densities of the beta-Riesz laws on the ordered chamber.
//
// The eigenvalue transform of a density g(L) on the beta-Hermitian cone
// contributes the constant
//   C_m = pi^{m(m-1)beta/2} Gamma(beta/2)^m / Gamma_m[m beta/2]
// times prod_{i<j} (l_i - l_j)^beta. For beta = 1, 2, 4 this equals
// pi^{m^2 beta/2 + rho} / Gamma_m[m beta/2] with rho = 0, -m, -2m; the
// Gamma(beta/2)^m factor is what keeps C_1 = 1 for beta = 8 as well.
//
// Weights attach to the ordered eigenvalues (k_i to l_i). This is exact
// for constant weights; for other weights it is the formula as defined.
//
//   type I  (1 > l_1 > ... > l_m > 0):
//     C_m / B * V(l) prod l_i^{a +/- k_i - p} (1 - l_i)^{b +/- t_i - p}
//   type II (d_1 > ... > d_m > 0):
//     C_m / B * V(d) prod d_i^{a +/- k_i - p} (1 + d_i)^{-(a + b +/- (k_i + t_i))}
//
// with + for family C, - for family K, and p = (m-1)beta/2 + 1.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "rieszlab/algebra.hpp"
#include "rieszlab/beta_riesz.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/specfun.hpp"

namespace rieszlab {

inline int rho(AlgebraTag tag, int m) {
    switch (tag.beta()) {
        case 1: return 0;
        case 2: return -m;
        case 4: return -2 * m;
        default: return -4 * m;
    }
}

inline double log_eigen_transform_constant(AlgebraTag tag, int m) {
    detail::check_dim(m);
    const double hb = tag.half_beta();
    return m * (m - 1) * hb * std::log(std::numbers::pi) + m * std::lgamma(hb) -
           ln_mv_gamma(tag, m, m * hb).log_abs;
}

namespace detail {

inline void check_descending(std::span<const double> lams) {
    for (std::size_t i = 0; i + 1 < lams.size(); ++i)
        require(lams[i] > lams[i + 1], "eigenvalues must be strictly descending");
}

}  // namespace detail

inline double log_vandermonde_beta(std::span<const double> lams, int beta) {
    AlgebraTag check(beta);
    (void)check;
    detail::check_descending(lams);
    double r = 0.0;
    for (std::size_t i = 0; i < lams.size(); ++i)
        for (std::size_t j = i + 1; j < lams.size(); ++j) r += std::log(lams[i] - lams[j]);
    return beta * r;
}

struct EigenDensityParams {
    BetaRieszParams params;
    int rho;

    explicit EigenDensityParams(BetaRieszParams p) : params(std::move(p)), rho(rieszlab::rho(params.tag(), params.m())) {}
};

// Type I with complements 1 - l_i supplied by the caller; type II ignores them.
inline double log_joint_eigen_density(const EigenDensityParams& e, std::span<const double> lams,
                                      std::span<const double> complements) {
    const BetaRieszParams& p = e.params;
    const std::size_t m = static_cast<std::size_t>(p.m());
    require(lams.size() == m, "expected m eigenvalues");
    require(complements.size() == m, "expected m complements");
    detail::check_descending(lams);
    const double sign = p.family() == Family::C ? 1.0 : -1.0;
    double r = log_eigen_transform_constant(p.tag(), p.m()) - p.log_normalizer() + log_vandermonde_beta(lams, p.beta());
    for (std::size_t i = 0; i < m; ++i) {
        require(lams[i] > 0.0, "eigenvalues must be positive");
        r += (p.a() + sign * p.kappa()[i] - p.p()) * std::log(lams[i]);
        if (p.variant() == Variant::TypeI) {
            require(lams[i] <= 1.0 && complements[i] > 0.0, "type I eigenvalues must lie in (0, 1)");
            r += (p.b() + sign * p.tau()[i] - p.p()) * std::log(complements[i]);
        } else {
            r -= (p.a() + p.b() + sign * (p.kappa()[i] + p.tau()[i])) * std::log1p(lams[i]);
        }
    }
    return r;
}

inline double log_joint_eigen_density(const EigenDensityParams& e, std::span<const double> lams) {
    std::vector<double> c(lams.size());
    for (std::size_t i = 0; i < lams.size(); ++i) c[i] = 1.0 - lams[i];
    return log_joint_eigen_density(e, lams, c);
}

inline std::vector<std::vector<double>> empirical_eigenvalues(std::span<const HermitianPD> draws) {
    std::vector<std::vector<double>> out;
    out.reserve(draws.size());
    for (const HermitianPD& d : draws) out.push_back(eigenvalues_hermitian(d));
    return out;
}

}  // namespace rieszlab

#endif
