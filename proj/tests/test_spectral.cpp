#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rieszlab/spectral.hpp"
#include "rieszlab/verify.hpp"

using namespace rieszlab;

namespace {

double eigen_mass(const BetaRieszParams& p) {
    const EigenDensityParams e(p);
    quad::Options o;
    o.abs_tol = 1e-10;
    o.rel_tol = 1e-9;
    if (p.variant() == Variant::TypeI)
        return quad::ordered_simplex(
                   [&](const quad::SimplexPoint& s) {
                       const double lam[2] = {s.x, s.y}, comp[2] = {s.xc, s.yc};
                       return std::exp(log_joint_eigen_density(e, lam, comp));
                   },
                   o, o)
            .value;
    return quad::ordered_orthant(
               [&](double x, double y) {
                   const double lam[2] = {x, y};
                   return std::exp(log_joint_eigen_density(e, lam));
               },
               o, o)
        .value;
}

}  // namespace

TEST(Spectral, RhoByAlgebra) {
    EXPECT_EQ(rho(AlgebraTag::real(), 3), 0);
    EXPECT_EQ(rho(AlgebraTag::complex(), 3), -3);
    EXPECT_EQ(rho(AlgebraTag::quaternion(), 3), -6);
    EXPECT_EQ(rho(AlgebraTag::octonion(), 3), -12);
}

TEST(Spectral, VandermondeValues) {
    EXPECT_EQ(log_vandermonde_beta(std::vector<double>{0.7}, 4), 0.0);
    EXPECT_NEAR(log_vandermonde_beta(std::vector<double>{3, 1}, 2), 2 * std::log(2.0), 1e-15);
    EXPECT_NEAR(log_vandermonde_beta(std::vector<double>{4, 2, 1}, 1), std::log(6.0), 1e-15);
    EXPECT_THROW(log_vandermonde_beta(std::vector<double>{1, 2}, 1), DomainError);
    EXPECT_THROW(log_vandermonde_beta(std::vector<double>{2, 2}, 1), DomainError);
    EXPECT_THROW(log_vandermonde_beta(std::vector<double>{2, 1}, 3), DomainError);
}

TEST(Spectral, TransformConstantIsOneForScalars) {
    for (int b : {1, 2, 4, 8}) EXPECT_NEAR(log_eigen_transform_constant(AlgebraTag(b), 1), 0.0, 1e-13);
    // real 2x2: pi Gamma(1/2)^2 / Gamma_2(1) with Gamma_2(1) = pi^{1/2} Gamma(1/2) = pi
    EXPECT_NEAR(log_eigen_transform_constant(AlgebraTag::real(), 2), std::log(std::numbers::pi), 1e-13);
}

TEST(Spectral, ScalarReductionForEveryAlgebra) {
    for (int b : {1, 2, 4, 8})
        for (Family f : {Family::C, Family::K})
            for (Variant v : {Variant::TypeI, Variant::TypeII}) {
                const BetaRieszParams p(AlgebraTag(b), 1, 3.0, Weight{1.0}, 2.5, Weight{0.5}, f, v);
                const EigenDensityParams e(p);
                const double sg = f == Family::C ? 1.0 : -1.0;
                const double a = 3.0 + sg, bb = 2.5 + sg * 0.5;
                const double lnb = std::lgamma(a) + std::lgamma(bb) - std::lgamma(a + bb);
                for (double x : {0.2, 0.75}) {
                    const double lam[1] = {x};
                    const double direct = v == Variant::TypeI
                                              ? (a - 1) * std::log(x) + (bb - 1) * std::log1p(-x) - lnb
                                              : (a - 1) * std::log(x) - (a + bb) * std::log1p(x) - lnb;
                    EXPECT_NEAR(log_joint_eigen_density(e, lam), direct, 1e-12);
                }
            }
}

TEST(Spectral, DomainChecks) {
    const EigenDensityParams e(
        BetaRieszParams(AlgebraTag::real(), 2, 3, Weight{0, 0}, 3, Weight{0, 0}, Family::C, Variant::TypeI));
    EXPECT_THROW(log_joint_eigen_density(e, std::vector<double>{0.2, 0.5}), DomainError);
    EXPECT_THROW(log_joint_eigen_density(e, std::vector<double>{1.5, 0.5}), DomainError);
    EXPECT_THROW(log_joint_eigen_density(e, std::vector<double>{0.5, -0.1}), DomainError);
    EXPECT_THROW(log_joint_eigen_density(e, std::vector<double>{0.5}), DomainError);
}

TEST(Spectral, ConstantWeightDensitiesNormalizeAtTwoByTwo) {
    for (int b : {1, 2, 4})
        for (Family f : {Family::C, Family::K})
            for (Variant v : {Variant::TypeI, Variant::TypeII}) {
                const BetaRieszParams p(AlgebraTag(b), 2, 4.0 + b, Weight{1, 1}, 3.5 + b, Weight{0.5, 0.5}, f, v);
                EXPECT_NEAR(eigen_mass(p), 1.0, 1e-7) << b << to_string(f) << to_string(v);
            }
}

TEST(Spectral, NonConstantWeightsAreNotNormalized) {
    // Frozen masses of the product-of-powers form at beta = 1, m = 2.
    for (Variant v : {Variant::TypeI, Variant::TypeII}) {
        const AlgebraTag r = AlgebraTag::real();
        EXPECT_NEAR(eigen_mass(BetaRieszParams(r, 2, 5.0, Weight{1, 0}, 4.5, Weight{1, 0.5}, Family::C, v)),
                    1.0964269325, 1e-7);
        EXPECT_NEAR(eigen_mass(BetaRieszParams(r, 2, 5.0, Weight{1, 0}, 4.5, Weight{1, 0.5}, Family::K, v)),
                    0.8360311810, 1e-7);
    }
}

TEST(Spectral, LargestEigenvalueMatchesSampler) {
    // Draws follow the density with the two shape blocks exchanged.
    const AlgebraTag r = AlgebraTag::real();
    const BetaRieszParams drawn(r, 2, 3.0, Weight{0.5, 0.5}, 2.0, Weight{0, 0}, Family::C, Variant::TypeI);
    const EigenDensityParams e(drawn.swapped());
    const int n = 20000;
    std::vector<double> top;
    for (int i = 0; i < n; ++i) {
        Rng rng(61, static_cast<std::uint64_t>(i));
        top.push_back(eigenvalues_hermitian(sample_beta_riesz(drawn, rng)).front());
    }
    std::vector<double> edges, cdf;
    quad::Options o;
    o.abs_tol = 1e-10;
    o.rel_tol = 1e-9;
    for (int k = 1; k < 20; ++k) {
        const double t = k / 20.0;
        edges.push_back(t);
        cdf.push_back(t * t * quad::ordered_simplex(
                                  [&](const quad::SimplexPoint& s) {
                                      const double lam[2] = {t * s.x, t * s.y};
                                      const double comp[2] = {1 - t * s.x, 1 - t * s.y};
                                      if (!(lam[1] > 0.0 && lam[0] > lam[1])) return 0.0;
                                      return std::exp(log_joint_eigen_density(e, lam, comp));
                                  },
                                  o, o)
                                  .value);
    }
    EXPECT_TRUE(ks_binned(top, edges, cdf, 0.01).passed);
    const EigenDensityParams unswapped(drawn);
    std::vector<double> cdf_wrong;
    for (double t : edges)
        cdf_wrong.push_back(t * t * quad::ordered_simplex(
                                        [&](const quad::SimplexPoint& s) {
                                            const double lam[2] = {t * s.x, t * s.y};
                                            const double comp[2] = {1 - t * s.x, 1 - t * s.y};
                                            if (!(lam[1] > 0.0 && lam[0] > lam[1])) return 0.0;
                                            return std::exp(log_joint_eigen_density(unswapped, lam, comp));
                                        },
                                        o, o)
                                        .value);
    EXPECT_FALSE(ks_binned(top, edges, cdf_wrong, 0.01).passed);
}

TEST(Spectral, EmpiricalEigenvaluesAreDescending) {
    Rng rng(71);
    std::vector<HermitianPD> draws;
    for (int i = 0; i < 20; ++i) draws.push_back(random_hpd(AlgebraTag::quaternion(), 3, rng));
    for (const auto& ev : empirical_eigenvalues(draws)) {
        ASSERT_EQ(ev.size(), 3u);
        EXPECT_GE(ev[0], ev[1]);
        EXPECT_GE(ev[1], ev[2]);
    }
}
