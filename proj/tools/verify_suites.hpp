#ifndef RIESZLAB_TOOLS_VERIFY_SUITES_HPP
#define RIESZLAB_TOOLS_VERIFY_SUITES_HPP

// Self-checks run by `riesz_lab verify`. Each check reports a statistic, the
// threshold it must stay below, and the number of points or draws used.
// Reference CDFs come from Boost.Math, independent of the library code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "rieszlab/rieszlab.hpp"

namespace rieszlab::cli {

struct Check {
    std::string name;
    GofReport report;
};

inline nlohmann::json to_json(const Check& c) {
    return {{"name", c.name},
            {"statistic", c.report.statistic},
            {"critical_value", c.report.critical_value},
            {"n", c.report.n},
            {"passed", c.report.passed}};
}

namespace suites {

inline HermitianPD scalar_hpd(AlgebraTag tag, double x) {
    return HermitianPD(DivisionMatrix::from_real(tag, 1, 1, std::vector<double>{x}));
}

inline double rel_log_err(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)); }

inline std::vector<Check> specfun(std::uint64_t seed) {
    std::vector<Check> out;
    Rng rng(seed, 1);
    const int betas[4] = {1, 2, 4, 8};

    double fact_err = 0.0, sign_err = 0.0;
    const int points = 200;
    for (int k = 0; k < points; ++k) {
        const AlgebraTag tag(betas[k % 4]);
        const int m = 1 + static_cast<int>(rng.uniform() * 6);
        const double hb = tag.half_beta();
        const Weight kap = (k % 2 == 0) ? random_integer_weight(m, 3, rng) : random_real_weight(m, 3.0, rng);
        const double a = (m - 1) * hb + 0.1 + 5.0 * rng.uniform();
        const LogValue lhs = ln_gamma_weight_pos(tag, m, a, kap);
        const LogValue rhs = gen_pochhammer(tag, m, a, kap) * ln_mv_gamma(tag, m, a);
        fact_err = std::max(fact_err, rhs.sign == 1 ? rel_log_err(lhs.log_abs, rhs.log_abs) : INFINITY);

        const Weight ik = random_integer_weight(m, 3, rng);
        const double b = (m - 1) * hb + ik.first() + 0.05 + 4.0 * rng.uniform();
        const LogValue left = ln_gamma_weight_neg(tag, m, b, ik);
        const LogValue poch = gen_pochhammer(tag, m, -b + (m - 1) * hb + 1.0, ik);
        const int parity = (static_cast<long long>(ik.sum()) % 2 == 0) ? 1 : -1;
        LogValue right = ln_mv_gamma(tag, m, b) / poch;
        right.sign *= parity;
        sign_err = std::max(sign_err, right.sign == left.sign ? rel_log_err(left.log_abs, right.log_abs) : INFINITY);
    }
    out.push_back({"weighted_gamma_factorization", make_report(fact_err, 1e-10, points)});
    out.push_back({"negative_weight_sign_identity", make_report(sign_err, 1e-10, points)});

    double add_err = 0.0, const_err = 0.0, cong_err = 0.0, inv_cong_err = 0.0;
    const int mats = 100;
    for (int k = 0; k < mats; ++k) {
        const AlgebraTag tag(betas[k % 3]);
        const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 5);
        const HermitianPD s = random_hpd(tag, m, rng);
        const Weight k1 = random_real_weight(m, 4.0, rng), k2 = random_real_weight(m, 4.0, rng);
        add_err = std::max(add_err, std::abs(log_q_kappa(s, k1 + k2) - log_q_kappa(s, k1) - log_q_kappa(s, k2)));
        const double p = 3.0 * rng.uniform();
        const_err = std::max(const_err, std::abs(log_q_kappa(s, Weight::constant(m, p)) - p * logdet_hpd(s)));
        const UpperTriangularPosDiag bt = random_upper(tag, m, rng);
        const HermitianPD bb(bt.gram());
        const HermitianPD cong(conj_congruence(bt.matrix(), s.matrix()));
        cong_err = std::max(cong_err, std::abs(log_q_kappa(cong, k1) - log_q_kappa(bb, k1) - log_q_kappa(s, k1)));
        const HermitianPD icong(conj_congruence(bt.inverse(), s.matrix()));
        inv_cong_err =
            std::max(inv_cong_err, std::abs(log_q_kappa(icong, k1) - log_q_kappa(s, k1) + log_q_kappa(bb, k1)));
    }
    out.push_back({"q_weight_additivity", make_report(add_err, 1e-9, mats)});
    out.push_back({"q_constant_weight_is_determinant_power", make_report(const_err, 1e-9, mats)});
    out.push_back({"q_upper_triangular_congruence", make_report(cong_err, 1e-9, mats)});
    out.push_back({"q_inverse_upper_triangular_congruence", make_report(inv_cong_err, 1e-9, mats)});

    const double g = ln_mv_gamma(AlgebraTag::real(), 1, 0.5).log_abs;
    out.push_back({"mv_gamma_scalar_half", make_report(std::abs(g - 0.5 * std::log(std::numbers::pi)), 1e-14, 1)});
    return out;
}

inline std::vector<Check> riesz(std::uint64_t seed) {
    std::vector<Check> out;
    double worst = 0.0;
    int count = 0;
    for (int beta : {1, 2, 4})
        for (Variant v : {Variant::TypeI, Variant::TypeII})
            for (double a : {1.5, 3.25}) {
                const AlgebraTag tag(beta);
                const RieszParams p(a, Weight{1.0}, scalar_hpd(tag, 0.8), v);
                auto dens = [&](double x) { return std::exp(log_density_riesz(p, scalar_hpd(tag, x))); };
                auto inv = [&](double y) { return std::exp(log_density_inverse_riesz(p, scalar_hpd(tag, y))); };
                worst = std::max(worst, std::abs(quad::half_line(dens).value - 1.0));
                worst = std::max(worst, std::abs(quad::half_line(inv).value - 1.0));
                count += 2;
            }
    out.push_back({"riesz_normalization_m1", make_report(worst, 1e-8, count)});

    // Bartlett diagonal marginals, beta = 2, m = 3, type I.
    const int n = 5000;
    const RieszParams p = RieszParams::standard(AlgebraTag::complex(), 3, 2.5, Weight{2, 1, 0}, Variant::TypeI);
    std::vector<std::vector<double>> t2(3);
    std::vector<double> gv;
    for (int i = 0; i < n; ++i) {
        Rng rng(seed, 100 + static_cast<std::uint64_t>(i));
        const HermitianPD x = sample_riesz_bartlett(p, rng);
        for (std::size_t d = 0; d < 3; ++d) t2[d].push_back(x.cholesky().diag(d) * x.cholesky().diag(d));
        gv.push_back(std::exp(logdet_hpd(x)));
    }
    for (int d = 0; d < 3; ++d) {
        const double shape = p.bartlett_shape(d);
        auto cdf = [&](double x) { return boost::math::gamma_p(shape, p.beta() * x); };
        out.push_back({"bartlett_diagonal_ks_" + std::to_string(d), ks_test(t2[d], cdf, 0.01)});
    }
    double mean = 1.0, second = 1.0;
    for (int d = 0; d < 3; ++d) {
        const double s = p.bartlett_shape(d);
        mean *= s / p.beta();
        second *= s * (s + 1.0) / (p.beta() * p.beta());
    }
    out.push_back({"generalized_variance_mean", moment_report(gv, mean, second - mean * mean)});
    return out;
}

inline std::vector<Check> beta(std::uint64_t seed) {
    std::vector<Check> out;
    double worst = 0.0, link = 0.0;
    int count = 0;
    for (int b : {1, 2, 4})
        for (Family f : {Family::C, Family::K}) {
            const AlgebraTag tag(b);
            const BetaRieszParams p1(tag, 1, 3.5, Weight{1.0}, 2.25, Weight{0.5}, f, Variant::TypeI);
            const BetaRieszParams p2 = p1.with_variant(Variant::TypeII);
            auto d1 = [&](quad::UnitPoint u) {
                return std::exp(log_density_beta_riesz_type1(p1, scalar_hpd(tag, u.x), scalar_hpd(tag, u.xc)));
            };
            auto d2 = [&](double r) { return std::exp(log_density_beta_riesz(p2, scalar_hpd(tag, r))); };
            worst = std::max(worst, std::abs(quad::unit_interval(d1).value - 1.0));
            worst = std::max(worst, std::abs(quad::half_line(d2).value - 1.0));
            for (double r : {0.1, 1.0, 7.5}) {
                const double lhs = log_density_beta_riesz(p2, scalar_hpd(tag, r));
                const double rhs = log_density_beta_riesz(p1, scalar_hpd(tag, r / (1.0 + r))) - 2.0 * std::log1p(r);
                link = std::max(link, std::abs(lhs - rhs));
            }
            count += 2;
        }
    out.push_back({"beta_riesz_normalization_m1", make_report(worst, 1e-8, count)});
    out.push_back({"beta_riesz_type2_type1_linkage", make_report(link, 1e-10, count / 2 * 3)});

    const int n = 5000;
    const double a = 2.0, b = 3.5;
    const BetaRieszParams q1(AlgebraTag::real(), 1, a, Weight{0.0}, b, Weight{0.0}, Family::C, Variant::TypeI);
    const BetaRieszParams q2 = q1.with_variant(Variant::TypeII);
    std::vector<double> s1, r2;
    for (int i = 0; i < n; ++i) {
        Rng g1(seed, 200 + static_cast<std::uint64_t>(i)), g2(seed, 200 + n + static_cast<std::uint64_t>(i));
        s1.push_back(sample_beta_riesz_type1(q1, g1).matrix()(0, 0).real());
        r2.push_back(sample_beta_riesz_type2(q2, g2).matrix()(0, 0).real());
    }
    out.push_back({"type1_beta_reduction_ks", ks_test(s1, [&](double x) { return boost::math::ibeta(b, a, x); }, 0.01)});
    out.push_back({"type2_beta_prime_reduction_ks",
                   ks_test(r2, [&](double x) { return boost::math::ibeta(b, a, x / (1.0 + x)); }, 0.01)});
    return out;
}

inline std::vector<Check> eigen(std::uint64_t) {
    std::vector<Check> out;
    double pref = 0.0, reduce = 0.0;
    for (int b : {1, 2, 4, 8}) {
        const AlgebraTag tag(b);
        pref = std::max(pref, std::abs(log_eigen_transform_constant(tag, 1)));
        for (Variant v : {Variant::TypeI, Variant::TypeII}) {
            const BetaRieszParams p(tag, 1, 2.5, Weight{1.0}, 1.75, Weight{0.5}, Family::C, v);
            const EigenDensityParams e(p);
            const double x = v == Variant::TypeI ? 0.3 : 2.0;
            const double direct = v == Variant::TypeI
                                      ? (2.5 + 1.0 - 1.0) * std::log(x) + (1.75 + 0.5 - 1.0) * std::log1p(-x)
                                      : (2.5 + 1.0 - 1.0) * std::log(x) - (2.5 + 1.75 + 1.5) * std::log1p(x);
            const double lnb = std::lgamma(3.5) + std::lgamma(2.25) - std::lgamma(5.75);
            const std::vector<double> lam{x};
            reduce = std::max(reduce, std::abs(log_joint_eigen_density(e, lam) - (direct - lnb)));
        }
    }
    out.push_back({"eigen_prefactor_m1", make_report(pref, 1e-12, 4)});
    out.push_back({"eigen_density_scalar_reduction", make_report(reduce, 1e-12, 8)});

    const BetaRieszParams p(AlgebraTag::real(), 2, 1.0, Weight::zeros(2), 1.0, Weight::zeros(2), Family::C,
                            Variant::TypeI);
    const EigenDensityParams e(p);
    quad::Options o;
    o.abs_tol = 1e-9;
    const double total = quad::ordered_simplex(
                             [&](const quad::SimplexPoint& s) {
                                 const double lam[2] = {s.x, s.y}, comp[2] = {s.xc, s.yc};
                                 return std::exp(log_joint_eigen_density(e, lam, comp));
                             },
                             o, o)
                             .value;
    out.push_back({"eigen_density_simplex_normalization_m2", make_report(std::abs(total - 1.0), 1e-6, 1)});
    return out;
}

}  // namespace suites

inline std::vector<Check> run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "specfun") return suites::specfun(seed);
    if (name == "riesz") return suites::riesz(seed);
    if (name == "beta") return suites::beta(seed);
    if (name == "eigen") return suites::eigen(seed);
    if (name == "all") {
        std::vector<Check> all;
        for (const char* s : {"specfun", "riesz", "beta", "eigen"}) {
            auto part = run_suite(s, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw DomainError("unknown verify suite '" + name + "' (expected specfun, riesz, beta, eigen or all)");
}

}  // namespace rieszlab::cli

#endif
