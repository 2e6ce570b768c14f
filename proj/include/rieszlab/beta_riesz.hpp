#ifndef RIESZLAB_BETA_RIESZ_HPP
#define RIESZLAB_BETA_RIESZ_HPP

// Beta-Riesz distributions of family C (weights enter as q_k) and family K
// (weights enter as q_k^{-1}), each of type I (0 < S < I) and type II (R > 0).
// With p = (m-1)beta/2 + 1:
//
//   C-I : |S|^{a-p} q_k(S) |I-S|^{b-p} q_t(I-S)                   / B_c
//   C-II: |R|^{a-p} q_k(R) |I+R|^{-(a+b)} q_{k+t}(I+R)^{-1}       / B_c
//   K-I : |S|^{a-p} q_k(S)^{-1} |I-S|^{b-p} q_t(I-S)^{-1}         / B_k
//   K-II: |R|^{a-p} q_k(R)^{-1} |I+R|^{-(a+b)} q_{k+t}(I+R)       / B_k
//
// B_c = Gamma_m[a,k] Gamma_m[b,t] / Gamma_m[a+b,k+t] and B_k is the same
// with -k, -t. The C family integrates to one for every valid weight; the K
// family is normalized at m = 1 and for constant weights.
//
// Samplers use pairs of independent Riesz matrices with Sigma = I (type I
// Riesz for family C, type II for family K), X1 ~ (a, k), X2 ~ (b, t):
//   type I : X1 + X2 = U*U,  S = U*^{-1} X2 U^{-1}
//   type II: X1 = U*U,       R = U^{-1} X2 U*^{-1}
// The draws follow the density above with (a, k) and (b, t) interchanged:
// at m = 1 and zero weights S ~ Beta(b, a) and R ~ BetaPrime(b, a).
// Use BetaRieszParams::swapped() to pair draws with a density.

#include <cmath>
#include <cstddef>
#include <string>

#include "rieszlab/algebra.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/riesz.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/specfun.hpp"

namespace rieszlab {

enum class Family { C, K };

inline const char* to_string(Family f) { return f == Family::C ? "C" : "K"; }

class BetaRieszParams {
public:
    BetaRieszParams(AlgebraTag tag, int m, double a, Weight kappa, double b, Weight tau, Family family,
                    Variant variant)
        : tag_(tag), m_(m), a_(a), b_(b), kappa_(std::move(kappa)), tau_(std::move(tau)), family_(family),
          variant_(variant) {
        detail::check_dim(m_);
        detail::check_weight(kappa_, m_, "kappa");
        detail::check_weight(tau_, m_, "tau");
        require(std::isfinite(a_) && std::isfinite(b_), "shape parameters a, b must be finite");
        const double bound = (m_ - 1) * tag_.half_beta();
        const std::string bs = detail::fmt(bound);
        if (family_ == Family::C) {
            require(a_ + kappa_.last() > bound, "c-beta-Riesz requires a + k_m > (m-1)beta/2 = " + bs);
            require(b_ + tau_.last() > bound, "c-beta-Riesz requires b + t_m > (m-1)beta/2 = " + bs);
        } else {
            require(a_ - kappa_.first() > bound, "k-beta-Riesz requires a - k_1 > (m-1)beta/2 = " + bs);
            require(b_ - tau_.first() > bound, "k-beta-Riesz requires b - t_1 > (m-1)beta/2 = " + bs);
        }
    }

    AlgebraTag tag() const noexcept { return tag_; }
    int beta() const noexcept { return tag_.beta(); }
    int m() const noexcept { return m_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const Weight& kappa() const noexcept { return kappa_; }
    const Weight& tau() const noexcept { return tau_; }
    Family family() const noexcept { return family_; }
    Variant variant() const noexcept { return variant_; }

    // (m-1)beta/2 + 1
    double p() const noexcept { return (m_ - 1) * tag_.half_beta() + 1.0; }

    double log_normalizer() const {
        return family_ == Family::C ? ln_c_beta(tag_, m_, a_, kappa_, b_, tau_).log_abs
                                    : ln_k_beta(tag_, m_, a_, kappa_, b_, tau_).log_abs;
    }

    BetaRieszParams swapped() const { return {tag_, m_, b_, tau_, a_, kappa_, family_, variant_}; }
    BetaRieszParams with_variant(Variant v) const { return {tag_, m_, a_, kappa_, b_, tau_, family_, v}; }

    // The Riesz laws of the two matrices in the pair constructions.
    RieszParams first_riesz() const { return RieszParams::standard(tag_, m_, a_, kappa_, riesz_variant()); }
    RieszParams second_riesz() const { return RieszParams::standard(tag_, m_, b_, tau_, riesz_variant()); }
    Variant riesz_variant() const noexcept { return family_ == Family::C ? Variant::TypeI : Variant::TypeII; }

    // Pair constructions require a - k_1 > (m-1)beta/2 and b - t_1 > (m-1)beta/2.
    void require_construction_domain() const {
        require_matrix_algebra(tag_, "beta-Riesz sampler");
        const double bound = (m_ - 1) * tag_.half_beta();
        const std::string bs = detail::fmt(bound);
        require(a_ - kappa_.first() > bound, "beta-Riesz sampler requires a - k_1 > (m-1)beta/2 = " + bs);
        require(b_ - tau_.first() > bound, "beta-Riesz sampler requires b - t_1 > (m-1)beta/2 = " + bs);
    }

private:
    AlgebraTag tag_;
    int m_;
    double a_, b_;
    Weight kappa_, tau_;
    Family family_;
    Variant variant_;
};

namespace detail {

inline void check_same_space(const BetaRieszParams& p, const HermitianPD& x) {
    require(x.tag() == p.tag(), "matrix algebra does not match the distribution's beta");
    require(static_cast<int>(x.dim()) == p.m(), "matrix dimension does not match m");
}

inline DivisionMatrix identity_minus(const DivisionMatrix& s) {
    DivisionMatrix r = DivisionMatrix::identity(s.tag(), s.rows());
    r -= s;
    return r;
}

inline DivisionMatrix identity_plus(const DivisionMatrix& s) {
    DivisionMatrix r = DivisionMatrix::identity(s.tag(), s.rows());
    r += s;
    return r;
}

}  // namespace detail

// Type I density at S given both S and C = I - S (C supplied separately so
// callers that know the complement accurately keep full precision).
inline double log_density_beta_riesz_type1(const BetaRieszParams& p, const HermitianPD& s, const HermitianPD& c) {
    require(p.variant() == Variant::TypeI, "type I density called with type II parameters");
    detail::check_same_space(p, s);
    detail::check_same_space(p, c);
    const double sign = p.family() == Family::C ? 1.0 : -1.0;
    return -p.log_normalizer() + (p.a() - p.p()) * logdet_hpd(s) + sign * log_q_kappa(s, p.kappa()) +
           (p.b() - p.p()) * logdet_hpd(c) + sign * log_q_kappa(c, p.tau());
}

inline double log_density_beta_riesz(const BetaRieszParams& p, const HermitianPD& x) {
    detail::check_same_space(p, x);
    if (p.variant() == Variant::TypeI) {
        auto c = HermitianPD::try_make(detail::identity_minus(x.matrix()));
        require(c.has_value(), "type I beta-Riesz density requires 0 < S < I (I - S is not positive definite)");
        return log_density_beta_riesz_type1(p, x, *c);
    }
    const HermitianPD ipr(detail::identity_plus(x.matrix()));
    const double sign = p.family() == Family::C ? 1.0 : -1.0;
    return -p.log_normalizer() + (p.a() - p.p()) * logdet_hpd(x) + sign * log_q_kappa(x, p.kappa()) -
           (p.a() + p.b()) * logdet_hpd(ipr) - sign * log_q_kappa(ipr, p.kappa() + p.tau());
}

// Draw together with its complement I - S, both positive definite.
struct TypeOneDraw {
    HermitianPD s;
    HermitianPD complement;
};

inline constexpr int kBetaRieszMaxRetries = 100;

inline TypeOneDraw sample_beta_riesz_type1_pair(const BetaRieszParams& p, Rng& rng) {
    require(p.variant() == Variant::TypeI, "type I sampler called with type II parameters");
    p.require_construction_domain();
    const RieszParams r1 = p.first_riesz();
    const RieszParams r2 = p.second_riesz();
    for (int attempt = 0; attempt < kBetaRieszMaxRetries; ++attempt) {
        const HermitianPD x1 = sample_riesz_bartlett(r1, rng);
        const HermitianPD x2 = sample_riesz_bartlett(r2, rng);
        DivisionMatrix y = x1.matrix();
        y += x2.matrix();
        auto ypd = HermitianPD::try_make(y);
        if (!ypd) continue;
        const DivisionMatrix uinv = ypd->cholesky().inverse();
        auto s = HermitianPD::try_make(conj_congruence(uinv, x2.matrix()));
        auto c = HermitianPD::try_make(conj_congruence(uinv, x1.matrix()));
        if (!s || !c) continue;
        if (eigenvalues_hermitian(*s).back() < 1e-300 || eigenvalues_hermitian(*c).back() < 1e-300) continue;
        return {std::move(*s), std::move(*c)};
    }
    throw NumericalError("beta-Riesz type I draw rejected " + std::to_string(kBetaRieszMaxRetries) +
                         " times (boundary of 0 < S < I)");
}

inline HermitianPD sample_beta_riesz_type1(const BetaRieszParams& p, Rng& rng) {
    return sample_beta_riesz_type1_pair(p, rng).s;
}

inline HermitianPD sample_beta_riesz_type2(const BetaRieszParams& p, Rng& rng) {
    require(p.variant() == Variant::TypeII, "type II sampler called with type I parameters");
    p.require_construction_domain();
    const RieszParams r1 = p.first_riesz();
    const RieszParams r2 = p.second_riesz();
    for (int attempt = 0; attempt < kBetaRieszMaxRetries; ++attempt) {
        const HermitianPD x1 = sample_riesz_bartlett(r1, rng);
        const HermitianPD x2 = sample_riesz_bartlett(r2, rng);
        const DivisionMatrix uinv_adj = x1.cholesky().inverse().conj_transpose();
        auto r = HermitianPD::try_make(conj_congruence(uinv_adj, x2.matrix()));
        if (r) return std::move(*r);
    }
    throw NumericalError("beta-Riesz type II draw rejected " + std::to_string(kBetaRieszMaxRetries) + " times");
}

inline HermitianPD sample_beta_riesz(const BetaRieszParams& p, Rng& rng) {
    return p.variant() == Variant::TypeI ? sample_beta_riesz_type1(p, rng) : sample_beta_riesz_type2(p, rng);
}

// S = N*^{-1} R N^{-1} with I + R = N*N; maps type II draws into (0, I).
inline HermitianPD type2_to_type1(const HermitianPD& r) {
    const HermitianPD ipr(detail::identity_plus(r.matrix()));
    return HermitianPD(conj_congruence(ipr.cholesky().inverse(), r.matrix()));
}

}  // namespace rieszlab

#endif
