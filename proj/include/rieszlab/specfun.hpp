#ifndef RIESZLAB_SPECFUN_HPP
#define RIESZLAB_SPECFUN_HPP

// Log-domain special functions of weight kappa on the cone of
// beta-Hermitian positive definite matrices.
//
// Gamma_m[a]       = pi^{m(m-1)beta/4} prod_i Gamma(a - (i-1)beta/2)
// Gamma_m[a, k]    = pi^{m(m-1)beta/4} prod_i Gamma(a + k_i - (i-1)beta/2)
// Gamma_m[a, -k]   = pi^{m(m-1)beta/4} prod_i Gamma(a - k_i - (m-i)beta/2)
// [a]_k            = prod_i (a - (i-1)beta/2)_{k_i}
//
// Every result is a LogValue so callers exponentiate only at the end.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/algebra.hpp"
#include "rieszlab/error.hpp"

namespace rieszlab {

struct LogValue {
    double log_abs = 0.0;
    int sign = 1;  // +1, -1, or 0 (exact zero; log_abs ignored)

    static LogValue from_log(double l) { return {l, 1}; }
    static LogValue zero() { return {-INFINITY, 0}; }
    static LogValue of(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0 ? 1 : -1};
    }

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    friend LogValue operator*(LogValue a, LogValue b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.log_abs + b.log_abs, a.sign * b.sign};
    }
    friend LogValue operator/(LogValue a, LogValue b) {
        require(b.sign != 0, "LogValue division by zero");
        if (a.sign == 0) return zero();
        return {a.log_abs - b.log_abs, a.sign * b.sign};
    }
};

// Non-increasing, nonnegative weight vector kappa = (k_1, ..., k_m).
class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<double> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            require(std::isfinite(parts_[i]) && parts_[i] >= 0.0, "weight entries must be finite and >= 0");
            if (i > 0) require(parts_[i] <= parts_[i - 1], "weight must be non-increasing (k1 >= k2 >= ... >= km)");
        }
    }
    Weight(std::initializer_list<double> parts) : Weight(std::vector<double>(parts)) {}

    static Weight zeros(std::size_t m) { return Weight(std::vector<double>(m, 0.0)); }
    static Weight constant(std::size_t m, double p) { return Weight(std::vector<double>(m, p)); }

    std::size_t size() const noexcept { return parts_.size(); }
    double operator[](std::size_t i) const { return parts_[i]; }
    std::span<const double> parts() const noexcept { return parts_; }
    double first() const { return parts_.front(); }
    double last() const { return parts_.back(); }

    double sum() const noexcept {
        double s = 0.0;
        for (double k : parts_) s += k;
        return s;
    }
    bool is_integer() const noexcept {
        for (double k : parts_)
            if (k != std::floor(k)) return false;
        return true;
    }
    bool is_zero() const noexcept {
        for (double k : parts_)
            if (k != 0.0) return false;
        return true;
    }
    bool is_constant() const noexcept {
        for (double k : parts_)
            if (k != parts_.front()) return false;
        return true;
    }

    friend Weight operator+(const Weight& a, const Weight& b) {
        require(a.size() == b.size(), "weight length mismatch");
        std::vector<double> r(a.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
        return Weight(std::move(r));
    }

private:
    std::vector<double> parts_;
};

namespace detail {

inline void check_dim(int m) { require(m >= 1, "matrix dimension m must be >= 1"); }

inline void check_weight(const Weight& k, int m, const char* name) {
    require(static_cast<int>(k.size()) == m, std::string("weight ") + name + " must have length m = " +
                                                 std::to_string(m) + " (got " + std::to_string(k.size()) + ")");
}

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Signed log|Gamma(x)|; x must not be a pole.
inline LogValue log_gamma_signed(double x) {
    require(!is_nonpositive_integer(x), "gamma pole at " + fmt(x));
    if (x > 0.0) return LogValue::from_log(std::lgamma(x));
    const double fl = std::floor(x);
    const int sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

inline double log_pi_power(AlgebraTag tag, int m) {
    return 0.25 * m * (m - 1) * tag.beta() * std::log(std::numbers::pi);
}

}  // namespace detail

inline LogValue ln_mv_gamma(AlgebraTag tag, int m, double a) {
    detail::check_dim(m);
    const double hb = tag.half_beta();
    require(a > (m - 1) * hb, "ln_mv_gamma requires a > (m-1)beta/2 = " + detail::fmt((m - 1) * hb) +
                                  " (got a = " + detail::fmt(a) + ")");
    double r = detail::log_pi_power(tag, m);
    for (int i = 0; i < m; ++i) r += std::lgamma(a - i * hb);
    return LogValue::from_log(r);
}

inline LogValue ln_gamma_weight_pos(AlgebraTag tag, int m, double a, const Weight& kappa) {
    detail::check_dim(m);
    detail::check_weight(kappa, m, "kappa");
    const double hb = tag.half_beta();
    require(a + kappa.last() > (m - 1) * hb,
            "generalized gamma of weight kappa requires a + k_m > (m-1)beta/2 = " + detail::fmt((m - 1) * hb));
    double r = detail::log_pi_power(tag, m);
    for (int i = 0; i < m; ++i) r += std::lgamma(a + kappa[i] - i * hb);
    return LogValue::from_log(r);
}

inline LogValue ln_gamma_weight_neg(AlgebraTag tag, int m, double a, const Weight& kappa) {
    detail::check_dim(m);
    detail::check_weight(kappa, m, "kappa");
    const double hb = tag.half_beta();
    require(a - kappa.first() > (m - 1) * hb,
            "generalized gamma of weight -kappa requires a - k_1 > (m-1)beta/2 = " + detail::fmt((m - 1) * hb));
    double r = detail::log_pi_power(tag, m);
    for (int i = 1; i <= m; ++i) r += std::lgamma(a - kappa[i - 1] - (m - i) * hb);
    return LogValue::from_log(r);
}

// Generalized Pochhammer symbol. Integer weights use the finite product
// (zero factors give an exact zero); other weights use Gamma(x+k)/Gamma(x).
inline LogValue gen_pochhammer(AlgebraTag tag, int m, double a, const Weight& kappa) {
    detail::check_dim(m);
    detail::check_weight(kappa, m, "kappa");
    const double hb = tag.half_beta();
    LogValue r = LogValue::from_log(0.0);
    for (int i = 0; i < m; ++i) {
        const double x = a - i * hb;
        const double k = kappa[i];
        if (k == std::floor(k)) {
            for (long long j = 0; j < static_cast<long long>(k); ++j) r = r * LogValue::of(x + j);
        } else {
            r = r * (detail::log_gamma_signed(x + k) / detail::log_gamma_signed(x));
        }
        if (r.sign == 0) return r;
    }
    return r;
}

inline LogValue ln_mv_beta(AlgebraTag tag, int m, double a, double b) {
    return ln_mv_gamma(tag, m, a) * ln_mv_gamma(tag, m, b) / ln_mv_gamma(tag, m, a + b);
}

// B[a, kappa; b, tau] = Gamma_m[a, kappa] Gamma_m[b, tau] / Gamma_m[a+b, kappa+tau]
inline LogValue ln_c_beta(AlgebraTag tag, int m, double a, const Weight& kappa, double b, const Weight& tau) {
    detail::check_weight(kappa, m, "kappa");
    detail::check_weight(tau, m, "tau");
    return ln_gamma_weight_pos(tag, m, a, kappa) * ln_gamma_weight_pos(tag, m, b, tau) /
           ln_gamma_weight_pos(tag, m, a + b, kappa + tau);
}

// B[a, -kappa; b, -tau] = Gamma_m[a, -kappa] Gamma_m[b, -tau] / Gamma_m[a+b, -kappa-tau]
inline LogValue ln_k_beta(AlgebraTag tag, int m, double a, const Weight& kappa, double b, const Weight& tau) {
    detail::check_weight(kappa, m, "kappa");
    detail::check_weight(tau, m, "tau");
    const LogValue num = ln_gamma_weight_neg(tag, m, a, kappa) * ln_gamma_weight_neg(tag, m, b, tau);
    // a - k1 > (m-1)beta/2 and b - t1 > (m-1)beta/2 imply the denominator's domain.
    return num / ln_gamma_weight_neg(tag, m, a + b, kappa + tau);
}

// log q_kappa(S) = sum_p (k_p - k_{p+1}) log|S_p|, k_{m+1} = 0.
inline double log_q_kappa(const HermitianPD& s, const Weight& kappa) {
    require(kappa.size() == s.dim(), "log_q_kappa: weight length must equal matrix dimension");
    const std::vector<double> minors = leading_principal_logminors(s);
    const std::size_t m = s.dim();
    double r = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        const double next = p + 1 < m ? kappa[p + 1] : 0.0;
        const double e = kappa[p] - next;
        if (e != 0.0) r += e * minors[p];
    }
    return r;
}

// Vol(V_{m,n}) = 2^m pi^{mn beta/2} / Gamma_m[n beta/2]
inline LogValue ln_stiefel_volume(AlgebraTag tag, int m, int n) {
    detail::check_dim(m);
    require(n >= m, "Stiefel manifold V_{m,n} requires n >= m");
    const LogValue g = ln_mv_gamma(tag, m, 0.5 * n * tag.beta());
    return LogValue::from_log(m * std::log(2.0) + 0.5 * m * n * tag.beta() * std::log(std::numbers::pi) -
                              g.log_abs);
}

}  // namespace rieszlab

#endif
