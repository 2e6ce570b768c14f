#ifndef RIESZLAB_ALGEBRA_HPP
#define RIESZLAB_ALGEBRA_HPP

// Scalars and dense matrices over the real normed division algebras
// R, C, H (beta = 1, 2, 4) and scalar-only octonions (beta = 8).
//
// Component layout follows the Cayley-Dickson doubling: a number of
// dimension 2n is a pair (p, q) meaning p + q*e with e the new unit, so
// for quaternions the components are (1, i, j, k) with ij = k.
// Matrix routines (products, Cholesky, inverse, spectra) reject beta = 8
// because octonion multiplication is not associative.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/error.hpp"

namespace rieszlab {

class AlgebraTag {
public:
    explicit AlgebraTag(int beta) : beta_(beta) {
        require(beta == 1 || beta == 2 || beta == 4 || beta == 8,
                "algebra dimension beta must be one of 1, 2, 4, 8 (got " + std::to_string(beta) + ")");
    }

    int beta() const noexcept { return beta_; }
    double half_beta() const noexcept { return 0.5 * beta_; }
    bool supports_matrices() const noexcept { return beta_ <= 4; }

    friend bool operator==(AlgebraTag a, AlgebraTag b) noexcept { return a.beta_ == b.beta_; }

    static AlgebraTag real() { return AlgebraTag(1); }
    static AlgebraTag complex() { return AlgebraTag(2); }
    static AlgebraTag quaternion() { return AlgebraTag(4); }
    static AlgebraTag octonion() { return AlgebraTag(8); }

private:
    int beta_;
};

inline void require_matrix_algebra(AlgebraTag tag, const char* op) {
    require(tag.supports_matrices(),
            std::string(op) + " requires beta in {1, 2, 4}; octonion (beta = 8) matrices are not supported");
}

class DivisionScalar {
public:
    static constexpr int kMaxBeta = 8;

    DivisionScalar() = default;
    explicit DivisionScalar(AlgebraTag tag, double re = 0.0) : beta_(tag.beta()) { c_[0] = re; }
    DivisionScalar(AlgebraTag tag, std::span<const double> comps) : beta_(tag.beta()) {
        require(static_cast<int>(comps.size()) == beta_,
                "scalar needs exactly beta = " + std::to_string(beta_) + " components");
        std::copy(comps.begin(), comps.end(), c_.begin());
    }

    int beta() const noexcept { return beta_; }
    AlgebraTag tag() const { return AlgebraTag(beta_); }

    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    double real() const noexcept { return c_[0]; }
    std::span<const double> components() const noexcept {
        return {c_.data(), static_cast<std::size_t>(beta_)};
    }

    DivisionScalar conj() const noexcept {
        DivisionScalar r = *this;
        for (int i = 1; i < beta_; ++i) r.c_[i] = -r.c_[i];
        return r;
    }

    double norm2() const noexcept {
        double s = 0.0;
        for (int i = 0; i < beta_; ++i) s += c_[i] * c_[i];
        return s;
    }
    double norm() const noexcept { return std::sqrt(norm2()); }

    // Largest absolute imaginary component.
    double imag_abs_max() const noexcept {
        double s = 0.0;
        for (int i = 1; i < beta_; ++i) s = std::max(s, std::abs(c_[i]));
        return s;
    }

    DivisionScalar& operator+=(const DivisionScalar& o) {
        check_same(o);
        for (int i = 0; i < beta_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    DivisionScalar& operator-=(const DivisionScalar& o) {
        check_same(o);
        for (int i = 0; i < beta_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    DivisionScalar& operator*=(double s) noexcept {
        for (int i = 0; i < beta_; ++i) c_[i] *= s;
        return *this;
    }

    friend DivisionScalar operator+(DivisionScalar a, const DivisionScalar& b) { return a += b; }
    friend DivisionScalar operator-(DivisionScalar a, const DivisionScalar& b) { return a -= b; }
    friend DivisionScalar operator-(DivisionScalar a) noexcept { return a *= -1.0; }
    friend DivisionScalar operator*(DivisionScalar a, double s) noexcept { return a *= s; }
    friend DivisionScalar operator*(double s, DivisionScalar a) noexcept { return a *= s; }

    friend DivisionScalar operator*(const DivisionScalar& a, const DivisionScalar& b) {
        a.check_same(b);
        DivisionScalar r;
        r.beta_ = a.beta_;
        multiply(a.c_.data(), b.c_.data(), r.c_.data(), a.beta_);
        return r;
    }

    friend bool operator==(const DivisionScalar& a, const DivisionScalar& b) noexcept {
        return a.beta_ == b.beta_ && a.c_ == b.c_;
    }

private:
    void check_same(const DivisionScalar& o) const {
        require(beta_ == o.beta_, "scalar algebra mismatch");
    }

    // out = x * y for n-component numbers, n in {1,2,4,8}.
    static void multiply(const double* x, const double* y, double* out, int n) noexcept {
        switch (n) {
        case 1:
            out[0] = x[0] * y[0];
            return;
        case 2:
            out[0] = x[0] * y[0] - x[1] * y[1];
            out[1] = x[0] * y[1] + x[1] * y[0];
            return;
        case 4:
            out[0] = x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
            out[1] = x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
            out[2] = x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1];
            out[3] = x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
            return;
        default: {
            // (p, q)(r, s) = (pr - conj(s) q, s p + q conj(r)) on quaternion halves.
            const double* p = x;
            const double* q = x + 4;
            const double* r = y;
            const double* s = y + 4;
            const double rc[4] = {r[0], -r[1], -r[2], -r[3]};
            const double sc[4] = {s[0], -s[1], -s[2], -s[3]};
            double t1[4], t2[4];
            multiply(p, r, t1, 4);
            multiply(sc, q, t2, 4);
            for (int i = 0; i < 4; ++i) out[i] = t1[i] - t2[i];
            multiply(s, p, t1, 4);
            multiply(q, rc, t2, 4);
            for (int i = 0; i < 4; ++i) out[4 + i] = t1[i] + t2[i];
            return;
        }
        }
    }

    int beta_ = 1;
    std::array<double, kMaxBeta> c_{};
};

class DivisionMatrix {
public:
    DivisionMatrix(AlgebraTag tag, std::size_t rows, std::size_t cols)
        : tag_(tag), rows_(rows), cols_(cols), data_(rows * cols, DivisionScalar(tag)) {
        require(rows > 0 && cols > 0, "matrix dimensions must be positive");
    }

    static DivisionMatrix identity(AlgebraTag tag, std::size_t n) {
        DivisionMatrix m(tag, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i)[0] = 1.0;
        return m;
    }

    // Real-valued matrix from row-major values.
    static DivisionMatrix from_real(AlgebraTag tag, std::size_t rows, std::size_t cols,
                                    std::span<const double> values) {
        require(values.size() == rows * cols, "value count does not match matrix shape");
        DivisionMatrix m(tag, rows, cols);
        for (std::size_t k = 0; k < values.size(); ++k) m.data_[k][0] = values[k];
        return m;
    }

    static DivisionMatrix diagonal(AlgebraTag tag, std::span<const double> diag) {
        DivisionMatrix m(tag, diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i)[0] = diag[i];
        return m;
    }

    AlgebraTag tag() const noexcept { return tag_; }
    int beta() const noexcept { return tag_.beta(); }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const DivisionScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    DivisionScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    DivisionMatrix conj_transpose() const {
        DivisionMatrix r(tag_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
        return r;
    }

    DivisionMatrix& operator+=(const DivisionMatrix& o) {
        check_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    DivisionMatrix& operator-=(const DivisionMatrix& o) {
        check_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    DivisionMatrix& operator*=(double s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend DivisionMatrix operator+(DivisionMatrix a, const DivisionMatrix& b) { return a += b; }
    friend DivisionMatrix operator-(DivisionMatrix a, const DivisionMatrix& b) { return a -= b; }
    friend DivisionMatrix operator*(DivisionMatrix a, double s) { return a *= s; }
    friend DivisionMatrix operator*(double s, DivisionMatrix a) { return a *= s; }

    double max_abs() const noexcept {
        double s = 0.0;
        for (const auto& x : data_) s = std::max(s, x.norm());
        return s;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (const auto& x : data_) s += x.norm2();
        return std::sqrt(s);
    }

    friend bool operator==(const DivisionMatrix& a, const DivisionMatrix& b) noexcept {
        return a.tag_ == b.tag_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_shape(const DivisionMatrix& o) const {
        require(tag_ == o.tag_, "matrix algebra mismatch");
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    }

    AlgebraTag tag_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<DivisionScalar> data_;
};

inline double max_abs_diff(const DivisionMatrix& a, const DivisionMatrix& b) {
    return (a - b).max_abs();
}

inline DivisionMatrix matmul(const DivisionMatrix& a, const DivisionMatrix& b) {
    require(a.tag() == b.tag(), "matmul: algebra mismatch");
    require_matrix_algebra(a.tag(), "matmul");
    require(a.cols() == b.rows(), "matmul: inner dimensions disagree (" + std::to_string(a.cols()) +
                                      " vs " + std::to_string(b.rows()) + ")");
    DivisionMatrix r(a.tag(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const DivisionScalar& aik = a(i, k);
            if (aik.norm2() == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

// A* S A with the result forced exactly Hermitian (upper triangle computed,
// lower mirrored, diagonal made real).
inline DivisionMatrix conj_congruence(const DivisionMatrix& a, const DivisionMatrix& s) {
    require(s.is_square() && s.rows() == a.rows(), "conj_congruence: shape mismatch");
    const DivisionMatrix sa = matmul(s, a);
    const std::size_t n = a.cols();
    DivisionMatrix r(a.tag(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            DivisionScalar acc(a.tag());
            for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, i).conj() * sa(k, j);
            if (i == j) {
                r(i, i) = DivisionScalar(a.tag(), acc.real());
            } else {
                r(i, j) = acc;
                r(j, i) = acc.conj();
            }
        }
    return r;
}

// A* A, exactly Hermitian.
inline DivisionMatrix gram(const DivisionMatrix& a) {
    require_matrix_algebra(a.tag(), "gram");
    const std::size_t n = a.cols();
    DivisionMatrix r(a.tag(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            DivisionScalar acc(a.tag());
            for (std::size_t k = 0; k < a.rows(); ++k) acc += a(k, i).conj() * a(k, j);
            if (i == j) {
                r(i, i) = DivisionScalar(a.tag(), acc.real());
            } else {
                r(i, j) = acc;
                r(j, i) = acc.conj();
            }
        }
    return r;
}

// Re tr(A B) without forming the product.
inline double re_trace_product(const DivisionMatrix& a, const DivisionMatrix& b) {
    require(a.rows() == b.cols() && a.cols() == b.rows(), "re_trace_product: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += (a(i, k) * b(k, i)).real();
    return s;
}

inline double re_trace(const DivisionMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i).real();
    return s;
}

// Upper-triangular matrix with real, strictly positive diagonal.
class UpperTriangularPosDiag {
public:
    explicit UpperTriangularPosDiag(DivisionMatrix t) : t_(std::move(t)) {
        require(t_.is_square(), "triangular factor must be square");
        require_matrix_algebra(t_.tag(), "UpperTriangularPosDiag");
        for (std::size_t i = 0; i < t_.rows(); ++i) {
            for (std::size_t j = 0; j < i; ++j)
                require(t_(i, j).norm2() == 0.0, "triangular factor has a nonzero entry below the diagonal");
            require(t_(i, i).imag_abs_max() <= 1e-12, "triangular factor has a non-real diagonal");
            require(t_(i, i).real() > 0.0, "triangular factor has a nonpositive diagonal");
            t_(i, i) = DivisionScalar(t_.tag(), t_(i, i).real());
        }
    }

    const DivisionMatrix& matrix() const noexcept { return t_; }
    std::size_t dim() const noexcept { return t_.rows(); }
    AlgebraTag tag() const noexcept { return t_.tag(); }
    double diag(std::size_t i) const { return t_(i, i).real(); }

    // T^{-1}, also upper triangular.
    DivisionMatrix inverse() const {
        const std::size_t n = dim();
        DivisionMatrix v(t_.tag(), n, n);
        for (std::size_t j = 0; j < n; ++j) {
            v(j, j) = DivisionScalar(t_.tag(), 1.0 / diag(j));
            for (std::size_t ii = j; ii-- > 0;) {
                DivisionScalar acc(t_.tag());
                for (std::size_t k = ii + 1; k <= j; ++k) acc += t_(ii, k) * v(k, j);
                v(ii, j) = acc * (-1.0 / diag(ii));
            }
        }
        return v;
    }

    // T* T
    DivisionMatrix gram() const { return rieszlab::gram(t_); }

private:
    DivisionMatrix t_;
};

namespace detail {

// Upper Cholesky factor S = T* T, or nullopt when a pivot is not positive.
inline std::optional<DivisionMatrix> try_cholesky_upper(const DivisionMatrix& s) {
    const AlgebraTag tag = s.tag();
    const std::size_t n = s.rows();
    DivisionMatrix t(tag, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double pivot = s(i, i).real();
        for (std::size_t k = 0; k < i; ++k) pivot -= t(k, i).norm2();
        if (!(pivot > 0.0) || !std::isfinite(pivot)) return std::nullopt;
        const double tii = std::sqrt(pivot);
        t(i, i) = DivisionScalar(tag, tii);
        for (std::size_t j = i + 1; j < n; ++j) {
            DivisionScalar acc = s(i, j);
            for (std::size_t k = 0; k < i; ++k) acc -= t(k, i).conj() * t(k, j);
            t(i, j) = acc * (1.0 / tii);
        }
    }
    return t;
}

}  // namespace detail

// Hermitian positive definite matrix together with its upper Cholesky factor.
class HermitianPD {
public:
    explicit HermitianPD(const DivisionMatrix& s) : s_(symmetrized(s)), chol_(factor(s_)) {}

    static std::optional<HermitianPD> try_make(const DivisionMatrix& s) {
        try {
            return HermitianPD(s);
        } catch (const NumericalError&) {
            return std::nullopt;
        }
    }

    // S = T* T from a known factor; the matrix is formed exactly Hermitian.
    static HermitianPD from_factor(UpperTriangularPosDiag t) {
        DivisionMatrix s = t.gram();
        return HermitianPD(std::move(s), std::move(t));
    }

    static HermitianPD identity(AlgebraTag tag, std::size_t n) {
        return from_factor(UpperTriangularPosDiag(DivisionMatrix::identity(tag, n)));
    }

    const DivisionMatrix& matrix() const noexcept { return s_; }
    const UpperTriangularPosDiag& cholesky() const noexcept { return chol_; }
    std::size_t dim() const noexcept { return s_.rows(); }
    AlgebraTag tag() const noexcept { return s_.tag(); }

private:
    HermitianPD(DivisionMatrix s, UpperTriangularPosDiag t) : s_(std::move(s)), chol_(std::move(t)) {}

    static DivisionMatrix symmetrized(const DivisionMatrix& s) {
        require(s.is_square(), "Hermitian matrix must be square");
        require_matrix_algebra(s.tag(), "HermitianPD");
        const std::size_t n = s.rows();
        const double scale = 1.0 + s.max_abs();
        DivisionMatrix r(s.tag(), n, n);
        for (std::size_t i = 0; i < n; ++i) {
            require(s(i, i).imag_abs_max() <= 1e-12, "Hermitian matrix has a non-real diagonal entry");
            r(i, i) = DivisionScalar(s.tag(), s(i, i).real());
            for (std::size_t j = i + 1; j < n; ++j) {
                require((s(i, j) - s(j, i).conj()).norm() <= 1e-9 * scale, "matrix is not Hermitian");
                r(i, j) = s(i, j);
                r(j, i) = s(i, j).conj();
            }
        }
        return r;
    }

    static UpperTriangularPosDiag factor(const DivisionMatrix& s) {
        auto t = detail::try_cholesky_upper(s);
        if (!t) throw NumericalError("matrix is not positive definite (Cholesky pivot <= 0)");
        return UpperTriangularPosDiag(std::move(*t));
    }

    DivisionMatrix s_;
    UpperTriangularPosDiag chol_;
};

inline const UpperTriangularPosDiag& cholesky_upper(const HermitianPD& s) { return s.cholesky(); }

inline double logdet_hpd(const HermitianPD& s) {
    double r = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) r += 2.0 * std::log(s.cholesky().diag(i));
    return r;
}

// log |S_p| for the leading p x p blocks, p = 1..m.
inline std::vector<double> leading_principal_logminors(const HermitianPD& s) {
    std::vector<double> out(s.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        acc += 2.0 * std::log(s.cholesky().diag(i));
        out[i] = acc;
    }
    return out;
}

inline HermitianPD inverse_hpd(const HermitianPD& s) {
    // S^{-1} = V V* with V = T^{-1}; the factor of S^{-1} is not triangular
    // in the right orientation, so the result is refactored.
    const DivisionMatrix v = s.cholesky().inverse();
    return HermitianPD(gram(v.conj_transpose()));
}

// Quaternion q = z1 + z2 j maps to [[z1, z2], [-conj(z2), conj(z1)]].
inline DivisionMatrix quaternion_complex_adjoint(const DivisionMatrix& a) {
    require(a.beta() == 4, "quaternion_complex_adjoint requires a quaternion (beta = 4) matrix");
    const AlgebraTag c = AlgebraTag::complex();
    DivisionMatrix r(c, 2 * a.rows(), 2 * a.cols());
    auto cx = [&](double re, double im) {
        DivisionScalar z(c);
        z[0] = re;
        z[1] = im;
        return z;
    };
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const DivisionScalar& q = a(i, j);
            r(2 * i, 2 * j) = cx(q[0], q[1]);
            r(2 * i, 2 * j + 1) = cx(q[2], q[3]);
            r(2 * i + 1, 2 * j) = cx(-q[2], q[3]);
            r(2 * i + 1, 2 * j + 1) = cx(q[0], -q[1]);
        }
    return r;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen_complex(const DivisionMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = {a(i, j)[0], a.beta() >= 2 ? a(i, j)[1] : 0.0};
    return m;
}

}  // namespace detail

// Eigenvalues in descending order. Quaternion spectra come from the complex
// adjoint, whose eigenvalues appear in pairs; each pair is collapsed after
// checking it agrees to 1e-8 relative.
inline std::vector<double> eigenvalues_hermitian(const HermitianPD& s) {
    const std::size_t m = s.dim();
    std::vector<double> out;
    out.reserve(m);
    if (s.tag().beta() == 1) {
        Eigen::MatrixXd r(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) r(i, j) = s.matrix()(i, j).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
    } else if (s.tag().beta() == 2) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen_complex(s.matrix()),
                                                           Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            detail::to_eigen_complex(quaternion_complex_adjoint(s.matrix())), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        for (std::size_t k = 0; k < m; ++k) {
            const double lo = ev(2 * k);
            const double hi = ev(2 * k + 1);
            if (std::abs(hi - lo) > 1e-8 * scale)
                throw NumericalError("quaternion adjoint spectrum failed the multiplicity-2 pairing check");
            out.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace rieszlab

#endif
