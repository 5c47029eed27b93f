// Dense complex linear algebra for the small matrices this library works
// with (3x3 single-qutrit, 9x9 two-qutrit): products, adjoints, tensor
// products, Hermitian eigenvalues, partial transpose, trace norm.
//
// Basis convention: for one qutrit the levels |2>, |1>, |0> map to row
// indices 0, 1, 2 (the order the channel matrices are written in), with
// |0> the ground state. Two-qutrit indices are lexicographic pairs,
// (i, k) -> 3*i + k.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "vqsl/errors.hpp"
#include "vqsl/tolerances.hpp"

namespace vqsl {

using cx = std::complex<double>;

class Mat {
public:
    Mat() : dim_(0) {}
    explicit Mat(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {
        if (dim < 1) throw DimensionError("Mat: dim must be >= 1");
    }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int dim) { return Mat(dim); }

    int dim() const { return dim_; }

    cx& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cx& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }

    const std::vector<cx>& entries() const { return e_; }

    Mat adjoint() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cx trace() const {
        cx s = 0.0;
        for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
        return s;
    }

    // Largest entry magnitude; the max-norm used by the tolerance contracts.
    double max_abs() const {
        double m = 0.0;
        for (const cx& v : e_) m = std::max(m, std::abs(v));
        return m;
    }

    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }
    bool is_hermitian(double eps = tol::hermiticity) const { return hermiticity_defect() <= eps; }

    Mat& operator+=(const Mat& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    Mat& operator*=(cx s) {
        for (cx& v : e_) v *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, cx s) { return a *= s; }
    friend Mat operator*(cx s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        a.require_same_dim(b);
        const int n = a.dim_;
        Mat c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cx aik = a(i, k);
                if (aik == cx{}) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    void require_same_dim(const Mat& o) const {
        if (dim_ != o.dim_)
            throw DimensionError("Mat: dimension mismatch (" + std::to_string(dim_) + " vs " +
                                 std::to_string(o.dim_) + ")");
    }

    int dim_;
    std::vector<cx> e_;
};

inline double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// Kronecker product: entry ((i*b.dim + k), (j*b.dim + l)) = a(i,j) * b(k,l).
inline Mat tensor(const Mat& a, const Mat& b) {
    const int na = a.dim(), nb = b.dim();
    Mat c(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const cx aij = a(i, j);
            if (aij == cx{}) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return c;
}

// |v><v| for a coefficient vector.
inline Mat projector(const std::vector<cx>& v) {
    const int n = static_cast<int>(v.size());
    Mat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

// Ordered real eigenvalues of a Hermitian matrix.
struct Spectrum {
    std::vector<double> values;  // ascending

    double min() const { return values.front(); }
    double max() const { return values.back(); }
    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double sum_sq() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return s;
    }
};

namespace detail {

// Cyclic Jacobi on a Hermitian matrix held in a row-major buffer.
// Each (p,q) step conjugates by diag(1, e^{-i phi}) to make the pivot real,
// then by the standard symmetric rotation that annihilates it. Converges
// when the off-diagonal Frobenius mass drops below tol::jacobi_off_diag.
inline void jacobi_eigenvalues(cx* a, int n, double* w) {
    auto at = [a, n](int i, int j) -> cx& { return a[static_cast<std::size_t>(i) * n + j]; };

    // Symmetrize once so the tolerance-level asymmetry of the input cannot
    // feed the iteration.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const cx m = 0.5 * (at(i, j) + std::conj(at(j, i)));
            at(i, j) = m;
            at(j, i) = std::conj(m);
        }
        at(i, i) = cx(at(i, i).real(), 0.0);
    }

    for (int sweep = 0; sweep < tol::jacobi_max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(at(i, j));
        if (std::sqrt(off) < tol::jacobi_off_diag) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cx apq = at(p, q);
                const double b = std::abs(apq);
                if (b == 0.0) continue;

                const cx phase = apq / b;  // e^{i phi}
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();

                // tan(2 theta) = 2 b / (aqq - app), stable form.
                double t;
                if (app == aqq) {
                    t = 1.0;
                } else {
                    const double tau = (aqq - app) / (2.0 * b);
                    t = ((tau >= 0.0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // On the (p,q) plane J = [[c, s], [-s conj(ph), c conj(ph)]];
                // A <- J^dag A J annihilates the pivot and keeps A Hermitian.
                for (int j = 0; j < n; ++j) {
                    const cx rp = at(p, j), rq = at(q, j);
                    at(p, j) = c * rp - s * (phase * rq);
                    at(q, j) = s * rp + c * (phase * rq);
                }
                const cx phc = std::conj(phase);
                for (int i = 0; i < n; ++i) {
                    const cx cp = at(i, p), cq = at(i, q);
                    at(i, p) = c * cp - s * (phc * cq);
                    at(i, q) = s * cp + c * (phc * cq);
                }
            }
        }
    }

    for (int i = 0; i < n; ++i) w[i] = at(i, i).real();
    std::sort(w, w + n);
}

}  // namespace detail

inline Spectrum hermitian_eigenvalues(const Mat& m) {
    if (!m.is_hermitian())
        throw NonHermitianError("hermitian_eigenvalues: input exceeds Hermiticity tolerance");
    const int n = m.dim();
    std::vector<cx> a(m.entries());
    Spectrum s;
    s.values.resize(n);
    detail::jacobi_eigenvalues(a.data(), n, s.values.data());
    return s;
}

// Transpose on the second factor of a 3x3 pair system:
// entry ((i,k),(j,l)) -> entry ((i,l),(j,k)). Involutive.
inline Mat partial_transpose_second(const Mat& m) {
    if (m.dim() != 9) throw DimensionError("partial_transpose_second: dim must be 9");
    Mat r(9);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) r(3 * i + k, 3 * j + l) = m(3 * i + l, 3 * j + k);
    return r;
}

// Sum of absolute eigenvalues. Hermitian inputs only; every trace-norm
// argument in this library is a difference of density matrices.
inline double trace_norm(const Mat& m) {
    if (!m.is_hermitian()) throw NonHermitianError("trace_norm: input exceeds Hermiticity tolerance");
    const Spectrum s = hermitian_eigenvalues(m);
    double sum = 0.0;
    for (double v : s.values) sum += std::abs(v);
    return sum;
}

// Hermitian, unit-trace, positive-semidefinite matrix (dimension 3 or 9 here).
class DensityMatrix {
public:
    static DensityMatrix checked(Mat m) {
        const double hd = m.hermiticity_defect();
        if (hd > tol::hermiticity)
            throw InvalidStateError("DensityMatrix: Hermiticity defect " + std::to_string(hd));
        const double tr_err = std::abs(m.trace() - cx(1.0, 0.0));
        if (tr_err > tol::unit_trace)
            throw InvalidStateError("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
        const Spectrum s = hermitian_eigenvalues(m);
        if (s.min() < tol::psd_min_eig)
            throw InvalidStateError("DensityMatrix: negative eigenvalue " + std::to_string(s.min()));
        return DensityMatrix(std::move(m));
    }

    // Bypasses validation; for callers that established the invariants already.
    static DensityMatrix trusted(Mat m) { return DensityMatrix(std::move(m)); }

    const Mat& mat() const { return mat_; }
    int dim() const { return mat_.dim(); }
    const cx& operator()(int i, int j) const { return mat_(i, j); }

private:
    explicit DensityMatrix(Mat m) : mat_(std::move(m)) {}
    Mat mat_;
};

// Tr(rho^2); equals 1 exactly on pure states.
inline double purity(const DensityMatrix& rho) {
    double s = 0.0;
    const int n = rho.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::norm(rho(i, j));
    return s;
}

// Re Tr(a b) for Hermitian a, b without forming the product.
inline double trace_product_re(const Mat& a, const Mat& b) {
    if (a.dim() != b.dim()) throw DimensionError("trace_product_re: dimension mismatch");
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += (a(i, j) * b(j, i)).real();
    return s;
}

}  // namespace vqsl
