#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "dl0/errors.hpp"

namespace dl0 {

using Vec = std::vector<double>;

// Dense row-major matrix of 64-bit floats. Everything in this project is
// double precision; the reported comparisons are percentages to two
// decimals and single precision is not worth the risk.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return d_.size(); }
    bool empty() const { return d_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    double* row(std::size_t i) { return d_.data() + i * cols_; }
    const double* row(std::size_t i) const { return d_.data() + i * cols_; }

    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

    Vec col(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = d_[i * cols_ + j];
        return c;
    }
    void set_col(std::size_t j, const Vec& c) {
        for (std::size_t i = 0; i < rows_; ++i) d_[i * cols_ + j] = c[i];
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec d_;
};

namespace linalg {

// Worker cap for the row-parallel product kernels. Each output row is
// written by exactly one thread with a fixed summation order, so results
// are bit-identical for every thread count.
inline std::atomic<int>& thread_cap() {
    static std::atomic<int> cap{1};
    return cap;
}
inline void set_max_threads(int n) { thread_cap().store(n < 1 ? 1 : n); }
inline int max_threads() { return thread_cap().load(); }

namespace detail {

template <typename Fn>
void parallel_rows(std::size_t nrows, std::size_t flops_per_row, Fn&& fn) {
    int want = max_threads();
    if (want > 1 && flops_per_row * nrows < (1u << 18)) want = 1;
    const int nt = std::min<std::size_t>(want, nrows ? nrows : 1);
    if (nt <= 1) {
        fn(0, nrows);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (nrows + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(nrows, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

inline void require(bool ok, const char* what) {
    if (!ok) throw ShapeError(what);
}

}  // namespace detail

inline double dot(const Vec& a, const Vec& b) {
    detail::require(a.size() == b.size(), "dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2_sq(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}
inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline std::size_t nnz(const Vec& a) {
    std::size_t c = 0;
    for (double v : a) c += (v != 0.0);
    return c;
}

inline bool all_finite(const Vec& a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}
inline bool all_finite(const Mat& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a.data()[i])) return false;
    }
    return true;
}

// y = A v
inline Vec matvec(const Mat& A, const Vec& v) {
    detail::require(A.cols() == v.size(), "matvec: A.cols != v.len");
    Vec y(A.rows(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* ai = A.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += ai[j] * v[j];
        y[i] = s;
    }
    return y;
}

// y = A^T v
inline Vec matvec_t(const Mat& A, const Vec& v) {
    detail::require(A.rows() == v.size(), "matvec_t: A.rows != v.len");
    Vec y(A.cols(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* ai = A.row(i);
        const double vi = v[i];
        for (std::size_t j = 0; j < A.cols(); ++j) y[j] += vi * ai[j];
    }
    return y;
}

// C = A B
inline Mat matmul(const Mat& A, const Mat& B) {
    detail::require(A.cols() == B.rows(), "matmul: inner dims disagree");
    Mat C(A.rows(), B.cols());
    detail::parallel_rows(A.rows(), 2 * A.cols() * B.cols(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double* ai = A.row(i);
            double* ci = C.row(i);
            for (std::size_t k = 0; k < A.cols(); ++k) {
                const double aik = ai[k];
                const double* bk = B.row(k);
                for (std::size_t j = 0; j < B.cols(); ++j) ci[j] += aik * bk[j];
            }
        }
    });
    return C;
}

// C = A B^T
inline Mat matmul_nt(const Mat& A, const Mat& B) {
    detail::require(A.cols() == B.cols(), "matmul_nt: inner dims disagree");
    Mat C(A.rows(), B.rows());
    detail::parallel_rows(A.rows(), 2 * A.cols() * B.rows(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double* ai = A.row(i);
            double* ci = C.row(i);
            for (std::size_t j = 0; j < B.rows(); ++j) {
                const double* bj = B.row(j);
                double s = 0.0;
                for (std::size_t k = 0; k < A.cols(); ++k) s += ai[k] * bj[k];
                ci[j] = s;
            }
        }
    });
    return C;
}

// C = A^T B
inline Mat matmul_tn(const Mat& A, const Mat& B) {
    detail::require(A.rows() == B.rows(), "matmul_tn: inner dims disagree");
    Mat C(A.cols(), B.cols());
    // Serial k-loop keeps the per-element summation order fixed; parallel
    // splitting happens over C's rows via a transposed accumulation below.
    detail::parallel_rows(A.cols(), 2 * A.rows() * B.cols(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = 0; k < A.rows(); ++k) {
            const double* ak = A.row(k);
            const double* bk = B.row(k);
            for (std::size_t i = lo; i < hi; ++i) {
                const double aki = ak[i];
                double* ci = C.row(i);
                for (std::size_t j = 0; j < B.cols(); ++j) ci[j] += aki * bk[j];
            }
        }
    });
    return C;
}

inline Mat transpose(const Mat& A) {
    Mat T(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

inline void add_inplace(Mat& A, const Mat& B, double scale = 1.0) {
    detail::require(A.rows() == B.rows() && A.cols() == B.cols(), "add: shape mismatch");
    for (std::size_t i = 0; i < A.size(); ++i) A.data()[i] += scale * B.data()[i];
}

inline void scale_inplace(Mat& A, double s) {
    for (std::size_t i = 0; i < A.size(); ++i) A.data()[i] *= s;
}

inline double frob_norm(const Mat& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) s += A.data()[i] * A.data()[i];
    return std::sqrt(s);
}

struct SpectralEstimate {
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

// Largest singular value via power iteration on A^T A. The start vector is
// all-ones normalized so runs are deterministic. On non-convergence the
// last estimate is returned with converged=false rather than throwing.
inline SpectralEstimate spectral_norm(const Mat& A, double tol = 1e-12,
                                      std::size_t max_iter = 1000) {
    if (A.empty()) throw ShapeError("spectral_norm: empty matrix");
    Vec v(A.cols(), 1.0 / std::sqrt(static_cast<double>(A.cols())));
    SpectralEstimate est;
    double prev = 0.0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Vec av = matvec(A, v);
        Vec w = matvec_t(A, av);
        double wn = norm2(w);
        est.iterations = it;
        if (wn == 0.0) {  // A v in the null space: the estimate is exact
            est.value = 0.0;
            est.converged = true;
            return est;
        }
        est.value = std::sqrt(wn);  // ||A^T A v|| -> sigma_max^2
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / wn;
        if (it > 1 && std::abs(est.value - prev) <= tol * std::max(est.value, 1e-300)) {
            est.converged = true;
            return est;
        }
        prev = est.value;
    }
    return est;
}

}  // namespace linalg
}  // namespace dl0
