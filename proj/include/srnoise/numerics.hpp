#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "srnoise/errors.hpp"

namespace srnoise::num {

inline constexpr std::size_t kMaxDenseDim = 8;  // the model's systems are 3- and 4-dimensional

using cplx = std::complex<double>;

// Small dense row-major matrix. Everything in this project is <= 8x8, so no
// attempt is made at blocking or views; value semantics throughout.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using Mat = Matrix<double>;
using CMat = Matrix<cplx>;

CMat to_complex(const Mat& a);

// Gaussian elimination with partial pivoting. Multi-RHS solve; dimensions
// capped at kMaxDenseDim. Throws SingularMatrix.
CMat solve_dense(CMat a, CMat b);
std::vector<cplx> solve_dense(const CMat& a, const std::vector<cplx>& b);
std::vector<double> solve_dense(const Mat& a, const std::vector<double>& b);

// Symmetric factorization with diagonal pivoting: on success returns B with
// B*B^T = M (possibly rank-deficient); an indefinite M is reported with its
// smallest eigenvalue instead. `tol` is relative to the largest diagonal.
struct SymmetricFactor {
    Mat b;
};
struct Indefinite {
    double min_eigenvalue;
};
std::variant<SymmetricFactor, Indefinite> factor_symmetric(const Mat& m, double tol = 1e-10);

// All eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.
std::vector<double> symmetric_eigenvalues(Mat m);

// All eigenvalues of a general small matrix: Householder Hessenberg reduction
// followed by shifted complex QR iteration.
std::vector<cplx> eigenvalues(CMat a);
std::vector<cplx> eigenvalues(const Mat& a);

// Bracketed bisection for f(root) = 0 on [lo, hi] with f(lo)*f(hi) <= 0.
// Throws NoSignChange. Iteration count is bounded by ceil(log2((hi-lo)/xtol)) + 2.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Integral of f over the whole real line, for f decaying at least like w^-2.
// The line is mapped to (-pi/2, pi/2) via w = tan(theta) and panels are refined
// adaptively with a Gauss(7)/Kronrod(15) pair. `breakpoints` seeds panel edges
// at known features (peak positions, linewidths). Throws NonConvergentQuadrature.
QuadratureResult integrate_line(const std::function<double(double)>& f, double rel_tol = 1e-9,
                                double abs_tol = 1e-14, std::span<const double> breakpoints = {},
                                std::size_t max_panels = 4000);

}  // namespace srnoise::num
