#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace quadbench::detail {

// Dense row-major matrix, just big enough for the n <= 32 solves this
// library needs.
class matrix {
  public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double> mul(const std::vector<double>& x) const {
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Solves A x = b by LU factorization with partial pivoting.  A is copied;
// throws on (numerically) singular systems.
inline std::vector<double> lu_solve(matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > best) {
                best = std::fabs(a(r, col));
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            a(r, col) = 0.0;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x[j];
        x[ii] = acc / a(ii, ii);
    }
    return x;
}

// Modified Gram-Schmidt orthonormalization of the columns of a, with one
// re-orthogonalization pass.  Returns the orthonormal columns; columns that
// are (numerically) dependent on earlier ones are rejected.
inline matrix orthonormal_columns(const matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    matrix q(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> v(m);
        double norm0 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(i, j);
            norm0 += v[i] * v[i];
        }
        norm0 = std::sqrt(norm0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += q(i, k) * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += v[i] * v[i];
        norm = std::sqrt(norm);
        if (norm <= 1e-13 * (norm0 > 0 ? norm0 : 1.0))
            throw std::runtime_error("orthonormal_columns: dependent column");
        for (std::size_t i = 0; i < m; ++i) q(i, j) = v[i] / norm;
    }
    return q;
}

}  // namespace quadbench::detail
