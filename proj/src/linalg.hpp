#ifndef ITISC_SRC_LINALG_HPP
#define ITISC_SRC_LINALG_HPP

#include <cmath>
#include <span>
#include <vector>

#include "itisc/errors.hpp"
#include "itisc/matrix.hpp"

namespace itisc::detail {

/// Lower Cholesky factor of a symmetric positive-definite matrix.
/// Throws numerical_error when a pivot is not strictly positive.
inline Matrix cholesky_lower(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix l(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) {
                    throw numerical_error("matrix is not positive definite");
                }
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    return l;
}

/// Solves L z = b with L lower triangular.
inline std::vector<double> solve_lower(const Matrix& l, std::span<const double> b) {
    const std::size_t n = l.rows();
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * z[k];
        z[i] = sum / l(i, i);
    }
    return z;
}

/// Solves L^T x = b with L lower triangular.
inline std::vector<double> solve_upper_t(const Matrix& l, std::span<const double> b) {
    const std::size_t n = l.rows();
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double sum = b[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= l(k, i) * x[k];
        x[i] = sum / l(i, i);
    }
    return x;
}

}  // namespace itisc::detail

#endif  // ITISC_SRC_LINALG_HPP
