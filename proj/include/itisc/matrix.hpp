#ifndef ITISC_MATRIX_HPP
#define ITISC_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace itisc {

/// Dense row-major matrix of doubles. Value type, no views into foreign storage.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        return from_rows_impl(rows);
    }

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        return from_rows_impl(rows);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const {
        for (double v : data_) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    template <typename RowRange>
    static Matrix from_rows_impl(const RowRange& rows) {
        Matrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.size() ? rows.begin()->size() : 0;
        m.data_.reserve(m.rows_ * m.cols_);
        for (const auto& r : rows) {
            if (r.size() != m.cols_) {
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            }
            m.data_.insert(m.data_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Frobenius norm of the elementwise difference. Shapes must match.
inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        const double d = a.data()[k] - b.data()[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace itisc

#endif  // ITISC_MATRIX_HPP
