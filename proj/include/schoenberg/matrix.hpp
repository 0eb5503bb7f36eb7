#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace schoenberg {

/// Dense row-major real matrix.  Just enough linear algebra for the
/// collocation matrices and the eigensolver; not a general-purpose type.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    std::vector<double> multiply(std::span<const double> v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix::multiply: size mismatch");
        std::vector<double> out(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    const std::vector<double>& data() const { return a_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

}
