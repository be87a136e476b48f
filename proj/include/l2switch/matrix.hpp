#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "l2switch/errors.hpp"

namespace l2switch {

// Dense row-major matrix over an exact integer type.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, T fill = T(0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {
        if (rows <= 0 || cols <= 0) throw dimension_error("matrix dimensions must be positive");
    }

    static Matrix identity(int n, T diag = T(1)) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = diag;
        return m;
    }
    static Matrix ones(int rows, int cols) { return Matrix(rows, cols, T(1)); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw dimension_error("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (v == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix sum shape mismatch");
        Matrix r = *this;
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix difference shape mismatch");
        Matrix r = *this;
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
        return r;
    }
    Matrix operator*(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    T row_sum(int i) const {
        T s(0);
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }

    bool is_symmetric() const {
        if (!square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != T(0)) return false;
        return true;
    }

    // Entrywise exact division; throws if any entry is not divisible.
    Matrix divided_exact(const T& d) const {
        Matrix r = *this;
        for (auto& x : r.a_) {
            if (x % d != T(0)) throw exactness_error("entry not divisible in exact division");
            x /= d;
        }
        return r;
    }

    template <typename U>
    Matrix<U> cast() const {
        Matrix<U> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = static_cast<U>((*this)(i, j));
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ' ';
                if constexpr (std::is_same_v<T, mpz_class>)
                    s += (*this)(i, j).get_str();
                else
                    s += std::to_string((*this)(i, j));
            }
            s += '\n';
        }
        return s;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<mpz_class>;
using SmallMatrix = Matrix<int64_t>;

inline IntMatrix to_big(const SmallMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = static_cast<long>(m(i, j));
    return r;
}

} // namespace l2switch
