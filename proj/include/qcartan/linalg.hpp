// Dense exact linear algebra over the rational-function field.

#pragma once

#include <stdexcept>
#include <vector>

#include "qcartan/qscalar.hpp"

namespace qcartan {

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = QScalar(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    QScalar& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const QScalar& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const QScalar& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) {
                    const QScalar& w = y.at(k, j);
                    if (!w.is_zero()) r.at(i, j) += v * w;
                }
            }
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    Matrix scaled(const QScalar& f) const {
        Matrix r = *this;
        for (auto& v : r.a_) v *= f;
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    // Gauss-Jordan; throws on singular input.
    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: not square");
        Matrix a = *this, inv = identity(rows_);
        for (int col = 0; col < cols_; ++col) {
            int pivot = -1;
            for (int r = col; r < rows_; ++r)
                if (!a.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) throw std::domain_error("Matrix: singular");
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            QScalar d = a.at(col, col).inverse();
            a.scale_row(col, d);
            inv.scale_row(col, d);
            for (int r = 0; r < rows_; ++r) {
                if (r == col) continue;
                QScalar f = a.at(r, col);
                if (f.is_zero()) continue;
                a.add_row(r, col, -f);
                inv.add_row(r, col, -f);
            }
        }
        return inv;
    }

    bool invertible() const {
        return rank() == rows_ && rows_ == cols_;
    }

    int rank() const {
        Matrix a = *this;
        int rk = 0;
        for (int col = 0; col < cols_ && rk < rows_; ++col) {
            int pivot = -1;
            for (int r = rk; r < rows_; ++r)
                if (!a.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            a.swap_rows(pivot, rk);
            QScalar d = a.at(rk, col).inverse();
            a.scale_row(rk, d);
            for (int r = 0; r < rows_; ++r) {
                if (r == rk) continue;
                QScalar f = a.at(r, col);
                if (!f.is_zero()) a.add_row(r, rk, -f);
            }
            ++rk;
        }
        return rk;
    }

    // Basis of the right nullspace (columns are kernel vectors).
    std::vector<std::vector<QScalar>> nullspace() const {
        Matrix a = *this;
        std::vector<int> pivot_col;
        int rk = 0;
        for (int col = 0; col < cols_ && rk < rows_; ++col) {
            int pivot = -1;
            for (int r = rk; r < rows_; ++r)
                if (!a.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            a.swap_rows(pivot, rk);
            QScalar d = a.at(rk, col).inverse();
            a.scale_row(rk, d);
            for (int r = 0; r < rows_; ++r) {
                if (r == rk) continue;
                QScalar f = a.at(r, col);
                if (!f.is_zero()) a.add_row(r, rk, -f);
            }
            pivot_col.push_back(col);
            ++rk;
        }
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
        std::vector<std::vector<QScalar>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[static_cast<std::size_t>(free)]) continue;
            std::vector<QScalar> v(static_cast<std::size_t>(cols_), QScalar(0));
            v[static_cast<std::size_t>(free)] = QScalar(1);
            for (int r = 0; r < rk; ++r)
                v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = -a.at(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solve A x = b for a single right-hand side; throws if inconsistent or
    // underdetermined.
    std::vector<QScalar> solve(const std::vector<QScalar>& b) const {
        if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("Matrix: rhs size");
        Matrix aug(rows_, cols_ + 1);
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_) = b[static_cast<std::size_t>(r)];
        }
        std::vector<int> pivot_col;
        int rk = 0;
        for (int col = 0; col < cols_ && rk < rows_; ++col) {
            int pivot = -1;
            for (int r = rk; r < rows_; ++r)
                if (!aug.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            aug.swap_rows(pivot, rk);
            QScalar d = aug.at(rk, col).inverse();
            aug.scale_row(rk, d);
            for (int r = 0; r < rows_; ++r) {
                if (r == rk) continue;
                QScalar f = aug.at(r, col);
                if (!f.is_zero()) aug.add_row(r, rk, -f);
            }
            pivot_col.push_back(col);
            ++rk;
        }
        for (int r = rk; r < rows_; ++r)
            if (!aug.at(r, cols_).is_zero()) throw std::domain_error("Matrix: inconsistent system");
        if (rk < cols_) throw std::domain_error("Matrix: underdetermined system");
        std::vector<QScalar> x(static_cast<std::size_t>(cols_), QScalar(0));
        for (int r = 0; r < rk; ++r)
            x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = aug.at(r, cols_);
        return x;
    }

    // Particular solution of A x = b with free variables set to zero;
    // throws only if the system is inconsistent.
    std::vector<QScalar> solve_particular(const std::vector<QScalar>& b) const {
        if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("Matrix: rhs size");
        Matrix aug(rows_, cols_ + 1);
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_) = b[static_cast<std::size_t>(r)];
        }
        std::vector<int> pivot_col;
        int rk = 0;
        for (int col = 0; col < cols_ && rk < rows_; ++col) {
            int pivot = -1;
            for (int r = rk; r < rows_; ++r)
                if (!aug.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            aug.swap_rows(pivot, rk);
            QScalar d = aug.at(rk, col).inverse();
            aug.scale_row(rk, d);
            for (int r = 0; r < rows_; ++r) {
                if (r == rk) continue;
                QScalar f = aug.at(r, col);
                if (!f.is_zero()) aug.add_row(r, rk, -f);
            }
            pivot_col.push_back(col);
            ++rk;
        }
        for (int r = rk; r < rows_; ++r)
            if (!aug.at(r, cols_).is_zero()) throw std::domain_error("Matrix: inconsistent system");
        std::vector<QScalar> x(static_cast<std::size_t>(cols_), QScalar(0));
        for (int r = 0; r < rk; ++r)
            x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = aug.at(r, cols_);
        return x;
    }

    static Matrix kron(const Matrix& x, const Matrix& y) {
        Matrix r(x.rows_ * y.rows_, x.cols_ * y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int j = 0; j < x.cols_; ++j) {
                if (x.at(i, j).is_zero()) continue;
                for (int k = 0; k < y.rows_; ++k)
                    for (int l = 0; l < y.cols_; ++l)
                        if (!y.at(k, l).is_zero())
                            r.at(i * y.rows_ + k, j * y.cols_ + l) = x.at(i, j) * y.at(k, l);
            }
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<QScalar> a_;

    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
    }
    void scale_row(int r, const QScalar& f) {
        for (int c = 0; c < cols_; ++c) at(r, c) *= f;
    }
    void add_row(int dst, int src, const QScalar& f) {
        for (int c = 0; c < cols_; ++c) at(dst, c) += at(src, c) * f;
    }
};

}  // namespace qcartan
