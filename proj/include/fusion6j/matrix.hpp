#pragma once

// Small dense matrices over Scalar.  Everything here is desk-scale
// (block sizes stay in the single digits), so plain Gauss-Jordan with
// exact pivots is the right tool.

#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace fusion6j {

struct Matrix {
    int rows = 0, cols = 0;
    FieldKind kind = FieldKind::Q;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(int r, int c, FieldKind k)
        : rows(r), cols(c), kind(k), a(size_t(r) * c, Scalar::zero(k)) {}

    static Matrix identity(int n, FieldKind k) {
        Matrix m(n, n, k);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(k);
        return m;
    }

    Scalar& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Scalar& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows) throw ShapeMismatch("matrix product shape");
        Matrix m(rows, o.cols, kind);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Scalar& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols; ++j)
                    m.at(i, j) += x * o.at(k, j);
            }
        return m;
    }

    Matrix operator*(const Scalar& s) const {
        Matrix m(*this);
        for (auto& x : m.a) x *= s;
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) throw ShapeMismatch("matrix sum shape");
        Matrix m(*this);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
        return m;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) throw ShapeMismatch("matrix difference shape");
        Matrix m(*this);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] -= o.a[i];
        return m;
    }

    Matrix transpose() const {
        Matrix m(cols, rows, kind);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    bool operator==(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != o.a[i]) return false;
        return true;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != (i == j ? Scalar::one(kind) : Scalar::zero(kind)))
                    return false;
        return true;
    }

    double max_abs_diff(const Matrix& o) const {
        double m = 0;
        for (size_t i = 0; i < a.size(); ++i)
            m = std::max(m, a[i].abs_diff(o.a[i]));
        return m;
    }

    Matrix inverse() const {
        if (rows != cols) throw SingularBlock("non-square block");
        const int n = rows;
        Matrix w(*this), inv = identity(n, kind);
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            if (kind == FieldKind::C) {
                double best = 0;
                for (int r = col; r < n; ++r) {
                    double m = std::abs(w.at(r, col).to_complex());
                    if (m > best) { best = m; pivot = r; }
                }
                if (best <= float_tolerance()) pivot = -1;
            } else {
                for (int r = col; r < n; ++r)
                    if (!w.at(r, col).is_zero()) { pivot = r; break; }
            }
            if (pivot < 0) throw SingularBlock("singular block");
            if (pivot != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(w.at(pivot, j), w.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            Scalar p = w.at(col, col).inv();
            for (int j = 0; j < n; ++j) {
                w.at(col, j) *= p;
                inv.at(col, j) *= p;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || w.at(r, col).is_zero()) continue;
                Scalar f = w.at(r, col);
                for (int j = 0; j < n; ++j) {
                    w.at(r, j) -= f * w.at(col, j);
                    inv.at(r, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }
};

} // namespace fusion6j
