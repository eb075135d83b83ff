#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gdnc/field.hpp"

namespace gdnc {

/// Dense row-major matrix over a finite field.
class Matrix {
public:
    using Elem = Field::Elem;

    Matrix() = default;
    Matrix(std::shared_ptr<const Field> field, int rows, int cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }

    Elem& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    Elem at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    static Matrix identity(std::shared_ptr<const Field> field, int n) {
        Matrix m(std::move(field), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    /// In-place reduced row echelon form; returns the rank. Pivot choice
    /// is first-nonzero, so the result is deterministic.
    int rref() {
        const Field& F = *field_;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int piv = -1;
            for (int i = r; i < rows_; ++i) {
                if (at(i, c) != 0) {
                    piv = i;
                    break;
                }
            }
            if (piv < 0) continue;
            if (piv != r) {
                for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
            }
            const Elem s = F.inv(at(r, c));
            for (int j = 0; j < cols_; ++j) at(r, j) = F.mul(s, at(r, j));
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                const Elem f = at(i, c);
                for (int j = 0; j < cols_; ++j)
                    at(i, j) = F.sub(at(i, j), F.mul(f, at(r, j)));
            }
            ++r;
        }
        return r;
    }

    int rank() const {
        Matrix copy = *this;
        return copy.rref();
    }

private:
    std::shared_ptr<const Field> field_;
    int rows_ = 0, cols_ = 0;
    std::vector<Elem> data_;
};

}  // namespace gdnc
