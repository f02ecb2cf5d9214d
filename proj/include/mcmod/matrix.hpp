#pragma once

// Dense exact matrices over a field object, plus the canonical-form kernel of
// the whole artifact: reduced row echelon form and echelonized null spaces.
// Subspaces are represented throughout as RREF matrices whose rows are a
// basis, which makes set-valued results comparable by plain equality.

#include "mcmod/fields.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mcmod {

template <class F>
class Matrix {
public:
    using Elt = typename F::Element;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
        return m;
    }

    static Matrix from_rows(F field, std::size_t cols, const std::vector<std::vector<Elt>>& rows) {
        Matrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged row list");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Elt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::vector<Elt> row(std::size_t r) const {
        return std::vector<Elt>(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_);
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    Matrix add(const Matrix& o) const {
        check_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = field_.add(entries_[k], o.entries_[k]);
        return r;
    }

    Matrix sub(const Matrix& o) const {
        check_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = field_.sub(entries_[k], o.entries_[k]);
        return r;
    }

    Matrix negate() const {
        Matrix r = *this;
        for (auto& e : r.entries_) e = field_.neg(e);
        return r;
    }

    Matrix scale(const Elt& c) const {
        Matrix r = *this;
        for (auto& e : r.entries_) e = field_.mul(e, c);
        return r;
    }

    Matrix mul(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elt& a = at(i, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, o.at(k, j)));
            }
        return r;
    }

    std::vector<Elt> apply(const std::vector<Elt>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<Elt> r(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero(at(i, j))) r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
        return r;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (!field_.eq(entries_[k], o.entries_[k])) return false;
        return true;
    }

private:
    void check_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    F field_;
    std::size_t rows_, cols_;
    std::vector<Elt> entries_;
};

template <class F>
struct RrefResult {
    Matrix<F> mat;
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan to reduced row echelon form.  The RREF is unique for a given
// row space, so this is the canonicalization step behind every set-valued
// answer in the artifact.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    const F& k = m.field();
    Matrix<F> a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && k.is_zero(a.at(sel, col))) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(row, j));
        const auto piv_inv = k.inv(a.at(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = k.mul(a.at(row, j), piv_inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || k.is_zero(a.at(i, col))) continue;
            const auto f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).pivots.size();
}

// Canonical basis of the right null space: one vector per free column, with a
// 1 in the free position.  Rows of the result are the basis vectors.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    const F& k = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Matrix<F> basis(k, free_cols.size(), m.cols());
    for (std::size_t v = 0; v < free_cols.size(); ++v) {
        basis.at(v, free_cols[v]) = k.one();
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            basis.at(v, r.pivots[i]) = k.neg(r.mat.at(i, free_cols[v]));
    }
    return basis;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const F& k = m.field();
    const std::size_t n = m.rows();
    Matrix<F> aug(k, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = k.one();
    }
    auto r = rref(aug);
    if (r.pivots.size() != n || r.pivots.back() != n - 1)
        throw std::domain_error("matrix is singular");
    Matrix<F> inv(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
    return inv;
}

// Stack rows of b under a (same column count).
template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

// Canonical (RREF, zero rows dropped) representation of a row space.
template <class F>
Matrix<F> row_space(const Matrix<F>& m) {
    auto r = rref(m);
    Matrix<F> out(m.field(), r.pivots.size(), m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = r.mat.at(i, j);
    return out;
}

// Does the row space of sub lie inside the row space of space (given in RREF)?
template <class F>
bool row_space_contains(const Matrix<F>& space, const Matrix<F>& sub) {
    if (space.cols() != sub.cols()) throw std::invalid_argument("ambient dimension mismatch");
    return rank(vstack(space, sub)) == rank(space);
}

}  // namespace mcmod
