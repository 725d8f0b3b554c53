#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ffcurve/algebra/ring.hpp"

namespace ffcurve::algebra {

/// Dense row-major matrix over a commutative ring.
template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Euclidean<R>::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = Euclidean<R>::one();
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<R>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw Error("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const R& x) { return Euclidean<R>::is_zero(x); });
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw Error("matrix dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const R& aik = a(i, k);
                if (Euclidean<R>::is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw Error("matrix dimension mismatch in sum");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix out = a;
        for (auto& x : out.data_)
            x = Euclidean<R>::zero() - x;
        return out;
    }
    Matrix scaled(const R& s) const {
        Matrix out = *this;
        for (auto& x : out.data_)
            x = x * s;
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copies `block` with its top-left corner at (r, c).
    void set_block(std::size_t r, std::size_t c, const Matrix& block) {
        for (std::size_t i = 0; i < block.rows_; ++i)
            for (std::size_t j = 0; j < block.cols_; ++j)
                (*this)(r + i, c + j) = block(i, j);
    }

    // elementary operations
    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row_dst += c * row_src
    void add_row(std::size_t dst, std::size_t src, const R& c) {
        if (Euclidean<R>::is_zero(c))
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += c * (*this)(src, j);
    }
    /// col_dst += c * col_src
    void add_col(std::size_t dst, std::size_t src, const R& c) {
        if (Euclidean<R>::is_zero(c))
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += c * (*this)(i, src);
    }
    void scale_row(std::size_t r, const R& c) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = (*this)(r, j) * c;
    }
    void scale_col(std::size_t c, const R& s) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, c) = (*this)(i, c) * s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> data_;
};

/// Smith normal form U A V = diag(s_1, ..., s_r, 0, ...) with s_i | s_{i+1},
/// each s_i the canonical associate. V and its inverse are tracked because
/// saturation problems need them; U is not.
template <class R>
struct SmithForm {
    std::vector<R> invariants;  // the non-zero diagonal entries
    Matrix<R> col_transform;    // V
    Matrix<R> col_inverse;      // V^{-1}

    std::size_t rank() const { return invariants.size(); }
};

template <class R>
SmithForm<R> smith_normal_form(Matrix<R> a) {
    using E = Euclidean<R>;
    const std::size_t m = a.rows(), n = a.cols();
    Matrix<R> v = Matrix<R>::identity(n), vinv = Matrix<R>::identity(n);

    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y)
            return;
        a.swap_cols(x, y);
        v.swap_cols(x, y);
        vinv.swap_rows(x, y);
    };
    // col_dst += c col_src, with V^{-1} row_src -= c row_dst
    auto col_add = [&](std::size_t dst, std::size_t src, const R& c) {
        a.add_col(dst, src, c);
        v.add_col(dst, src, c);
        vinv.add_row(src, dst, E::zero() - c);
    };

    std::vector<R> diag;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // pivot of minimal norm in the trailing block
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_norm;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (!E::is_zero(a(i, j))) {
                    Integer nv = E::norm(a(i, j));
                    if (!best || nv < best_norm) {
                        best = {i, j};
                        best_norm = nv;
                    }
                }
        if (!best)
            break;
        a.swap_rows(t, best->first);
        col_swap(t, best->second);

        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (E::is_zero(a(i, t)))
                    continue;
                auto q = E::divmod(a(i, t), a(t, t)).first;
                a.add_row(i, t, E::zero() - q);
                if (!E::is_zero(a(i, t)))
                    dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (E::is_zero(a(t, j)))
                    continue;
                auto q = E::divmod(a(t, j), a(t, t)).first;
                col_add(j, t, E::zero() - q);
                if (!E::is_zero(a(t, j)))
                    dirty = true;
            }
            if (dirty) {
                // move the smallest remainder in row/column t onto the pivot
                std::size_t bi = t, bj = t;
                Integer bn = E::norm(a(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (!E::is_zero(a(i, t)) && E::norm(a(i, t)) < bn) {
                        bi = i;
                        bj = t;
                        bn = E::norm(a(i, t));
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!E::is_zero(a(t, j)) && E::norm(a(t, j)) < bn) {
                        bi = t;
                        bj = j;
                        bn = E::norm(a(t, j));
                    }
                a.swap_rows(t, bi);
                col_swap(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < m && !bad_row; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!E::is_zero(E::divmod(a(i, j), a(t, t)).second)) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            a.add_row(t, *bad_row, E::one());
        }

        R unit = E::canonical_unit(a(t, t));
        R inv = E::unit_inverse(unit);
        a.scale_col(t, inv);
        v.scale_col(t, inv);
        vinv.scale_row(t, unit);
        diag.push_back(a(t, t));
    }
    return {std::move(diag), std::move(v), std::move(vinv)};
}

/// Rank over the fraction field (equal to the SNF rank).
template <class R>
std::size_t rank(const Matrix<R>& a) {
    return smith_normal_form(a).rank();
}

/// Rank over a field by plain Gaussian elimination.
inline std::size_t field_rank(Matrix<Rational> a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0)
                continue;
            Rational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// Basis of the right kernel over Q, as columns of the returned matrix.
inline Matrix<Rational> field_kernel(Matrix<Rational> a) {
    const std::size_t n = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(r, p);
        Rational inv = 1 / a(r, c);
        a.scale_row(r, inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            a.add_row(i, r, -a(i, c));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Matrix<Rational> basis(n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            basis(pivot_cols[i], k) = -a(i, free_cols[k]);
    }
    return basis;
}

}  // namespace ffcurve::algebra
