#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "ffcurve/algebra/matrix.hpp"
#include "ffcurve/complex.hpp"

namespace ffcurve {

using algebra::Rational;

namespace detail {

/// Exponent vectors of total degree e in n variables, in lexicographic order.
inline std::vector<std::vector<unsigned>> monomials(std::size_t n, unsigned e) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
        if (var + 1 == n) {
            cur[var] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            cur[var] = k;
            self(self, var + 1, left - k);
        }
    };
    if (n == 0) {
        if (e == 0)
            out.emplace_back();
        return out;
    }
    rec(rec, 0, e);
    return out;
}

}  // namespace detail

/// Polynomial de Rham complex of affine n-space over Q, truncated to weight
/// (form degree + coefficient degree) <= D. The graded piece (i, e) consists of
/// i-forms x^a dx_I with |a| = e; d maps (i, e) to (i+1, e-1).
class GradedDeRham {
public:
    struct BasisForm {
        std::vector<unsigned> exponents;
        std::vector<std::size_t> wedge;  // increasing indices of dx_j
    };

    GradedDeRham(std::size_t n, unsigned truncation) : n_(n), d_(truncation) {
        if (n == 0 || truncation == 0)
            throw Error("de Rham complex needs n >= 1 and D >= 1");
        for (std::size_t i = 0; i <= n_; ++i) {
            auto wedges = detail::subsets(n_, i);
            std::vector<std::vector<BasisForm>> by_degree;
            for (unsigned e = 0; i <= d_ && e <= d_ - i; ++e) {
                std::vector<BasisForm> basis;
                for (const auto& w : wedges)
                    for (auto& m : detail::monomials(n_, e))
                        basis.push_back({m, w});
                by_degree.push_back(std::move(basis));
            }
            pieces_.push_back(std::move(by_degree));
        }
    }

    std::size_t variables() const { return n_; }
    unsigned truncation() const { return d_; }

    /// Whether the piece (i, e) is inside the truncation window.
    bool has_piece(std::size_t i, unsigned e) const { return i <= n_ && e < pieces_[i].size(); }

    const std::vector<BasisForm>& basis(std::size_t i, unsigned e) const { return pieces_.at(i).at(e); }
    std::size_t dim(std::size_t i, unsigned e) const { return has_piece(i, e) ? basis(i, e).size() : 0; }
    /// Highest coefficient degree present in form degree i (pieces exist for e = 0..top).
    std::size_t pieces_in_degree(std::size_t i) const { return i <= n_ ? pieces_[i].size() : 0; }

    /// d : Omega^i_e -> Omega^{i+1}_{e-1}. d(x^a dx_I) = sum_j a_j x^{a - e_j} dx_j ^ dx_I.
    Matrix<Rational> differential(std::size_t i, unsigned e) const {
        const std::size_t cols = dim(i, e);
        if (e == 0 || i + 1 > n_ || !has_piece(i + 1, e - 1))
            return Matrix<Rational>(e == 0 ? 0 : dim(i + 1, e - 1), cols);
        const auto& target = basis(i + 1, e - 1);
        std::map<std::pair<std::vector<unsigned>, std::vector<std::size_t>>, std::size_t> index;
        for (std::size_t r = 0; r < target.size(); ++r)
            index[{target[r].exponents, target[r].wedge}] = r;
        Matrix<Rational> m(target.size(), cols);
        const auto& source = basis(i, e);
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& f = source[c];
            for (std::size_t j = 0; j < n_; ++j) {
                if (f.exponents[j] == 0 || std::binary_search(f.wedge.begin(), f.wedge.end(), j))
                    continue;
                auto exps = f.exponents;
                exps[j] -= 1;
                // dx_j ^ dx_I: moving dx_j into place passes the indices of I below j
                std::size_t below = static_cast<std::size_t>(std::lower_bound(f.wedge.begin(), f.wedge.end(), j) - f.wedge.begin());
                auto wedge = f.wedge;
                wedge.insert(wedge.begin() + static_cast<std::ptrdiff_t>(below), j);
                Rational coeff = f.exponents[j];
                if (below % 2 == 1)
                    coeff = -coeff;
                m(index.at({exps, wedge}), c) += coeff;
            }
        }
        return m;
    }

private:
    std::size_t n_;
    unsigned d_;
    std::vector<std::vector<std::vector<BasisForm>>> pieces_;  // [i][e]
};

inline GradedDeRham build_de_rham(std::size_t n, unsigned truncation) { return {n, truncation}; }

/// dims[i][e] = dim Omega^i_e; the G_a-cohomology is all of Omega^i.
inline std::vector<std::vector<std::size_t>> ga_cohomology(std::size_t n, unsigned truncation) {
    GradedDeRham dr(n, truncation);
    std::vector<std::vector<std::size_t>> dims;
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::size_t> row;
        for (unsigned e = 0; e < dr.pieces_in_degree(i); ++e)
            row.push_back(dr.dim(i, e));
        dims.push_back(std::move(row));
    }
    return dims;
}

struct QpPiece {
    std::size_t form_degree = 0;
    unsigned poly_degree = 0;
    std::size_t dim = 0;
    std::size_t kernel = 0;  // dim Ker(d_i)
    std::size_t image = 0;   // dim Im(d_{i-1}) landing here
    bool boundary = false;   // the source of Im(d_{i-1}) lies past the truncation
    bool exact() const { return kernel == image; }
};

struct QpCohomology {
    std::vector<QpPiece> pieces;
    bool closed = true;  // d o d = 0 on every piece

    /// Ker(d_i) = Im(d_{i-1}) on every interior piece with i >= 1.
    bool poincare_lemma_holds() const {
        for (const auto& p : pieces)
            if (p.form_degree >= 1 && !p.boundary && !p.exact())
                return false;
        return true;
    }
    /// H^0 is the constants: Ker(d_0) is one-dimensional, in coefficient degree 0.
    bool h0_is_constants() const {
        for (const auto& p : pieces)
            if (p.form_degree == 0 && p.kernel != (p.poly_degree == 0 ? 1u : 0u))
                return false;
        return true;
    }
    /// Per-degree dims of H^i (the kernels), for e = 0, 1, ...
    std::vector<std::size_t> kernel_dims(std::size_t i) const {
        std::vector<std::size_t> out;
        for (const auto& p : pieces)
            if (p.form_degree == i)
                out.push_back(p.kernel);
        return out;
    }
};

/// Graded dimensions of Ker(d_i), checked against Im(d_{i-1}) piece by piece.
inline QpCohomology qp_cohomology(std::size_t n, unsigned truncation) {
    GradedDeRham dr(n, truncation);
    QpCohomology out;
    for (std::size_t i = 0; i <= n; ++i)
        for (unsigned e = 0; e < dr.pieces_in_degree(i); ++e) {
            QpPiece p;
            p.form_degree = i;
            p.poly_degree = e;
            p.dim = dr.dim(i, e);
            auto d_out = dr.differential(i, e);
            p.kernel = p.dim - algebra::field_rank(d_out);
            if (i >= 1) {
                p.boundary = !dr.has_piece(i - 1, e + 1);
                if (!p.boundary) {
                    auto d_in = dr.differential(i - 1, e + 1);
                    p.image = algebra::field_rank(d_in);
                    if (d_out.rows() > 0 && d_in.cols() > 0 && !(d_out * d_in).is_zero())
                        out.closed = false;
                }
            }
            out.pieces.push_back(p);
        }
    return out;
}

}  // namespace ffcurve
