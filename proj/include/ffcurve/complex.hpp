#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ffcurve/algebra/matrix.hpp"

namespace ffcurve {

using algebra::Euclidean;
using algebra::Matrix;

/// Cochain complex of finitely generated free modules over a Euclidean domain,
/// K^lo -> K^{lo+1} -> ... ; differential(k) maps term k to term k+1 (indices
/// relative to `lowest`) and is stored as a ranks[k+1] x ranks[k] matrix.
template <class R>
class BoundedComplex {
public:
    BoundedComplex() = default;
    BoundedComplex(int lowest, std::vector<std::size_t> ranks, std::vector<Matrix<R>> differentials)
        : lowest_(lowest), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
        if (ranks_.empty())
            throw Error("complex needs at least one term");
        if (diffs_.size() + 1 != ranks_.size())
            throw Error("complex needs one differential between consecutive terms");
        for (std::size_t k = 0; k < diffs_.size(); ++k)
            if (diffs_[k].rows() != ranks_[k + 1] || diffs_[k].cols() != ranks_[k])
                throw Error("differential " + std::to_string(k) + " has the wrong shape");
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
            if (!(diffs_[k + 1] * diffs_[k]).is_zero())
                throw Error("d o d != 0 at degree " + std::to_string(lowest_ + static_cast<int>(k)));
    }

    int lowest() const { return lowest_; }
    int highest() const { return lowest_ + static_cast<int>(ranks_.size()) - 1; }
    std::size_t length() const { return ranks_.size(); }

    /// Rank of the term in absolute degree j (0 outside the range).
    std::size_t rank_at(int j) const {
        if (j < lowest_ || j > highest())
            return 0;
        return ranks_[static_cast<std::size_t>(j - lowest_)];
    }
    /// Differential out of absolute degree j, as a matrix (possibly empty).
    Matrix<R> differential_at(int j) const {
        if (j >= lowest_ && j < highest())
            return diffs_[static_cast<std::size_t>(j - lowest_)];
        return Matrix<R>(rank_at(j + 1), rank_at(j));
    }

    const std::vector<std::size_t>& ranks() const { return ranks_; }
    const std::vector<Matrix<R>>& differentials() const { return diffs_; }

    friend bool operator==(const BoundedComplex&, const BoundedComplex&) = default;

private:
    int lowest_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<Matrix<R>> diffs_;
};

template <class R>
struct CohomologyGroup {
    int degree = 0;
    std::size_t free_rank = 0;
    std::vector<R> torsion;  // non-unit invariant factors

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

/// H^j = ker d_j / im d_{j-1}, from Smith forms of the differentials.
template <class R>
std::vector<CohomologyGroup<R>> cohomology(const BoundedComplex<R>& c) {
    std::vector<CohomologyGroup<R>> out;
    for (int j = c.lowest(); j <= c.highest(); ++j) {
        auto out_form = algebra::smith_normal_form(c.differential_at(j));
        auto in_form = algebra::smith_normal_form(c.differential_at(j - 1));
        CohomologyGroup<R> h;
        h.degree = j;
        h.free_rank = c.rank_at(j) - out_form.rank() - in_form.rank();
        for (const auto& s : in_form.invariants)
            if (!Euclidean<R>::is_unit(s))
                h.torsion.push_back(s);
        out.push_back(std::move(h));
    }
    return out;
}

template <class R>
bool is_acyclic(const BoundedComplex<R>& c) {
    for (const auto& h : cohomology(c))
        if (!h.is_zero())
            return false;
    return true;
}

// --- Koszul complexes -------------------------------------------------------------

namespace detail {

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace detail

/// Koszul complex K(g_1..g_n) in degrees 0..n. The component from position
/// I = {i_1<...<i_k} to J = {j_1<...<j_{k+1}} ⊃ I is (-1)^{m-1} g_{j_m},
/// where j_m is the index of J missing from I.
template <class R>
BoundedComplex<R> koszul(const std::vector<R>& g) {
    const std::size_t n = g.size();
    if (n == 0)
        throw Error("koszul needs at least one element");
    std::vector<std::vector<std::vector<std::size_t>>> bases;
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= n; ++k) {
        bases.push_back(detail::subsets(n, k));
        ranks.push_back(bases.back().size());
    }
    std::vector<Matrix<R>> diffs;
    for (std::size_t k = 0; k < n; ++k) {
        Matrix<R> d(ranks[k + 1], ranks[k]);
        for (std::size_t col = 0; col < ranks[k]; ++col) {
            const auto& src = bases[k][col];
            for (std::size_t row = 0; row < ranks[k + 1]; ++row) {
                const auto& dst = bases[k + 1][row];
                if (!std::includes(dst.begin(), dst.end(), src.begin(), src.end()))
                    continue;
                for (std::size_t m = 0; m < dst.size(); ++m)
                    if (!std::binary_search(src.begin(), src.end(), dst[m])) {
                        // m is 0-based here, so the sign is (-1)^m
                        d(row, col) = (m % 2 == 0) ? g[dst[m]] : Euclidean<R>::zero() - g[dst[m]];
                        break;
                    }
            }
        }
        diffs.push_back(std::move(d));
    }
    return {0, std::move(ranks), std::move(diffs)};
}

// --- chain maps and quasi-isomorphisms --------------------------------------------

/// Degree-wise maps between two complexes over the same degree range.
template <class R>
struct ChainMap {
    BoundedComplex<R> source;
    BoundedComplex<R> target;
    std::vector<Matrix<R>> components;  // one per degree, target.rank x source.rank

    void validate() const {
        if (source.lowest() != target.lowest() || source.length() != target.length())
            throw Error("chain map source and target must span the same degrees");
        if (components.size() != source.length())
            throw Error("chain map needs one component per degree");
        for (int j = source.lowest(); j <= source.highest(); ++j) {
            const auto& f = components[static_cast<std::size_t>(j - source.lowest())];
            if (f.rows() != target.rank_at(j) || f.cols() != source.rank_at(j))
                throw Error("chain map component has the wrong shape at degree " + std::to_string(j));
        }
        for (int j = source.lowest(); j < source.highest(); ++j) {
            const auto& f0 = components[static_cast<std::size_t>(j - source.lowest())];
            const auto& f1 = components[static_cast<std::size_t>(j + 1 - source.lowest())];
            if (!(target.differential_at(j) * f0 == f1 * source.differential_at(j)))
                throw Error("not a chain map at degree " + std::to_string(j));
        }
    }

    static ChainMap identity(const BoundedComplex<R>& c) {
        std::vector<Matrix<R>> comps;
        for (auto r : c.ranks())
            comps.push_back(Matrix<R>::identity(r));
        return {c, c, std::move(comps)};
    }
};

/// Mapping cone: Cone^j = S^{j+1} (+) T^j, d(s, t) = (-d_S s, f s + d_T t).
template <class R>
BoundedComplex<R> mapping_cone(const ChainMap<R>& f) {
    f.validate();
    const int lo = f.source.lowest() - 1, hi = f.source.highest();
    auto comp = [&](int j) {
        if (j < f.source.lowest() || j > f.source.highest())
            return Matrix<R>(f.target.rank_at(j), f.source.rank_at(j));
        return f.components[static_cast<std::size_t>(j - f.source.lowest())];
    };
    std::vector<std::size_t> ranks;
    for (int j = lo; j <= hi; ++j)
        ranks.push_back(f.source.rank_at(j + 1) + f.target.rank_at(j));
    std::vector<Matrix<R>> diffs;
    for (int j = lo; j < hi; ++j) {
        const std::size_t s_in = f.source.rank_at(j + 1), t_in = f.target.rank_at(j);
        const std::size_t s_out = f.source.rank_at(j + 2), t_out = f.target.rank_at(j + 1);
        Matrix<R> d(s_out + t_out, s_in + t_in);
        d.set_block(0, 0, -f.source.differential_at(j + 1));
        d.set_block(s_out, 0, comp(j + 1));
        d.set_block(s_out, s_in, f.target.differential_at(j));
        diffs.push_back(std::move(d));
    }
    return {lo, std::move(ranks), std::move(diffs)};
}

/// True iff f induces isomorphisms on all cohomology (cone acyclic).
template <class R>
bool is_quasi_iso(const ChainMap<R>& f) {
    return is_acyclic(mapping_cone(f));
}

// --- decalage ----------------------------------------------------------------------

/// delta : Z -> N, tabulated on [lowest, lowest + values.size()) and clamped
/// to the end values outside that window.
class ShiftProfile {
public:
    ShiftProfile() = default;
    ShiftProfile(int lowest, std::vector<unsigned> values) : lowest_(lowest), values_(std::move(values)) {
        if (values_.empty())
            throw Error("shift profile needs at least one value");
    }

    static ShiftProfile constant(unsigned c) { return {0, {c}}; }
    /// delta(j) = j on [lo, hi]; lo must be >= 0.
    static ShiftProfile identity(int lo, int hi) {
        if (lo < 0 || hi < lo)
            throw Error("identity profile needs 0 <= lo <= hi");
        std::vector<unsigned> v;
        for (int j = lo; j <= hi; ++j)
            v.push_back(static_cast<unsigned>(j));
        return {lo, std::move(v)};
    }

    unsigned operator()(int j) const {
        if (j < lowest_)
            return values_.front();
        auto k = static_cast<std::size_t>(j - lowest_);
        return k < values_.size() ? values_[k] : values_.back();
    }

    bool non_decreasing() const { return std::is_sorted(values_.begin(), values_.end()); }

    int lowest() const { return lowest_; }
    const std::vector<unsigned>& values() const { return values_; }

private:
    int lowest_ = 0;
    std::vector<unsigned> values_{0};
};

/// eta_{delta,f} K: term j is {x in f^{delta(j)} K^j : dx in f^{delta(j+1)} K^{j+1}},
/// a full-rank lattice presented as x = f^{exponent_j} * basis_j * c.
template <class R>
struct DecalageResult {
    BoundedComplex<R> complex;
    std::vector<Matrix<R>> bases;      // basis_j = V_j diag(diag_j); columns span the lattice before the f-power
    std::vector<Matrix<R>> inverses;   // V_j^{-1}
    std::vector<std::vector<R>> diag;
    std::vector<unsigned> exponents;
    R f;

    /// Coordinates of x (a column vector in K^j, assumed in the lattice) in the eta basis.
    Matrix<R> coordinates(int j, const Matrix<R>& x) const {
        const auto k = static_cast<std::size_t>(j - complex.lowest());
        Matrix<R> y = inverses[k] * x;
        R scale = algebra::power(f, exponents[k]);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t c = 0; c < y.cols(); ++c)
                y(i, c) = algebra::exact_div(algebra::exact_div(y(i, c), diag[k][i]), scale);
        return y;
    }
};

namespace detail {

/// Lattice {y : D y in f^c R^m} inside R^n, returned as V diag(e) with V
/// the column transform of the Smith form of D; `v` receives V^{-1}.
template <class R>
void saturation_lattice(const Matrix<R>& d, const R& fc, Matrix<R>& basis, Matrix<R>& v, std::vector<R>& diag) {
    using E = Euclidean<R>;
    const std::size_t n = d.cols();
    diag.assign(n, E::one());
    if (E::is_unit(fc)) {
        // no condition on dx: keep the standard basis
        basis = Matrix<R>::identity(n);
        v = Matrix<R>::identity(n);
        return;
    }
    auto snf = algebra::smith_normal_form(d);
    for (std::size_t i = 0; i < snf.rank(); ++i)
        diag[i] = algebra::exact_div(fc, algebra::gcd(fc, snf.invariants[i]));
    // with U D V = S, D(V w) lands in f^c R^m iff s_i w_i is divisible by f^c
    basis = snf.col_transform;
    for (std::size_t c = 0; c < n; ++c)
        basis.scale_col(c, diag[c]);
    v = snf.col_inverse;
}

}  // namespace detail

template <class R>
DecalageResult<R> decalage(const BoundedComplex<R>& k, const R& f, const ShiftProfile& delta) {
    using E = Euclidean<R>;
    if (E::is_zero(f))
        throw Error("decalage needs a non-zero f");
    DecalageResult<R> res;
    res.f = f;
    const int lo = k.lowest(), hi = k.highest();
    for (int j = lo; j <= hi; ++j) {
        unsigned a = delta(j), b = delta(j + 1);
        unsigned c = b > a ? b - a : 0;
        Matrix<R> basis, v;
        std::vector<R> diag;
        detail::saturation_lattice(k.differential_at(j), algebra::power(f, c), basis, v, diag);
        res.bases.push_back(std::move(basis));
        res.inverses.push_back(std::move(v));
        res.diag.push_back(std::move(diag));
        res.exponents.push_back(a);
    }
    std::vector<Matrix<R>> diffs;
    for (int j = lo; j < hi; ++j) {
        const auto idx = static_cast<std::size_t>(j - lo);
        // image of f^{a_j} B_j c under d, expressed in the next basis
        Matrix<R> img = (k.differential_at(j) * res.bases[idx]).scaled(algebra::power(f, res.exponents[idx]));
        diffs.push_back(res.coordinates(j + 1, img));
    }
    res.complex = BoundedComplex<R>(lo, k.ranks(), std::move(diffs));
    return res;
}

/// eta applied to a chain map, in the bases chosen by decalage on each side.
template <class R>
ChainMap<R> decalage(const ChainMap<R>& m, const R& f, const ShiftProfile& delta) {
    m.validate();
    auto src = decalage(m.source, f, delta);
    auto dst = decalage(m.target, f, delta);
    std::vector<Matrix<R>> comps;
    for (int j = m.source.lowest(); j <= m.source.highest(); ++j) {
        const auto idx = static_cast<std::size_t>(j - m.source.lowest());
        Matrix<R> img = (m.components[idx] * src.bases[idx]).scaled(algebra::power(f, src.exponents[idx]));
        comps.push_back(dst.coordinates(j, img));
    }
    return {src.complex, dst.complex, std::move(comps)};
}

}  // namespace ffcurve
