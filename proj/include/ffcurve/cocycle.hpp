#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ffcurve/algebra/matrix.hpp"
#include "ffcurve/derham.hpp"

namespace ffcurve {

enum class FunctionKind { poly, mahler };

inline std::string to_string(FunctionKind k) { return k == FunctionKind::poly ? "poly" : "mahler"; }

/// A function of `arity` variables written in a monomial basis. For POLY the
/// basis element with exponents (a_1..a_k) is x_1^a_1 ... x_k^a_k; for MAHLER
/// it is binom(x_1, a_1) ... binom(x_k, a_k).
class Function {
public:
    using Exponents = std::vector<unsigned>;

    Function(FunctionKind kind, std::size_t arity) : kind_(kind), arity_(arity) {}

    static Function constant(FunctionKind kind, std::size_t arity, const Rational& c) {
        Function f(kind, arity);
        f.add_term(Exponents(arity, 0), c);
        return f;
    }
    static Function basis(FunctionKind kind, Exponents e) {
        Function f(kind, e.size());
        f.add_term(std::move(e), 1);
        return f;
    }

    FunctionKind kind() const { return kind_; }
    std::size_t arity() const { return arity_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (auto a : e)
                s += a;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(Exponents e, const Rational& c) {
        if (e.size() != arity_)
            throw Error("term arity does not match function arity");
        if (c == 0)
            return;
        auto& slot = terms_[std::move(e)];
        slot += c;
        if (slot == 0)
            erase_zeros();
    }

    Function& operator+=(const Function& o) {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_)
            terms_[e] += c;
        erase_zeros();
        return *this;
    }
    Function& operator-=(const Function& o) { return *this += o.scaled(-1); }
    friend Function operator+(Function a, const Function& b) { return a += b; }
    friend Function operator-(Function a, const Function& b) { return a -= b; }

    Function scaled(const Rational& s) const {
        Function out(kind_, arity_);
        if (s == 0)
            return out;
        for (const auto& [e, c] : terms_)
            out.terms_[e] = c * s;
        return out;
    }

    friend Function operator*(const Function& a, const Function& b) {
        a.check_compatible(b);
        Function out(a.kind_, a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                for (const auto& [e, c] : basis_product(a.kind_, ea, eb))
                    out.terms_[e] += ca * cb * c;
        out.erase_zeros();
        return out;
    }

    friend bool operator==(const Function& a, const Function& b) {
        return a.kind_ == b.kind_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /// Text form, e.g. "2*x*y" or "C(x,2)*C(y,1)".
    std::string str() const {
        static const char* names[] = {"x", "y", "z", "w"};
        auto var = [](std::size_t i) { return i < 4 ? std::string(names[i]) : "x" + std::to_string(i + 1); };
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                if (kind_ == FunctionKind::mahler)
                    mono += "C(" + var(i) + "," + std::to_string(e[i]) + ")";
                else
                    mono += var(i) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
            }
            Rational a = abs(c);
            std::string coeff = algebra::to_string(a);
            std::string body = mono.empty() ? coeff : (a == 1 ? mono : coeff + "*" + mono);
            if (out.empty())
                out = (c < 0 ? "-" : "") + body;
            else
                out += (c < 0 ? " - " : " + ") + body;
        }
        return out;
    }

    /// Precomposition f(s_1, ..., s_k) where slot i receives the sum of the
    /// target variables listed in slots[i]; the result has `target_arity` variables.
    Function substitute(const std::vector<std::vector<std::size_t>>& slots, std::size_t target_arity) const {
        if (slots.size() != arity_)
            throw Error("substitution needs one slot per variable");
        for (const auto& s : slots)
            for (auto v : s)
                if (v >= target_arity)
                    throw Error("substitution variable out of range");
        Function out(kind_, target_arity);
        for (const auto& [e, c] : terms_) {
            Function prod = constant(kind_, target_arity, c);
            for (std::size_t i = 0; i < arity_; ++i)
                prod = prod * slot_power(kind_, slots[i], e[i], target_arity);
            out += prod;
        }
        return out;
    }

private:
    void check_compatible(const Function& o) const {
        if (kind_ != o.kind_ || arity_ != o.arity_)
            throw Error("functions live in different spaces");
    }
    void erase_zeros() { std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; }); }

    static Rational binomial(unsigned n, unsigned k) {
        if (k > n)
            return 0;
        Rational r = 1;
        for (unsigned i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    }

    /// Product of two basis elements expanded in the basis.
    static std::map<Exponents, Rational> basis_product(FunctionKind kind, const Exponents& a, const Exponents& b) {
        std::map<Exponents, Rational> acc{{Exponents{}, Rational(1)}};
        for (std::size_t v = 0; v < a.size(); ++v) {
            // per-variable expansion of x^a x^b or binom(x,a) binom(x,b)
            std::vector<std::pair<unsigned, Rational>> factor;
            if (kind == FunctionKind::poly) {
                factor.emplace_back(a[v] + b[v], 1);
            } else {
                unsigned lo = std::max(a[v], b[v]), hi = a[v] + b[v];
                for (unsigned k = lo; k <= hi; ++k)
                    factor.emplace_back(k, binomial(k, a[v]) * binomial(a[v], k - b[v]));
            }
            std::map<Exponents, Rational> next;
            for (const auto& [e, c] : acc)
                for (const auto& [k, ck] : factor) {
                    auto ee = e;
                    ee.push_back(k);
                    next[ee] += c * ck;
                }
            acc = std::move(next);
        }
        return acc;
    }

    /// (sum_{v in vars} x_v)^k, or binom(sum x_v, k) by iterated Vandermonde.
    static Function slot_power(FunctionKind kind, const std::vector<std::size_t>& vars, unsigned k, std::size_t arity) {
        Function out(kind, arity);
        if (vars.empty()) {
            if (k == 0)
                out.add_term(Exponents(arity, 0), 1);
            return out;
        }
        Exponents e(arity, 0);
        auto rec = [&](auto&& self, std::size_t idx, unsigned left, Rational c) -> void {
            if (idx + 1 == vars.size()) {
                e[vars[idx]] += left;
                // poly: multinomial; mahler: coefficient 1 from Vandermonde
                out.add_term(e, c);
                e[vars[idx]] -= left;
                return;
            }
            for (unsigned j = 0; j <= left; ++j) {
                e[vars[idx]] += j;
                self(self, idx + 1, left - j, kind == FunctionKind::poly ? c * binomial(left, j) : c);
                e[vars[idx]] -= j;
            }
        };
        rec(rec, 0, k, Rational(1));
        return out;
    }

    FunctionKind kind_;
    std::size_t arity_;
    std::map<Exponents, Rational> terms_;
};

/// A tuple of functions, one per generator of a resolution level.
using Cochain = std::vector<Function>;

/// Arities of the generators of each truncated resolution level:
/// level 0 is Z[G], level 1 is Z[G^2], level 2 is Z[G^3] x Z[G^2] and
/// level 3 is Z[G^4] x Z[G^3]^2 x Z[G^2] x Z[G].
inline const std::vector<std::size_t>& level_arities(std::size_t level) {
    static const std::array<std::vector<std::size_t>, 4> arities{
        std::vector<std::size_t>{1}, std::vector<std::size_t>{2}, std::vector<std::size_t>{3, 2},
        std::vector<std::size_t>{4, 3, 3, 2, 1}};
    if (level >= arities.size())
        throw Error("resolution is truncated at level 3");
    return arities[level];
}

namespace detail {

/// One term sign * [slots] of a boundary formula, landing in generator `target`
/// of the level below.
struct BoundaryTerm {
    int sign;
    std::size_t target;
    std::vector<std::vector<std::size_t>> slots;
};

// variables of a generator: x = 0, y = 1, z = 2, w = 3
constexpr std::size_t X = 0, Y = 1, Z = 2, W = 3;
using S = std::vector<std::size_t>;

/// boundary_formulas(k)[c] expresses the boundary of generator c of level k.
inline const std::vector<std::vector<BoundaryTerm>>& boundary_formulas(std::size_t k) {
    static const std::vector<std::vector<BoundaryTerm>> d1{
        {{+1, 0, {S{X, Y}}}, {-1, 0, {S{X}}}, {-1, 0, {S{Y}}}},
    };
    static const std::vector<std::vector<BoundaryTerm>> d2{
        {{+1, 0, {S{X, Y}, S{Z}}}, {-1, 0, {S{Y}, S{Z}}}, {-1, 0, {S{X}, S{Y, Z}}}, {+1, 0, {S{X}, S{Y}}}},
        {{+1, 0, {S{X}, S{Y}}}, {-1, 0, {S{Y}, S{X}}}},
    };
    static const std::vector<std::vector<BoundaryTerm>> d3{
        {{-1, 0, {S{Y}, S{Z}, S{W}}},
         {+1, 0, {S{X, Y}, S{Z}, S{W}}},
         {-1, 0, {S{X}, S{Y, Z}, S{W}}},
         {+1, 0, {S{X}, S{Y}, S{Z, W}}},
         {-1, 0, {S{X}, S{Y}, S{Z}}}},
        {{-1, 1, {S{Y}, S{Z}}},
         {+1, 1, {S{X, Y}, S{Z}}},
         {-1, 1, {S{X}, S{Z}}},
         {-1, 0, {S{X}, S{Y}, S{Z}}},
         {+1, 0, {S{X}, S{Z}, S{Y}}},
         {-1, 0, {S{Z}, S{X}, S{Y}}}},
        {{-1, 1, {S{X}, S{Z}}},
         {+1, 1, {S{X}, S{Y, Z}}},
         {-1, 1, {S{X}, S{Y}}},
         {+1, 0, {S{X}, S{Y}, S{Z}}},
         {-1, 0, {S{Y}, S{X}, S{Z}}},
         {+1, 0, {S{Y}, S{Z}, S{X}}}},
        {{+1, 1, {S{X}, S{Y}}}, {+1, 1, {S{Y}, S{X}}}},
        {{+1, 1, {S{X}, S{X}}}},
    };
    switch (k) {
        case 1: return d1;
        case 2: return d2;
        case 3: return d3;
        default: throw Error("boundary index must be 1, 2 or 3");
    }
}

}  // namespace detail

/// (d_k)^* : functions on the generators of level k-1 -> functions on level k.
inline Cochain pullback(std::size_t k, const Cochain& f) {
    const auto& formulas = detail::boundary_formulas(k);
    const auto& source = level_arities(k - 1);
    const auto& target = level_arities(k);
    if (f.size() != source.size())
        throw Error("cochain has " + std::to_string(f.size()) + " components, expected " + std::to_string(source.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].arity() != source[i])
            throw Error("component " + std::to_string(i) + " has arity " + std::to_string(f[i].arity()) +
                        ", expected " + std::to_string(source[i]));
    const FunctionKind kind = f.front().kind();
    Cochain out;
    for (std::size_t c = 0; c < target.size(); ++c) {
        Function g(kind, target[c]);
        for (const auto& t : formulas[c]) {
            auto term = f[t.target].substitute(t.slots, target[c]);
            g += t.sign > 0 ? term : term.scaled(-1);
        }
        out.push_back(std::move(g));
    }
    return out;
}

/// (d_1^* f)(x, y) = f(x + y) - f(x) - f(y).
inline Function pullback_d1(const Function& f) { return pullback(1, {f}).front(); }
/// Components (cocycle part on G^3, symmetry part on G^2).
inline Cochain pullback_d2(const Function& f) { return pullback(2, {f}); }
/// Components on G^4, G^3 (twice), G^2 and G.
inline Cochain pullback_d3(const Cochain& f) { return pullback(3, f); }

/// Coordinates for cochains on one level restricted to a window of total degrees.
class CochainSpace {
public:
    CochainSpace(FunctionKind kind, std::size_t level, unsigned min_degree, unsigned max_degree)
        : kind_(kind), arities_(level_arities(level)) {
        for (std::size_t c = 0; c < arities_.size(); ++c)
            for (unsigned e = min_degree; e <= max_degree; ++e)
                for (auto& m : detail::monomials(arities_[c], e)) {
                    index_[{c, m}] = basis_.size();
                    basis_.emplace_back(c, m);
                }
    }

    std::size_t dim() const { return basis_.size(); }

    Cochain element(std::size_t i) const {
        Cochain out;
        for (std::size_t c = 0; c < arities_.size(); ++c)
            out.emplace_back(kind_, arities_[c]);
        out[basis_[i].first] = Function::basis(kind_, basis_[i].second);
        return out;
    }
    std::vector<Rational> coordinates(const Cochain& f) const {
        std::vector<Rational> v(dim(), 0);
        for (std::size_t c = 0; c < f.size(); ++c)
            for (const auto& [e, coeff] : f[c].terms()) {
                auto it = index_.find({c, e});
                if (it == index_.end())
                    throw Error("cochain leaves the degree window");
                v[it->second] = coeff;
            }
        return v;
    }
    Cochain from_coordinates(const std::vector<Rational>& v) const {
        Cochain out;
        for (std::size_t c = 0; c < arities_.size(); ++c)
            out.emplace_back(kind_, arities_[c]);
        for (std::size_t i = 0; i < v.size(); ++i)
            out[basis_[i].first].add_term(basis_[i].second, v[i]);
        return out;
    }

private:
    FunctionKind kind_;
    std::vector<std::size_t> arities_;
    std::vector<std::pair<std::size_t, Function::Exponents>> basis_;
    std::map<std::pair<std::size_t, Function::Exponents>, std::size_t> index_;
};

/// Matrix of (d_k)^* from level k-1 to level k on the degree window.
inline Matrix<Rational> pullback_matrix(FunctionKind kind, std::size_t k, unsigned min_degree, unsigned max_degree) {
    CochainSpace src(kind, k - 1, min_degree, max_degree), dst(kind, k, min_degree, max_degree);
    Matrix<Rational> m(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
        auto col = dst.coordinates(pullback(k, src.element(j)));
        for (std::size_t i = 0; i < col.size(); ++i)
            m(i, j) = col[i];
    }
    return m;
}

struct SymmetricCocycleQuotient {
    unsigned degree = 0;
    std::size_t cocycles = 0;     // dim of symmetric 2-cocycles of that degree
    std::size_t coboundaries = 0; // dim of d_1^*(degree-q polynomials)
    std::size_t quotient() const { return cocycles - coboundaries; }
};

/// Homogeneous symmetric polynomial 2-cocycles of degree q modulo d_1^* g.
inline SymmetricCocycleQuotient symmetric_2cocycle_quotient(unsigned q) {
    if (q == 0)
        throw Error("degree must be at least 1");
    auto d2 = pullback_matrix(FunctionKind::poly, 2, q, q);
    auto d1 = pullback_matrix(FunctionKind::poly, 1, q, q);
    SymmetricCocycleQuotient r;
    r.degree = q;
    r.cocycles = d2.cols() - algebra::field_rank(d2);
    r.coboundaries = algebra::field_rank(d1);
    return r;
}

/// Homology of the truncated cochain complex at level k (k = 0 uses the
/// augmentation a -> (x -> a x) as incoming map).
struct LevelHomology {
    std::size_t level = 0;
    std::size_t kernel = 0;
    std::size_t image = 0;
    std::size_t homology() const { return kernel - image; }
};

inline LevelHomology level_homology(FunctionKind kind, std::size_t level, unsigned max_degree) {
    LevelHomology h;
    h.level = level;
    auto out = pullback_matrix(kind, level + 1, 0, max_degree);
    h.kernel = out.cols() - algebra::field_rank(out);
    if (level == 0) {
        // the identity x (binom(x, 1) in the Mahler basis) spans the augmentation image
        h.image = max_degree >= 1 ? 1 : 0;
    } else {
        h.image = algebra::field_rank(pullback_matrix(kind, level, 0, max_degree));
    }
    return h;
}

struct HomColumnReport {
    unsigned poly_degree = 6;
    unsigned mahler_degree = 4;
    std::size_t poly_kernel_dim = 0;
    bool poly_kernel_is_identity = false;     // Hom(G_a, G_a) is spanned by x
    bool constants_injective = false;         // c -> c - c - c = -c
    std::vector<LevelHomology> mahler;        // levels 0 and 1
    bool mahler_exact = false;

    bool ok() const { return poly_kernel_is_identity && constants_injective && mahler_exact; }
};

inline HomColumnReport hom_column_checks(unsigned poly_degree = 6, unsigned mahler_degree = 4) {
    HomColumnReport r;
    r.poly_degree = poly_degree;
    r.mahler_degree = mahler_degree;

    auto d1 = pullback_matrix(FunctionKind::poly, 1, 0, poly_degree);
    auto ker = algebra::field_kernel(d1);
    r.poly_kernel_dim = ker.cols();
    if (ker.cols() == 1) {
        CochainSpace src(FunctionKind::poly, 0, 0, poly_degree);
        std::vector<Rational> v(ker.rows());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = ker(i, 0);
        auto f = src.from_coordinates(v).front();
        auto x = Function::basis(FunctionKind::poly, {1});
        r.poly_kernel_is_identity = f == x.scaled(f.coeff({1}));
    }

    auto c = Function::constant(FunctionKind::poly, 1, 1);
    auto image = pullback_d1(c);
    r.constants_injective = image == Function::constant(FunctionKind::poly, 2, -1);

    r.mahler_exact = true;
    for (std::size_t level = 0; level < 2; ++level) {
        r.mahler.push_back(level_homology(FunctionKind::mahler, level, mahler_degree));
        if (r.mahler.back().homology() != 0)
            r.mahler_exact = false;
    }
    return r;
}

}  // namespace ffcurve
