#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ffcurve/slope.hpp"

namespace ffcurve {

/// Banach-Colmez (dimension, height) pair. Additive in both components.
struct BCInvariant {
    std::int64_t dim = 0;
    std::int64_t ht = 0;

    friend bool operator==(const BCInvariant&, const BCInvariant&) = default;
    BCInvariant& operator+=(const BCInvariant& o) {
        dim += o.dim;
        ht += o.ht;
        return *this;
    }
    friend BCInvariant operator+(BCInvariant a, const BCInvariant& b) { return a += b; }
    friend BCInvariant operator-(const BCInvariant& a, const BCInvariant& b) {
        return {a.dim - b.dim, a.ht - b.ht};
    }
    friend BCInvariant operator-(const BCInvariant& a) { return {-a.dim, -a.ht}; }
    friend BCInvariant operator*(std::int64_t k, const BCInvariant& a) { return {k * a.dim, k * a.ht}; }

    std::string str() const { return "(" + std::to_string(dim) + "," + std::to_string(ht) + ")"; }
};

inline const std::string kDefaultPoint = "inf";

/// A coherent sheaf on the curve in normal form: a bundle part (distinct
/// slopes with multiplicities) and a torsion part (finite-length modules over
/// the local rings at labelled closed points, given by invariant factors).
class CoherentSheaf {
public:
    using BundlePart = std::map<Slope, std::int64_t, std::greater<>>;
    using TorsionPart = std::map<std::string, std::vector<std::int64_t>>;

    CoherentSheaf() = default;

    static CoherentSheaf stable(const Slope& s, std::int64_t multiplicity = 1) {
        CoherentSheaf f;
        f.add_stable(s, multiplicity);
        return f;
    }
    /// O(d) for integral d.
    static CoherentSheaf line(std::int64_t d, std::int64_t multiplicity = 1) {
        return stable(Slope::integer(d), multiplicity);
    }
    static CoherentSheaf torsion(std::vector<std::int64_t> factors, const std::string& point = kDefaultPoint) {
        CoherentSheaf f;
        f.add_torsion(point, std::move(factors));
        return f;
    }

    void add_stable(const Slope& s, std::int64_t multiplicity) {
        if (s.is_infinite())
            throw Error("bundle summand needs a finite slope; use torsion for +inf");
        if (multiplicity <= 0)
            throw Error("multiplicity must be positive");
        bundle_[s] += multiplicity;
    }

    void add_torsion(const std::string& point, std::vector<std::int64_t> factors) {
        if (factors.empty())
            throw Error("torsion factor list must be non-empty");
        if (point.empty())
            throw Error("torsion point label must be non-empty");
        for (auto k : factors)
            if (k <= 0)
                throw Error("torsion factors must be positive");
        auto& slot = torsion_[point];
        slot.insert(slot.end(), factors.begin(), factors.end());
        std::sort(slot.begin(), slot.end(), std::greater<>());
    }

    const BundlePart& bundle() const { return bundle_; }
    const TorsionPart& torsion_part() const { return torsion_; }

    bool is_zero() const { return bundle_.empty() && torsion_.empty(); }
    bool is_torsion() const { return bundle_.empty() && !torsion_.empty(); }
    bool is_bundle() const { return torsion_.empty(); }

    std::int64_t rank() const {
        std::int64_t r = 0;
        for (const auto& [s, m] : bundle_)
            r += s.rank() * m;
        return r;
    }
    std::int64_t torsion_length() const {
        std::int64_t len = 0;
        for (const auto& [p, fs] : torsion_)
            for (auto k : fs)
                len += k;
        return len;
    }
    std::int64_t degree() const {
        std::int64_t d = torsion_length();
        for (const auto& [s, m] : bundle_)
            d += s.degree() * m;
        return d;
    }

    /// Direct sum.
    CoherentSheaf& operator+=(const CoherentSheaf& o) {
        for (const auto& [s, m] : o.bundle_)
            add_stable(s, m);
        for (const auto& [p, fs] : o.torsion_)
            add_torsion(p, fs);
        return *this;
    }
    friend CoherentSheaf operator+(CoherentSheaf a, const CoherentSheaf& b) { return a += b; }

    /// The sub-sum of stable summands satisfying `pred` (torsion included iff `keep_torsion`).
    template <class Pred>
    CoherentSheaf filter(Pred pred, bool keep_torsion) const {
        CoherentSheaf out;
        for (const auto& [s, m] : bundle_)
            if (pred(s))
                out.bundle_.emplace(s, m);
        if (keep_torsion)
            out.torsion_ = torsion_;
        return out;
    }

    friend bool operator==(const CoherentSheaf&, const CoherentSheaf&) = default;

private:
    BundlePart bundle_;
    TorsionPart torsion_;
};

// --- normalization from raw descriptions -------------------------------------

struct RawBundle {
    std::int64_t degree = 0;
    std::int64_t rank = 1;
    std::int64_t multiplicity = 1;
};
struct RawTorsion {
    std::string point = kDefaultPoint;
    std::vector<std::int64_t> factors;
};
using RawAtom = std::variant<RawBundle, RawTorsion>;

/// Canonical form of an unnormalized list of summands. Slopes are reduced and
/// merged; torsion factors are sorted non-increasing per point.
inline CoherentSheaf normalize(const std::vector<RawAtom>& atoms) {
    CoherentSheaf f;
    for (const auto& atom : atoms) {
        if (const auto* b = std::get_if<RawBundle>(&atom))
            f.add_stable(Slope::reduce(b->degree, b->rank), b->multiplicity);
        else {
            const auto& t = std::get<RawTorsion>(atom);
            f.add_torsion(t.point, t.factors);
        }
    }
    return f;
}

// --- numeric invariants and HN -------------------------------------------------

struct NumericInvariants {
    std::int64_t rank = 0;
    std::int64_t degree = 0;
    std::optional<Slope> slope;  // empty for the zero sheaf
};

inline NumericInvariants numeric_invariants(const CoherentSheaf& f) {
    NumericInvariants inv{f.rank(), f.degree(), std::nullopt};
    if (inv.rank > 0)
        inv.slope = Slope::reduce(inv.degree, inv.rank);
    else if (!f.is_zero())
        inv.slope = Slope::infinity();
    return inv;
}

struct HnPiece {
    Slope slope;
    CoherentSheaf piece;
};

/// Harder-Narasimhan decomposition: torsion first, then bundle slopes strictly
/// decreasing. Each piece is semistable.
inline std::vector<HnPiece> hn(const CoherentSheaf& f) {
    if (f.is_zero())
        throw Error("HN filtration of the zero sheaf is undefined");
    std::vector<HnPiece> out;
    if (!f.torsion_part().empty())
        out.push_back({Slope::infinity(), f.filter([](const Slope&) { return false; }, true)});
    for (const auto& [s, m] : f.bundle())
        out.push_back({s, CoherentSheaf::stable(s, m)});
    return out;
}

// --- cohomology ----------------------------------------------------------------

/// R^0 tau_* of the stable summand O(d/h): U(d,h) for d>0, Q_p for d=0, 0 for d<0.
inline BCInvariant h0_stable(const Slope& s) {
    if (s.degree() > 0)
        return {s.degree(), s.rank()};
    if (s.degree() == 0)
        return {0, 1};
    return {0, 0};
}
inline BCInvariant h1_stable(const Slope& s) {
    if (s.degree() >= 0)
        return {0, 0};
    return {-s.degree(), -s.rank()};
}

inline BCInvariant h0(const CoherentSheaf& f) {
    BCInvariant out{f.torsion_length(), 0};
    for (const auto& [s, m] : f.bundle())
        out += m * h0_stable(s);
    return out;
}

inline BCInvariant h1(const CoherentSheaf& f) {
    BCInvariant out;
    for (const auto& [s, m] : f.bundle())
        out += m * h1_stable(s);
    return out;
}

/// h0 - h1. Always equals (degree, rank).
inline BCInvariant chi(const CoherentSheaf& f) { return h0(f) - h1(f); }

// --- Hom / Ext ---------------------------------------------------------------------

namespace detail {

inline std::int64_t torsion_pairing(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t total = 0;
    for (auto x : a)
        for (auto y : b)
            total += std::min(x, y);
    return total;
}

inline std::int64_t same_point_pairing(const CoherentSheaf& f, const CoherentSheaf& g) {
    std::int64_t total = 0;
    for (const auto& [p, fs] : f.torsion_part()) {
        auto it = g.torsion_part().find(p);
        if (it != g.torsion_part().end())
            total += torsion_pairing(fs, it->second);
    }
    return total;
}

}  // namespace detail

inline BCInvariant hom(const CoherentSheaf& f, const CoherentSheaf& g) {
    BCInvariant out;
    for (const auto& [lam, a] : f.bundle())
        for (const auto& [mu, b] : g.bundle()) {
            auto [nu, m] = hom_slope_data(lam, mu);
            out += (a * b * m) * h0_stable(nu);
        }
    out.dim += f.rank() * g.torsion_length();
    out.dim += detail::same_point_pairing(f, g);
    return out;
}

inline BCInvariant ext1(const CoherentSheaf& f, const CoherentSheaf& g) {
    BCInvariant out;
    for (const auto& [lam, a] : f.bundle())
        for (const auto& [mu, b] : g.bundle()) {
            auto [nu, m] = hom_slope_data(lam, mu);
            out += (a * b * m) * h1_stable(nu);
        }
    out.dim += f.torsion_length() * g.rank();
    out.dim += detail::same_point_pairing(f, g);
    return out;
}

/// The curve is regular of dimension one.
inline BCInvariant ext2(const CoherentSheaf&, const CoherentSheaf&) { return {}; }

// --- tensor / dual (bundles only) ---------------------------------------------------

inline CoherentSheaf dual(const CoherentSheaf& f) {
    if (!f.is_bundle())
        throw Error("dual is only defined for vector bundles");
    CoherentSheaf out;
    for (const auto& [s, m] : f.bundle())
        out.add_stable(-s, m);
    return out;
}

/// O(lambda) (x) O(mu) = O(lambda+mu)^m with h_lambda h_mu = m h_{lambda+mu}.
inline CoherentSheaf tensor(const CoherentSheaf& f, const CoherentSheaf& g) {
    if (!f.is_bundle() || !g.is_bundle())
        throw Error("tensor with torsion is not supported");
    CoherentSheaf out;
    for (const auto& [lam, a] : f.bundle())
        for (const auto& [mu, b] : g.bundle()) {
            Slope sum = lam - (-mu);
            out.add_stable(sum, a * b * lam.rank() * mu.rank() / sum.rank());
        }
    return out;
}

// --- K0 ----------------------------------------------------------------------------

/// [F] = a [O] + b [O(1)] in K0; rank = a + b, degree = b.
struct K0Class {
    std::int64_t a = 0;
    std::int64_t b = 0;

    std::int64_t rank() const { return a + b; }
    std::int64_t degree() const { return b; }

    static K0Class from_rank_degree(std::int64_t rank, std::int64_t degree) { return {rank - degree, degree}; }

    friend bool operator==(const K0Class&, const K0Class&) = default;
    K0Class& operator+=(const K0Class& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    friend K0Class operator+(K0Class x, const K0Class& y) { return x += y; }
    friend K0Class operator-(const K0Class& x, const K0Class& y) { return {x.a - y.a, x.b - y.b}; }
    friend K0Class operator-(const K0Class& x) { return {-x.a, -x.b}; }
};

inline K0Class k0_class(const CoherentSheaf& f) {
    K0Class c;
    for (const auto& [s, m] : f.bundle())
        for (std::int64_t i = 0; i < m; ++i)
            c += K0Class::from_rank_degree(s.rank(), s.degree());
    // torsion of length k has class [O(k)] - [O]
    c += K0Class::from_rank_degree(0, f.torsion_length());
    return c;
}

/// chi(RHom(x, y)) as a (dim, ht) pair, computed from classes alone:
/// (r_x d_y - d_x r_y, r_x r_y).
inline BCInvariant euler_form(const K0Class& x, const K0Class& y) {
    return {x.rank() * y.degree() - x.degree() * y.rank(), x.rank() * y.rank()};
}

// --- objects of the derived category that are sums of shifted sheaves ----------------

/// A direct sum of shifted sheaves, (+)_s F_s[s]. Used for entries of exact
/// sequences in the tilted heart, where O(lambda)[1] appears.
class ShiftedSum {
public:
    ShiftedSum() = default;
    ShiftedSum(CoherentSheaf f) { add(0, std::move(f)); }  // NOLINT: implicit by design of SES entries
    static ShiftedSum shifted(CoherentSheaf f, int shift) {
        ShiftedSum s;
        s.add(shift, std::move(f));
        return s;
    }

    void add(int shift, const CoherentSheaf& f) {
        if (f.is_zero())
            return;
        parts_[shift] += f;
    }
    ShiftedSum& operator+=(const ShiftedSum& o) {
        for (const auto& [s, f] : o.parts_)
            add(s, f);
        return *this;
    }
    friend ShiftedSum operator+(ShiftedSum a, const ShiftedSum& b) { return a += b; }

    const std::map<int, CoherentSheaf>& parts() const { return parts_; }
    CoherentSheaf at(int shift) const {
        auto it = parts_.find(shift);
        return it == parts_.end() ? CoherentSheaf{} : it->second;
    }
    bool is_zero() const { return parts_.empty(); }

    K0Class k0() const {
        K0Class c;
        for (const auto& [s, f] : parts_)
            c += (s % 2 == 0) ? k0_class(f) : -k0_class(f);
        return c;
    }

    friend bool operator==(const ShiftedSum&, const ShiftedSum&) = default;

private:
    std::map<int, CoherentSheaf> parts_;
};

/// Hom_{D^b}(x, y[n]) for sums of shifted sheaves, from Hom/Ext^1 on the curve.
inline BCInvariant derived_hom(const ShiftedSum& x, const ShiftedSum& y, int n = 0) {
    BCInvariant out;
    for (const auto& [sx, fx] : x.parts())
        for (const auto& [sy, fy] : y.parts()) {
            // Hom(F[sx], G[sy + n]) = Ext^{sy + n - sx}(F, G)
            int e = sy + n - sx;
            if (e == 0)
                out += hom(fx, fy);
            else if (e == 1)
                out += ext1(fx, fy);
            else if (e == 2)
                out += ext2(fx, fy);
        }
    return out;
}

enum class SequenceTag { se1, se2, se3, level, composite };

inline std::string to_string(SequenceTag t) {
    switch (t) {
    case SequenceTag::se1: return "se1";
    case SequenceTag::se2: return "se2";
    case SequenceTag::se3: return "se3";
    case SequenceTag::level: return "level";
    case SequenceTag::composite: return "composite";
    }
    return "?";
}

/// Certificate 0 -> left -> middle -> right -> 0, checked at the level of K0.
struct ShortExactSequence {
    ShiftedSum left;
    ShiftedSum middle;
    ShiftedSum right;
    SequenceTag tag = SequenceTag::composite;

    bool additive() const { return middle.k0() == left.k0() + right.k0(); }
};

/// 0 -> O -> O(1) + O(d-1) -> O(d) -> 0, d > 1.
inline ShortExactSequence se1(std::int64_t d) {
    if (d <= 1)
        throw Error("se1 needs d > 1");
    return {CoherentSheaf::line(0), CoherentSheaf::line(1) + CoherentSheaf::line(d - 1), CoherentSheaf::line(d),
            SequenceTag::se1};
}

/// 0 -> O -> O(k) -> T(inf,[k]) -> 0, k > 0.
inline ShortExactSequence se2(std::int64_t k, const std::string& point = kDefaultPoint) {
    if (k <= 0)
        throw Error("se2 needs k > 0");
    return {CoherentSheaf::line(0), CoherentSheaf::line(k), CoherentSheaf::torsion({k}, point), SequenceTag::se2};
}

/// 0 -> O -> T(inf,[k]) -> O(-k)[1] -> 0 in the tilted heart, k > 0.
inline ShortExactSequence se3(std::int64_t k, const std::string& point = kDefaultPoint) {
    if (k <= 0)
        throw Error("se3 needs k > 0");
    return {CoherentSheaf::line(0), CoherentSheaf::torsion({k}, point), ShiftedSum::shifted(CoherentSheaf::line(-k), 1),
            SequenceTag::se3};
}

/// Pushforward of the line bundle O(d) from the degree-h cover: O(d'/h')^g with g = gcd(d, h).
inline CoherentSheaf pushforward_from_level(std::int64_t d, std::int64_t h) {
    if (h < 1)
        throw Error("level must be >= 1");
    Slope s = Slope::reduce(d, h);
    return CoherentSheaf::stable(s, h / s.rank());
}

}  // namespace ffcurve
