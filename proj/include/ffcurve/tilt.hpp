#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ffcurve/sheaf.hpp"

namespace ffcurve {

/// Slope in the tilted heart, mu^- = -rg/deg, which may be -inf or +inf.
class TiltSlope {
public:
    enum class Kind { negative_infinity, finite, positive_infinity };

    static TiltSlope finite(Slope v) { return {Kind::finite, v}; }
    static TiltSlope negative_infinity() { return {Kind::negative_infinity, {}}; }
    static TiltSlope positive_infinity() { return {Kind::positive_infinity, {}}; }

    /// mu^- of a class with rank r and degree d; empty when r = d = 0.
    static std::optional<TiltSlope> from_class(std::int64_t r, std::int64_t d) {
        if (d == 0) {
            if (r == 0)
                return std::nullopt;
            return r > 0 ? negative_infinity() : positive_infinity();
        }
        if (d > 0)
            return finite(Slope::reduce(-r, d));
        return finite(Slope::reduce(r, -d));
    }

    Kind kind() const { return kind_; }
    const Slope& value() const { return value_; }

    friend bool operator==(const TiltSlope& a, const TiltSlope& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const TiltSlope& a, const TiltSlope& b) {
        if (a.kind_ != b.kind_)
            return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        if (a.kind_ != Kind::finite)
            return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    std::string str() const {
        switch (kind_) {
        case Kind::negative_infinity: return "-inf";
        case Kind::positive_infinity: return "inf";
        default: return value_.str();
        }
    }

private:
    TiltSlope(Kind k, Slope v) : kind_(k), value_(v) {}
    Kind kind_;
    Slope value_;
};

/// Object of the tilted heart Coh_X^-, stored split as neg[1] (+) pos.
/// neg: bundle with all slopes < 0 (the H^{-1}); pos: slopes >= 0 and torsion (the H^0).
class TiltedObject {
public:
    TiltedObject() = default;
    TiltedObject(CoherentSheaf neg, CoherentSheaf pos) : neg_(std::move(neg)), pos_(std::move(pos)) {
        if (!neg_.is_bundle())
            throw Error("H^-1 of a tilted object cannot contain torsion");
        for (const auto& [s, m] : neg_.bundle())
            if (s.sign() >= 0)
                throw Error("H^-1 of a tilted object must have all slopes < 0, got " + s.str());
        for (const auto& [s, m] : pos_.bundle())
            if (s.sign() < 0)
                throw Error("H^0 of a tilted object must have all slopes >= 0, got " + s.str());
    }

    const CoherentSheaf& neg() const { return neg_; }
    const CoherentSheaf& pos() const { return pos_; }
    bool is_zero() const { return neg_.is_zero() && pos_.is_zero(); }

    ShiftedSum as_shifted_sum() const {
        ShiftedSum s;
        s.add(1, neg_);
        s.add(0, pos_);
        return s;
    }
    /// [pos] - [neg].
    K0Class k0() const { return k0_class(pos_) - k0_class(neg_); }

    TiltedObject& operator+=(const TiltedObject& o) {
        neg_ += o.neg_;
        pos_ += o.pos_;
        return *this;
    }
    friend TiltedObject operator+(TiltedObject a, const TiltedObject& b) { return a += b; }
    friend bool operator==(const TiltedObject&, const TiltedObject&) = default;

private:
    CoherentSheaf neg_;
    CoherentSheaf pos_;
};

struct TorsionPairSplit {
    CoherentSheaf below;  // slopes < 0
    CoherentSheaf above;  // slopes >= 0, with torsion
};

inline TorsionPairSplit split_torsion_pair(const CoherentSheaf& f) {
    return {f.filter([](const Slope& s) { return s.sign() < 0; }, false),
            f.filter([](const Slope& s) { return s.sign() >= 0; }, true)};
}

/// Places the negative part in degree -1.
inline TiltedObject tilt(const CoherentSheaf& f) {
    auto [below, above] = split_torsion_pair(f);
    return {below, above};
}

/// Forgets the shift; inverse of tilt on normal forms.
inline CoherentSheaf untilt(const TiltedObject& t) { return t.neg() + t.pos(); }

struct TiltedInvariants {
    std::int64_t degree = 0;  // deg^- = -rg
    std::int64_t rank = 0;    // rg^- = deg
    std::optional<TiltSlope> slope;
};

inline TiltedInvariants tilted_invariants(const TiltedObject& t) {
    K0Class c = t.k0();
    return {-c.rank(), c.degree(), TiltSlope::from_class(c.rank(), c.degree())};
}

struct HnMinusPiece {
    TiltSlope slope;
    TiltedObject piece;
};

namespace detail {

inline TiltSlope stable_tilt_slope(const Slope& s) {
    return *TiltSlope::from_class(s.rank(), s.degree());
}

inline void push_piece(std::vector<HnMinusPiece>& pieces, const TiltSlope& mu, const TiltedObject& atom) {
    for (auto& p : pieces)
        if (p.slope == mu) {
            p.piece += atom;
            return;
        }
    pieces.push_back({mu, atom});
}

}  // namespace detail

/// Harder-Narasimhan filtration for mu^-, values strictly decreasing:
/// shifted negatives, torsion (0), positive slopes, slope-0 bundles (-inf).
inline std::vector<HnMinusPiece> hn_minus(const TiltedObject& t) {
    if (t.is_zero())
        throw Error("HN^- filtration of the zero object is undefined");
    std::vector<HnMinusPiece> pieces;
    for (const auto& [s, m] : t.neg().bundle())
        // -r/d is unchanged by the shift, so O(s)[1] has mu^- = -1/s > 0
        detail::push_piece(pieces, detail::stable_tilt_slope(s), TiltedObject(CoherentSheaf::stable(s, m), {}));
    if (!t.pos().torsion_part().empty())
        detail::push_piece(pieces, TiltSlope::finite(Slope::integer(0)),
                           TiltedObject({}, t.pos().filter([](const Slope&) { return false; }, true)));
    for (const auto& [s, m] : t.pos().bundle())
        detail::push_piece(pieces, detail::stable_tilt_slope(s), TiltedObject({}, CoherentSheaf::stable(s, m)));
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.slope > b.slope; });
    return pieces;
}

/// 2x2 block matrix of Hom spaces between split objects (F', F'') and (G', G'').
struct HomMatrix {
    BCInvariant top_left;
    BCInvariant top_right;
    BCInvariant bottom_left;
    BCInvariant bottom_right;

    BCInvariant total() const { return top_left + top_right + bottom_left + bottom_right; }
    friend bool operator==(const HomMatrix&, const HomMatrix&) = default;
};

/// Hom in Coh_X^-: [[Hom(F',G'), Ext^1(F'',G')], [0, Hom(F'',G'')]].
inline HomMatrix hom_tilted(const TiltedObject& a, const TiltedObject& b) {
    return {hom(a.neg(), b.neg()), ext1(a.pos(), b.neg()), {}, hom(a.pos(), b.pos())};
}

/// Ext^1 in Coh_X^-, read off as Hom_{D^b}(A, B[1]).
inline BCInvariant ext1_tilted(const TiltedObject& a, const TiltedObject& b) {
    return derived_hom(a.as_shifted_sum(), b.as_shifted_sum(), 1);
}

/// Hom in Coh_X of split sheaves (F', F'') with F' slopes < 0: [[Hom(F',G'), 0], [Hom(F',G''), Hom(F'',G'')]].
inline HomMatrix hom_sheaf_matrix(const CoherentSheaf& f, const CoherentSheaf& g) {
    auto fs = split_torsion_pair(f);
    auto gs = split_torsion_pair(g);
    return {hom(fs.below, gs.below), {}, hom(fs.below, gs.above), hom(fs.above, gs.above)};
}

/// The equivalence (Coh_X^-)^+ -> Coh_X: the mu^- > 0 part of A is neg[1],
/// shifted back by the second tilt; the mu^- <= 0 part is pos.
inline CoherentSheaf double_tilt(const TiltedObject& a) { return a.neg() + a.pos(); }

/// Hom in the double tilt (Coh_X^-)^+ between A = (pos_A, neg_A[1]) and B,
/// with entries computed in Coh_X^-:
/// [[Hom^-(pos_A, pos_B), Ext^1^-(neg_A[1], pos_B)], [0, Hom^-(neg_A[1], neg_B[1])]].
inline HomMatrix hom_double_tilted(const TiltedObject& a, const TiltedObject& b) {
    TiltedObject a_low({}, a.pos()), b_low({}, b.pos());
    TiltedObject a_high(a.neg(), {}), b_high(b.neg(), {});
    return {hom_tilted(a_low, b_low).total(), ext1_tilted(a_high, b_low), {}, hom_tilted(a_high, b_high).total()};
}

}  // namespace ffcurve
