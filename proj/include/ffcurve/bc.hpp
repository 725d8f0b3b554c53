#pragma once

#include <array>
#include <string>
#include <vector>

#include "ffcurve/tilt.hpp"

namespace ffcurve {

/// One summand of a Banach-Colmez space obtained from a tilted object.
struct BCAtom {
    enum class Kind {
        qp,       // Q_p^n, invariant (0, n)
        ga,       // finite-length C-module at a point, invariant (length, 0)
        u,        // U_{d/h}, invariant (d, h)
        shifted,  // R^1 tau_* of O(d/h), d < 0: invariant (-d, -h)
    };

    Kind kind = Kind::qp;
    std::int64_t degree = 0;
    std::int64_t rank = 0;
    std::int64_t multiplicity = 1;
    std::string point;                  // ga only
    std::vector<std::int64_t> lengths;  // ga only

    BCInvariant invariant() const {
        switch (kind) {
        case Kind::qp: return {0, multiplicity};
        case Kind::ga: {
            std::int64_t total = 0;
            for (auto k : lengths)
                total += k;
            return {total, 0};
        }
        case Kind::u: return multiplicity * BCInvariant{degree, rank};
        case Kind::shifted: return multiplicity * BCInvariant{-degree, -rank};
        }
        return {};
    }

    std::string str() const {
        switch (kind) {
        case Kind::qp: return "QP(" + std::to_string(multiplicity) + ")";
        case Kind::ga: {
            std::string s = "GA(" + point + ",[";
            for (std::size_t i = 0; i < lengths.size(); ++i)
                s += (i ? "," : "") + std::to_string(lengths[i]);
            return s + "])";
        }
        case Kind::u:
        case Kind::shifted: {
            std::string s = (kind == Kind::u ? "U(" : "COKER(") + std::to_string(degree) + "," + std::to_string(rank) + ")";
            return multiplicity == 1 ? s : s + "^" + std::to_string(multiplicity);
        }
        }
        return "?";
    }
};

struct BCDescriptor {
    std::vector<BCAtom> atoms;
    BCInvariant invariant;

    bool consistent() const {
        BCInvariant sum;
        for (const auto& a : atoms)
            sum += a.invariant();
        return sum == invariant;
    }
};

/// R^0 tau_* on normal forms: O(d/h>0) -> U(d,h), O -> Q_p, torsion -> G_a-type
/// atoms, and each O(d/h<0)[1] -> a cokernel atom of invariant (-d,-h).
inline BCDescriptor r0tau(const TiltedObject& t) {
    BCDescriptor out;
    for (const auto& [s, m] : t.pos().bundle()) {
        if (s.degree() == 0)
            out.atoms.push_back({BCAtom::Kind::qp, 0, 1, m, {}, {}});
        else
            out.atoms.push_back({BCAtom::Kind::u, s.degree(), s.rank(), m, {}, {}});
    }
    for (const auto& [p, fs] : t.pos().torsion_part())
        out.atoms.push_back({BCAtom::Kind::ga, 0, 0, 1, p, fs});
    for (const auto& [s, m] : t.neg().bundle())
        out.atoms.push_back({BCAtom::Kind::shifted, s.degree(), s.rank(), m, {}, {}});
    for (const auto& a : out.atoms)
        out.invariant += a.invariant();
    return out;
}

/// (rg^-, -deg^-), i.e. (degree, rank) of the class [pos] - [neg].
inline BCInvariant dim_ht(const TiltedObject& t) {
    auto inv = tilted_invariants(t);
    return {inv.rank, -inv.degree};
}

/// (dimension, height) of any sum of shifted sheaves, by additivity.
inline BCInvariant dim_ht(const ShiftedSum& s) {
    K0Class c = s.k0();
    return {c.degree(), c.rank()};
}

/// Hom / Ext^1 / Ext^2 between G_a and Q_p; index 0 is G_a, 1 is Q_p; rows are the source.
struct BreenTables {
    using Table = std::array<std::array<BCInvariant, 2>, 2>;
    Table hom;
    Table ext1;
    Table ext2;

    friend bool operator==(const BreenTables&, const BreenTables&) = default;
};

inline constexpr BCInvariant kC{1, 0};
inline constexpr BCInvariant kQp{0, 1};

/// Computed from the sheaf-side rules under G_a <-> T(inf,[1]), Q_p <-> O.
inline BreenTables breen_tables() {
    const std::array<CoherentSheaf, 2> objects{CoherentSheaf::torsion({1}), CoherentSheaf::line(0)};
    BreenTables t;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            t.hom[i][j] = hom(objects[i], objects[j]);
            t.ext1[i][j] = ext1(objects[i], objects[j]);
            t.ext2[i][j] = ext2(objects[i], objects[j]);
        }
    return t;
}

/// The published tables, as reference values.
inline BreenTables breen_reference() {
    BreenTables t;
    const BCInvariant zero{};
    t.hom = {{{kC, zero}, {kC, kQp}}};
    t.ext1 = {{{kC, kC}, {zero, zero}}};
    t.ext2 = {{{zero, zero}, {zero, zero}}};
    return t;
}

// --- effective presentations ---------------------------------------------------

struct PresentationStep {
    ShortExactSequence sequence;
    std::int64_t level = 1;  // sequence lives on the degree-`level` cover of the curve
};

/// 0 -> O^a -> F' -> T -> 0 with F' a sheaf of slopes in [0, 1], assembled
/// from verified steps.
struct Presentation {
    TiltedObject target;
    std::int64_t kernel_rank = 0;
    CoherentSheaf middle;
    std::vector<PresentationStep> steps;

    ShortExactSequence total() const {
        ShiftedSum kernel = kernel_rank > 0 ? ShiftedSum{CoherentSheaf::line(0, kernel_rank)} : ShiftedSum{};
        return {kernel, ShiftedSum{middle}, target.as_shifted_sum(), SequenceTag::composite};
    }
};

/// Pushforward of a sum of (shifted) line bundles on the degree-h cover.
inline ShiftedSum push_forward(const ShiftedSum& s, std::int64_t h) {
    ShiftedSum out;
    for (const auto& [shift, f] : s.parts()) {
        if (!f.is_bundle())
            throw Error("push_forward supports bundles only");
        for (const auto& [slope, m] : f.bundle()) {
            if (slope.rank() != 1)
                throw Error("push_forward expects line bundles on the cover");
            for (std::int64_t i = 0; i < m; ++i)
                out.add(shift, pushforward_from_level(slope.degree(), h));
        }
    }
    return out;
}

namespace detail {

inline ShiftedSum scaled(const ShiftedSum& s, std::int64_t m) {
    ShiftedSum out;
    for (std::int64_t i = 0; i < m; ++i)
        out += s;
    return out;
}

inline ShortExactSequence scaled(const ShortExactSequence& s, std::int64_t m) {
    return {scaled(s.left, m), scaled(s.middle, m), scaled(s.right, m), s.tag};
}

inline ShortExactSequence direct_sum(const ShortExactSequence& a, const ShortExactSequence& b) {
    return {a.left + b.left, a.middle + b.middle, a.right + b.right, SequenceTag::composite};
}

/// se1 chain for O(d), d >= 2: records se1(d), ..., se1(2) and returns
/// 0 -> O^{d-1} -> O(1)^d -> O(d) -> 0.
inline ShortExactSequence line_presentation(std::int64_t d, std::int64_t level, std::vector<PresentationStep>& steps) {
    for (std::int64_t e = d; e >= 2; --e)
        steps.push_back({se1(e), level});
    ShortExactSequence out{CoherentSheaf::line(0, d - 1), CoherentSheaf::line(1, d), CoherentSheaf::line(d),
                           SequenceTag::composite};
    steps.push_back({out, level});
    return out;
}

/// 0 -> O^k -> O(1)^k -> T(p,[k]) -> 0 from se2(k) spliced with the chain for O(k).
inline ShortExactSequence torsion_presentation(std::int64_t k, const std::string& point, std::int64_t level,
                                               std::vector<PresentationStep>& steps) {
    steps.push_back({se2(k, point), level});
    if (k == 1)
        return se2(1, point);
    line_presentation(k, level, steps);
    ShortExactSequence out{CoherentSheaf::line(0, k), CoherentSheaf::line(1, k), CoherentSheaf::torsion({k}, point),
                           SequenceTag::composite};
    steps.push_back({out, level});
    return out;
}

/// 0 -> O^{e+1} -> O(1)^e -> O(-e)[1] -> 0 from se3(e) spliced with the torsion presentation.
inline ShortExactSequence shifted_line_presentation(std::int64_t e, std::int64_t level,
                                                    std::vector<PresentationStep>& steps) {
    steps.push_back({se3(e), level});
    torsion_presentation(e, kDefaultPoint, level, steps);
    ShortExactSequence out{CoherentSheaf::line(0, e + 1), CoherentSheaf::line(1, e),
                           ShiftedSum::shifted(CoherentSheaf::line(-e), 1), SequenceTag::composite};
    steps.push_back({out, level});
    return out;
}

inline ShortExactSequence pushed(const ShortExactSequence& s, std::int64_t h) {
    return {push_forward(s.left, h), push_forward(s.middle, h), push_forward(s.right, h), SequenceTag::level};
}

}  // namespace detail

/// Presents T as a quotient of a sheaf with slopes in [0, 1] by a trivial bundle.
/// Fractional slopes are handled on the degree-h cover, where O(d/h) is the
/// pushforward of the line bundle O(d), then pushed down.
inline Presentation effective_presentation(const TiltedObject& t) {
    Presentation p;
    p.target = t;
    ShortExactSequence total{ShiftedSum{}, ShiftedSum{}, ShiftedSum{}, SequenceTag::composite};

    auto add_atom = [&](const ShortExactSequence& seq, std::int64_t m) {
        auto s = detail::scaled(seq, m);
        total = detail::direct_sum(total, s);
    };

    for (const auto& [s, m] : t.pos().bundle()) {
        std::int64_t d = s.degree(), h = s.rank();
        if (d <= h) {  // slope already in [0, 1]
            ShortExactSequence trivial{ShiftedSum{}, CoherentSheaf::stable(s), CoherentSheaf::stable(s),
                                       SequenceTag::composite};
            p.steps.push_back({trivial, 1});
            add_atom(trivial, m);
            continue;
        }
        auto on_cover = detail::line_presentation(d, h, p.steps);
        if (h == 1) {
            add_atom(on_cover, m);
        } else {
            auto down = detail::pushed(on_cover, h);
            p.steps.push_back({down, 1});
            add_atom(down, m);
        }
    }
    for (const auto& [point, factors] : t.pos().torsion_part())
        for (auto k : factors)
            add_atom(detail::torsion_presentation(k, point, 1, p.steps), 1);
    for (const auto& [s, m] : t.neg().bundle()) {
        std::int64_t e = -s.degree(), h = s.rank();
        auto on_cover = detail::shifted_line_presentation(e, h, p.steps);
        if (h == 1) {
            add_atom(on_cover, m);
        } else {
            auto down = detail::pushed(on_cover, h);
            p.steps.push_back({down, 1});
            add_atom(down, m);
        }
    }

    p.kernel_rank = total.left.at(0).rank();
    p.middle = total.middle.at(0);
    p.steps.push_back({p.total(), 1});
    return p;
}

/// Every structural requirement of a presentation; returns a list of violations.
inline std::vector<std::string> check_presentation(const Presentation& p) {
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < p.steps.size(); ++i)
        if (!p.steps[i].sequence.additive())
            problems.push_back("step " + std::to_string(i) + " (" + to_string(p.steps[i].sequence.tag) +
                               ") is not additive");
    auto total = p.total();
    if (total.left.parts().size() > 1 || !total.left.at(0).filter([](const Slope& s) { return s.sign() != 0; }, true).is_zero())
        problems.push_back("kernel is not a trivial bundle");
    if (total.middle.parts().size() > 1 || !p.middle.is_bundle())
        problems.push_back("middle term is not a vector bundle");
    for (const auto& [s, m] : p.middle.bundle())
        if (s.sign() < 0 || s.degree() > s.rank())
            problems.push_back("middle slope " + s.str() + " outside [0,1]");
    if (k0_class(p.middle) != K0Class{p.kernel_rank, 0} + p.target.k0())
        problems.push_back("class identity [F'] = a[O] + [T] fails");
    if (p.steps.empty() || !(p.steps.back().sequence.right == p.target.as_shifted_sum()))
        problems.push_back("final step does not end in the target");
    return problems;
}

}  // namespace ffcurve
