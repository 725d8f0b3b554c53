// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "ffcurve/cli.hpp"
#include "generators.hpp"
#include "schema.hpp"

using namespace ffcurve;
using algebra::Integer;
using algebra::Poly;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;  // wall-clock limit
    std::function<Outcome()> body;
};

// 1: Hom/Ext tables between G_a and Q_p
Outcome breen_check() {
    Outcome o;
    o.require(breen_tables() == breen_reference(), "computed tables differ from the reference");
    return o;
}

// 2: chi(F) = (deg F, rk F) on random sheaves
Outcome chi_check() {
    Outcome o;
    gen::Rng rng(1001);
    for (int i = 0; i < 1000; ++i) {
        auto f = gen::sheaf(rng, true);
        std::int64_t r = 0, d = 0;
        for (const auto& [s, m] : f.bundle()) {
            r += s.rank() * m;
            d += s.degree() * m;
        }
        for (const auto& [p, fs] : f.torsion_part())
            for (auto k : fs)
                d += k;
        o.require(chi(f) == BCInvariant{d, r}, "chi mismatch on " + print(f));
    }
    return o;
}

// 3: Ext^1(O(l), O(m)) = 0 for l <= m, Ext^2 = 0
Outcome ext_vanishing_check() {
    Outcome o;
    gen::Rng rng(1002);
    for (int i = 0; i < 1000; ++i) {
        auto a = gen::slope(rng), b = gen::slope(rng);
        if (b < a)
            std::swap(a, b);
        o.require(ext1(CoherentSheaf::stable(a), CoherentSheaf::stable(b)) == BCInvariant{},
                  "Ext^1(O(" + a.str() + "), O(" + b.str() + ")) != 0");
        o.require(ext2(gen::sheaf(rng), gen::sheaf(rng)) == BCInvariant{}, "Ext^2 != 0");
    }
    return o;
}

// 4: double tilt round trips; Hom in the double tilt equals Hom in Coh_X
Outcome double_tilt_check() {
    Outcome o;
    gen::Rng rng(1003);
    for (int i = 0; i < 500; ++i) {
        auto f = gen::sheaf(rng, true);
        o.require(untilt(tilt(f)) == f, "untilt(tilt(F)) != F for " + print(f));
        auto a = gen::tilted(rng);
        o.require(tilt(double_tilt(a)) == a, "double tilt does not round trip on " + print(a));
    }
    for (int i = 0; i < 500; ++i) {
        auto a = gen::tilted(rng), b = gen::tilted(rng);
        o.require(hom_double_tilted(a, b).total() == hom_sheaf_matrix(double_tilt(a), double_tilt(b)).total(),
                  "Hom totals differ for " + print(a) + ", " + print(b));
        o.require(hom_tilted(a, b).total() == derived_hom(a.as_shifted_sum(), b.as_shifted_sum(), 0),
                  "tilted Hom differs from the derived Hom");
    }
    return o;
}

// 5: (dim, ht) = R^0 tau_* invariant = (rg^-, -deg^-), additive on certificates
Outcome dim_ht_check() {
    Outcome o;
    gen::Rng rng(1004);
    for (int i = 0; i < 1000; ++i) {
        auto t = gen::tilted(rng);
        auto d = r0tau(t);
        auto inv = tilted_invariants(t);
        o.require(d.consistent(), "R^0 tau_* atoms do not sum to the invariant");
        o.require(dim_ht(t) == d.invariant, "dim_ht differs from R^0 tau_* on " + print(t));
        o.require(dim_ht(t) == BCInvariant{inv.rank, -inv.degree}, "dim_ht differs from (rg-, -deg-)");
    }
    for (std::int64_t k = 1; k <= 30; ++k) {
        std::vector<ShortExactSequence> seqs{se2(k), se3(k)};
        if (k > 1)
            seqs.push_back(se1(k));
        for (const auto& s : seqs)
            o.require(dim_ht(s.middle) == dim_ht(s.left) + dim_ht(s.right), "dim_ht not additive on " + print(s));
    }
    return o;
}

// 6: effective presentations are well formed
Outcome presentation_check() {
    Outcome o;
    gen::Rng rng(1005);
    for (int i = 0; i < 200; ++i) {
        auto t = gen::tilted(rng, 6, 4);
        auto problems = check_presentation(effective_presentation(t));
        o.require(problems.empty(), print(t) + ": " + (problems.empty() ? "" : problems.front()));
    }
    return o;
}

template <class R>
std::pair<Matrix<R>, Matrix<R>> random_unimodular(gen::Rng& rng, std::size_t n, const std::vector<R>& scalars) {
    auto p = Matrix<R>::identity(n), q = Matrix<R>::identity(n);
    if (n < 2)
        return {p, q};
    for (int k = 0; k < 8; ++k) {
        auto i = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 2));
        if (j >= i)
            ++j;
        const R& c = scalars[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(scalars.size()) - 1))];
        p.add_col(j, i, c);
        q.add_row(i, j, Euclidean<R>::zero() - c);
    }
    return {p, q};
}

bool same_cohomology(const BoundedComplex<Poly>& a, const BoundedComplex<Poly>& b) {
    auto ha = cohomology(a), hb = cohomology(b);
    if (ha.size() != hb.size())
        return false;
    for (std::size_t j = 0; j < ha.size(); ++j) {
        if (ha[j].free_rank != hb[j].free_rank || ha[j].torsion.size() != hb[j].torsion.size())
            return false;
        for (std::size_t k = 0; k < ha[j].torsion.size(); ++k) {
            const auto& x = ha[j].torsion[k];
            const auto& y = hb[j].torsion[k];
            if (!algebra::divides(x, y) || !algebra::divides(y, x))
                return false;
        }
    }
    return true;
}

// 7: decalage on Koszul complexes and quasi-isomorphisms
Outcome decalage_check() {
    Outcome o;
    gen::Rng rng(1006);
    const Poly t = Poly::t();
    for (int i = 0; i < 60; ++i) {
        std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        std::vector<Poly> g, tg;
        for (std::size_t k = 0; k < n; ++k) {
            g.push_back(gen::poly(rng));
            tg.push_back(t * g.back());
        }
        auto prof = ShiftProfile::identity(0, static_cast<int>(n));
        o.require(same_cohomology(decalage(koszul(tg), t, prof).complex, koszul(g)), "eta_t K(t g) !~ K(g)");

        // some g_i divides t: cohomology is t-torsion and eta_t kills it
        auto h = g;
        h[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 1))] =
            gen::uniform(rng, 0, 1) ? t : Poly(static_cast<int>(gen::uniform(rng, 1, 3)));
        o.require(is_acyclic(decalage(koszul(h), t, prof).complex), "eta_t K(g) not acyclic with g_i | t");

        // delta = 0 is the identity
        o.require(decalage(koszul(g), t, ShiftProfile::constant(0)).complex == koszul(g), "eta with delta = 0 changed K");
    }

    const std::vector<Poly> scalars{Poly(1), Poly(-1), t, t + Poly(1), Poly(2)};
    for (int i = 0; i < 100; ++i) {
        std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        std::vector<Poly> g;
        for (std::size_t k = 0; k < n; ++k)
            g.push_back(t * gen::poly(rng, 1));
        auto c = koszul(g);
        // D = P (C + A) P^{-1} with A = [R -1-> R] placed in degrees a, a+1
        int a = static_cast<int>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
        std::vector<std::size_t> ranks;
        std::vector<Matrix<Poly>> ps, pinv, comps;
        for (int j = 0; j <= c.highest(); ++j) {
            ranks.push_back(c.rank_at(j) + (j == a || j == a + 1 ? 1 : 0));
            auto [p, q] = random_unimodular(rng, ranks.back(), scalars);
            Matrix<Poly> inc(ranks.back(), c.rank_at(j));
            inc.set_block(0, 0, Matrix<Poly>::identity(c.rank_at(j)));
            comps.push_back(p * inc);
            ps.push_back(std::move(p));
            pinv.push_back(std::move(q));
        }
        std::vector<Matrix<Poly>> diffs;
        for (int j = 0; j < c.highest(); ++j) {
            auto ju = static_cast<std::size_t>(j);
            Matrix<Poly> d(ranks[ju + 1], ranks[ju]);
            d.set_block(0, 0, c.differential_at(j));
            if (j == a)
                d(ranks[ju + 1] - 1, ranks[ju] - 1) = Poly(1);
            diffs.push_back(ps[ju + 1] * d * pinv[ju]);
        }
        ChainMap<Poly> m{c, BoundedComplex<Poly>(0, ranks, diffs), comps};
        m.validate();
        o.require(is_quasi_iso(m), "test map is not a quasi-isomorphism");
        o.require(is_quasi_iso(decalage(m, t, ShiftProfile::identity(0, c.highest()))), "eta_t lost a quasi-isomorphism");
    }
    return o;
}

// 8: graded de Rham cohomology of affine space
Outcome derham_check() {
    Outcome o;
    for (std::size_t n = 1; n <= 3; ++n)
        for (unsigned d = 1; d <= 8; ++d) {
            auto q = qp_cohomology(n, d);
            o.require(q.closed, "d o d != 0");
            o.require(q.poincare_lemma_holds(), "Ker != Im for n=" + std::to_string(n) + ", D=" + std::to_string(d));
            o.require(q.h0_is_constants(), "H^0 is not the constants");
            if (n == 1)
                for (auto k : q.kernel_dims(1))
                    o.require(k == 1, "H^1 piece of the line is not one-dimensional");
        }
    return o;
}

// 9: symmetric 2-cocycles are coboundaries; the Hom column
Outcome cocycle_check() {
    Outcome o;
    for (unsigned q = 2; q <= 8; ++q) {
        auto r = symmetric_2cocycle_quotient(q);
        o.require(r.cocycles == 1, "degree " + std::to_string(q) + ": cocycle space is not one-dimensional");
        o.require(r.quotient() == 0, "degree " + std::to_string(q) + ": non-trivial quotient");
    }
    o.require(hom_column_checks(6, 4).ok(), "Hom column checks failed");
    return o;
}

// 10: print/parse round trips; every verb's JSON output validates
Outcome io_check() {
    Outcome o;
    gen::Rng rng(1010);
    for (int i = 0; i < 1000; ++i) {
        auto f = gen::sheaf(rng, true);
        o.require(parse_sheaf(print(f)) == f, "round trip failed on " + print(f));
        auto t = gen::tilted(rng);
        o.require(parse_tilted(print(t)) == t, "round trip failed on " + print(t));
    }
    for (auto args : schema::samples()) {
        const std::string verb = args.front();
        args.insert(args.begin(), "--json");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        o.require(code == 0, verb + " exited with " + std::to_string(code) + ": " + err.str());
        if (code != 0)
            continue;
        auto problems = schema::validate(verb, nlohmann::json::parse(out.str()));
        o.require(problems.empty(), verb + ": " + (problems.empty() ? "" : problems.front()));
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Breen tables", 1.0, breen_check},
        {2, "Euler characteristic", 5.0, chi_check},
        {3, "Ext vanishing", 5.0, ext_vanishing_check},
        {4, "double tilt", 10.0, double_tilt_check},
        {5, "dimension and height", 5.0, dim_ht_check},
        {6, "effective presentations", 10.0, presentation_check},
        {7, "decalage", 120.0, decalage_check},
        {8, "de Rham", 30.0, derham_check},
        {9, "cocycles", 60.0, cocycle_check},
        {10, "printing and schemas", 10.0, io_check},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && secs > c.budget_s) {
            o.pass = false;
            o.detail = "over the " + std::to_string(c.budget_s) + " s budget";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << secs << " s)";
        if (!o.pass)
            std::cout << ": " << o.detail;
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
