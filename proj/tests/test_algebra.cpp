#include <gtest/gtest.h>

#include "generators.hpp"

using namespace ffcurve;
using algebra::Integer;
using algebra::Poly;
using algebra::Rational;

namespace {

template <class R>
Matrix<R> random_matrix(gen::Rng& rng, std::size_t m, std::size_t n, int lo = -4, int hi = 4) {
    Matrix<R> a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = R(static_cast<int>(gen::uniform(rng, lo, hi)));
    return a;
}

/// Random product of elementary column operations, with its inverse.
template <class R>
std::pair<Matrix<R>, Matrix<R>> random_unimodular(gen::Rng& rng, std::size_t n, const std::vector<R>& scalars) {
    auto p = Matrix<R>::identity(n), q = Matrix<R>::identity(n);
    if (n < 2)
        return {p, q};
    for (int k = 0; k < 6; ++k) {
        auto i = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(n) - 2));
        if (j >= i)
            ++j;
        const R& c = scalars[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(scalars.size()) - 1))];
        // P <- P E_ij(c), P^{-1} <- E_ij(-c) P^{-1}
        p.add_col(j, i, c);
        q.add_row(i, j, Euclidean<R>::zero() - c);
    }
    return {p, q};
}

template <class R>
std::vector<R> normalized_torsion(const CohomologyGroup<R>& h) {
    std::vector<R> out;
    for (const auto& t : h.torsion)
        out.push_back(algebra::exact_div(t, Euclidean<R>::canonical_unit(t)));
    return out;
}

}  // namespace

TEST(Ring, PolyArithmetic) {
    Poly t = Poly::t();
    Poly a = t * t - Poly(1);
    auto [q, r] = Poly::divmod(a, t - Poly(1));
    EXPECT_EQ(q, t + Poly(1));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(algebra::gcd(a, t * t + Poly(2) * t + Poly(1)), t + Poly(1));
    EXPECT_EQ(algebra::parse_poly("t^2 - 1"), a);
    EXPECT_EQ(a.str(), "t^2 - 1");
    EXPECT_THROW(algebra::exact_div(t, t + Poly(1)), Error);
}

TEST(Ring, IntegerGcdIsNonNegative) {
    EXPECT_EQ(algebra::gcd<Integer>(-12, 18), Integer(6));
    EXPECT_EQ(algebra::gcd<Integer>(0, -5), Integer(5));
}

TEST(Ring, DomainNames) {
    EXPECT_EQ(algebra::parse_domain("Z"), algebra::CoeffDomain::integers);
    EXPECT_EQ(algebra::parse_domain("Q[t]"), algebra::CoeffDomain::poly);
    EXPECT_THROW(algebra::parse_domain("F_p"), Error);
}

TEST(Smith, TransformsAreInverse) {
    gen::Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 5)), n = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
        auto a = random_matrix<Integer>(rng, m, n);
        auto s = algebra::smith_normal_form(a);
        EXPECT_EQ(s.col_transform * s.col_inverse, Matrix<Integer>::identity(n));
        // successive divisibility
        for (std::size_t k = 1; k < s.invariants.size(); ++k)
            EXPECT_TRUE(algebra::divides(s.invariants[k - 1], s.invariants[k]));
        // the last rank columns of A V vanish: A V e_k = 0 for k >= rank
        auto av = a * s.col_transform;
        for (std::size_t k = s.rank(); k < n; ++k)
            for (std::size_t r = 0; r < m; ++r)
                EXPECT_EQ(av(r, k), Integer(0));
    }
}

TEST(Smith, KnownInvariants) {
    auto a = Matrix<Integer>::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto s = algebra::smith_normal_form(a);
    ASSERT_EQ(s.rank(), 3u);
    EXPECT_EQ(abs(s.invariants[0]), Integer(2));
    EXPECT_EQ(abs(s.invariants[1]), Integer(6));
    EXPECT_EQ(abs(s.invariants[2]), Integer(12));
}

TEST(Smith, RankMatchesGaussianElimination) {
    gen::Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 5)), n = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
        auto a = random_matrix<Rational>(rng, m, n, -1, 1);
        EXPECT_EQ(algebra::rank(a), algebra::field_rank(a));
        auto k = algebra::field_kernel(a);
        EXPECT_EQ(k.cols(), n - algebra::field_rank(a));
        EXPECT_TRUE((a * k).is_zero());
    }
}

TEST(Koszul, SignsAndShape) {
    auto k = koszul<Integer>({2, 3});
    EXPECT_EQ(k.ranks(), (std::vector<std::size_t>{1, 2, 1}));
    EXPECT_EQ(k.differential_at(0), Matrix<Integer>::from_rows({{2}, {3}}));
    EXPECT_EQ(k.differential_at(1), Matrix<Integer>::from_rows({{-3, 2}}));
    EXPECT_THROW(koszul<Integer>({}), Error);
}

TEST(Koszul, CohomologyOverIntegers) {
    // K(p) has H^1 = Z/p; K(2, 3) is exact since (2, 3) is the unit ideal
    auto h = cohomology(koszul<Integer>({5}));
    EXPECT_TRUE(h[0].is_zero());
    ASSERT_EQ(h[1].torsion.size(), 1u);
    EXPECT_EQ(abs(h[1].torsion[0]), Integer(5));
    EXPECT_TRUE(is_acyclic(koszul<Integer>({2, 3})));
    auto h2 = cohomology(koszul<Integer>({4, 6}));
    EXPECT_EQ(abs(h2[2].torsion.at(0)), Integer(2));
}

TEST(Koszul, DifferentialSquaresToZero) {
    gen::Rng rng(33);
    for (int i = 0; i < 50; ++i) {
        std::vector<Poly> g;
        for (auto n = gen::uniform(rng, 1, 4); n > 0; --n)
            g.push_back(gen::poly(rng));
        auto k = koszul(g);  // the constructor rejects d o d != 0
        EXPECT_EQ(k.length(), g.size() + 1);
    }
}

TEST(Complex, RejectsBadShapes) {
    EXPECT_THROW(BoundedComplex<Integer>(0, {1, 1}, {}), Error);
    EXPECT_THROW(BoundedComplex<Integer>(0, {1, 1}, {Matrix<Integer>(2, 1)}), Error);
    auto d = Matrix<Integer>::from_rows({{1}});
    EXPECT_THROW(BoundedComplex<Integer>(0, {1, 1, 1}, {d, d}), Error);
}

TEST(ChainMap, ConeOfIdentityIsAcyclic) {
    auto k = koszul<Integer>({6, 10});
    auto id = ChainMap<Integer>::identity(k);
    EXPECT_TRUE(is_quasi_iso(id));
    auto zero = id;
    for (auto& c : zero.components)
        c = Matrix<Integer>(c.rows(), c.cols());
    EXPECT_FALSE(is_quasi_iso(zero));
}

TEST(ChainMap, DegreeRangeMismatchIsRejected) {
    auto a = koszul<Integer>({2});
    auto b = koszul<Integer>({2, 3});
    ChainMap<Integer> m{a, b, {Matrix<Integer>(1, 1), Matrix<Integer>(2, 1)}};
    EXPECT_THROW(m.validate(), Error);
}

TEST(Decalage, KoszulOfMultiplesRecoversKoszul) {
    // eta_t K(t g) = K(g) term by term with delta(j) = j
    Poly t = Poly::t();
    std::vector<Poly> g{Poly::t() + Poly(1), Poly::t(2) - Poly(2)};
    std::vector<Poly> tg;
    for (const auto& x : g)
        tg.push_back(t * x);
    auto eta = decalage(koszul(tg), t, ShiftProfile::identity(0, 2));
    auto lhs = cohomology(eta.complex), rhs = cohomology(koszul(g));
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t j = 0; j < lhs.size(); ++j) {
        EXPECT_EQ(lhs[j].free_rank, rhs[j].free_rank);
        EXPECT_EQ(normalized_torsion(lhs[j]), normalized_torsion(rhs[j]));
    }
}

TEST(Decalage, KillsTorsionDividingF) {
    // H(K(p)) = Z/p is p-torsion, so eta_p K(p) is acyclic
    auto eta = decalage(koszul<Integer>({3}), Integer(3), ShiftProfile::identity(0, 1));
    EXPECT_TRUE(is_acyclic(eta.complex));
    auto eta2 = decalage(koszul<Integer>({3, 9}), Integer(3), ShiftProfile::identity(0, 2));
    EXPECT_TRUE(is_acyclic(eta2.complex));
    // Z/9 only loses its 3-torsion: H/H[3] = 3Z/9 = Z/3
    auto eta3 = decalage(koszul<Integer>({9}), Integer(3), ShiftProfile::identity(0, 1));
    auto h = cohomology(eta3.complex);
    ASSERT_EQ(h[1].torsion.size(), 1u);
    EXPECT_EQ(abs(h[1].torsion[0]), Integer(3));
}

TEST(Decalage, ZeroProfileIsIdentity) {
    gen::Rng rng(34);
    for (int i = 0; i < 20; ++i) {
        std::vector<Poly> g{gen::poly(rng), gen::poly(rng), gen::poly(rng)};
        auto k = koszul(g);
        auto eta = decalage(k, Poly::t(), ShiftProfile::constant(0));
        EXPECT_EQ(eta.complex, k);
    }
}

TEST(Decalage, ConstantProfileScalesOnly) {
    // a constant shift gives f^c K, isomorphic to K
    auto k = koszul<Integer>({4, 6});
    auto eta = decalage(k, Integer(2), ShiftProfile::constant(3));
    EXPECT_EQ(eta.complex, k);
}

TEST(Decalage, PreservesQuasiIsomorphisms) {
    gen::Rng rng(35);
    const std::vector<Integer> scalars{1, -1, 2, 3};
    for (int i = 0; i < 20; ++i) {
        std::vector<Integer> g;
        for (auto n = gen::uniform(rng, 1, 3); n > 0; --n)
            g.push_back(Integer(3) * Integer(static_cast<int>(gen::uniform(rng, 1, 4))));
        auto c = koszul(g);
        // D = P (C + A) P^{-1} with A = [Z -1-> Z] in degrees 0, 1
        std::vector<std::size_t> ranks;
        std::vector<Matrix<Integer>> ps, pinv, comps;
        for (int j = 0; j <= c.highest(); ++j) {
            std::size_t extra = j <= 1 ? 1 : 0;
            ranks.push_back(c.rank_at(j) + extra);
            auto [p, q] = random_unimodular(rng, ranks.back(), scalars);
            ps.push_back(p);
            pinv.push_back(q);
            Matrix<Integer> inc(ranks.back(), c.rank_at(j));
            inc.set_block(0, 0, Matrix<Integer>::identity(c.rank_at(j)));
            comps.push_back(p * inc);
        }
        std::vector<Matrix<Integer>> diffs;
        for (int j = 0; j < c.highest(); ++j) {
            auto ju = static_cast<std::size_t>(j);
            Matrix<Integer> d(ranks[ju + 1], ranks[ju]);
            d.set_block(0, 0, c.differential_at(j));
            if (j == 0)
                d(ranks[1] - 1, ranks[0] - 1) = 1;
            diffs.push_back(ps[ju + 1] * d * pinv[ju]);
        }
        ChainMap<Integer> m{c, BoundedComplex<Integer>(0, ranks, diffs), comps};
        ASSERT_NO_THROW(m.validate());
        ASSERT_TRUE(is_quasi_iso(m));
        auto eta = decalage(m, Integer(3), ShiftProfile::identity(0, c.highest()));
        EXPECT_TRUE(is_quasi_iso(eta));
    }
}
