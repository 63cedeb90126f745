#include <gtest/gtest.h>

#include "dirconv/solver.hpp"
#include "oracles.hpp"

using namespace dirconv;
using F = arithmetic_function<exact_complex>;
using A = arithmetic_function<approx_complex>;
using P = conv_polynomial<exact_complex>;

namespace {

window_ptr od(std::int64_t n) { return window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(n)); }
window_ptr lat1(std::int64_t n) { return window::make(semigroup::lattice(1), truncation::by_size(rational(n))); }

P sqrt_of_one(const window_ptr& w) { return P({-F::one(w), F::zero(w), F::unit(w)}); }

P sqrt_of_one_plus_w(const window_ptr& w) {
    F a0(w);
    a0[0] = exact_complex(-1);
    a0[1] = exact_complex(-1);
    return P({a0, F::zero(w), F::unit(w)});
}

}  // namespace

TEST(InitialPolynomial, SquareRootOfOne) {
    auto rep = initial_polynomial(sqrt_of_one(od(10)));
    ASSERT_EQ(rep.roots.size(), 2u);
    EXPECT_EQ(*rep.roots[0].value, exact_complex(-1));
    EXPECT_EQ(*rep.roots[1].value, exact_complex(1));
    EXPECT_TRUE(rep.roots[0].simple && rep.roots[1].simple);
    EXPECT_EQ(rep.multiplicity_total(), 2u);
}

TEST(InitialPolynomial, DoubleZero) {
    auto w = od(10);
    F a(w);
    a[1] = exact_complex(1);
    auto rep = initial_polynomial(P({-a, F::zero(w), F::unit(w)}));
    ASSERT_EQ(rep.roots.size(), 1u);
    EXPECT_EQ(rep.roots[0].multiplicity, 2u);
    EXPECT_FALSE(rep.roots[0].simple);
}

TEST(InitialPolynomial, LinearRoot) {
    auto w = od(10);
    auto a0 = F::constant(w, exact_complex(rational(3, 7), rational(1)));
    auto rep = initial_polynomial(P({a0, F::unit(w)}));
    ASSERT_EQ(rep.roots.size(), 1u);
    EXPECT_EQ(*rep.roots[0].value, -a0[0]);
}

TEST(InitialPolynomial, DegenerateAndZero) {
    auto w = od(10);
    F a1(w);
    a1[3] = exact_complex(1);
    try {
        initial_polynomial(P({F::one(w), a1}));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::degenerate_constant);
    }
    F a0(w);
    a0[2] = exact_complex(1);
    try {
        solve_all(P({a0, a1}));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::zero_polynomial);
    }
}

TEST(InitialPolynomial, DoubleModeMultipleRootIsNotSimple) {
    auto w = od(5);
    // (z - 1/3)^2 (z + 2)
    A a0(w), a1(w), a2(w), a3(w);
    a3[0] = 1.0;
    a2[0] = 2.0 - 2.0 / 3.0;
    a1[0] = 1.0 / 9.0 - 4.0 / 3.0;
    a0[0] = 2.0 / 9.0;
    auto rep = initial_polynomial(conv_polynomial<approx_complex>({a0, a1, a2, a3}));
    ASSERT_EQ(rep.roots.size(), 2u);
    EXPECT_EQ(rep.simple_count(), 1u);
    EXPECT_EQ(rep.multiplicity_total(), 3u);
}

TEST(InitialPolynomial, IrrationalRootsSkippedInExactMode) {
    auto w = od(5);
    auto res = solve_all(P({F::constant(w, exact_complex(-2)), F::zero(w), F::unit(w)}));
    EXPECT_TRUE(res.solutions.empty());
    EXPECT_EQ(res.skipped.size(), 2u);
}

TEST(Solve, ZetaHalfFirstValues) {
    auto g = solve(sqrt_of_one(od(4)), exact_complex(1));
    EXPECT_EQ(g[0], exact_complex(1));
    EXPECT_EQ(g[1], exact_complex(rational(1, 2)));
    EXPECT_EQ(g[2], exact_complex(rational(1, 2)));
    EXPECT_EQ(g[3], exact_complex(rational(3, 8)));
}

TEST(Solve, BinomialSeries) {
    auto w = lat1(30);
    auto g = solve(sqrt_of_one_plus_w(w), exact_complex(1));
    for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(g[n], exact_complex(oracle::binomial(rational(1, 2), n))) << n;
    EXPECT_EQ(g[2], exact_complex(rational(-1, 8)));
}

TEST(Solve, LinearEquation) {
    oracle::rng R(3);
    auto w = od(50);
    auto a0 = R.function(w);
    auto g = solve(P({a0, F::unit(w)}), -a0[0]);
    EXPECT_EQ(g, -a0);
}

TEST(Solve, RejectsNonRoots) {
    auto T = sqrt_of_one(od(10));
    EXPECT_THROW(solve(T, exact_complex(2)), error);
    auto w = od(10);
    F a(w);
    a[1] = exact_complex(1);
    try {
        solve(P({-a, F::zero(w), F::unit(w)}), exact_complex(0));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_a_simple_root);
    }
}

TEST(Solve, DegreeOneMatchesInvert) {
    oracle::rng R(8);
    auto w = od(120);
    auto a1 = R.function(w);
    a1[0] = exact_complex(3, 1);
    auto g = solve(P({-F::unit(w), a1}), exact_complex(1) / a1[0]);
    EXPECT_EQ(g, invert(a1));
}

TEST(Solve, ReRunIsIdentical) {
    oracle::rng R(21);
    auto T = oracle::random_instance(R, od(80), {exact_complex(1), exact_complex(-2), exact_complex(0, 1)});
    auto a = solve(T, exact_complex(0, 1));
    auto b = solve(T, exact_complex(0, 1));
    EXPECT_EQ(a, b);
}

TEST(SolveAll, SquareRootsAreNegatives) {
    auto res = solve_all(sqrt_of_one(od(100)));
    ASSERT_EQ(res.solutions.size(), 2u);
    EXPECT_EQ(res.solutions[0].g, -res.solutions[1].g);
    EXPECT_NE(res.solutions[0].g[0], res.solutions[1].g[0]);
}

TEST(SolveAll, CubicWithThreeSimpleRoots) {
    oracle::rng R(31);
    auto w = od(200);
    auto T = oracle::random_instance(R, w, {exact_complex(0), exact_complex(1), exact_complex(2)});
    auto res = solve_all(T);
    ASSERT_EQ(res.solutions.size(), 3u);
    for (const auto& s : res.solutions) {
        EXPECT_FALSE(residual(T, s.g).is_nonzero());
        EXPECT_EQ(s.g[0], s.root);
    }
}

TEST(SolveAll, ObstructionAtMinimalElement) {
    auto w = od(30);
    F a(w);
    a[1] = exact_complex(1);
    a[5] = exact_complex(4);
    try {
        solve_all(P({-a, F::zero(w), F::unit(w)}));
        FAIL();
    } catch (const no_simple_roots_error<exact_complex>& e) {
        EXPECT_EQ(e.code(), errc::no_simple_roots);
        ASSERT_EQ(e.obstructions().size(), 1u);
        EXPECT_EQ(e.obstructions()[0].q, element_id{2});
        EXPECT_EQ(e.obstructions()[0].value, exact_complex(-1));
        EXPECT_TRUE(e.unsolvable());
    }
}

TEST(SolveAll, ObstructionVanishingLeavesExistenceOpen) {
    auto w = lat1(6);
    F a(w);
    a[2] = exact_complex(1);  // w^2: g = w is a solution
    try {
        solve_all(P({-a, F::zero(w), F::unit(w)}));
        FAIL();
    } catch (const no_simple_roots_error<exact_complex>& e) {
        EXPECT_FALSE(e.unsolvable());
    }
}

TEST(Residual, DetectsSinglePerturbation) {
    auto T = sqrt_of_one(od(60));
    auto g = solve(T, exact_complex(1));
    EXPECT_FALSE(residual(T, g).is_nonzero());
    for (std::size_t i : {0u, 1u, 17u, 59u}) {
        auto h = g;
        h[i] += exact_complex(rational(1, 1000));
        auto r = residual(T, h);
        EXPECT_TRUE(r.is_nonzero());
        // first non-zero residual sits exactly at the perturbed element
        std::size_t first = 0;
        while (r[first].is_zero()) ++first;
        EXPECT_EQ(first, i);
    }
}

TEST(Residual, DoubleModeBelowTolerance) {
    auto w = od(2000);
    A a0 = A::constant(w, {-1.0, 0.0});
    conv_polynomial<approx_complex> T({a0, A::zero(w), A::unit(w)});
    auto g = solve(T, approx_complex{1.0, 0.0});
    EXPECT_LE(residual(T, g).max_abs(), 1e-10);
}

TEST(Solve, ThreadsDoNotChangeDoubleResults) {
    auto w = od(3000);
    oracle::rng R(4);
    std::vector<A> c;
    for (int j = 0; j <= 3; ++j) {
        A a(w);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = {R.real(-1, 1), R.real(-1, 1)};
        c.push_back(a);
    }
    // f(z) = (z - 1)(z - 2)(z + 1)
    c[3][0] = 1.0;
    c[2][0] = -2.0;
    c[1][0] = -1.0;
    c[0][0] = 2.0;
    conv_polynomial<approx_complex> T(c);
    auto a = solve(T, approx_complex{2.0, 0.0}, {default_tolerance, 1});
    auto b = solve(T, approx_complex{2.0, 0.0}, {default_tolerance, 4});
    auto d = solve(T, approx_complex{2.0, 0.0}, {default_tolerance, 8});
    EXPECT_EQ(a.values(), b.values());
    EXPECT_EQ(a.values(), d.values());
}

TEST(Factorization, SquareRootOfOne) {
    auto T = sqrt_of_one(od(150));
    auto res = solve_all(T);
    std::vector<F> gs;
    for (auto& s : res.solutions) gs.push_back(s.g);
    auto rep = factorization_check(T, gs);
    EXPECT_TRUE(rep.holds);
    EXPECT_EQ(rep.max_deviation, 0.0);
}

TEST(Factorization, DegreeOne) {
    oracle::rng R(12);
    auto w = lat1(20);
    auto a1 = R.function(w);
    a1[0] = exact_complex(2);
    auto a0 = R.function(w);
    P T({a0, a1});
    auto g = solve(T, -a0[0] / a1[0]);
    EXPECT_TRUE(factorization_check(T, {g}).holds);
    EXPECT_EQ(-convolve(a1, g), a0);
}

TEST(Factorization, RandomCubic) {
    oracle::rng R(77);
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(5)));
    auto T = oracle::random_instance(R, w, {exact_complex(-1), exact_complex(0, 1), exact_complex(rational(1, 2))});
    auto res = solve_all(T);
    std::vector<F> gs;
    for (auto& s : res.solutions) gs.push_back(s.g);
    EXPECT_TRUE(factorization_check(T, gs).holds);
}

TEST(Factorization, RefusesMultipleRoots) {
    auto w = od(10);
    F a(w);
    a[1] = exact_complex(1);
    P T({-a, F::zero(w), F::unit(w)});
    try {
        factorization_check(T, std::vector<F>{a, a});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::precondition_failed);
    }
}
