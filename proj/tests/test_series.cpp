#include <gtest/gtest.h>

#include "dirconv/norms.hpp"
#include "dirconv/series.hpp"
#include "oracles.hpp"

using namespace dirconv;
using F = arithmetic_function<exact_complex>;
using P = conv_polynomial<exact_complex>;

namespace {

window_ptr od(std::int64_t n) { return window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(n)); }
window_ptr lat1(std::int64_t n) { return window::make(semigroup::lattice(1), truncation::by_size(rational(n))); }

coefficient_norms zeta_half_norms() {
    coefficient_norms n;
    n.scope = norm_scope::user_bound;
    n.bounds = {[](double r) { return norms::zeta_upper(r); }, [](double) { return 0.0; }, [](double) { return 1.0; }};
    return n;
}

}  // namespace

TEST(Evaluate, UnitIsOne) {
    for (auto w : {od(50), lat1(10)}) {
        for (approx_complex s : {approx_complex{2, 0}, approx_complex{0.3, -7}}) {
            auto v = evaluate_series(F::unit(w), {s});
            EXPECT_EQ(v.value, approx_complex(1, 0));
        }
    }
}

TEST(Evaluate, ZetaTwoPartialSum) {
    auto v = evaluate_series(F::one(od(1000)), {approx_complex{2, 0}});
    const double zeta2 = M_PI * M_PI / 6;
    EXPECT_LT(v.value.real(), zeta2);
    EXPECT_LT(zeta2 - v.value.real(), 1.0 / 1000);
    EXPECT_GT(zeta2 - v.value.real(), 1.0 / 1001);
    EXPECT_EQ(v.size_bound, "log 1000");
}

TEST(Evaluate, GeometricSeries) {
    auto v = evaluate_series(F::one(lat1(60)), {approx_complex{std::log(2.0), 0}});
    EXPECT_NEAR(v.value.real(), 2.0, 1e-15 * 4 + std::pow(0.5, 60));
}

TEST(Evaluate, ConjugateSymmetry) {
    oracle::rng R(4);
    auto w = od(300);
    F g(w);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = exact_complex(R.small_rational());
    approx_complex s{1.3, 4.2};
    auto a = evaluate_series(g, {s}).value;
    auto b = evaluate_series(g, {std::conj(s)}).value;
    EXPECT_EQ(b, std::conj(a));
}

TEST(Evaluate, HomomorphismForCompactSupport) {
    oracle::rng R(13);
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(8)));
    F g(w), h(w);
    // supports with sizes <= 4 so every product term stays in the window
    for (std::size_t i = 0; i < w->size() && (*w)[i].key <= 4; ++i) {
        g[i] = R.gaussian_rational();
        h[i] = R.gaussian_rational();
    }
    point s{{0.4, 1.0}, {1.1, -0.5}};
    auto lhs = evaluate_series(convolve(g, h), s).value;
    auto rhs = evaluate_series(g, s).value * evaluate_series(h, s).value;
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * (1 + std::abs(lhs)));
}

TEST(Evaluate, OrdinaryDirichletTwoVariables) {
    auto w = window::make(semigroup::ordinary_dirichlet(2), truncation::by_index(6));
    F g = F::indicator(w, {2, 3}, exact_complex(5));
    point s{{2, 0}, {1, 1}};
    auto v = evaluate_series(g, s).value;
    auto want = 5.0 * std::pow(2.0, -2.0) * std::pow(approx_complex(3.0, 0), -approx_complex{1, 1});
    EXPECT_NEAR(std::abs(v - want), 0, 1e-15);
}

TEST(TailBound, UnitAndHalfPlane) {
    auto w = od(50);
    P T({F::zero(w), F::unit(w)});
    auto c = certify(T, exact_complex(0), 0.0, window_norms(T, true));
    auto u = F::unit(w);
    EXPECT_GE(tail_bound(u, c, {approx_complex{c.r + 1, 0}}), 0.0);
    try {
        tail_bound(u, c, {approx_complex{c.r - 0.5, 3}});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::out_of_half_plane);
    }
}

TEST(TailBound, TruncatedScopeIsRefused) {
    auto w = od(50);
    P T({-F::one(w), F::zero(w), F::unit(w)});
    auto c = certify(T, exact_complex(1), 0.0, window_norms(T));
    auto g = solve(T, exact_complex(1));
    EXPECT_THROW(tail_bound(g, c, {approx_complex{c.r + 1, 0}}), error);
}

TEST(TailBound, DecreasesWithWindow) {
    double prev = INFINITY;
    for (std::int64_t n : {50, 100, 200, 400, 800}) {
        auto w = od(n);
        P T({-F::one(w), F::zero(w), F::unit(w)});
        auto g = solve(T, exact_complex(1));
        auto c = certify_sharpened(T, exact_complex(1), 2.0, zeta_half_norms());
        double t = tail_bound(g, c, {approx_complex{3, 0}});
        EXPECT_LE(t, prev);
        prev = t;
    }
}

TEST(VerifyScalarEquation, ZetaHalf) {
    auto w = od(1000);
    P T({-F::one(w), F::zero(w), F::unit(w)});
    auto g = solve(T, exact_complex(1));
    auto c = certify_sharpened(T, exact_complex(1), 2.0, zeta_half_norms());
    auto rep = verify_scalar_equation(T, g, c, zeta_half_norms(), {{{2, 0}}, {{3, 0}}, {{5, 0}}, {{2, 10}}});
    EXPECT_TRUE(rep.ok);
    EXPECT_LE(rep.max_ratio, 1.0);
    EXPECT_EQ(rep.points.size(), 4u);
}

TEST(VerifyScalarEquation, LinearInstanceIsRoundOffOnly) {
    auto w = od(200);
    auto a0 = F::indicator(w, {3}, exact_complex(2));
    P T({a0, F::unit(w)});
    auto g = solve(T, exact_complex(0));
    auto n = window_norms(T, true);
    auto c = certify(T, exact_complex(0), 0.0, n);
    auto rep = verify_scalar_equation(T, g, c, n, {{{c.r + 1, 0}}, {{c.r + 2, 5}}});
    EXPECT_TRUE(rep.ok);
    for (const auto& p : rep.points) EXPECT_LE(p.residual, 1e-15);
}

TEST(VerifyScalarEquation, TwoVariablePowerSeries) {
    // g*g = (1 + w1)(1 + w2)^2 has g = (1 + w2) (1 + w1)^{1/2}
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(40)));
    F a0(w);
    for (const auto& [id, v] : std::vector<std::pair<element_id, long>>{{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 2}, {{1, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 1}})
        a0.at(id) = exact_complex(v);
    P T({-a0, F::zero(w), F::unit(w)});
    auto g = solve(T, exact_complex(1));
    for (unsigned n = 0; n <= 6; ++n) {
        EXPECT_EQ(g.at({n, 0}), exact_complex(oracle::binomial(rational(1, 2), n)));
        EXPECT_EQ(g.at({n, 1}), exact_complex(oracle::binomial(rational(1, 2), n)));
        EXPECT_EQ(g.at({n, 2}), exact_complex(0));
    }
    auto n = window_norms(T, true);
    auto c = certify_sharpened(T, exact_complex(1), std::log(4.0), n);
    oracle::rng R(5);
    std::vector<point> pts;
    for (int k = 0; k < 5; ++k) {
        // |w_i| = e^{-Re s_i} <= 1/4
        pts.push_back({{std::log(4.0) + R.real(0, 1), R.real(-3, 3)}, {std::log(4.0) + R.real(0, 1), R.real(-3, 3)}});
    }
    auto rep = verify_scalar_equation(T, g, c, n, pts);
    EXPECT_TRUE(rep.ok);
    for (const auto& p : pts) {
        approx_complex w1 = std::exp(-p[0]), w2 = std::exp(-p[1]);
        approx_complex closed = (1.0 + w2) * std::sqrt(1.0 + w1);
        EXPECT_NEAR(std::abs(evaluate_series(g, p).value - closed), 0, 1e-12);
    }
}
