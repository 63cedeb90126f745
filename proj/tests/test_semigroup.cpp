#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dirconv/semigroup.hpp"

using namespace dirconv;

namespace {

std::vector<element_id> ids(const window& w) {
    std::vector<element_id> out;
    for (const auto& e : w.elements()) out.push_back(e.id);
    return out;
}

window_ptr two_three(std::int64_t bound) {
    return window::make(semigroup::rational_generators({{rational(2)}, {rational(3)}}), truncation::by_size(rational(bound)));
}

}  // namespace

TEST(Enumerate, LatticeTwoBySizeThenLex) {
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(2)));
    std::vector<element_id> want{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    EXPECT_EQ(ids(*w), want);
}

TEST(Enumerate, GeneratorsTwoThreeMergeCollisions) {
    auto w = two_three(6);
    std::vector<element_id> want{{0}, {2}, {3}, {4}, {5}, {6}};
    EXPECT_EQ(ids(*w), want);
}

TEST(Enumerate, OrdinaryDirichletNaturalOrder) {
    auto w = window::make(semigroup::ordinary_dirichlet(1), truncation::by_size(rational(std::log(5.0) + 1e-9)));
    ASSERT_EQ(w->size(), 5u);
    for (std::int64_t n = 1; n <= 5; ++n) EXPECT_EQ(w->elements()[n - 1].id, element_id{n});
}

TEST(Enumerate, OrdinaryDirichletByIndex) {
    auto w = window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(1000));
    ASSERT_EQ(w->size(), 1000u);
    EXPECT_EQ(w->elements().back().id, element_id{1000});
}

TEST(Enumerate, NegativeBoundIsEmptyTruncation) {
    try {
        window::make(semigroup::lattice(1), truncation::by_size(rational(-1)));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::empty_truncation);
    }
}

TEST(Enumerate, MaxElementsGivesAtLeastThatMany) {
    auto w = window::make(semigroup::lattice(3), truncation::by_count(50));
    EXPECT_EQ(w->size(), 50u);
    // the last size level is cut short, so completeness stops one level below it
    EXPECT_LT(w->complete_key(), w->elements().back().key);
    auto full = window::make(semigroup::lattice(3), truncation::by_size(rational(w->complete_key())));
    ASSERT_LE(full->size(), w->size());
    for (std::size_t i = 0; i < full->size(); ++i) EXPECT_EQ((*full)[i].id, (*w)[i].id);
}

TEST(Enumerate, RationalCoordinatesUseCommonDenominator) {
    auto g = semigroup::rational_generators({{rational(1, 2), rational(0)}, {rational(0), rational(2, 3)}});
    auto w = window::make(g, truncation::by_size(rational(2)));
    std::set<std::vector<rational>> coords;
    for (const auto& e : w->elements()) {
        auto c = g.coords(e.id);
        coords.insert(c);
        EXPECT_LE(c[0] + c[1], rational(2));
    }
    // a/2 + 2b/3 <= 2: a in 0..4 with b limited accordingly
    std::size_t count = 0;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 3; ++b)
            if (rational(a, 2) + rational(2 * b, 3) <= 2) ++count;
    EXPECT_EQ(coords.size(), count);
    EXPECT_EQ(w->size(), count);
}

TEST(Decompositions, DivisorPairsOfSix) {
    auto w = window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(10));
    std::vector<std::pair<element_id, element_id>> want{{{1}, {6}}, {{2}, {3}}, {{3}, {2}}, {{6}, {1}}};
    EXPECT_EQ(w->decompositions_of({6}), want);
}

TEST(Decompositions, ZeroOnlySplitsAsZeroPlusZero) {
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(3)));
    auto d = w->decompositions_of({0, 0});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].first, (element_id{0, 0}));
}

TEST(Decompositions, GeneratorsSix) {
    auto w = two_three(8);
    std::vector<std::pair<element_id, element_id>> want{{{0}, {6}}, {{2}, {4}}, {{3}, {3}}, {{4}, {2}}, {{6}, {0}}};
    EXPECT_EQ(w->decompositions_of({6}), want);
}

TEST(Decompositions, BeyondWindowIsNotEnumerated) {
    auto w = window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(10));
    try {
        w->decompositions_of({11});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_enumerated);
    }
}

TEST(MinPositiveSize, Backends) {
    auto od = window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(10));
    EXPECT_EQ(od->min_positive_size().key(), 2);
    EXPECT_TRUE(od->min_positive_size().is_log());
    EXPECT_NEAR(od->min_positive_size().approx(), std::log(2.0), 1e-15);
    auto lat = window::make(semigroup::lattice(2), truncation::by_size(rational(3)));
    EXPECT_EQ(lat->min_positive_size().exact(), rational(1));
    EXPECT_EQ(two_three(6)->min_positive_size().exact(), rational(2));
}

TEST(MinPositiveSize, OnlyZero) {
    auto w = window::make(semigroup::lattice(2), truncation::by_size(rational(1, 2)));
    ASSERT_EQ(w->size(), 1u);
    try {
        (void)w->min_positive_size();
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::only_zero);
    }
}

// Properties over all backends.

class WindowProperties : public ::testing::TestWithParam<int> {
protected:
    window_ptr make() const {
        switch (GetParam()) {
            case 0: return window::make(semigroup::lattice(1), truncation::by_size(rational(40)));
            case 1: return window::make(semigroup::lattice(3), truncation::by_size(rational(6)));
            case 2: return window::make(semigroup::ordinary_dirichlet(1), truncation::by_index(600));
            case 3: return window::make(semigroup::ordinary_dirichlet(2), truncation::by_index(80));
            case 4: return two_three(30);
            default:
                return window::make(
                    semigroup::rational_generators({{rational(1, 2), rational(1, 3)}, {rational(0), rational(3, 4)}, {rational(5, 6), rational(0)}}),
                    truncation::by_size(rational(4)));
        }
    }
};

TEST_P(WindowProperties, StrictOrderAndZeroFirst) {
    auto w = make();
    const auto& g = w->group();
    EXPECT_EQ((*w)[0].id, g.zero());
    EXPECT_EQ((*w)[0].key, g.key(g.zero()));
    for (std::size_t i = 1; i < w->size(); ++i) {
        const auto& a = (*w)[i - 1];
        const auto& b = (*w)[i];
        EXPECT_TRUE(a.key < b.key || (a.key == b.key && a.id < b.id)) << i;
        EXPECT_GT(w->size_of(i).approx(), 0.0);
    }
}

TEST_P(WindowProperties, DecompositionSymmetryAndSums) {
    auto w = make();
    const auto& g = w->group();
    for (std::size_t i = 0; i < w->size(); ++i) {
        auto d = w->decompositions(i);
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        std::uint32_t prev = 0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            EXPECT_EQ(g.add((*w)[d[k].left].id, (*w)[d[k].right].id), (*w)[i].id);
            if (k) {
                EXPECT_LT(prev, d[k].left);
            }
            prev = d[k].left;
            seen.insert({d[k].left, d[k].right});
        }
        for (auto p : seen) EXPECT_TRUE(seen.count({p.second, p.first}));
        EXPECT_TRUE(seen.count({0u, static_cast<std::uint32_t>(i)}));
    }
}

TEST_P(WindowProperties, ClosureUnderAddition) {
    auto w = make();
    const auto& g = w->group();
    std::mt19937 gen(17 + GetParam());
    std::uniform_int_distribution<std::size_t> pick(0, w->size() - 1);
    int tested = 0;
    for (int trial = 0; trial < 20000 && tested < 200; ++trial) {
        std::size_t a = pick(gen), b = pick(gen);
        if (g.combine_keys((*w)[a].key, (*w)[b].key) > w->complete_key()) continue;
        ++tested;
        auto sum = g.add((*w)[a].id, (*w)[b].id);
        auto idx = w->find(sum);
        ASSERT_TRUE(idx.has_value());
        auto d = w->decompositions_of(sum);
        EXPECT_NE(std::find(d.begin(), d.end(), std::make_pair((*w)[a].id, (*w)[b].id)), d.end());
    }
    EXPECT_GT(tested, 20);
}

TEST_P(WindowProperties, BruteForceCompleteness) {
    auto w = make();
    const auto& g = w->group();
    // every element listed has all its decompositions: count pairs (y, z) with y + z = x
    std::size_t brute = 0, listed = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(w->size(), 120); ++i) {
        for (std::size_t y = 0; y < w->size(); ++y)
            if (auto z = g.subtract((*w)[i].id, (*w)[y].id); z && w->find(*z)) ++brute;
        listed += w->decompositions(i).size();
    }
    EXPECT_EQ(brute, listed);
}

INSTANTIATE_TEST_SUITE_P(Backends, WindowProperties, ::testing::Range(0, 6));
