#include <random>

#include <gtest/gtest.h>

#include "factoperad/braided.hpp"
#include "factoperad/braids.hpp"

using namespace factoperad;

namespace {

mpq_class q(long n, long d = 1) { return rational(n, d); }

// Square of side a centred at (cx, cy).
Square centred(mpq_class a, mpq_class cx, mpq_class cy) { return Square{a, cx - a / 2, cy - a / 2}; }

using M = Matrix<RationalField>;
RationalField Q;

// A non-symmetric rank 2 solution of the Yang-Baxter equation of Hecke
// type: (R - 2)(R + 1) = 0.
M hecke()
{
    return M::from_ints(Q, 4, 4, {2, 0, 0, 0,  //
                                  0, 0, 1, 0,  //
                                  0, 2, 1, 0,  //
                                  0, 0, 0, 2});
}

}  // namespace

TEST(Elementary, Examples)
{
    auto b = elementary(2, 1, Permutation::identity(2));
    EXPECT_EQ(b.word(), (BraidWord{1}));
    EXPECT_EQ(b.target_order().one_based(), (std::vector<int>{2, 1}));
    auto c = elementary(3, 2, Permutation::identity(3));
    EXPECT_EQ(c.word(), (BraidWord{2}));
    EXPECT_EQ(c.target_order().one_based(), (std::vector<int>{1, 3, 2}));
    EXPECT_THROW(elementary(3, 3, Permutation::identity(3)), InvalidArgument);
    EXPECT_THROW(elementary(3, 0, Permutation::identity(3)), InvalidArgument);
}

TEST(ColoredBraidType, InvariantEnforced)
{
    EXPECT_THROW(ColoredBraid(2, {1}, Permutation::identity(2), Permutation::identity(2)), InvalidArgument);
    EXPECT_THROW(ColoredBraid(2, {2}, Permutation::identity(2), Permutation::identity(2)), InvalidArgument);
    EXPECT_NO_THROW(ColoredBraid(2, {1, 1}, Permutation::identity(2), Permutation::identity(2)));
}

TEST(ComposePaths, UnitAndConcatenation)
{
    auto id = Permutation::identity(2);
    auto b = elementary(2, 1, id);
    EXPECT_EQ(compose_paths(ColoredBraid::empty(id), b), b);
    EXPECT_EQ(compose_paths(b, ColoredBraid::empty(b.target_order())), b);
    auto bb = compose_paths(b, elementary(2, 1, b.target_order()));
    EXPECT_EQ(bb.word(), (BraidWord{1, 1}));
    EXPECT_TRUE(bb.target_order().is_identity());
    EXPECT_THROW(compose_paths(b, b), InvalidArgument);
}

TEST(ComposePaths, InverseActsTrivially)
{
    auto obj = make_braided_object(2, hecke(), false);
    auto b = ColoredBraid::from_word(3, {1, -2, 1}, Permutation::identity(3));
    auto loop = compose_paths(b, b.inverse());
    EXPECT_TRUE(eval_braid(obj, loop).is_identity());
}

TEST(ActPermutation, RelabelsEndpoints)
{
    auto b = elementary(3, 1, Permutation::identity(3));
    auto sigma = Permutation::from_one_based({2, 3, 1});
    auto moved = act_permutation(b, sigma);
    EXPECT_EQ(moved.word(), b.word());
    EXPECT_EQ(moved.source_order(), sigma.inverse());
    EXPECT_EQ(act_permutation(moved, sigma.inverse()), b);
}

TEST(Cable, UnitWidths)
{
    auto b = ColoredBraid::from_word(3, {1, -2, 2, 1}, Permutation::from_one_based({3, 1, 2}));
    EXPECT_EQ(cable(b, {1, 1, 1}), b);
    EXPECT_TRUE(cable(ColoredBraid::empty(Permutation::identity(2)), {3, 2}).word().empty());
    EXPECT_THROW(cable(b, {1, 1}), InvalidArgument);
}

TEST(Cable, TwoOverOne)
{
    auto b = elementary(2, 1, Permutation::identity(2));
    auto c = cable(b, {2, 1});
    EXPECT_EQ(c.word(), (BraidWord{2, 1}));
    EXPECT_EQ(c.strands(), 3);
    EXPECT_EQ(c.target_order().one_based(), (std::vector<int>{3, 1, 2}));
}

TEST(Cable, HexagonOracle)
{
    // crossing of the bundle (U (x) W) over X equals (R (x) 1)(1 (x) R)
    for (bool koszul : {false, true}) {
        auto obj = make_braided_object(2, hecke(), koszul);
        const M& r = obj.crossing();
        M id2 = M::identity(Q, 2);
        M oracle = kron(r, id2) * kron(id2, r);
        auto c = cable(elementary(2, 1, Permutation::identity(2)), {2, 1});
        EXPECT_EQ(eval_braid(obj, c), oracle);
        // and the inverse crossing of X back under the bundle
        auto back = cable(elementary(2, 1, Permutation::identity(2)).inverse(), {2, 1});
        EXPECT_EQ(eval_braid(obj, back) * oracle, M::identity(Q, 8));
    }
}

TEST(Cable, RespectsComposition)
{
    std::mt19937 rng(5);
    auto obj = make_braided_object(2, hecke(), false);
    for (int trial = 0; trial < 20; ++trial) {
        BraidWord w1, w2;
        for (int i = 0; i < 3; ++i) {
            w1.push_back((1 + static_cast<int>(rng() % 2)) * (rng() % 2 ? 1 : -1));
            w2.push_back((1 + static_cast<int>(rng() % 2)) * (rng() % 2 ? 1 : -1));
        }
        auto a = ColoredBraid::from_word(3, w1, Permutation::identity(3));
        auto b = ColoredBraid::from_word(3, w2, a.target_order());
        std::vector<int> widths{static_cast<int>(rng() % 3), 1, static_cast<int>(rng() % 2) + 1};
        auto lhs = cable(compose_paths(a, b), widths);
        auto rhs = compose_paths(cable(a, widths), cable(b, widths));
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(eval_braid(obj, lhs), eval_braid(obj, rhs));
    }
}

TEST(Straighten, VerticalIsEmpty)
{
    auto b = straighten(canonical_vertical(3));
    EXPECT_TRUE(b.word().empty());
}

TEST(Straighten, SameHeight)
{
    LinearEmbedding phi({centred(q(1, 4), q(1, 4), q(1, 2)), centred(q(1, 4), q(3, 4), q(1, 2))});
    auto b = straighten(phi);
    EXPECT_TRUE(b.word().empty());
    EXPECT_TRUE(b.source_order().is_identity());
}

TEST(Straighten, SingleCrossing)
{
    // slot 1 high on the left, slot 2 low on the right; the strand coming up
    // from the right passes the one moving down: counter-clockwise
    LinearEmbedding phi({centred(q(1, 4), q(1, 4), q(3, 4)), centred(q(1, 4), q(3, 4), q(1, 4))});
    auto b = straighten(phi);
    EXPECT_EQ(b.word(), (BraidWord{1}));
    EXPECT_EQ(b.source_order().one_based(), (std::vector<int>{2, 1}));
    EXPECT_TRUE(b.target_order().is_identity());
    EXPECT_EQ(straighten(phi, {std::nullopt, Orientation::cw}).word(), (BraidWord{-1}));
    // mirror image crosses the other way
    LinearEmbedding mirror({centred(q(1, 4), q(3, 4), q(3, 4)), centred(q(1, 4), q(1, 4), q(1, 4))});
    EXPECT_EQ(straighten(mirror).word(), (BraidWord{-1}));
}

TEST(Straighten, DegenerateMotion)
{
    LinearEmbedding phi({centred(q(1, 8), q(1, 4), q(1, 2)), centred(q(1, 8), q(3, 4), q(1, 2)),
                         centred(q(1, 8), q(1, 4), q(1, 8))});
    try {
        straighten(phi);
        FAIL() << "expected DegenerateMotion";
    } catch (const DegenerateMotion& e) {
        EXPECT_EQ(e.first, 0);
        EXPECT_EQ(e.second, 2);
    }
    StraightenOptions opt{q(1, 1000), Orientation::ccw};
    auto a = straighten(phi, opt);
    auto b = straighten(phi, opt);
    EXPECT_EQ(a, b);
    EXPECT_EQ(underlying_permutation(a).size(), 3);
}

TEST(Straighten, RelabellingMovesSourceOrder)
{
    std::mt19937 rng(9);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        const int k = 6;
        std::vector<int> cells(k * k);
        std::iota(cells.begin(), cells.end(), 0);
        std::shuffle(cells.begin(), cells.end(), rng);
        std::vector<Square> sq;
        for (int i = 0; i < n; ++i)
            sq.push_back(Square{q(1, 2 * k), q(4 * (cells[i] % k) + static_cast<long>(rng() % 3), 4 * k),
                                q(4 * (cells[i] / k) + static_cast<long>(rng() % 3), 4 * k)});
        LinearEmbedding phi(sq);
        if (!validate(phi))
            continue;
        ColoredBraid b;
        try {
            b = straighten(phi);
        } catch (const DegenerateMotion&) {
            continue;
        }
        ++tested;
        std::vector<int> images(n);
        std::iota(images.begin(), images.end(), 0);
        std::shuffle(images.begin(), images.end(), rng);
        Permutation sigma(images);
        ColoredBraid moved;
        try {
            moved = straighten(act_permutation(phi, sigma));
        } catch (const DegenerateMotion&) {
            continue;
        }
        EXPECT_EQ(moved.source_order(), sigma.inverse().after(b.source_order()));
        EXPECT_EQ(moved.source_order(), vertical_order(act_permutation(phi, sigma)));
        EXPECT_TRUE(moved.target_order().is_identity());
    }
    EXPECT_GE(tested, 30);
}

TEST(Relators, ActTriviallyForYangBaxter)
{
    auto obj = make_braided_object(2, hecke(), false);
    auto b = ColoredBraid::from_word(4, {1, 3, -2}, Permutation::identity(4));
    M base = eval_braid(obj, b);
    auto variants = relator_variants(b);
    EXPECT_EQ(variants.size(), 3u + 4u + 1u);
    for (const auto& v : variants)
        EXPECT_EQ(eval_braid(obj, v), base);
}

TEST(Describe, Json)
{
    auto b = elementary(2, 1, Permutation::identity(2));
    EXPECT_EQ(describe(b), "{\"strands\":2,\"word\":[1],\"source_order\":[1,2],\"target_order\":[2,1]}");
}
