#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qrcensus/redundancy.hpp"

using namespace qrc;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> golden_pairs() {
    std::ifstream in(std::string(QRC_GOLDEN_DIR) + "/annex1_pairs.txt");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    std::uint64_t a = 0, b = 0;
    while (in >> a >> b) out.emplace_back(a, b);
    return out;
}

}  // namespace

TEST(Collisions, ThirtyFiveWorkedExample) {
    const auto pairs = collision_pairs(OddModulus(35));
    ASSERT_FALSE(pairs.empty());
    EXPECT_EQ(pairs.front().a, 6u);
    EXPECT_EQ(pairs.front().b, 1u);
    EXPECT_EQ(pairs.front().shared_square, 1u);
    const Witness w = witness(pairs.front());
    EXPECT_EQ(w.factor_low, 5u);
    EXPECT_EQ(w.factor_high, 7u);
    EXPECT_TRUE(w.divides);
    EXPECT_EQ(w.statement(35), "35 | 35");
}

TEST(Collisions, Modulus175MatchesGolden) {
    const auto expected = golden_pairs();
    ASSERT_EQ(expected.size(), 42u);
    const auto pairs = collision_pairs(OddModulus(175));
    ASSERT_EQ(pairs.size(), expected.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(pairs[i].a, expected[i].first) << i;
        EXPECT_EQ(pairs[i].b, expected[i].second) << i;
        EXPECT_TRUE(witness(pairs[i]).divides);
    }
    EXPECT_EQ(zero_square_roots(OddModulus(175)), (std::vector<std::uint64_t>{35, 70, 105, 140}));
}

TEST(Collisions, PrimesHaveNone) {
    for (std::uint64_t p : {3u, 7u, 23u, 101u, 9973u}) {
        EXPECT_TRUE(collision_pairs(OddModulus(p)).empty()) << p;
        EXPECT_TRUE(zero_square_roots(OddModulus(p)).empty()) << p;
    }
}

TEST(Collisions, InvariantsHoldBelow1500) {
    for (std::uint64_t n = 3; n <= 1501; n += 2) {
        const OddModulus m(n);
        std::uint64_t prev_a = 0;
        for (const auto& p : collision_pairs(m)) {
            ASSERT_GT(p.a, prev_a);
            prev_a = p.a;
            ASSERT_LT(p.b, p.a);
            ASSERT_LE(p.a, m.half());
            ASSERT_EQ(p.a * p.a % n, p.shared_square);
            ASSERT_EQ(p.b * p.b % n, p.shared_square);
            ASSERT_NE(p.shared_square, 0u);
            for (std::uint64_t c = 1; c < p.b; ++c) ASSERT_NE(c * c % n, p.shared_square) << "b not minimal";
            ASSERT_EQ((p.a - p.b) * (p.a + p.b) % n, 0u);
            ASSERT_TRUE(witness(p).divides);
        }
    }
}

TEST(Collisions, PairCountExplainsMissingResidues) {
    // Each collision removes one distinct square among 1..(n-1)/2.
    for (std::uint64_t n = 3; n <= 1501; n += 2) {
        const OddModulus m(n);
        std::vector<bool> seen(n, false);
        std::uint64_t distinct = 0, zeros = 0;
        for (std::uint64_t x = 1; x <= m.half(); ++x) {
            const auto s = x * x % n;
            if (s == 0) {
                ++zeros;
            } else if (!seen[s]) {
                seen[s] = true;
                ++distinct;
            }
        }
        ASSERT_EQ(distinct + zeros + collision_pairs(m).size(), m.half()) << n;
    }
}

TEST(Witness, RejectsForgedPairs) {
    CollisionPair forged{35, 7, 2, 14, 5, 9};
    EXPECT_THROW((void)witness(forged), ContractViolation);
    CollisionPair bad_fields{35, 6, 1, 1, 4, 7};
    EXPECT_THROW((void)witness(bad_fields), ContractViolation);
    CollisionPair out_of_range{35, 20, 1, 15, 19, 21};
    EXPECT_THROW((void)witness(out_of_range), ContractViolation);
}

TEST(SquareClasses, GroupCollisions) {
    const auto classes = square_classes(OddModulus(35));
    std::size_t extra = 0;
    for (const auto& c : classes) {
        ASSERT_GE(c.roots.size(), 2u);
        for (auto r : c.roots) EXPECT_EQ(r * r % 35, c.square);
        extra += c.roots.size() - 1;
    }
    EXPECT_EQ(extra, collision_pairs(OddModulus(35)).size());
}
