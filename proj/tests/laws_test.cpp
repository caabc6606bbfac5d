#include <gtest/gtest.h>

#include <set>

#include "qrcensus/census.hpp"
#include "qrcensus/laws.hpp"

using namespace qrc;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

struct Sums {
    std::int64_t r_b = 0, n_b = 0, sum_r = 0, sum_n = 0, sum_rb = 0, sum_nb = 0;
};

Sums brute_sums(std::uint64_t p) {
    std::set<std::uint64_t> sq;
    for (std::uint64_t x = 1; x < p; ++x) sq.insert(x * x % p);
    sq.erase(0);
    Sums s;
    for (std::uint64_t y = 1; y < p; ++y) {
        const bool r = sq.count(y);
        const auto v = static_cast<std::int64_t>(y);
        (r ? s.sum_r : s.sum_n) += v;
        if (y <= (p - 1) / 2) {
            (r ? s.r_b : s.n_b) += 1;
            (r ? s.sum_rb : s.sum_nb) += v;
        }
    }
    return s;
}

std::uint64_t brute_rb(std::uint64_t n) {
    std::vector<bool> seen(n, false);
    std::uint64_t count = 0;
    for (std::uint64_t x = 1; x < n; ++x) {
        const std::uint64_t s = x * x % n;
        if (s != 0 && s <= (n - 1) / 2 && !seen[s]) {
            seen[s] = true;
            ++count;
        }
    }
    return count;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST(Threshold, Modes) {
    EXPECT_TRUE(predicts_prime(2, 7, ThresholdMode::strict_quarter));
    EXPECT_FALSE(predicts_prime(1, 5, ThresholdMode::strict_quarter));  // 4 = 5 - 1
    EXPECT_TRUE(predicts_prime(1, 5, ThresholdMode::corrected));
    EXPECT_TRUE(predicts_prime(1, 5, ThresholdMode::floor_geq));
    EXPECT_TRUE(predicts_prime(2, 9, ThresholdMode::corrected));
    EXPECT_FALSE(predicts_prime(3, 15, ThresholdMode::corrected));
    EXPECT_TRUE(predicts_prime(3, 15, ThresholdMode::floor_geq));
}

TEST(Threshold, ParseAndPrint) {
    for (auto m : {ThresholdMode::strict_quarter, ThresholdMode::floor_geq, ThresholdMode::corrected}) {
        EXPECT_EQ(parse_threshold_mode(to_string(m)), m);
    }
    EXPECT_EQ(parse_threshold_mode("Strict"), std::nullopt);
}

TEST(Classify, WorkedExamples) {
    const auto c35 = classify(OddModulus(35));
    EXPECT_EQ(c35.r_b, 7u);
    EXPECT_FALSE(c35.predicted_prime);
    EXPECT_FALSE(c35.oracle_prime);
    EXPECT_TRUE(c35.agree);

    const auto c9 = classify(OddModulus(9));
    EXPECT_TRUE(c9.predicted_prime);
    EXPECT_FALSE(c9.agree);

    EXPECT_FALSE(classify(OddModulus(13), ThresholdMode::strict_quarter).agree);
    EXPECT_TRUE(classify(OddModulus(13), ThresholdMode::corrected).agree);
}

TEST(Classify, VerdictDependsOnlyOnCount) {
    for (std::uint64_t n = 3; n <= 2001; n += 2) {
        const auto c = classify(OddModulus(n));
        ASSERT_EQ(classify_from_count(OddModulus(n), census(OddModulus(n)).r_b, c.mode), c);
    }
}

TEST(LawNames, RoundTrip) {
    for (auto id : kAllLaws) {
        EXPECT_EQ(parse_law(law_code(id)), id);
        EXPECT_EQ(parse_law(law_name(id)), id);
    }
    EXPECT_EQ(parse_law("l7"), LawId::sum_rb_7mod8);
    EXPECT_EQ(parse_law("l7_sumrb_7mod8"), LawId::sum_rb_7mod8);
    EXPECT_EQ(parse_law("L11"), std::nullopt);
    EXPECT_TRUE(is_approximation(LawId::rb_semiprime));
    EXPECT_FALSE(is_approximation(LawId::mod8_triangle));
}

TEST(Laws, ExactPrimeLawsAgainstBruteForce) {
    for (std::uint64_t p = 3; p < 1500; p += 2) {
        if (!trial_prime(p)) continue;
        const Sums s = brute_sums(p);
        const auto sp = static_cast<std::int64_t>(p);
        if (p % 4 == 1) {
            auto r = check_law(LawId::exact_4k1, {p});
            ASSERT_TRUE(*r.holds) << p;
            ASSERT_EQ(r.lhs, Rational(s.r_b));
            ASSERT_EQ(4 * s.r_b, sp - 1);
        } else {
            auto r = check_law(LawId::dirichlet_positive, {p});
            ASSERT_TRUE(*r.holds) << p;
            ASSERT_GT(s.r_b, s.n_b);
        }
        if (p % 8 == 7) {
            ASSERT_EQ(s.sum_rb, s.sum_nb) << p;
            ASSERT_EQ(s.sum_n - s.sum_r, sp * (s.r_b - s.n_b)) << p;
            ASSERT_EQ(16 * s.sum_rb, (sp - 1) * (sp + 1)) << p;
            for (auto id : {LawId::leb_7mod8_sums, LawId::leb_7mod8_diff, LawId::sum_rb_7mod8}) {
                ASSERT_TRUE(*check_law(id, {p}).holds) << law_code(id) << ' ' << p;
            }
        }
        if (p % 8 == 3) {
            ASSERT_EQ(s.sum_n - s.sum_r, s.sum_rb - s.sum_nb) << p;
            ASSERT_EQ(3 * (s.sum_n - s.sum_r), sp * (s.r_b - s.n_b)) << p;
            for (auto id : {LawId::leb_3mod8_sums, LawId::leb_3mod8_diff}) {
                ASSERT_TRUE(*check_law(id, {p}).holds) << law_code(id) << ' ' << p;
            }
        }
    }
}

TEST(Laws, L5AtElevenByHand) {
    // Residues mod 11: {1, 3, 4, 5, 9}, sum 22; non-residues {2, 6, 7, 8, 10}, sum 33.
    // Small: R_b = {1, 3, 4, 5} (sum 13), N_b = {2} (sum 2).
    const auto r = check_law(LawId::leb_3mod8_sums, {11});
    EXPECT_EQ(r.lhs, Rational(11));
    EXPECT_EQ(r.rhs, Rational(11));
    EXPECT_TRUE(*r.holds);
    ASSERT_TRUE(r.printed_orientation_holds.has_value());
    EXPECT_FALSE(*r.printed_orientation_holds);
    EXPECT_FALSE(*check_law(LawId::leb_3mod8_sums, {19}).printed_orientation_holds);
    EXPECT_TRUE(*check_law(LawId::leb_3mod8_sums, {19}).holds);

    const auto r6 = check_law(LawId::leb_3mod8_diff, {11});
    EXPECT_EQ(r6.lhs, Rational(3));
    EXPECT_EQ(r6.rhs, Rational(3));
}

TEST(Laws, L7PublishedValues) {
    const std::pair<std::uint64_t, std::int64_t> points[] = {{7, 3},     {23, 33},   {31, 60},   {47, 138},
                                                             {71, 315},  {79, 390},  {103, 663}, {9967, 6208818}};
    for (auto [p, f] : points) {
        const auto r = check_law(LawId::sum_rb_7mod8, {p});
        EXPECT_EQ(r.lhs, Rational(f)) << p;
        EXPECT_EQ(r.rhs, Rational(f)) << p;
        EXPECT_EQ(brute_sums(p).sum_rb, f) << p;
    }
}

TEST(Laws, SideConditionsAreEnforced) {
    EXPECT_THROW((void)check_law(LawId::exact_4k1, {7}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::exact_4k1, {9}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::exact_4k1, {5, 1}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::sum_rb_7mod8, {11}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::prime_power_bound, {3, 2}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::prime_power_bound, {7, 1}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::prime_power_bound, {5, 2}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::product_inequality, {5, 3, 1, 1}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::mod8_triangle, {3, 11}), LawUsageError);
    EXPECT_THROW((void)check_law(LawId::prime_power_bound, {3, 40}), LawUsageError);
}

TEST(Laws, L8BoundaryAtNine) {
    // R_b(9) = 2 = (9 - 1)/4: equality, which is why p = 3 starts at k = 3.
    EXPECT_EQ(brute_rb(9), 2u);
    EXPECT_TRUE(*check_law(LawId::prime_power_bound, {3, 3}).holds);
    EXPECT_TRUE(*check_law(LawId::prime_power_bound, {7, 2}).holds);
}

TEST(Laws, L8HoldsUpTo30000) {
    std::size_t checked = 0;
    for (const auto& params : law_params_in_range(LawId::prime_power_bound, 3, 30000)) {
        const auto r = check_law(LawId::prime_power_bound, params);
        ASSERT_TRUE(*r.holds) << params[0] << '^' << params[1];
        ++checked;
    }
    EXPECT_GT(checked, 20u);
}

TEST(Laws, L9SmallestCounterexample) {
    // R_b(15) = 3 (squares 1, 4, 6 below 8) and 3 R_b(5) = 3: the strict inequality fails.
    EXPECT_EQ(brute_rb(15), 3u);
    const auto r = check_law(LawId::product_inequality, {3, 5, 1, 1});
    EXPECT_EQ(r.n, 15u);
    EXPECT_EQ(r.lhs, Rational(3));
    EXPECT_EQ(r.rhs, Rational(3));
    EXPECT_FALSE(*r.holds);
}

TEST(Laws, L9VerdictsMatchBruteForce) {
    for (const auto& params : law_params_in_range(LawId::product_inequality, 3, 3000)) {
        const auto [p, q, m, k] = std::tuple{params[0], params[1], params[2], params[3]};
        const std::uint64_t lower = ipow(p, static_cast<unsigned>(m - 1)) * ipow(q, static_cast<unsigned>(k));
        const bool expected = brute_rb(lower * p) < p * brute_rb(lower);
        ASSERT_EQ(*check_law(LawId::product_inequality, params).holds, expected) << p << ' ' << q << ' ' << m << ' ' << k;
    }
}

TEST(Laws, L10Triangle) {
    const auto tuples = law_params_in_range(LawId::mod8_triangle, 3, 3);
    EXPECT_EQ(tuples.size(), 3u);
    for (const auto& t : tuples) EXPECT_TRUE(*check_law(LawId::mod8_triangle, t).holds);
    const auto r = check_law(LawId::mod8_triangle, {11, 23});
    EXPECT_EQ(r.lhs, Rational(5));
    EXPECT_TRUE(*r.holds);
}

TEST(Laws, ApproximationsCarryRelativeError) {
    const auto a1 = check_law(LawId::nh_prime_power, {7, 2});
    EXPECT_EQ(a1.lhs, Rational(14));
    EXPECT_EQ(a1.rhs, Rational(14));
    EXPECT_EQ(*a1.rel_error, Rational(0));
    EXPECT_FALSE(a1.holds.has_value());

    const auto a2 = check_law(LawId::nh_product, {3, 7, 2, 1});
    EXPECT_EQ(a2.n, 63u);
    EXPECT_EQ(a2.lhs, Rational(25));
    EXPECT_EQ(a2.rhs, Rational(21));
    EXPECT_EQ(*a2.rel_error, Rational(4, 21));

    const auto a3 = check_law(LawId::rb_semiprime, {5, 7});
    EXPECT_EQ(a3.lhs, Rational(7));
    EXPECT_EQ(a3.rhs, Rational(static_cast<std::int64_t>(brute_rb(25) + brute_rb(49)), 4));
    EXPECT_TRUE(*a3.holds);
    EXPECT_EQ(*a3.rel_error, Rational(3, 4));
}

TEST(Recurrence, PublishedPrimePowers) {
    struct Case {
        std::uint64_t p;
        unsigned m;
        std::uint64_t r_b;
    };
    const Case cases[] = {
        {3, 2, 2},     {3, 3, 6},     {3, 4, 16},   {3, 5, 47},   {3, 6, 138},   {3, 7, 412},
        {3, 8, 1232},  {3, 9, 3693},  {5, 2, 5},    {5, 3, 26},   {5, 4, 130},   {5, 5, 651},
        {5, 6, 3255},  {13, 2, 39},   {13, 3, 510}, {13, 4, 6630},
    };
    for (auto [p, m, r_b] : cases) {
        EXPECT_EQ(census(OddModulus(ipow(p, m))).r_b, r_b) << p << '^' << m;
        EXPECT_EQ(rb_prime_power_predicted(p, m), r_b) << p << '^' << m;
    }
    EXPECT_EQ(rb_prime_power_predicted(5, 3), 26u);
}

TEST(Recurrence, AllSmallPrimePowers) {
    std::size_t checked = 0;
    for (std::uint64_t p = 3; p <= 30000; p += 2) {
        if (!trial_prime(p) || (p != 3 && p % 4 != 1)) continue;
        for (unsigned m = 1; ipow(p, m) <= 30000; ++m) {
            ASSERT_EQ(rb_prime_power_predicted(p, m), brute_rb(ipow(p, m))) << p << '^' << m;
            ++checked;
        }
    }
    EXPECT_GT(checked, 1000u);
    EXPECT_THROW((void)rb_prime_power_predicted(7, 2), LawUsageError);
    EXPECT_THROW((void)rb_prime_power_predicted(9, 2), LawUsageError);
}

TEST(LawParams, RangesRespectSideConditions) {
    const auto l1 = law_params_in_range(LawId::exact_4k1, 3, 30);
    std::vector<std::vector<std::uint64_t>> expected{{5}, {13}, {17}, {29}};
    EXPECT_EQ(l1, expected);
    for (const auto& t : law_params_in_range(LawId::prime_power_bound, 3, 1000)) {
        EXPECT_NO_THROW((void)check_law(LawId::prime_power_bound, t));
    }
    for (const auto& t : law_params_in_range(LawId::nh_product, 3, 500)) {
        const auto r = check_law(LawId::nh_product, t);
        EXPECT_LE(r.n, 500u);
    }
}
