#include <gtest/gtest.h>

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrcensus/modmath.hpp"

using boost::multiprecision::cpp_int;
using namespace qrc;

namespace {

std::uint64_t big_mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    cpp_int r = cpp_int(a) * cpp_int(b) % cpp_int(m);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t big_pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    return static_cast<std::uint64_t>(boost::multiprecision::powm(cpp_int(a), cpp_int(e), cpp_int(m)));
}

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST(OddModulus, RejectsEvenSmallAndHuge) {
    EXPECT_THROW(OddModulus(0), std::invalid_argument);
    EXPECT_THROW(OddModulus(1), std::invalid_argument);
    EXPECT_THROW(OddModulus(2), std::invalid_argument);
    EXPECT_THROW(OddModulus(10), std::invalid_argument);
    EXPECT_THROW(OddModulus(OddModulus::kCeiling + 1), std::invalid_argument);
    EXPECT_NO_THROW(OddModulus(3));
    EXPECT_NO_THROW(OddModulus(OddModulus::kCeiling - 1));
    EXPECT_EQ(OddModulus(51).half(), 25u);
}

TEST(MulMod, SmallExamples) {
    EXPECT_EQ(mul_mod(3, 4, OddModulus(5)), 2u);
    for (std::uint64_t a = 0; a < 97; ++a) EXPECT_EQ(mul_mod(a, 1, OddModulus(97)), a);
}

TEST(MulMod, MersenneAgainstBigInteger) {
    const std::uint64_t m = (std::uint64_t{1} << 61) - 1;
    const std::uint64_t a = std::uint64_t{1} << 40;
    const std::uint64_t expected = big_mul_mod(a, a, m);
    EXPECT_EQ(expected, 524288u);
    EXPECT_EQ(mul_mod(a, a, OddModulus(m)), expected);
}

TEST(MulMod, RandomNearCeilingAgainstBigInteger) {
    std::mt19937_64 rng(20261015);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t m = (rng() % (OddModulus::kCeiling - 3)) | 1;
        if (m < 3) continue;
        const std::uint64_t a = rng() % m, b = rng() % m;
        ASSERT_EQ(mul_mod(a, b, OddModulus(m)), big_mul_mod(a, b, m)) << a << ' ' << b << ' ' << m;
    }
}

TEST(PowMod, Conventions) {
    EXPECT_EQ(pow_mod(0, 0, OddModulus(7)), 1u);
    EXPECT_EQ(pow_mod(5, 0, OddModulus(7)), 1u);
    EXPECT_EQ(pow_mod(2, 10, OddModulus(1001)), 1024u % 1001);
    EXPECT_EQ(pow_mod(3, 6, OddModulus(7)), 1u);
    EXPECT_EQ(pow_mod(4, 5, 1), 0u);
    EXPECT_EQ(pow_mod(2, 10, 1000), 24u);
}

TEST(PowMod, RandomAgainstBigInteger) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t m = (rng() % (OddModulus::kCeiling - 3)) | 1;
        if (m < 3) continue;
        const std::uint64_t a = rng() % m, e = rng();
        ASSERT_EQ(pow_mod(a, e, OddModulus(m)), big_pow_mod(a, e, m));
    }
}

TEST(Legendre, SmallPrimes) {
    EXPECT_EQ(legendre_euler(2, OddModulus(7)), 1);
    EXPECT_EQ(legendre_euler(3, OddModulus(7)), -1);
    EXPECT_EQ(legendre_euler(0, OddModulus(7)), 0);
    EXPECT_EQ(legendre_euler(14, OddModulus(7)), 0);
    EXPECT_EQ(legendre_euler(-1, OddModulus(7)), -1);
    EXPECT_EQ(legendre_euler(-1, OddModulus(13)), 1);
}

TEST(Legendre, MatchesSquareSetForPrimesBelow2000) {
    for (std::uint64_t p = 3; p < 2000; p += 2) {
        if (!trial_division_prime(p)) continue;
        std::vector<bool> square(p, false);
        for (std::uint64_t x = 1; x < p; ++x) square[x * x % p] = true;
        for (std::uint64_t a = 1; a < p; ++a) {
            ASSERT_EQ(legendre_euler(static_cast<std::int64_t>(a), OddModulus(p)), square[a] ? 1 : -1) << a << ' ' << p;
        }
    }
}

TEST(Legendre, CompositeModulusIsAContractViolation) {
    // 2^((15-1)/2) mod 15 = 8, outside {0, 1, 14}.
    EXPECT_THROW((void)legendre_euler(2, OddModulus(15)), ContractViolation);
}

TEST(IsPrime, MatchesTrialDivisionBelow200000) {
    for (std::uint64_t n = 0; n < 200000; ++n) {
        ASSERT_EQ(is_prime(n), trial_division_prime(n)) << n;
    }
}

TEST(IsPrime, LargeKnownValues) {
    EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
    EXPECT_TRUE(is_prime(18446744073709551557ull));
    EXPECT_FALSE(is_prime(18446744073709551615ull));
    EXPECT_FALSE(is_prime(3215031751ull));          // strong pseudoprime to 2, 3, 5, 7
    EXPECT_FALSE(is_prime(3825123056546413051ull)); // strong pseudoprime to bases up to 23
    EXPECT_FALSE(is_prime(4294967297ull));          // 641 * 6700417
    EXPECT_TRUE(is_prime(4294967291ull));
}

TEST(IsPrime, RandomSemiprimesAgainstBigInteger) {
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 200) {
        const std::uint64_t p = (rng() >> 33) | 1, q = (rng() >> 33) | 1;
        if (!is_prime(p) || !is_prime(q)) continue;
        EXPECT_FALSE(is_prime(p * q));
        ++checked;
    }
}
