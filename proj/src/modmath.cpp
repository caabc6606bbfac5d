#include "qrcensus/modmath.hpp"

#include <array>

namespace qrc {

bool is_valid_odd_modulus(std::uint64_t n) noexcept {
    return n >= 3 && n % 2 == 1 && n < OddModulus::kCeiling;
}

OddModulus::OddModulus(std::uint64_t n) : n_(n) {
    if (!is_valid_odd_modulus(n)) {
        throw std::invalid_argument("modulus must be odd with 3 <= n < 2^62, got " + std::to_string(n));
    }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
    if (m == 1) {
        return 0;
    }
    std::uint64_t result = 1;
    std::uint64_t base = a % m;
    while (e > 0) {
        if (e & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

namespace {

bool trial_division(std::uint64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t base, std::uint64_t odd_part, int twos) noexcept {
    std::uint64_t x = pow_mod(base % n, odd_part, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (int i = 1; i < twos; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < kTrialDivisionCutoff) {
        return trial_division(n);
    }
    if (n % 2 == 0) {
        return false;
    }
    static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t b : kBases) {
        if (n % b == 0) {
            return false;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t b : kBases) {
        if (!strong_probable_prime(n, b, d, s)) {
            return false;
        }
    }
    return true;
}

int legendre_euler(std::int64_t a, OddModulus p) {
#ifndef NDEBUG
    if (!is_prime(p.value())) {
        throw ContractViolation("legendre_euler: modulus " + std::to_string(p.value()) + " is not prime");
    }
#endif
    const auto m = static_cast<std::int64_t>(p.value());
    std::int64_t r = a % m;
    if (r < 0) {
        r += m;
    }
    const std::uint64_t power = pow_mod(static_cast<std::uint64_t>(r), p.half(), p);
    if (power == 0) {
        return 0;
    }
    if (power == 1) {
        return 1;
    }
    if (power == p.value() - 1) {
        return -1;
    }
    throw ContractViolation("legendre_euler: Euler power " + std::to_string(power) + " outside {0, 1, p-1}; " +
                            std::to_string(p.value()) + " is not prime");
}

}  // namespace qrc
