#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrc {

/// Raised when a documented precondition turns out to be false at runtime
/// (e.g. a "prime" modulus that fails Euler's criterion).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Odd modulus n with 3 <= n < 2^62.
class OddModulus {
public:
    static constexpr std::uint64_t kCeiling = std::uint64_t{1} << 62;

    /// Throws std::invalid_argument for even, too small or too large values.
    explicit OddModulus(std::uint64_t n);

    [[nodiscard]] constexpr std::uint64_t value() const noexcept { return n_; }
    /// (n - 1) / 2, the last "small" value.
    [[nodiscard]] constexpr std::uint64_t half() const noexcept { return (n_ - 1) / 2; }

    friend constexpr bool operator==(OddModulus, OddModulus) = default;

private:
    std::uint64_t n_;
};

[[nodiscard]] bool is_valid_odd_modulus(std::uint64_t n) noexcept;

// Multiplication goes through a 128-bit intermediate, so any modulus
// representable in 64 bits works. The raw overloads accept any m >= 1.
[[nodiscard]] std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
[[nodiscard]] std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept;

[[nodiscard]] inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, OddModulus n) noexcept {
    return mul_mod(a, b, n.value());
}
[[nodiscard]] inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, OddModulus n) noexcept {
    return pow_mod(a, e, n.value());
}

/// Legendre symbol via Euler's criterion: a^((p-1)/2) mod p mapped to
/// {+1, -1, 0}. Negative a is reduced into [0, p) first.
///
/// p must be prime. Debug builds check this with is_prime(); every build
/// throws ContractViolation when the Euler power is outside {0, 1, p-1}.
[[nodiscard]] int legendre_euler(std::int64_t a, OddModulus p);

/// Exact primality for n < 2^64. Deterministic Miller-Rabin with the first
/// twelve prime bases (complete below 3.3e24), trial division below the cutoff.
[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

inline constexpr std::uint64_t kTrialDivisionCutoff = 1u << 16;

}  // namespace qrc
