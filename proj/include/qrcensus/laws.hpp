#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "qrcensus/modmath.hpp"

namespace qrc {

using Rational = boost::rational<std::int64_t>;

/// Which inequality stands in for "R_b(n) exceeds a quarter of n".
enum class ThresholdMode {
    strict_quarter,  // 4 R_b > n, the literal statement
    floor_geq,       // R_b >= floor(n / 4)
    corrected,       // 4 R_b >= n - 1
};

[[nodiscard]] std::string_view to_string(ThresholdMode mode) noexcept;
/// Accepts "strict", "floor", "corrected"; nullopt otherwise.
[[nodiscard]] std::optional<ThresholdMode> parse_threshold_mode(std::string_view text) noexcept;

[[nodiscard]] constexpr bool predicts_prime(std::uint64_t r_b, std::uint64_t n, ThresholdMode mode) noexcept {
    switch (mode) {
        case ThresholdMode::strict_quarter:
            return 4 * r_b > n;
        case ThresholdMode::floor_geq:
            return r_b >= n / 4;
        case ThresholdMode::corrected:
            return 4 * r_b >= n - 1;
    }
    return false;
}

struct Classification {
    std::uint64_t n = 0;
    ThresholdMode mode = ThresholdMode::corrected;
    std::uint64_t r_b = 0;
    bool predicted_prime = false;
    bool oracle_prime = false;
    bool agree = false;

    friend bool operator==(const Classification&, const Classification&) = default;
};

[[nodiscard]] Classification classify(OddModulus n, ThresholdMode mode = ThresholdMode::corrected);
/// Same verdict computed from an already known R_b.
[[nodiscard]] Classification classify_from_count(OddModulus n, std::uint64_t r_b, ThresholdMode mode);

enum class LawId {
    exact_4k1,            // L1  R_b(p) = (p-1)/4,                   p = 1 (mod 4)
    dirichlet_positive,   // L2  R_b(p) - N_b(p) > 0,                p = 3 (mod 4)
    leb_7mod8_sums,       // L3  sum R_b = sum N_b,                  p = 7 (mod 8)
    leb_7mod8_diff,       // L4  (sum N - sum R)/p = R_b - N_b,      p = 7 (mod 8)
    leb_3mod8_sums,       // L5  sum N - sum R = sum R_b - sum N_b,  p = 3 (mod 8)
    leb_3mod8_diff,       // L6  3(sum N - sum R)/p = R_b - N_b,     p = 3 (mod 8)
    sum_rb_7mod8,         // L7  sum R_b = (p-1)(p+1)/16,            p = 7 (mod 8)
    prime_power_bound,    // L8  R_b(p^k) < (p^k - 1)/4,             p = 3 (mod 4)
    product_inequality,   // L9  R_b(p^m q^k) < p R_b(p^(m-1) q^k),  p < q
    mod8_triangle,        // L10 products of the classes 3, 5, 7 mod 8
    nh_prime_power,       // A1  N_h(p^k) ~ p N_h(p^(k-1))
    nh_product,           // A2  N_h(p^m q^k) ~ p N_h(p^(m-1) q^k)
    rb_semiprime,         // A3  R_b(pq) ~ (R_b(p^2) + R_b(q^2))/4, and R_b(pq) < pq/4
};

inline constexpr LawId kAllLaws[] = {
    LawId::exact_4k1,      LawId::dirichlet_positive, LawId::leb_7mod8_sums, LawId::leb_7mod8_diff,
    LawId::leb_3mod8_sums, LawId::leb_3mod8_diff,     LawId::sum_rb_7mod8,   LawId::prime_power_bound,
    LawId::product_inequality, LawId::mod8_triangle,  LawId::nh_prime_power, LawId::nh_product,
    LawId::rb_semiprime,
};

/// Short identifier ("L1" .. "L10", "A1" .. "A3").
[[nodiscard]] std::string_view law_code(LawId id) noexcept;
/// Descriptive name, e.g. "L7_SUMRB_7MOD8".
[[nodiscard]] std::string_view law_name(LawId id) noexcept;
/// Accepts either the code or the name, case-insensitively.
[[nodiscard]] std::optional<LawId> parse_law(std::string_view text) noexcept;
/// Approximation laws report a relative error; they never gate pass/fail on it.
[[nodiscard]] bool is_approximation(LawId id) noexcept;

enum class Relation { equal, less, greater, approx };

[[nodiscard]] std::string_view to_string(Relation r) noexcept;

/// Thrown when parameters violate a law's primality or congruence side conditions.
class LawUsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LawReport {
    LawId law = LawId::exact_4k1;
    std::vector<std::uint64_t> params;
    std::uint64_t n = 0;  // the modulus the law is evaluated at
    Relation relation = Relation::equal;
    Rational lhs;
    Rational rhs;
    /// Exact laws always carry a verdict. A1/A2 carry none; A3 carries the
    /// verdict of its hard bound R_b(pq) < pq/4.
    std::optional<bool> holds;
    std::optional<Rational> rel_error;  // |lhs - rhs| / |rhs|, approximation laws only
    /// L5 only: whether the opposite orientation, sum R - sum N =
    /// sum R_b - sum N_b, also holds.
    std::optional<bool> printed_orientation_holds;
    std::string note;
};

/// Parameter arity: L1-L7 (p); L8, A1 (p, k); L9, A2 (p, q, m, k);
/// L10 (a, b); A3 (p, q).
[[nodiscard]] LawReport check_law(LawId id, const std::vector<std::uint64_t>& params);

/// Every parameter tuple of the law whose modulus lies in [lo, hi]. L10 has
/// no modulus and always yields its three class pairs.
[[nodiscard]] std::vector<std::vector<std::uint64_t>> law_params_in_range(LawId id, std::uint64_t lo,
                                                                          std::uint64_t hi);

/// R_b(p^m) from the closed recurrence with Q(p) = (p-1)/4:
/// R(0) = 0, R(1) = ceil(Q), R(m) = ceil(Q p^(m-1)) + R(m-2).
/// Defined for p = 3 and p = 1 (mod 4) primes; throws LawUsageError otherwise.
[[nodiscard]] std::uint64_t rb_prime_power_predicted(std::uint64_t p, unsigned m);

}  // namespace qrc
