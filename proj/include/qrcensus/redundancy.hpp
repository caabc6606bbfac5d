#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrcensus/modmath.hpp"

namespace qrc {

/// 1 <= b < a <= (n-1)/2 with a^2 = b^2 (mod n); b is the least such value.
struct CollisionPair {
    std::uint64_t n = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t shared_square = 0;
    std::uint64_t witness_low = 0;   // a - b
    std::uint64_t witness_high = 0;  // a + b

    friend bool operator==(const CollisionPair&, const CollisionPair&) = default;
};

struct Witness {
    std::uint64_t factor_low = 0;
    std::uint64_t factor_high = 0;
    std::uint64_t product = 0;
    bool divides = false;

    /// "n | product", e.g. "35 | 175".
    [[nodiscard]] std::string statement(std::uint64_t n) const;
};

/// Ascending by a. Values whose square is 0 never pair (they are zero-square
/// roots, not residues). Empty for primes.
[[nodiscard]] std::vector<CollisionPair> collision_pairs(OddModulus n);

/// { x in [1, n-1] : x^2 = 0 (mod n) }, ascending.
[[nodiscard]] std::vector<std::uint64_t> zero_square_roots(OddModulus n);

/// Recomputes (a - b)(a + b) and checks n divides it. Throws
/// ContractViolation if a^2 != b^2 (mod n) or the witness fields disagree.
[[nodiscard]] Witness witness(const CollisionPair& pair);

/// Square classes of x in [1, (n-1)/2] with nonzero square, each with at
/// least two members: the equivalence-class view of the same collisions.
struct SquareClass {
    std::uint64_t square = 0;
    std::vector<std::uint64_t> roots;  // ascending
};
[[nodiscard]] std::vector<SquareClass> square_classes(OddModulus n);

}  // namespace qrc
