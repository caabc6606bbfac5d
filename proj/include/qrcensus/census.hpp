#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrcensus/modmath.hpp"

namespace qrc {

/// How x^2 mod n is produced while enumerating x = 1 .. (n-1)/2.
enum class SquareStrategy {
    naive,        // mul_mod(x, x, n)
    incremental,  // s += 2x - 1, then one conditional subtraction of n
};

struct ResidueDetail {
    std::uint64_t y;
    std::uint64_t smallest_root;

    friend bool operator==(const ResidueDetail&, const ResidueDetail&) = default;
};

/// Small/large residue and non-residue counts and sums for one modulus.
///
/// "Small" is 1 <= y <= (n-1)/2, "large" is (n-1)/2 < y <= n-1. Zero is never
/// a residue; x with x^2 = 0 (mod n) are kept separately in zero_square_roots.
struct ResidueCensus {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> residues;  // ascending, nonzero
    std::uint64_t r_b = 0;
    std::uint64_t n_b = 0;
    std::uint64_t r_h = 0;
    std::uint64_t n_h = 0;
    std::uint64_t sum_r = 0;
    std::uint64_t sum_n = 0;
    std::uint64_t sum_rb = 0;
    std::uint64_t sum_nb = 0;
    std::uint64_t sum_rh = 0;
    std::uint64_t sum_nh = 0;
    std::vector<std::uint64_t> zero_square_roots;  // x in [1, (n-1)/2]
    std::vector<ResidueDetail> details;            // filled only on request

    friend bool operator==(const ResidueCensus&, const ResidueCensus&) = default;
};

struct CensusOptions {
    bool want_details = false;
    SquareStrategy strategy = SquareStrategy::incremental;
};

/// Largest modulus accepted by the full census (all sums fit in 64 bits).
inline constexpr std::uint64_t kCensusCeiling = std::uint64_t{1} << 32;

/// Throws std::out_of_range when n >= kCensusCeiling.
[[nodiscard]] ResidueCensus census(OddModulus n, CensusOptions options = {});

/// { x^2 mod n : 1 <= x <= (n-1)/2 } without 0, ascending.
[[nodiscard]] std::vector<std::uint64_t> quadratic_residue_set(OddModulus n);

/// Least x >= 1 with x^2 = y (mod n); nullopt when y is not a residue.
[[nodiscard]] std::optional<std::uint64_t> smallest_sqrt(std::uint64_t y, OddModulus n);

[[nodiscard]] std::uint64_t n_h(OddModulus n);

/// R_b(n) alone. Uses a ((n-1)/2 + 1)-bit scratch buffer that callers may
/// reuse across moduli; this is the hot path of the hypothesis sweep.
[[nodiscard]] std::uint64_t count_small_residues(OddModulus n, std::vector<std::uint64_t>& scratch,
                                                 SquareStrategy strategy = SquareStrategy::incremental);
[[nodiscard]] std::uint64_t count_small_residues(OddModulus n);

}  // namespace qrc
