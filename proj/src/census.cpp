#include "qrcensus/census.hpp"

#include <string>

namespace qrc {

namespace {

class BitSet {
public:
    explicit BitSet(std::vector<std::uint64_t>& words, std::uint64_t bits) : words_(words) {
        words_.assign(bits / 64 + 1, 0);
    }

    /// Returns true when the bit was previously clear.
    bool set(std::uint64_t i) noexcept {
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        const bool fresh = (w & mask) == 0;
        w |= mask;
        return fresh;
    }

    [[nodiscard]] bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

private:
    std::vector<std::uint64_t>& words_;
};

/// Calls visit(x, x^2 mod n) for x = 1 .. (n-1)/2.
template <typename Visit>
void for_each_square(OddModulus modulus, SquareStrategy strategy, Visit&& visit) {
    const std::uint64_t n = modulus.value();
    const std::uint64_t h = modulus.half();
    if (strategy == SquareStrategy::naive) {
        for (std::uint64_t x = 1; x <= h; ++x) {
            visit(x, mul_mod(x, x, n));
        }
        return;
    }
    // s < n and 2x - 1 < n, so s + 2x - 1 < 2n < 2^63.
    std::uint64_t s = 0;
    for (std::uint64_t x = 1; x <= h; ++x) {
        s += 2 * x - 1;
        if (s >= n) {
            s -= n;
        }
        visit(x, s);
    }
}

void check_census_range(OddModulus n) {
    if (n.value() >= kCensusCeiling) {
        throw std::out_of_range("census supports n < 2^32, got " + std::to_string(n.value()));
    }
}

}  // namespace

ResidueCensus census(OddModulus modulus, CensusOptions options) {
    check_census_range(modulus);
    const std::uint64_t n = modulus.value();
    const std::uint64_t h = modulus.half();

    std::vector<std::uint64_t> words;
    BitSet seen(words, n);
    std::vector<std::uint32_t> first_root;
    if (options.want_details) {
        first_root.assign(h + 1, 0);
    }

    ResidueCensus c;
    c.n = n;
    for_each_square(modulus, options.strategy, [&](std::uint64_t x, std::uint64_t s) {
        if (s == 0) {
            c.zero_square_roots.push_back(x);
            return;
        }
        if (seen.set(s) && options.want_details && s <= h) {
            first_root[s] = static_cast<std::uint32_t>(x);
        }
    });

    for (std::uint64_t y = 1; y < n; ++y) {
        const bool residue = seen.test(y);
        const bool small = y <= h;
        if (residue) {
            c.residues.push_back(y);
            c.sum_r += y;
            if (small) {
                ++c.r_b;
                c.sum_rb += y;
            } else {
                ++c.r_h;
                c.sum_rh += y;
            }
        } else {
            c.sum_n += y;
            if (small) {
                ++c.n_b;
                c.sum_nb += y;
            } else {
                ++c.n_h;
                c.sum_nh += y;
            }
        }
    }

    if (options.want_details) {
        // Large residues have their least root in [1, (n-1)/2] as well, but the
        // detail listing covers the small half only.
        for (std::uint64_t y = 1; y <= h; ++y) {
            if (first_root[y] != 0) {
                c.details.push_back({y, first_root[y]});
            }
        }
    }
    return c;
}

std::vector<std::uint64_t> quadratic_residue_set(OddModulus n) {
    return census(n).residues;
}

std::optional<std::uint64_t> smallest_sqrt(std::uint64_t y, OddModulus modulus) {
    const std::uint64_t n = modulus.value();
    if (y == 0 || y >= n) {
        return std::nullopt;
    }
    // x and n - x share a square, so the least root is at most (n-1)/2.
    std::uint64_t s = 0;
    for (std::uint64_t x = 1; x <= modulus.half(); ++x) {
        s += 2 * x - 1;
        if (s >= n) {
            s -= n;
        }
        if (s == y) {
            return x;
        }
    }
    return std::nullopt;
}

std::uint64_t n_h(OddModulus n) {
    return census(n).n_h;
}

std::uint64_t count_small_residues(OddModulus modulus, std::vector<std::uint64_t>& scratch, SquareStrategy strategy) {
    check_census_range(modulus);
    const std::uint64_t h = modulus.half();
    BitSet seen(scratch, h + 1);
    std::uint64_t count = 0;
    for_each_square(modulus, strategy, [&](std::uint64_t, std::uint64_t s) {
        if (s != 0 && s <= h && seen.set(s)) {
            ++count;
        }
    });
    return count;
}

std::uint64_t count_small_residues(OddModulus n) {
    std::vector<std::uint64_t> scratch;
    return count_small_residues(n, scratch);
}

}  // namespace qrc
