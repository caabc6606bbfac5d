#include "qrcensus/redundancy.hpp"

#include <map>

#include "qrcensus/census.hpp"

namespace qrc {

std::string Witness::statement(std::uint64_t n) const {
    return std::to_string(n) + " | " + std::to_string(product);
}

std::vector<CollisionPair> collision_pairs(OddModulus modulus) {
    if (modulus.value() >= kCensusCeiling) {
        throw std::out_of_range("collision_pairs supports n < 2^32");
    }
    const std::uint64_t n = modulus.value();
    const std::uint64_t h = modulus.half();
    std::vector<std::uint32_t> least_root(n, 0);
    std::vector<CollisionPair> pairs;
    for (std::uint64_t a = 1; a <= h; ++a) {
        const std::uint64_t s = mul_mod(a, a, n);
        if (s == 0) {
            continue;
        }
        if (least_root[s] == 0) {
            least_root[s] = static_cast<std::uint32_t>(a);
            continue;
        }
        const std::uint64_t b = least_root[s];
        pairs.push_back({n, a, b, s, a - b, a + b});
    }
    return pairs;
}

std::vector<std::uint64_t> zero_square_roots(OddModulus modulus) {
    const std::uint64_t n = modulus.value();
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 1; x < n; ++x) {
        if (mul_mod(x, x, n) == 0) {
            roots.push_back(x);
        }
    }
    return roots;
}

Witness witness(const CollisionPair& pair) {
    const OddModulus modulus(pair.n);
    const std::uint64_t n = pair.n;
    if (!(pair.b >= 1 && pair.b < pair.a && pair.a <= modulus.half())) {
        throw ContractViolation("collision pair out of range");
    }
    if (mul_mod(pair.a, pair.a, n) != mul_mod(pair.b, pair.b, n)) {
        throw ContractViolation("collision pair (" + std::to_string(pair.a) + "," + std::to_string(pair.b) +
                                ") does not share a square mod " + std::to_string(n));
    }
    if (pair.witness_low != pair.a - pair.b || pair.witness_high != pair.a + pair.b) {
        throw ContractViolation("collision pair carries inconsistent witness factors");
    }
    Witness w;
    w.factor_low = pair.a - pair.b;
    w.factor_high = pair.a + pair.b;
    w.product = w.factor_low * w.factor_high;  // a < n/2 < 2^31 for census-sized n
    w.divides = mul_mod(w.factor_low % n, w.factor_high % n, n) == 0;
    return w;
}

std::vector<SquareClass> square_classes(OddModulus modulus) {
    const std::uint64_t n = modulus.value();
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_square;
    for (std::uint64_t x = 1; x <= modulus.half(); ++x) {
        const std::uint64_t s = mul_mod(x, x, n);
        if (s != 0) {
            by_square[s].push_back(x);
        }
    }
    std::vector<SquareClass> out;
    for (auto& [s, roots] : by_square) {
        if (roots.size() >= 2) {
            out.push_back({s, std::move(roots)});
        }
    }
    return out;
}

}  // namespace qrc
