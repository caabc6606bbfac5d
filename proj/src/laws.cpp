#include "qrcensus/laws.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "qrcensus/census.hpp"

namespace qrc {

std::string_view to_string(ThresholdMode mode) noexcept {
    switch (mode) {
        case ThresholdMode::strict_quarter:
            return "strict";
        case ThresholdMode::floor_geq:
            return "floor";
        case ThresholdMode::corrected:
            return "corrected";
    }
    return "?";
}

std::optional<ThresholdMode> parse_threshold_mode(std::string_view text) noexcept {
    if (text == "strict") return ThresholdMode::strict_quarter;
    if (text == "floor") return ThresholdMode::floor_geq;
    if (text == "corrected") return ThresholdMode::corrected;
    return std::nullopt;
}

Classification classify_from_count(OddModulus n, std::uint64_t r_b, ThresholdMode mode) {
    Classification c;
    c.n = n.value();
    c.mode = mode;
    c.r_b = r_b;
    c.predicted_prime = predicts_prime(r_b, n.value(), mode);
    c.oracle_prime = is_prime(n.value());
    c.agree = c.predicted_prime == c.oracle_prime;
    return c;
}

Classification classify(OddModulus n, ThresholdMode mode) {
    return classify_from_count(n, count_small_residues(n), mode);
}

namespace {

struct LawInfo {
    LawId id;
    std::string_view code;
    std::string_view name;
};

constexpr std::array<LawInfo, 13> kLawInfo{{
    {LawId::exact_4k1, "L1", "L1_EXACT_4K1"},
    {LawId::dirichlet_positive, "L2", "L2_DIRICHLET_POS"},
    {LawId::leb_7mod8_sums, "L3", "L3_LEB_7MOD8_SUMS"},
    {LawId::leb_7mod8_diff, "L4", "L4_LEB_7MOD8_DIFF"},
    {LawId::leb_3mod8_sums, "L5", "L5_LEB_3MOD8_SUMS"},
    {LawId::leb_3mod8_diff, "L6", "L6_LEB_3MOD8_DIFF"},
    {LawId::sum_rb_7mod8, "L7", "L7_SUMRB_7MOD8"},
    {LawId::prime_power_bound, "L8", "L8_PRIMEPOWER_BOUND"},
    {LawId::product_inequality, "L9", "L9_PRODUCT_INEQ"},
    {LawId::mod8_triangle, "L10", "L10_MOD8_TRIANGLE"},
    {LawId::nh_prime_power, "A1", "A1_NH_PRIMEPOWER"},
    {LawId::nh_product, "A2", "A2_NH_PRODUCT"},
    {LawId::rb_semiprime, "A3", "A3_RB_SEMIPRIME"},
}};

const LawInfo& info(LawId id) {
    return kLawInfo[static_cast<std::size_t>(id)];
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
           });
}

std::string describe(LawId id, const std::vector<std::uint64_t>& params) {
    std::string s(law_code(id));
    s += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(params[i]);
    }
    return s + ')';
}

[[noreturn]] void usage(LawId id, const std::vector<std::uint64_t>& params, std::string_view why) {
    throw LawUsageError(describe(id, params) + ": " + std::string(why));
}

/// base^exp, or nullopt when the result reaches the census ceiling.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > (kCensusCeiling - 1) / base) {
            return std::nullopt;
        }
        r *= base;
    }
    return r;
}

std::uint64_t power_or_throw(LawId id, const std::vector<std::uint64_t>& params, std::uint64_t base, std::uint64_t exp) {
    auto v = checked_pow(base, static_cast<unsigned>(exp));
    if (!v || exp > 64) {
        usage(id, params, "modulus exceeds the census ceiling 2^32");
    }
    return *v;
}

std::uint64_t product_or_throw(LawId id, const std::vector<std::uint64_t>& params, std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > (kCensusCeiling - 1) / b) {
        usage(id, params, "modulus exceeds the census ceiling 2^32");
    }
    return a * b;
}

void require_arity(LawId id, const std::vector<std::uint64_t>& params, std::size_t n) {
    if (params.size() != n) {
        usage(id, params, "expects " + std::to_string(n) + " parameter(s)");
    }
}

void require_odd_prime(LawId id, const std::vector<std::uint64_t>& params, std::uint64_t p) {
    if (p < 3 || !is_prime(p)) {
        usage(id, params, std::to_string(p) + " is not an odd prime");
    }
}

void require_class(LawId id, const std::vector<std::uint64_t>& params, std::uint64_t p, std::uint64_t modulus,
                   std::uint64_t residue) {
    if (p % modulus != residue) {
        usage(id, params,
              std::to_string(p) + " is not " + std::to_string(residue) + " (mod " + std::to_string(modulus) + ")");
    }
}

Rational as_rational(std::uint64_t v) {
    return Rational(static_cast<std::int64_t>(v));
}

std::int64_t as_signed(std::uint64_t v) {
    return static_cast<std::int64_t>(v);
}

Rational relative_error(const Rational& lhs, const Rational& rhs) {
    if (rhs.numerator() == 0) {
        return Rational(0);
    }
    return boost::abs(lhs - rhs) / boost::abs(rhs);
}

LawReport base_report(LawId id, const std::vector<std::uint64_t>& params, std::uint64_t n, Relation relation) {
    LawReport r;
    r.law = id;
    r.params = params;
    r.n = n;
    r.relation = relation;
    return r;
}

LawReport check_prime_law(LawId id, const std::vector<std::uint64_t>& params) {
    require_arity(id, params, 1);
    const std::uint64_t p = params[0];
    require_odd_prime(id, params, p);
    switch (id) {
        case LawId::exact_4k1:
            require_class(id, params, p, 4, 1);
            break;
        case LawId::dirichlet_positive:
            require_class(id, params, p, 4, 3);
            break;
        case LawId::leb_7mod8_sums:
        case LawId::leb_7mod8_diff:
        case LawId::sum_rb_7mod8:
            require_class(id, params, p, 8, 7);
            break;
        default:
            require_class(id, params, p, 8, 3);
            break;
    }
    if (p >= kCensusCeiling) {
        usage(id, params, "modulus exceeds the census ceiling 2^32");
    }

    const ResidueCensus c = census(OddModulus(p));
    const std::int64_t small_diff = as_signed(c.r_b) - as_signed(c.n_b);
    const std::int64_t big_sum_diff = as_signed(c.sum_n) - as_signed(c.sum_r);
    const std::int64_t sp = as_signed(p);

    LawReport r;
    switch (id) {
        case LawId::exact_4k1:
            r = base_report(id, params, p, Relation::equal);
            r.lhs = as_rational(c.r_b);
            r.rhs = Rational(sp - 1, 4);
            break;
        case LawId::dirichlet_positive:
            r = base_report(id, params, p, Relation::greater);
            r.lhs = Rational(small_diff);
            r.rhs = Rational(0);
            break;
        case LawId::leb_7mod8_sums:
            r = base_report(id, params, p, Relation::equal);
            r.lhs = as_rational(c.sum_rb);
            r.rhs = as_rational(c.sum_nb);
            break;
        case LawId::leb_7mod8_diff:
        case LawId::leb_3mod8_diff: {
            const std::int64_t factor = id == LawId::leb_3mod8_diff ? 3 : 1;
            r = base_report(id, params, p, Relation::equal);
            r.lhs = Rational(factor * big_sum_diff, sp);
            r.rhs = Rational(small_diff);
            if ((factor * big_sum_diff) % sp != 0) {
                r.note = "p does not divide the numerator";
                r.holds = false;
            }
            break;
        }
        case LawId::leb_3mod8_sums: {
            r = base_report(id, params, p, Relation::equal);
            const std::int64_t small_sum_diff = as_signed(c.sum_rb) - as_signed(c.sum_nb);
            r.lhs = Rational(big_sum_diff);
            r.rhs = Rational(small_sum_diff);
            r.printed_orientation_holds = -big_sum_diff == small_sum_diff;
            break;
        }
        case LawId::sum_rb_7mod8:
            r = base_report(id, params, p, Relation::equal);
            r.lhs = as_rational(c.sum_rb);
            r.rhs = Rational((sp - 1) * (sp + 1) / 16);
            break;
        default:
            break;
    }
    return r;
}

void finish_verdict(LawReport& r) {
    if (r.holds.has_value()) {
        return;  // already decided (failed divisibility)
    }
    switch (r.relation) {
        case Relation::equal:
            r.holds = r.lhs == r.rhs;
            break;
        case Relation::less:
            r.holds = r.lhs < r.rhs;
            break;
        case Relation::greater:
            r.holds = r.lhs > r.rhs;
            break;
        case Relation::approx:
            break;
    }
}

std::uint64_t rb_of(std::uint64_t n) {
    return count_small_residues(OddModulus(n));
}

std::uint64_t nh_of(std::uint64_t n) {
    return n_h(OddModulus(n));
}

}  // namespace

std::string_view law_code(LawId id) noexcept {
    return info(id).code;
}

std::string_view law_name(LawId id) noexcept {
    return info(id).name;
}

std::optional<LawId> parse_law(std::string_view text) noexcept {
    for (const auto& li : kLawInfo) {
        if (iequals(text, li.code) || iequals(text, li.name)) {
            return li.id;
        }
    }
    return std::nullopt;
}

bool is_approximation(LawId id) noexcept {
    return id == LawId::nh_prime_power || id == LawId::nh_product || id == LawId::rb_semiprime;
}

std::string_view to_string(Relation r) noexcept {
    switch (r) {
        case Relation::equal:
            return "=";
        case Relation::less:
            return "<";
        case Relation::greater:
            return ">";
        case Relation::approx:
            return "~";
    }
    return "?";
}

LawReport check_law(LawId id, const std::vector<std::uint64_t>& params) {
    LawReport r;
    switch (id) {
        case LawId::exact_4k1:
        case LawId::dirichlet_positive:
        case LawId::leb_7mod8_sums:
        case LawId::leb_7mod8_diff:
        case LawId::leb_3mod8_sums:
        case LawId::leb_3mod8_diff:
        case LawId::sum_rb_7mod8:
            r = check_prime_law(id, params);
            break;

        case LawId::prime_power_bound: {
            require_arity(id, params, 2);
            const auto [p, k] = std::pair{params[0], params[1]};
            require_odd_prime(id, params, p);
            require_class(id, params, p, 4, 3);
            // k = 1 contradicts L2; R_b(9) = 8/4 exactly, so 3 starts at k = 3.
            const std::uint64_t min_k = p == 3 ? 3 : 2;
            if (k < min_k) {
                usage(id, params, "requires k >= " + std::to_string(min_k));
            }
            const std::uint64_t n = power_or_throw(id, params, p, k);
            r = base_report(id, params, n, Relation::less);
            r.lhs = as_rational(rb_of(n));
            r.rhs = Rational(as_signed(n) - 1, 4);
            break;
        }

        case LawId::product_inequality:
        case LawId::nh_product: {
            require_arity(id, params, 4);
            const std::uint64_t p = params[0], q = params[1], m = params[2], k = params[3];
            require_odd_prime(id, params, p);
            require_odd_prime(id, params, q);
            if (p >= q) usage(id, params, "requires p < q");
            if (m < 1 || k < 1) usage(id, params, "requires m >= 1 and k >= 1");
            const std::uint64_t qk = power_or_throw(id, params, q, k);
            const std::uint64_t lower = product_or_throw(id, params, power_or_throw(id, params, p, m - 1), qk);
            const std::uint64_t n = product_or_throw(id, params, lower, p);
            const bool count_rb = id == LawId::product_inequality;
            r = base_report(id, params, n, count_rb ? Relation::less : Relation::approx);
            r.lhs = as_rational(count_rb ? rb_of(n) : nh_of(n));
            r.rhs = as_rational(p * (count_rb ? rb_of(lower) : nh_of(lower)));
            if (!count_rb) {
                r.rel_error = relative_error(r.lhs, r.rhs);
            }
            break;
        }

        case LawId::mod8_triangle: {
            require_arity(id, params, 2);
            const std::uint64_t a = params[0] % 8, b = params[1] % 8;
            const auto is_class = [](std::uint64_t c) { return c == 3 || c == 5 || c == 7; };
            if (!is_class(a) || !is_class(b) || a == b) {
                usage(id, params, "requires two distinct classes among 3, 5, 7 (mod 8)");
            }
            r = base_report(id, params, 8, Relation::equal);
            r.lhs = as_rational(mul_mod(params[0] % 8, params[1] % 8, 8));
            r.rhs = as_rational(15 - a - b);  // the remaining class of {3, 5, 7}
            break;
        }

        case LawId::nh_prime_power: {
            require_arity(id, params, 2);
            const std::uint64_t p = params[0], k = params[1];
            require_odd_prime(id, params, p);
            if (k < 2) usage(id, params, "requires k >= 2");
            const std::uint64_t n = power_or_throw(id, params, p, k);
            r = base_report(id, params, n, Relation::approx);
            r.lhs = as_rational(nh_of(n));
            r.rhs = as_rational(p * nh_of(n / p));
            r.rel_error = relative_error(r.lhs, r.rhs);
            break;
        }

        case LawId::rb_semiprime: {
            require_arity(id, params, 2);
            const std::uint64_t p = params[0], q = params[1];
            require_odd_prime(id, params, p);
            require_odd_prime(id, params, q);
            if (p >= q) usage(id, params, "requires p < q");
            const std::uint64_t n = product_or_throw(id, params, p, q);
            const std::uint64_t q2 = product_or_throw(id, params, q, q);
            r = base_report(id, params, n, Relation::approx);
            const std::uint64_t rb = rb_of(n);
            r.lhs = as_rational(rb);
            r.rhs = Rational(as_signed(rb_of(p * p) + rb_of(q2)), 4);
            r.rel_error = relative_error(r.lhs, r.rhs);
            r.holds = 4 * rb < n;
            r.note = "hard bound R_b(pq) < pq/4";
            break;
        }
    }
    finish_verdict(r);
    return r;
}

namespace {

std::vector<std::uint64_t> odd_primes_upto(std::uint64_t hi) {
    std::vector<std::uint64_t> primes;
    if (hi < 3) {
        return primes;
    }
    std::vector<bool> composite(hi + 1, false);
    for (std::uint64_t i = 3; i <= hi; i += 2) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= hi; j += 2 * i) {
            composite[j] = true;
        }
    }
    return primes;
}

}  // namespace

std::vector<std::vector<std::uint64_t>> law_params_in_range(LawId id, std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::vector<std::uint64_t>> out;
    if (id == LawId::mod8_triangle) {
        out = {{3, 7}, {3, 5}, {5, 7}};
        return out;
    }
    hi = std::min(hi, kCensusCeiling - 1);
    if (hi < 3 || lo > hi) {
        return out;
    }
    const auto in_range = [&](std::uint64_t n) { return n >= lo && n <= hi; };

    switch (id) {
        case LawId::exact_4k1:
        case LawId::dirichlet_positive:
        case LawId::leb_7mod8_sums:
        case LawId::leb_7mod8_diff:
        case LawId::leb_3mod8_sums:
        case LawId::leb_3mod8_diff:
        case LawId::sum_rb_7mod8: {
            for (std::uint64_t p : odd_primes_upto(hi)) {
                if (!in_range(p)) continue;
                const bool ok = [&] {
                    switch (id) {
                        case LawId::exact_4k1: return p % 4 == 1;
                        case LawId::dirichlet_positive: return p % 4 == 3;
                        case LawId::leb_3mod8_sums:
                        case LawId::leb_3mod8_diff: return p % 8 == 3;
                        default: return p % 8 == 7;
                    }
                }();
                if (ok) out.push_back({p});
            }
            break;
        }
        case LawId::prime_power_bound:
        case LawId::nh_prime_power: {
            for (std::uint64_t p : odd_primes_upto(hi)) {
                if (p * p > hi) break;
                if (id == LawId::prime_power_bound && p % 4 != 3) continue;
                const std::uint64_t min_k = id == LawId::prime_power_bound && p == 3 ? 3 : 2;
                std::uint64_t pk = p;
                for (std::uint64_t k = 2; pk <= hi / p; ++k) {
                    pk *= p;
                    if (k >= min_k && in_range(pk)) out.push_back({p, k});
                }
            }
            break;
        }
        case LawId::product_inequality:
        case LawId::nh_product: {
            const auto primes = odd_primes_upto(hi / 3);
            for (std::size_t i = 0; i < primes.size(); ++i) {
                const std::uint64_t p = primes[i];
                for (std::size_t j = i + 1; j < primes.size() && p * primes[j] <= hi; ++j) {
                    const std::uint64_t q = primes[j];
                    for (std::uint64_t m = 1, pm = p; pm * q <= hi; ++m, pm *= p) {
                        for (std::uint64_t k = 1, qk = q; pm * qk <= hi; ++k) {
                            if (in_range(pm * qk)) out.push_back({p, q, m, k});
                            if (qk > hi / q) break;
                            qk *= q;
                        }
                        if (pm > hi / p) break;
                    }
                }
            }
            break;
        }
        case LawId::rb_semiprime: {
            const auto primes = odd_primes_upto(hi / 3);
            for (std::size_t i = 0; i < primes.size(); ++i) {
                for (std::size_t j = i + 1; j < primes.size() && primes[i] * primes[j] <= hi; ++j) {
                    if (in_range(primes[i] * primes[j])) out.push_back({primes[i], primes[j]});
                }
            }
            break;
        }
        case LawId::mod8_triangle:
            break;
    }
    return out;
}

std::uint64_t rb_prime_power_predicted(std::uint64_t p, unsigned m) {
    if (!(p == 3 || (p % 4 == 1 && is_prime(p)))) {
        throw LawUsageError("rb_prime_power_predicted: " + std::to_string(p) +
                            " is neither 3 nor a prime = 1 (mod 4)");
    }
    if (!checked_pow(p, m)) {
        throw std::overflow_error("rb_prime_power_predicted: p^m too large");
    }
    // ceil(Q p^(i-1)) with Q = (p-1)/4; exact in integers since (p-1) p^(i-1) < p^m.
    const auto step = [p](unsigned i) {
        std::uint64_t t = p - 1;
        for (unsigned j = 1; j < i; ++j) t *= p;
        return (t + 3) / 4;
    };
    std::vector<std::uint64_t> r(m + 1, 0);
    for (unsigned i = 1; i <= m; ++i) {
        r[i] = step(i) + (i >= 2 ? r[i - 2] : 0);
    }
    return r[m];
}

}  // namespace qrc
