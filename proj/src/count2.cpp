#include "commucount/count2.hpp"

#include <cmath>

namespace commucount {

namespace {

/// Closed form of the two-sided weighted sum for |u| = a, |v| = b:
/// 2 sum_{z=1}^{Z} (c - z a)(c - z b), Z = floor(2N / max(a, b)), c = 2N+1.
u128 weighted_sum_u128(std::int64_t n, std::int64_t a, std::int64_t b) {
    const std::int64_t m = std::max(a, b);
    const auto z = static_cast<u128>((2 * n) / m);
    const auto c = static_cast<u128>(2 * n + 1);
    const u128 s1 = z * (z + 1) / 2;
    const u128 s2 = z * (z + 1) * (2 * z + 1) / 6;
    // c(a+b) s1 <= z c^2 + ab s2, so the difference is nonnegative.
    return 2 * (z * c * c + static_cast<u128>(a) * static_cast<u128>(b) * s2 -
                c * static_cast<u128>(a + b) * s1);
}

struct SplitSums {
    u128 degenerate = 0;
    u128 nondegenerate = 0;
};

/// Adds the contribution of `multiplicity` directions sharing (|u|, |v|).
void add_direction(SplitSums& acc, std::int64_t n, std::int64_t a, std::int64_t b,
                   std::uint64_t multiplicity) {
    const std::int64_t m = std::max(a, b);
    const auto lines = static_cast<u128>(2 * (n / m));
    if (lines == 0) return;
    const auto c = static_cast<u128>(2 * n + 1);
    // Weight of the difference vector: D = 0 plus all nonzero multiples.
    const u128 weight = (c * c + weighted_sum_u128(n, a, b)) * multiplicity;
    // (v2, v3) on the line, not both zero: exactly one zero (2 n_p ways) or
    // both nonzero (n_p^2 ways). Axis lines always have a zero coordinate.
    const u128 one_zero = 2 * lines * weight;
    const u128 both_nonzero = lines * lines * weight;
    if (a == 0 || b == 0) {
        acc.degenerate += one_zero + both_nonzero;
    } else {
        acc.degenerate += one_zero;
        acc.nondegenerate += both_nonzero;
    }
}

GammaSplit direction_pass(const BoxParam& box, const WorkBudget& budget) {
    const std::int64_t n = box.n();
    budget.require(ExactCount(static_cast<long>(n)) * n, "2x2 direction pass");
    if (n > 1'000'000) throw BudgetExceeded("2x2 direction pass limited to N <= 10^6");

    const ExactCount side = box.side();
    GammaSplit out{side * side * side * side, 0};  // v2 = v3 = 0, any D
    if (n == 0) return out;

    SplitSums base;
    add_direction(base, n, 1, 0, 2);  // (1, 0) and (0, 1)
    add_direction(base, n, 1, 1, 2);  // (1, 1) and (1, -1)

    // Canonical directions with |u| != |v| come in groups of four sharing
    // (|u|, |v|) up to order: (u, v), (u, -v), (v, u), (v, -u) for 1 <= v < u.
    const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(n));
    const auto parts = parallel_chunks<SplitSums>(
        static_cast<std::uint64_t>(n - 1), [&](std::uint64_t lo, std::uint64_t hi) {
            SplitSums acc;
            std::vector<char> shares_factor;
            for (std::int64_t u = static_cast<std::int64_t>(lo) + 2; u < static_cast<std::int64_t>(hi) + 2; ++u) {
                shares_factor.assign(static_cast<std::size_t>(u), 0);
                for (std::int64_t rest = u; rest > 1;) {
                    const std::int64_t p = spf[static_cast<std::size_t>(rest)];
                    for (std::int64_t k = p; k < u; k += p) shares_factor[static_cast<std::size_t>(k)] = 1;
                    while (rest % p == 0) rest /= p;
                }
                for (std::int64_t v = 1; v < u; ++v) {
                    if (!shares_factor[static_cast<std::size_t>(v)]) add_direction(acc, n, u, v, 4);
                }
            }
            return acc;
        });

    out.degenerate += to_exact(base.degenerate);
    out.nondegenerate += to_exact(base.nondegenerate);
    for (const auto& part : parts) {
        out.degenerate += to_exact(part.degenerate);
        out.nondegenerate += to_exact(part.nondegenerate);
    }
    return out;
}

}  // namespace

ExactCount line_count(const BoxParam& box, const PrimitiveDirection& p) {
    return ExactCount(static_cast<long>(2 * (box.n() / p.m())));
}

ExactCount weighted_line_sum(const BoxParam& box, const PrimitiveDirection& p) {
    const std::int64_t a = p.u() < 0 ? -p.u() : p.u();
    const std::int64_t b = p.v() < 0 ? -p.v() : p.v();
    return to_exact(weighted_sum_u128(box.n(), a, b));
}

DirectionWeights direction_weights(const BoxParam& box, const PrimitiveDirection& p) {
    return DirectionWeights{p, line_count(box, p), weighted_line_sum(box, p)};
}

ExactCount count_commuting_2x2(const BoxParam& box, const WorkBudget& budget) {
    return direction_pass(box, budget).total();
}

GammaSplit gamma_split(const BoxParam& box, const WorkBudget& budget) {
    return direction_pass(box, budget);
}

HighReal asymptotic_main_term_2(const BoxParam& box) {
    HighReal scale(2 * box.n(), kHighPrecisionBits);
    HighReal power(0, kHighPrecisionBits);
    mpf_pow_ui(power.get_mpf_t(), scale.get_mpf_t(), 5);
    return constants().k2 * power;
}

double normalized_2x2(const ExactCount& count, const BoxParam& box) {
    const ExactCount denom = ipow(ExactCount(static_cast<long>(2 * box.n())), 5);
    return make_ratio(count, denom).get_d();
}

}  // namespace commucount
