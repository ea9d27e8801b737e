#pragma once

/**
 * Commuting 2x2 pairs over Z/p^nZ.
 *
 * Subtracting the diagonal, AB = BA over Z/qZ reduces to
 *   a2 b3 - a3 b2 = a2 b4 - a4 b2 = a3 b4 - a4 b3 = 0
 * in six variables, with p^(2n) free choices for (a1, b1). Solutions whose
 * variables all have valuation >= h rescale to solutions modulo p^(n-2h),
 * which gives the class counts |S(n, h)| = p^(6h) |S(n-2h, 0)| for h < n/2.
 * Once every valuation is >= ceil(n/2) all products vanish, leaving a
 * residual block of p^(6 floor(n/2)) tuples.
 */

#include "commucount/core.hpp"
#include "commucount/types.hpp"

namespace commucount {

/// Inclusion-exclusion pieces of |S(n, 0)|: U_k fixes k of three unit
/// conditions on the variable pairs.
struct PadicBreakdown {
    ExactCount u0;
    ExactCount u1;
    ExactCount u2;
    /// 3 u0 - 3 u1 + u2.
    ExactCount s_n0;
};

/// nu_p(x mod p^n), capped at n (so the residue 0 has valuation n).
unsigned valuation(std::int64_t x, const PadicParams& params);

PadicBreakdown padic_breakdown(const PadicParams& params);

/// |S(n, 0)| = p^(4n) (1 + 1/p)(1 - 1/p^3) = p^(4n-4) (p+1)(p^3-1).
ExactCount s_n0_formula(const PadicParams& params);

/// c_2(Z/p^nZ) = p^(2n) (p^(6 floor(n/2)) + sum_{h < ceil(n/2)} p^(6h) |S(n-2h, 0)|).
ExactCount fast_padic_count(const PadicParams& params);

/// (1 + 1/p)(1 - 1/p^2)^-1 (1 - 1/p^3)(1 - 1/p^(2 ceil(n/2))).
ExactRatio theorem13_main(const PadicParams& params);

/// (1 + 1/p)(1 - 1/p^2)^-1 (1 - 1/p^3). Throws NotPrime.
ExactRatio sigma_p(std::uint64_t p);

/// Solutions with a2 b3 = a3 b2 = 0, by enumeration. Charged p^(6n) states.
ExactCount degenerate_padic_count(const PadicParams& params, const WorkBudget& budget = {});

/// Closed-form class counts for h < ceil(n/2) plus the residual block.
ValuationClassCounts valuation_classes_fast(const PadicParams& params);

}  // namespace commucount
