#pragma once

/**
 * Brute-force reference counters.
 *
 * Nothing here calls into count2, divisor, padic or rank3; every result is
 * obtained by enumerating tuples and testing the defining equations, so a
 * match between an oracle and a fast counter is evidence for both.
 */

#include <functional>

#include "commucount/core.hpp"
#include "commucount/types.hpp"

namespace commucount::oracle {

/// Number of ordered pairs (A, B) of d x d matrices with entries in [-N, N]
/// and AB = BA, for d in {2, 3}.
///
/// d = 2 tests all (2N+1)^8 pairs. d = 3 fixes A and counts B by
/// meet-in-the-middle: AB - BA is linear in B, so encoding the commutator as
/// a scalar key splits B into a 5-entry half and a 4-entry half whose keys
/// must cancel. Charged (2N+1)^9 * ((2N+1)^5 + (2N+1)^4) states.
ExactCount brute_commuting_count(int d, const BoxParam& box, const WorkBudget& budget = {});

/// Calls `visit(A, B)` for every commuting 3 x 3 pair in the box, in a
/// deterministic order. Same budget as brute_commuting_count(3, ...).
void for_each_commuting_3x3(const BoxParam& box, const WorkBudget& budget,
                            const std::function<void(const IntMatrix&, const IntMatrix&)>& visit);

/// Solutions (a2, a3, a4, b2, b3, b4) in (Z/p^nZ)^6 of
///   a2 b3 - a3 b2 = a2 b4 - a4 b2 = a3 b4 - a4 b3 = 0.
/// Requires p^(6n) <= budget.
ExactCount brute_padic_solutions(std::uint64_t p, unsigned n, const WorkBudget& budget = {});

/// Histogram of the same solutions by minimum valuation h in 0..n.
ValuationClassCounts brute_valuation_classes(std::uint64_t p, unsigned n,
                                             const WorkBudget& budget = {});

/// r_N(h) for all h by enumerating all (2N+1)^4 quadruples.
RTable brute_r_table(const BoxParam& box, const WorkBudget& budget = {});

}  // namespace commucount::oracle
